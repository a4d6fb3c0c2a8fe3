// Copyright 2026 The qmpa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMPA_TSTATE_HPP_
#define QMPA_TSTATE_HPP_

#include <string>
#include <vector>

#include "qmpa/model.hpp"
#include "qmpa/types.hpp"

namespace qmpa {

// Certificate for a faithful sub-invariant reference state sigma: strictly
// positive, unit trace, and T(sigma) <= sigma (discrete) respectively
// exp(tL)(sigma) <= sigma (continuous).
struct TStateCertificate {
  Operator sigma;
  // True when sigma is exactly invariant (T(sigma) = sigma resp.
  // L(sigma) = 0) within tolerance.
  bool stationary = false;
  double min_eigenvalue = 0.0;         // of sigma
  double defect_min_eigenvalue = 0.0;  // worst min eig of sigma - T_t(sigma)
  // Continuous only: the semigroup inequality was verified on a sampled
  // geometric time grid, not for all t > 0 (sufficient in a right
  // neighborhood of zero for trace-preserving models, heuristic otherwise).
  bool sampled_grid = false;
  std::string detail;
};

// Search for a faithful sub-invariant state of a trace-preserving model: the
// hermitized positive part of the image of I/N under the stationary spectral
// projector, trace-normalized. Throws NoFaithfulTState (with the achieved
// rank) when the candidate is not strictly positive, and ValidationError for
// models that are not trace-preserving (no canonical candidate exists; supply
// one in the model file instead).
TStateCertificate find_tstate(const Model& m);

// Verify a user-supplied candidate: hermitian, unit trace, strictly
// positive, and sub-invariant. Discrete: sigma - T(sigma) is PSD within
// tolerance. Continuous: -L(sigma) is PSD and sigma - exp(tL)(sigma) is PSD
// on the geometric grid t = delta * {1, 2, 4, ..., 512} with
// delta = 0.1/||L||_F. Throws DefectNegative with the witness eigenvalue on
// failure.
TStateCertificate verify_tstate(const Model& m, const Operator& sigma);

// ||[sigma, X]||_F for each operator; all zero iff sigma lies in the
// commutant of the set.
std::vector<double> commutant_check(const Operator& sigma,
                                    const std::vector<Operator>& ops);

}  // namespace qmpa

#endif  // QMPA_TSTATE_HPP_
