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

#ifndef QMPA_GIBBS_HPP_
#define QMPA_GIBBS_HPP_

#include <vector>

#include "qmpa/asymptotics.hpp"
#include "qmpa/spectral.hpp"
#include "qmpa/types.hpp"

namespace qmpa {

// Which part of the Heisenberg-picture attractor family to span: only the
// integrals of motion (fixed points), or the full attractor space.
enum class BasisScope { kFixedPoints, kFullAttractor };

// Real-linear basis of hermitian operators spanning the chosen part of the
// Heisenberg attractor space. Built from each complex basis element B as
// (B + B^dag)/2 and (B - B^dag)/(2i), then reduced to an independent set by
// pivoted elimination (original candidates are kept, not mixed).
struct HermitianBasis {
  BasisScope scope = BasisScope::kFullAttractor;
  std::vector<Operator> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

HermitianBasis hermitian_basis(const AttractorDecomposition& d,
                               BasisScope scope, const Tolerances& tol = {});

// A state assembled from a Gibbs-like characterization, together with the
// normalization constant that was divided out.
struct GibbsState {
  Operator state;
  double normalization = 0.0;  // trace of the unnormalized expression
};

// Coefficients of a state in a Gibbs-like characterization. `residual` is
// the Frobenius error of the least-squares expansion of the hermitian
// exponent in the basis; `normalization` is gamma = 1/Tr(sigma^{-1/2} rho
// sigma^{-1/2}) for form 1 and the reconstruction trace for form 2.
struct GibbsCoefficients {
  RVector coeffs;
  double residual = 0.0;
  double normalization = 0.0;
};

// Form 1: rho = sigma^{1/2} exp(sum_i c_i Z_i) sigma^{1/2}, trace-normalized.
// The result is checked to lie in the attractor span (fixed by the
// asymptotic projection); NotAsymptoticState otherwise.
GibbsState state_from_form1(const AsymptoticPropagator& prop,
                            const HermitianBasis& basis, const RVector& coeffs,
                            const Operator& sigma, const Tolerances& tol = {});

// Form 1 coefficients of a strictly positive asymptotic state:
// omega = gamma sigma^{-1/2} rho sigma^{-1/2} with gamma normalizing the
// trace, exponent A = log(omega) expanded in the basis by least squares.
// Throws NotStrictlyPositive for rank-deficient rho (use limit_procedure)
// and NotAsymptoticState when the expansion residual exceeds tolerance.
GibbsCoefficients coeffs_form1(const Operator& rho, const HermitianBasis& basis,
                               const Operator& sigma,
                               const Tolerances& tol = {});

// Form 2: rho = exp(log sigma + sum_i c_i Z_i), trace-normalized, for a
// strictly positive *stationary* sigma. Checked to lie in the attractor
// span; NotAsymptoticState otherwise (signals basis/sigma inconsistency).
GibbsState state_from_form2(const AsymptoticPropagator& prop,
                            const HermitianBasis& basis, const RVector& coeffs,
                            const Operator& sigma, const Tolerances& tol = {});

// Form 2 coefficients: expansion of log(rho) - log(sigma) in the basis.
// Throws NotForm2Representable when the residual exceeds tolerance.
GibbsCoefficients coeffs_form2(const Operator& rho, const HermitianBasis& basis,
                               const Operator& sigma,
                               const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Limit procedure for rank-deficient asymptotic states
// ---------------------------------------------------------------------------

// Interpolate omega(s) = (1-s) rho + s sigma toward the faithful reference
// and track the form-1 coefficients along the way. Every omega(s) with s > 0
// is strictly positive, so the expansion exists; as s -> 0+ the coefficient
// magnitudes diverge exactly when rho is rank-deficient, while the
// reconstruction stays valid at every sampled s.
struct LimitPoint {
  double s = 0.0;
  RVector coeffs;
  double coeff_norm = 0.0;
  double normalization = 0.0;
  double residual = 0.0;              // least-squares expansion residual
  double reconstruction_error = 0.0;  // ||rebuilt omega(s) - omega(s)||_F
};

// Default grid: {0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.001}.
std::vector<double> default_limit_grid();

std::vector<LimitPoint> limit_procedure(const AsymptoticPropagator& prop,
                                        const Operator& rho,
                                        const Operator& sigma,
                                        const HermitianBasis& basis,
                                        const std::vector<double>& s_grid,
                                        const Tolerances& tol = {});

}  // namespace qmpa

#endif  // QMPA_GIBBS_HPP_
