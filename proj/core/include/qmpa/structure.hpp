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

#ifndef QMPA_STRUCTURE_HPP_
#define QMPA_STRUCTURE_HPP_

#include <vector>

#include "qmpa/model.hpp"
#include "qmpa/spectral.hpp"
#include "qmpa/types.hpp"

namespace qmpa {

// Solution space of the commutation-style structure equations that
// characterize peripheral eigenoperators without any spectral computation.
//
// Discrete model, eigenvalue lambda on the unit circle, faithful
// sub-invariant sigma:
//   A_j X sigma^{-1} = lambda       X sigma^{-1} A_j
//   A_j^dag X sigma^{-1} = conj(lambda) X sigma^{-1} A_j^dag
//   A_j sigma^{-1} X = lambda       sigma^{-1} X A_j
//   A_j^dag sigma^{-1} X = conj(lambda) sigma^{-1} X A_j^dag
// stacked over j and solved as one SVD kernel problem. Returns a
// Hilbert-Schmidt-orthonormal basis (empty when lambda is not peripheral).
std::vector<Operator> qmch_structure_space(const DiscreteModel& m,
                                           const Operator& sigma,
                                           Complex lambda);

// Same system with sigma = I; its solutions are the Heisenberg-picture
// eigenoperators at conj(lambda) (under the sufficiency conditions).
std::vector<Operator> qmch_structure_space_heisenberg(const DiscreteModel& m,
                                                      Complex lambda);

// Continuous model, eigenvalue lambda = i a with a real:
//   [L_j, X sigma^{-1}] = [L_j, sigma^{-1} X] = 0
//   [L_j^dag, X sigma^{-1}] = [L_j^dag, sigma^{-1} X] = 0
//   [X sigma^{-1}, G] = [sigma^{-1} X, G] = 0
//   [sigma^{-1} X, H] = a sigma^{-1} X
//   [X sigma^{-1}, H] = a X sigma^{-1}
std::vector<Operator> qmds_structure_space(const ContinuousModel& m,
                                           const Operator& sigma, double a);

// sigma = I variant; solutions are Heisenberg eigenoperators at -i a.
std::vector<Operator> qmds_structure_space_heisenberg(const ContinuousModel& m,
                                                      double a);

// ---------------------------------------------------------------------------
// Cross-validation of the two routes
// ---------------------------------------------------------------------------

// The structure equations are necessary for peripheral eigenoperators, and
// also sufficient when the model is trace-preserving or sigma is stationary.
// cross_validate compares the spectral eigenspaces with the structure-system
// solution spaces at every peripheral eigenvalue, in both pictures. When the
// sufficiency preconditions hold, the spans must coincide (projector
// distance <= tolerance; otherwise MismatchBeyondTolerance is thrown with
// the worst offender). When they fail, the check downgrades to one-sided
// containment: spectral subspace inside structure subspace.
struct CrossValidationRow {
  Complex value;
  bool heisenberg = false;   // which picture this row compares
  int spectral_dim = 0;
  int structure_dim = 0;
  double distance = 0.0;     // projector distance (two-sided mode)
  double containment = 0.0;  // ||(I - P_structure) P_spectral||_F
  bool pass = false;
};

struct CrossValidationReport {
  bool sufficiency = false;  // trace-preserving or sigma stationary
  std::vector<CrossValidationRow> rows;
  double tolerance = 0.0;
  bool pass = false;
};

CrossValidationReport cross_validate(const Model& m, const Operator& sigma,
                                     bool sigma_stationary,
                                     const AttractorDecomposition& d);

// ---------------------------------------------------------------------------
// Algebraic closure of the attractor family
// ---------------------------------------------------------------------------

// Products of attractors are again attractors: X1 sigma^{-1} X2 is an
// eigenoperator at lambda1 * lambda2 (discrete) or lambda1 + lambda2
// (continuous) — or vanishes when that value leaves the peripheral spectrum.
// In the Heisenberg picture the attractor span is closed under products and
// adjoints (a C*-algebra), as is its fixed-point subspace. All pairs are
// checked exhaustively.
struct AlgebraClosureReport {
  double max_product_residual = 0.0;    // eigen-equation residual of products
  double max_heisenberg_residual = 0.0; // span closure under products/adjoints
  double max_fixed_point_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

AlgebraClosureReport algebra_closure_check(const Model& m,
                                           const Operator& sigma,
                                           const AttractorDecomposition& d);

}  // namespace qmpa

#endif  // QMPA_STRUCTURE_HPP_
