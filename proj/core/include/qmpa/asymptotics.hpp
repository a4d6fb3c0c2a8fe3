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

#ifndef QMPA_ASYMPTOTICS_HPP_
#define QMPA_ASYMPTOTICS_HPP_

#include <vector>

#include "qmpa/duality.hpp"
#include "qmpa/model.hpp"
#include "qmpa/spectral.hpp"
#include "qmpa/types.hpp"

namespace qmpa {

// Closed-form asymptotic propagator built from a biorthogonal attractor
// family. For large times the evolution acts as
//
//   rho(n)  = sum_{lambda,i} lambda^n     X_{lambda,i} Tr{rho(0) (X^{lambda,i})^dag}
//   rho(t)  = sum_{lambda,i} e^{lambda t} X_{lambda,i} Tr{rho(0) (X^{lambda,i})^dag}
//   A(n)    = sum_{lambda,i} lambda^n     (X^{lambda,i})^dag Tr{A(0) X_{lambda,i}}
//
// with X the primal (Schrodinger) family and X^ the dual family.
class AsymptoticPropagator {
 public:
  AsymptoticPropagator(ModelKind kind, int dim, const DualBasis& db);

  ModelKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(values_.size()); }

  // Asymptotic state at discrete step n or continuous time t. For discrete
  // models `time` must be integral.
  Operator state(const Operator& rho0, double time) const;

  // Asymptotic observable (Heisenberg picture) at step n or time t.
  Operator observable(const Operator& A0, double time) const;

  // Projection onto the attractor span (the propagator at time zero).
  // Idempotent; fixes every element of the span.
  Operator project(const Operator& X) const;

  // ||project(X) - X||_F / max(1, ||X||_F): membership residual of X in the
  // attractor span.
  double membership_residual(const Operator& X) const;

 private:
  ModelKind kind_;
  int dim_;
  std::vector<Complex> values_;
  std::vector<Operator> primal_;
  std::vector<Operator> dual_;
};

// Exact propagator: the n-th power of the step superoperator (discrete,
// `time` must be integral) or exp(t L) via scaling-and-squaring (continuous).
Superoperator evolution_operator(const Model& m, double time);

// ---------------------------------------------------------------------------
// Convergence of the exact evolution to the asymptotic expansion
// ---------------------------------------------------------------------------

struct ConvergenceReport {
  std::vector<double> times;      // steps 0..horizon (discrete) or t grid
  std::vector<double> distances;  // ||exact - asymptotic||_F
  // Geometric decay rate fitted to the distance curve (discrete: per step;
  // continuous: exponent per unit time). NaN when the curve is flat at the
  // noise floor.
  double fitted_rate = 0.0;
  // Modulus of the largest non-peripheral eigenvalue (discrete) or its real
  // part (continuous): the expected decay rate.
  double reference_rate = 0.0;
  double final_distance = 0.0;
};

ConvergenceReport convergence_report(const Model& m,
                                     const AsymptoticPropagator& prop,
                                     const Operator& rho0,
                                     const AttractorDecomposition& d,
                                     int horizon = 50);

// ---------------------------------------------------------------------------
// Recovery and structure checks
// ---------------------------------------------------------------------------

// Petz recovery map of a discrete model with respect to a faithful
// sub-invariant sigma: Kraus operators sigma^{1/2} A_k^dag sigma^{-1/2}.
// Completely positive by construction; reverses the evolution exactly on the
// attractor span.
DiscreteModel petz_recovery(const DiscreteModel& m, const Operator& sigma);

// Isometry of the evolution under the k = power(1/2) scalar product on the
// attractor span: (T(X), T(Y))_{1/2} = (X, Y)_{1/2} for attractor pairs
// (discrete), d/dt (T_t(X), T_t(Y))_{1/2} = 0 at t = 0 (continuous, central
// finite difference). Off-attractor pairs are sampled for contrast and
// reported without a pass/fail verdict.
struct KIsometryReport {
  double max_attractor_deviation = 0.0;
  double max_offspan_deviation = 0.0;  // informational
  double tolerance = 0.0;
  bool pass = false;
};
KIsometryReport k_isometry_check(const Model& m,
                                 const AttractorDecomposition& d,
                                 const Operator& sigma, std::uint64_t seed,
                                 int offspan_samples = 6);

// Asymptotic master equation of a continuous model: on the attractor span
// the motion reduces to d(X sigma^{-1})/dt = i[X sigma^{-1}, H], i.e.
// ||L(X) sigma^{-1} - i[X sigma^{-1}, H]||_F vanishes per attractor.
struct MasterCheckReport {
  std::vector<double> residuals;  // one per attractor basis element
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};
MasterCheckReport asymptotic_master_check(const ContinuousModel& m,
                                          const AttractorDecomposition& d,
                                          const Operator& sigma);

}  // namespace qmpa

#endif  // QMPA_ASYMPTOTICS_HPP_
