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

#include "qmpa/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "qmpa/operator_algebra.hpp"
#include "qmpa/random.hpp"

namespace qmpa {

namespace {

long long require_integral_time(double time, const char* who) {
  double rounded = std::round(time);
  if (std::abs(time - rounded) > 1e-9) {
    std::ostringstream os;
    os << who << ": discrete evolution needs an integral step count, got "
       << time;
    throw ValidationError(os.str());
  }
  return static_cast<long long>(rounded);
}

}  // namespace

AsymptoticPropagator::AsymptoticPropagator(ModelKind kind, int dim,
                                           const DualBasis& db)
    : kind_(kind), dim_(dim) {
  for (const auto& space : db.spaces) {
    for (std::size_t i = 0; i < space.primal.size(); ++i) {
      values_.push_back(space.value);
      primal_.push_back(space.primal[i]);
      dual_.push_back(space.dual[i]);
    }
  }
}

Operator AsymptoticPropagator::state(const Operator& rho0, double time) const {
  if (rho0.rows() != dim_ || rho0.cols() != dim_) {
    throw DimensionError("AsymptoticPropagator::state: wrong operator shape");
  }
  if (kind_ == ModelKind::kDiscrete) {
    require_integral_time(time, "AsymptoticPropagator::state");
  }
  Operator out = Operator::Zero(dim_, dim_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    Complex weight = kind_ == ModelKind::kDiscrete
                         ? std::pow(values_[i], time)
                         : std::exp(values_[i] * time);
    out += weight * hs_inner(dual_[i], rho0) * primal_[i];
  }
  return out;
}

Operator AsymptoticPropagator::observable(const Operator& A0,
                                          double time) const {
  if (A0.rows() != dim_ || A0.cols() != dim_) {
    throw DimensionError(
        "AsymptoticPropagator::observable: wrong operator shape");
  }
  if (kind_ == ModelKind::kDiscrete) {
    require_integral_time(time, "AsymptoticPropagator::observable");
  }
  Operator out = Operator::Zero(dim_, dim_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    Complex weight = kind_ == ModelKind::kDiscrete
                         ? std::pow(values_[i], time)
                         : std::exp(values_[i] * time);
    // Heisenberg weight at conj(lambda) on the dual family; the pairing
    // coefficient is the plain product trace Tr{A(0) X_{lambda,i}}.
    out += weight * (A0 * primal_[i]).trace() * dual_[i].adjoint();
  }
  return out;
}

Operator AsymptoticPropagator::project(const Operator& X) const {
  if (X.rows() != dim_ || X.cols() != dim_) {
    throw DimensionError("AsymptoticPropagator::project: wrong shape");
  }
  Operator out = Operator::Zero(dim_, dim_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out += hs_inner(dual_[i], X) * primal_[i];
  }
  return out;
}

double AsymptoticPropagator::membership_residual(const Operator& X) const {
  return (project(X) - X).norm() / std::max(1.0, X.norm());
}

Superoperator evolution_operator(const Model& m, double time) {
  Superoperator S = generator_schrodinger(m);
  if (model_kind(m) == ModelKind::kContinuous) {
    return Superoperator(S.dim(), (time * S.matrix()).exp());
  }
  long long n = require_integral_time(time, "evolution_operator");
  if (n < 0) {
    throw ValidationError("evolution_operator: negative step count");
  }
  // Binary exponentiation of the step matrix.
  Eigen::Index n2 = S.matrix().rows();
  CMatrix result = CMatrix::Identity(n2, n2);
  CMatrix base = S.matrix();
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return Superoperator(S.dim(), std::move(result));
}

ConvergenceReport convergence_report(const Model& m,
                                     const AsymptoticPropagator& prop,
                                     const Operator& rho0,
                                     const AttractorDecomposition& d,
                                     int horizon) {
  ConvergenceReport report;
  report.reference_rate = d.subperipheral_bound;

  bool discrete = model_kind(m) == ModelKind::kDiscrete;
  Superoperator S = generator_schrodinger(m);

  // Continuous models are sampled so the expected decay reaches ~1e-7 by the
  // end of the horizon; discrete models are sampled at every step.
  double dt = 1.0;
  if (!discrete) {
    double bound = std::abs(d.subperipheral_bound);
    if (std::isfinite(d.subperipheral_bound) && bound > 0.0) {
      dt = 16.0 / (bound * horizon);
    }
  }

  Operator rho = rho0;
  CMatrix step;
  if (!discrete) step = (dt * S.matrix()).exp();

  for (int i = 0; i <= horizon; ++i) {
    double t = i * dt;
    report.times.push_back(t);
    report.distances.push_back((rho - prop.state(rho0, t)).norm());
    if (discrete) {
      rho = S.apply(rho);
    } else {
      rho = devectorize(step * vectorize(rho), model_dim(m));
    }
  }
  report.final_distance = report.distances.back();

  // Least-squares line through (t, log distance) above the noise floor.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    if (report.distances[i] <= 1e-13) continue;
    double x = report.times[i];
    double y = std::log(report.distances[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2 && sxx * count - sx * sx > 0) {
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    // Per-step modulus for discrete evolutions, exponent per unit time for
    // continuous ones (matching reference_rate in both cases).
    report.fitted_rate = discrete ? std::exp(slope) : slope;
  } else {
    report.fitted_rate = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

DiscreteModel petz_recovery(const DiscreteModel& m, const Operator& sigma) {
  require_strictly_positive(sigma, "petz_recovery reference state", m.tol);
  Operator half = op_sqrt(sigma, m.tol);
  Operator inv_half = op_power(sigma, -0.5, m.tol);
  DiscreteModel out;
  out.dim = m.dim;
  out.kraus.reserve(m.kraus.size());
  for (const Operator& A : m.kraus) {
    out.kraus.push_back(half * A.adjoint() * inv_half);
  }
  // sigma is sub-invariant for the recovery map whenever it is for the
  // original one, so it remains a valid reference candidate.
  out.tstate = sigma;
  out.tol = m.tol;

  // Complete positivity and the trace condition hold by construction; assert
  // both so numerical damage cannot pass silently.
  double choi_min = min_eigenvalue(hermitize(choi_matrix(out.kraus)));
  Operator defect = Operator::Identity(m.dim, m.dim);
  for (const Operator& B : out.kraus) defect -= B.adjoint() * B;
  // The sub-invariance defect of sigma is amplified by at most 1/min_eig.
  double amplify =
      std::max(1.0, 1.0 / min_eigenvalue(hermitize(sigma)));
  double defect_min = min_eigenvalue(hermitize(defect));
  if (choi_min < -m.tol.psd_defect ||
      defect_min < -m.tol.psd_defect * amplify) {
    std::ostringstream os;
    os << "petz_recovery: construction failed numerically (Choi min "
       << choi_min << ", trace defect min " << defect_min << ")";
    throw ValidationError(os.str());
  }
  return out;
}

KIsometryReport k_isometry_check(const Model& m,
                                 const AttractorDecomposition& d,
                                 const Operator& sigma, std::uint64_t seed,
                                 int offspan_samples) {
  const Tolerances& tol = model_tolerances(m);
  MonotoneFunction k = MonotoneFunction::power(0.5);
  bool discrete = model_kind(m) == ModelKind::kDiscrete;
  Superoperator S = generator_schrodinger(m);
  double lnorm = S.matrix().norm();

  KIsometryReport report;
  // The continuous check differentiates (T_t X, T_t Y)_k at t = 0 by a
  // central difference with h = 1e-4/||L||_F, which limits its own accuracy
  // to about 1e-6 relative.
  report.tolerance = discrete ? tol.check : 1e-6;

  auto product = [&](const Operator& X, const Operator& Y) {
    return k_scalar_product(X, Y, k, sigma, sigma, tol);
  };
  auto knorm = [&](const Operator& X) {
    return std::sqrt(std::abs(product(X, X).real()));
  };

  double h = 1e-4 / std::max(lnorm, 1e-300);
  CMatrix fwd, bwd;
  if (!discrete) {
    fwd = (h * S.matrix()).exp();
    bwd = (-h * S.matrix()).exp();
  }
  int n = model_dim(m);

  auto deviation = [&](const Operator& X, const Operator& Y) {
    double scale = knorm(X) * knorm(Y);
    if (scale < 1e-300) return 0.0;
    if (discrete) {
      Complex before = product(X, Y);
      Complex after = product(S.apply(X), S.apply(Y));
      return std::abs(after - before) / scale;
    }
    Complex plus = product(devectorize(fwd * vectorize(X), n),
                           devectorize(fwd * vectorize(Y), n));
    Complex minus = product(devectorize(bwd * vectorize(X), n),
                            devectorize(bwd * vectorize(Y), n));
    Complex derivative = (plus - minus) / (2.0 * h);
    return std::abs(derivative) / (scale * std::max(1.0, lnorm));
  };

  std::vector<const Operator*> attractors;
  for (const auto& space : d.spaces) {
    for (const Operator& X : space.schrodinger) attractors.push_back(&X);
  }
  for (std::size_t i = 0; i < attractors.size(); ++i) {
    for (std::size_t j = i; j < attractors.size(); ++j) {
      report.max_attractor_deviation = std::max(
          report.max_attractor_deviation,
          deviation(*attractors[i], *attractors[j]));
    }
  }

  Rng rng = make_rng(seed);
  for (int s = 0; s < offspan_samples; ++s) {
    Operator R1 = random_matrix(rng, n);
    Operator R2 = random_matrix(rng, n);
    report.max_offspan_deviation =
        std::max(report.max_offspan_deviation, deviation(R1, R2));
  }

  report.pass = report.max_attractor_deviation <= report.tolerance;
  return report;
}

MasterCheckReport asymptotic_master_check(const ContinuousModel& m,
                                          const AttractorDecomposition& d,
                                          const Operator& sigma) {
  require_strictly_positive(sigma, "asymptotic master check reference state",
                            m.tol);
  Operator inv = op_power(sigma, -1.0, m.tol);
  Superoperator L = generator_schrodinger(m);
  double lnorm = std::max(1.0, L.matrix().norm());

  MasterCheckReport report;
  report.tolerance = m.tol.check;
  for (const auto& space : d.spaces) {
    for (const Operator& X : space.schrodinger) {
      Operator Y = X * inv;
      Operator residual = L.apply(X) * inv -
                          Complex(0, 1) * commutator(Y, m.hamiltonian);
      report.residuals.push_back(residual.norm() /
                                 (lnorm * std::max(1e-300, Y.norm())));
    }
  }
  for (double r : report.residuals) {
    report.max_residual = std::max(report.max_residual, r);
  }
  report.pass = report.max_residual <= report.tolerance;
  return report;
}

}  // namespace qmpa
