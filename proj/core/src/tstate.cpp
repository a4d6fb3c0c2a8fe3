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

#include "qmpa/tstate.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "qmpa/operator_algebra.hpp"
#include "qmpa/spectral.hpp"

namespace qmpa {

namespace {

// Worst (most negative) eigenvalue of the hermitized defect D.
double defect_min_eig(const Operator& D) {
  return min_eigenvalue(hermitize(D));
}

TStateCertificate verify_discrete(const DiscreteModel& m,
                                  const Operator& sigma) {
  const Tolerances& tol = m.tol;
  Superoperator T = generator_schrodinger(m);
  Operator D = sigma - T.apply(sigma);
  double worst = defect_min_eig(D);
  if (worst < -tol.defect) {
    std::ostringstream os;
    os << "verify_tstate: sigma - T(sigma) has eigenvalue " << worst
       << " below -" << tol.defect;
    throw DefectNegative(os.str(), worst);
  }
  TStateCertificate cert;
  cert.sigma = hermitize(sigma);
  cert.stationary = D.norm() <= tol.check * std::max(1.0, sigma.norm());
  cert.min_eigenvalue = min_eigenvalue(cert.sigma);
  cert.defect_min_eigenvalue = worst;
  cert.sampled_grid = false;
  cert.detail = cert.stationary ? "stationary state (T(sigma) = sigma)"
                                : "strictly sub-invariant state";
  return cert;
}

TStateCertificate verify_continuous(const ContinuousModel& m,
                                    const Operator& sigma) {
  const Tolerances& tol = m.tol;
  Superoperator L = generator_schrodinger(m);
  double lnorm = L.matrix().norm();

  // Generator condition: -L(sigma) must be PSD.
  Operator Ls = L.apply(sigma);
  double gen_worst = defect_min_eig(-Ls);
  if (gen_worst < -tol.defect * std::max(1.0, lnorm)) {
    std::ostringstream os;
    os << "verify_tstate: -L(sigma) has eigenvalue " << gen_worst << " below -"
       << tol.defect * std::max(1.0, lnorm);
    throw DefectNegative(os.str(), gen_worst);
  }

  // Semigroup condition sampled on a geometric grid: sigma - exp(tL)(sigma)
  // must be PSD for t = delta * {1, 2, 4, ..., 512}, delta = 0.1/||L||_F.
  double delta = 0.1 / std::max(lnorm, 1e-300);
  double worst = gen_worst;
  CVector v = vectorize(sigma);
  for (int k = 0; k < 10; ++k) {
    double t = delta * std::pow(2.0, k);
    CMatrix E = (t * L.matrix()).exp();
    Operator D = sigma - devectorize(E * v, m.dim);
    double w = defect_min_eig(D);
    worst = std::min(worst, w);
    if (w < -tol.defect) {
      std::ostringstream os;
      os << "verify_tstate: sigma - exp(tL)(sigma) has eigenvalue " << w
         << " below -" << tol.defect << " at t = " << t;
      throw DefectNegative(os.str(), w);
    }
  }

  TStateCertificate cert;
  cert.sigma = hermitize(sigma);
  cert.stationary = Ls.norm() <= tol.check * std::max(1.0, lnorm);
  cert.min_eigenvalue = min_eigenvalue(cert.sigma);
  cert.defect_min_eigenvalue = worst;
  cert.sampled_grid = true;
  std::ostringstream os;
  os << (cert.stationary ? "stationary state (L(sigma) = 0)"
                         : "strictly sub-invariant state")
     << "; semigroup inequality sampled at t = " << delta
     << " * {1, 2, ..., 512}";
  cert.detail = os.str();
  return cert;
}

}  // namespace

TStateCertificate verify_tstate(const Model& m, const Operator& sigma) {
  int n = model_dim(m);
  const Tolerances& tol = model_tolerances(m);
  if (sigma.rows() != n || sigma.cols() != n) {
    throw DimensionError("verify_tstate: candidate has wrong shape");
  }
  require_hermitian(sigma, "tstate candidate", tol);
  double tr = sigma.trace().real();
  if (std::abs(sigma.trace() - Complex(1.0, 0.0)) > tol.check) {
    std::ostringstream os;
    os << "verify_tstate: candidate trace " << format_complex(sigma.trace())
       << " is not 1";
    throw ValidationError(os.str());
  }
  double lo = min_eigenvalue(hermitize(sigma));
  if (lo <= tol.strict_positivity * (tr / n)) {
    std::ostringstream os;
    os << "verify_tstate: candidate minimum eigenvalue " << lo
       << " is not strictly positive (threshold "
       << tol.strict_positivity * (tr / n) << ")";
    throw NotStrictlyPositive(os.str());
  }
  if (std::holds_alternative<DiscreteModel>(m)) {
    return verify_discrete(std::get<DiscreteModel>(m), sigma);
  }
  return verify_continuous(std::get<ContinuousModel>(m), sigma);
}

TStateCertificate find_tstate(const Model& m) {
  const std::optional<Operator>& supplied = model_tstate(m);
  if (supplied.has_value()) {
    TStateCertificate cert = verify_tstate(m, *supplied);
    cert.detail = "user-supplied candidate: " + cert.detail;
    return cert;
  }

  Classification cls = classify(m);
  if (cls.trace != TraceClass::kPreserving) {
    throw ValidationError(
        "find_tstate: model is not trace-preserving, so no canonical "
        "stationary candidate exists; supply a tstate in the model file");
  }

  int n = model_dim(m);
  const Tolerances& tol = model_tolerances(m);
  Superoperator S = generator_schrodinger(m);
  Superoperator P0 = fixed_point_projector(S, model_kind(m), tol);

  // Project the maximally mixed state onto the stationary space and keep the
  // positive part; for a trace-preserving model this has maximal support
  // among stationary states.
  Operator candidate =
      hermitize(P0.apply(Operator::Identity(n, n) / static_cast<double>(n)));
  Eigen::SelfAdjointEigenSolver<Operator> es(candidate);
  if (es.info() != Eigen::Success) {
    throw EigensolverFailure("find_tstate: eigensolver did not converge");
  }

  Operator positive = Operator::Zero(n, n);
  double positive_trace = 0.0;
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    double e = es.eigenvalues()(i);
    if (e > tol.strict_positivity / n) {
      positive += e * es.eigenvectors().col(i) *
                  es.eigenvectors().col(i).adjoint();
      positive_trace += e;
      ++rank;
    }
  }
  if (rank < n) {
    std::ostringstream os;
    os << "find_tstate: maximal stationary candidate has rank " << rank
       << " < " << n << "; no faithful sub-invariant state exists";
    throw NoFaithfulTState(os.str(), rank, n);
  }

  Operator sigma = positive / positive_trace;
  TStateCertificate cert = verify_tstate(m, sigma);
  cert.detail = "constructed from the stationary spectral projector: " +
                cert.detail;
  return cert;
}

std::vector<double> commutant_check(const Operator& sigma,
                                    const std::vector<Operator>& ops) {
  std::vector<double> out;
  out.reserve(ops.size());
  for (const Operator& X : ops) {
    out.push_back(commutator(sigma, X).norm());
  }
  return out;
}

}  // namespace qmpa
