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

#include "qmpa/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmpa/operator_algebra.hpp"

namespace qmpa {

namespace {

// Norm-preserving real encoding of a complex matrix: [Re vec(X); Im vec(X)].
// ||encode(X)||_2 = ||X||_F, so least-squares residuals in the encoding are
// Frobenius residuals of the operators.
RVector real_encode(const Operator& X) {
  CVector v = vectorize(X);
  RVector out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

RMatrix encode_basis(const std::vector<Operator>& ops) {
  if (ops.empty()) return RMatrix();
  Eigen::Index rows = 2 * ops.front().size();
  RMatrix M(rows, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    M.col(static_cast<Eigen::Index>(i)) = real_encode(ops[i]);
  }
  return M;
}

// Least-squares expansion of the hermitian target in the (real-linear) basis.
GibbsCoefficients expand(const Operator& target,
                         const std::vector<Operator>& basis) {
  GibbsCoefficients out;
  if (basis.empty()) {
    out.coeffs = RVector();
    out.residual = target.norm();
    return out;
  }
  RMatrix M = encode_basis(basis);
  RVector b = real_encode(target);
  out.coeffs = M.colPivHouseholderQr().solve(b);
  out.residual = (M * out.coeffs - b).norm();
  return out;
}

Operator assemble(const HermitianBasis& basis, const RVector& coeffs) {
  if (coeffs.size() != basis.size()) {
    throw DimensionError(
        "gibbs: coefficient count does not match the basis size");
  }
  if (basis.elements.empty()) {
    throw ValidationError("gibbs: empty hermitian basis");
  }
  int n = static_cast<int>(basis.elements.front().rows());
  Operator Z = Operator::Zero(n, n);
  for (int i = 0; i < basis.size(); ++i) {
    Z += coeffs(i) * basis.elements[static_cast<std::size_t>(i)];
  }
  return Z;
}

}  // namespace

HermitianBasis hermitian_basis(const AttractorDecomposition& d,
                               BasisScope scope, const Tolerances& tol) {
  HermitianBasis out;
  out.scope = scope;

  std::vector<Operator> complex_basis;
  if (scope == BasisScope::kFixedPoints) {
    const EigenspacePair* fixed = d.stationary_space();
    if (fixed != nullptr) complex_basis = fixed->heisenberg;
  } else {
    for (const auto& space : d.spaces) {
      complex_basis.insert(complex_basis.end(), space.heisenberg.begin(),
                           space.heisenberg.end());
    }
  }

  std::vector<Operator> candidates;
  for (const Operator& B : complex_basis) {
    Operator re = hermitize(B);
    Operator im = (B - B.adjoint()) / Complex(0.0, 2.0);
    if (re.norm() > 1e-12) candidates.push_back(std::move(re));
    if (im.norm() > 1e-12) candidates.push_back(std::move(im));
  }
  if (candidates.empty()) return out;

  // Pivoted elimination over the reals: keep a maximal independent subset of
  // the original candidates (in their original order), never linear mixtures.
  RMatrix M = encode_basis(candidates);
  Eigen::ColPivHouseholderQR<RMatrix> qr(M);
  qr.setThreshold(std::max(tol.kernel, 1e-12));
  int rank = static_cast<int>(qr.rank());
  const auto& perm = qr.colsPermutation().indices();
  std::vector<int> chosen(perm.data(), perm.data() + rank);
  std::sort(chosen.begin(), chosen.end());
  for (int idx : chosen) {
    out.elements.push_back(candidates[static_cast<std::size_t>(idx)]);
  }
  return out;
}

GibbsState state_from_form1(const AsymptoticPropagator& prop,
                            const HermitianBasis& basis, const RVector& coeffs,
                            const Operator& sigma, const Tolerances& tol) {
  require_strictly_positive(sigma, "form-1 reference state", tol);
  Operator Z = assemble(basis, coeffs);
  Operator half = op_sqrt(sigma, tol);
  Operator raw = half * op_exp(hermitize(Z), tol) * half;
  GibbsState out;
  out.normalization = raw.trace().real();
  out.state = raw / out.normalization;
  double residual = prop.membership_residual(out.state);
  if (residual > tol.check) {
    std::ostringstream os;
    os << "state_from_form1: assembled state leaves the attractor span "
          "(residual "
       << residual << ")";
    throw NotAsymptoticState(os.str(), residual);
  }
  return out;
}

GibbsCoefficients coeffs_form1(const Operator& rho, const HermitianBasis& basis,
                               const Operator& sigma, const Tolerances& tol) {
  require_strictly_positive(sigma, "form-1 reference state", tol);
  int n = static_cast<int>(rho.rows());
  require_hermitian(rho, "form-1 state", tol);

  Operator inv_half = op_power(sigma, -0.5, tol);
  Operator omega = hermitize(inv_half * rho * inv_half);
  double gamma = 1.0 / omega.trace().real();
  omega *= gamma;

  double lo = min_eigenvalue(omega);
  if (lo <= tol.strict_positivity / n) {
    std::ostringstream os;
    os << "coeffs_form1: sigma^{-1/2} rho sigma^{-1/2} has minimum eigenvalue "
       << lo << "; the state is rank-deficient, use the limit procedure";
    throw NotStrictlyPositive(os.str());
  }

  Operator A = op_log(omega, tol);
  GibbsCoefficients out = expand(A, basis.elements);
  out.normalization = gamma;
  if (out.residual > tol.check * std::max(1.0, A.norm())) {
    std::ostringstream os;
    os << "coeffs_form1: exponent does not lie in the span of the basis "
          "(residual "
       << out.residual << ")";
    throw NotAsymptoticState(os.str(), out.residual);
  }
  return out;
}

GibbsState state_from_form2(const AsymptoticPropagator& prop,
                            const HermitianBasis& basis, const RVector& coeffs,
                            const Operator& sigma, const Tolerances& tol) {
  require_strictly_positive(sigma, "form-2 reference state", tol);
  Operator Z = assemble(basis, coeffs);
  Operator raw = op_exp(op_log(sigma, tol) + hermitize(Z), tol);
  GibbsState out;
  out.normalization = raw.trace().real();
  out.state = raw / out.normalization;
  double residual = prop.membership_residual(out.state);
  if (residual > tol.check) {
    std::ostringstream os;
    os << "state_from_form2: assembled state leaves the attractor span "
          "(residual "
       << residual << "); the basis and sigma are inconsistent";
    throw NotAsymptoticState(os.str(), residual);
  }
  return out;
}

GibbsCoefficients coeffs_form2(const Operator& rho, const HermitianBasis& basis,
                               const Operator& sigma, const Tolerances& tol) {
  require_strictly_positive(sigma, "form-2 reference state", tol);
  require_hermitian(rho, "form-2 state", tol);
  require_strictly_positive(rho, "form-2 state", tol);

  Operator target = op_log(hermitize(rho) / rho.trace().real(), tol) -
                    op_log(sigma, tol);
  GibbsCoefficients out = expand(target, basis.elements);
  if (out.residual > tol.check * std::max(1.0, target.norm())) {
    std::ostringstream os;
    os << "coeffs_form2: log(rho) - log(sigma) does not lie in the span of "
          "the basis (residual "
       << out.residual << ")";
    throw NotForm2Representable(os.str(), out.residual);
  }
  Operator raw = op_exp(op_log(sigma, tol) + assemble(basis, out.coeffs), tol);
  out.normalization = raw.trace().real();
  return out;
}

std::vector<double> default_limit_grid() {
  return {0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.001};
}

std::vector<LimitPoint> limit_procedure(const AsymptoticPropagator& prop,
                                        const Operator& rho,
                                        const Operator& sigma,
                                        const HermitianBasis& basis,
                                        const std::vector<double>& s_grid,
                                        const Tolerances& tol) {
  require_strictly_positive(sigma, "limit-procedure reference state", tol);
  std::vector<LimitPoint> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    if (!(s > 0.0) || !(s <= 1.0)) {
      throw ValidationError(
          "limit_procedure: interpolation parameters must lie in (0, 1]");
    }
    Operator omega = (1.0 - s) * rho + s * sigma;
    GibbsCoefficients c = coeffs_form1(omega, basis, sigma, tol);

    LimitPoint point;
    point.s = s;
    point.coeffs = c.coeffs;
    point.coeff_norm =
        c.coeffs.size() > 0 ? c.coeffs.cwiseAbs().maxCoeff() : 0.0;
    point.normalization = c.normalization;
    point.residual = c.residual;
    GibbsState rebuilt = state_from_form1(prop, basis, c.coeffs, sigma, tol);
    Operator normalized = omega / omega.trace().real();
    point.reconstruction_error = (rebuilt.state - normalized).norm();
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace qmpa
