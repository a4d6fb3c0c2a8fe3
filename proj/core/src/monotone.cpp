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

#include "qmpa/monotone.hpp"

#include <cmath>
#include <sstream>

#include "qmpa/operator_algebra.hpp"

namespace qmpa {

MonotoneFunction MonotoneFunction::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "MonotoneFunction::power: alpha must lie in (0, 1], got " << alpha;
    throw ValidationError(os.str());
  }
  std::ostringstream name;
  name << "power(" << alpha << ")";
  return MonotoneFunction(Kind::kPower, alpha, nullptr, name.str());
}

MonotoneFunction MonotoneFunction::log1p() {
  return MonotoneFunction(Kind::kLog1p, 0.0, nullptr, "log1p");
}

MonotoneFunction MonotoneFunction::custom(std::function<double(double)> f,
                                          bool attested_operator_monotone,
                                          const std::string& name) {
  if (!attested_operator_monotone) {
    throw ValidationError(
        "MonotoneFunction::custom: function must be attested operator "
        "monotone");
  }
  if (!f) {
    throw ValidationError("MonotoneFunction::custom: empty function");
  }
  return MonotoneFunction(Kind::kCustom, 0.0, std::move(f), name);
}

double MonotoneFunction::operator()(double y) const {
  switch (kind_) {
    case Kind::kPower:
      return std::pow(y, alpha_);
    case Kind::kLog1p:
      return std::log1p(y);
    case Kind::kCustom:
      return f_(y);
  }
  throw Error("MonotoneFunction: unknown kind");
}

Operator k_of_delta_apply(const MonotoneFunction& k, const Operator& sigma1,
                          const Operator& sigma2, const Operator& X,
                          const Tolerances& tol) {
  require_strictly_positive(sigma1, "k_of_delta_apply: sigma1", tol);
  require_strictly_positive(sigma2, "k_of_delta_apply: sigma2", tol);
  if (sigma1.rows() != X.rows() || sigma2.rows() != X.cols()) {
    throw DimensionError("k_of_delta_apply: operand shapes differ");
  }
  Eigen::SelfAdjointEigenSolver<Operator> e1(hermitize(sigma1));
  Eigen::SelfAdjointEigenSolver<Operator> e2(hermitize(sigma2));
  if (e1.info() != Eigen::Success || e2.info() != Eigen::Success) {
    throw EigensolverFailure("k_of_delta_apply: eigensolver failed");
  }
  const RVector& p = e1.eigenvalues();
  const RVector& q = e2.eigenvalues();
  const Operator& U = e1.eigenvectors();
  const Operator& V = e2.eigenvectors();

  // M = U^dag X V, scaled entrywise by k(p_i / q_j), rotated back.
  Operator M = U.adjoint() * X * V;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      double value = k(p(i) / q(j));
      if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os << "k_of_delta_apply: " << k.name()
           << " is not positive at spectrum ratio " << (p(i) / q(j))
           << " (value " << value << ")";
        throw ValidationError(os.str());
      }
      M(i, j) *= value;
    }
  }
  return U * M * V.adjoint();
}

}  // namespace qmpa
