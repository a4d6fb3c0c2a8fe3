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

#include "qmpa/superoperator.hpp"

#include <sstream>

#include "qmpa/operator_algebra.hpp"

namespace qmpa {

Superoperator::Superoperator(int dim, CMatrix mat)
    : dim_(dim), mat_(std::move(mat)) {
  if (dim <= 0) {
    throw DimensionError("Superoperator: dimension must be positive");
  }
  Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;
  if (mat_.rows() != n2 || mat_.cols() != n2) {
    std::ostringstream os;
    os << "Superoperator: matrix must be " << n2 << "x" << n2 << ", got "
       << mat_.rows() << "x" << mat_.cols();
    throw DimensionError(os.str());
  }
}

Superoperator Superoperator::identity(int dim) {
  Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;
  return Superoperator(dim, CMatrix::Identity(n2, n2));
}

Superoperator Superoperator::zero(int dim) {
  Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;
  return Superoperator(dim, CMatrix::Zero(n2, n2));
}

Operator Superoperator::apply(const Operator& X) const {
  if (X.rows() != dim_ || X.cols() != dim_) {
    throw DimensionError("Superoperator::apply: operand dimension mismatch");
  }
  return devectorize(mat_ * vectorize(X), dim_);
}

Superoperator Superoperator::adjoint() const {
  return Superoperator(dim_, mat_.adjoint());
}

Superoperator Superoperator::operator+(const Superoperator& other) const {
  if (other.dim_ != dim_) throw DimensionError("Superoperator: dim mismatch");
  return Superoperator(dim_, mat_ + other.mat_);
}

Superoperator Superoperator::operator-(const Superoperator& other) const {
  if (other.dim_ != dim_) throw DimensionError("Superoperator: dim mismatch");
  return Superoperator(dim_, mat_ - other.mat_);
}

Superoperator Superoperator::operator*(const Superoperator& other) const {
  if (other.dim_ != dim_) throw DimensionError("Superoperator: dim mismatch");
  return Superoperator(dim_, mat_ * other.mat_);
}

Superoperator Superoperator::operator*(Complex scale) const {
  return Superoperator(dim_, scale * mat_);
}

Superoperator left_mult_super(const Operator& P) {
  if (P.rows() != P.cols()) {
    throw DimensionError("left_mult_super: matrix must be square");
  }
  int n = static_cast<int>(P.rows());
  return Superoperator(n, kron(CMatrix::Identity(n, n), P));
}

Superoperator right_mult_super(const Operator& P) {
  if (P.rows() != P.cols()) {
    throw DimensionError("right_mult_super: matrix must be square");
  }
  int n = static_cast<int>(P.rows());
  return Superoperator(n, kron(P.transpose(), CMatrix::Identity(n, n)));
}

Superoperator relative_modular(const Operator& Q, const Operator& P,
                               const Tolerances& tol) {
  if (Q.rows() != Q.cols() || P.rows() != P.cols() || Q.rows() != P.rows()) {
    throw DimensionError("relative_modular: operands must be square and "
                         "equally sized");
  }
  require_strictly_positive(P, "relative_modular: P", tol);
  Operator Pinv = op_power(P, -1.0, tol);
  return left_mult_super(Q) * right_mult_super(Pinv);
}

CMatrix choi_matrix(const std::vector<Operator>& kraus) {
  if (kraus.empty()) {
    throw ValidationError("choi_matrix: empty Kraus family");
  }
  int n = static_cast<int>(kraus.front().rows());
  Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  CMatrix C = CMatrix::Zero(n2, n2);
  for (const Operator& A : kraus) {
    if (A.rows() != n || A.cols() != n) {
      throw DimensionError("choi_matrix: Kraus operators differ in shape");
    }
    CVector v = vectorize(A);
    C += v * v.adjoint();
  }
  return C;
}

CMatrix choi_from_super(const Superoperator& S) {
  int n = S.dim();
  Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  CMatrix C(n2, n2);
  const CMatrix& M = S.matrix();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          C(i + n * j, k + n * l) = M(i + n * k, j + n * l);
        }
      }
    }
  }
  return C;
}

}  // namespace qmpa
