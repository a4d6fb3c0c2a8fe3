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

#include "qmpa/operator_algebra.hpp"

#include <cmath>
#include <sstream>

namespace qmpa {

namespace {

void require_square(const Operator& A, const std::string& context) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    std::ostringstream os;
    os << context << ": expected a nonempty square matrix, got " << A.rows()
       << "x" << A.cols();
    throw DimensionError(os.str());
  }
}

// Eigendecomposition of a hermitian matrix, hermitizing first to keep the
// solver on its self-adjoint path.
Eigen::SelfAdjointEigenSolver<Operator> hermitian_eig(
    const Operator& A, const std::string& context, const Tolerances& tol) {
  require_square(A, context);
  require_hermitian(A, context, tol);
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(A));
  if (es.info() != Eigen::Success) {
    throw EigensolverFailure(context + ": hermitian eigensolver failed");
  }
  return es;
}

}  // namespace

Complex hs_inner(const Operator& A, const Operator& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw DimensionError("hs_inner: operand shapes differ");
  }
  return (A.adjoint() * B).trace();
}

double frob(const Operator& A) { return A.norm(); }

CVector vectorize(const Operator& X) {
  // Eigen stores column-major, so the flat data already is the
  // column-stacked vector.
  return Eigen::Map<const CVector>(X.data(), X.size());
}

Operator devectorize(const CVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionError("devectorize: vector length is not dim^2");
  }
  return Eigen::Map<const Operator>(v.data(), dim, dim);
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
  CMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

Operator commutator(const Operator& A, const Operator& B) {
  return A * B - B * A;
}

Operator anticommutator(const Operator& A, const Operator& B) {
  return A * B + B * A;
}

bool is_hermitian(const Operator& A, const Tolerances& tol) {
  if (A.rows() != A.cols()) return false;
  return (A - A.adjoint()).norm() <= tol.hermiticity * std::max(1.0, A.norm());
}

void require_hermitian(const Operator& A, const std::string& context,
                       const Tolerances& tol) {
  if (!is_hermitian(A, tol)) {
    std::ostringstream os;
    os << context << ": matrix is not hermitian (||A - A^dag||_F = "
       << (A - A.adjoint()).norm() << ", tolerance "
       << tol.hermiticity * std::max(1.0, A.norm()) << ")";
    throw NotHermitian(os.str());
  }
}

double min_eigenvalue(const Operator& A) {
  Tolerances tol;
  auto es = hermitian_eig(A, "min_eigenvalue", tol);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const Operator& A, const Tolerances& tol) {
  if (!is_hermitian(A, tol)) return false;
  return min_eigenvalue(A) >= -tol.psd_defect * std::max(1.0, A.norm());
}

void require_psd(const Operator& A, const std::string& context,
                 const Tolerances& tol) {
  require_hermitian(A, context, tol);
  double lo = min_eigenvalue(A);
  if (lo < -tol.psd_defect * std::max(1.0, A.norm())) {
    std::ostringstream os;
    os << context << ": matrix is not positive semidefinite (min eigenvalue "
       << lo << ")";
    throw NotPositive(os.str());
  }
}

bool is_strictly_positive(const Operator& A, const Tolerances& tol) {
  if (!is_hermitian(A, tol)) return false;
  double tr = A.trace().real();
  if (tr <= 0.0) return false;
  return min_eigenvalue(A) >
         tol.strict_positivity * (tr / static_cast<double>(A.rows()));
}

void require_strictly_positive(const Operator& A, const std::string& context,
                               const Tolerances& tol) {
  require_hermitian(A, context, tol);
  double tr = A.trace().real();
  double lo = min_eigenvalue(A);
  double threshold =
      tol.strict_positivity * (std::max(tr, 0.0) / static_cast<double>(A.rows()));
  if (tr <= 0.0 || lo <= threshold) {
    std::ostringstream os;
    os << context << ": matrix is not strictly positive (min eigenvalue " << lo
       << ", threshold " << threshold << ")";
    throw NotStrictlyPositive(os.str());
  }
}

Operator hermitize(const Operator& A) {
  return 0.5 * (A + A.adjoint()).eval();
}

Operator op_function(const std::function<double(double)>& f, const Operator& A,
                     const Tolerances& tol) {
  auto es = hermitian_eig(A, "op_function", tol);
  RVector d = es.eigenvalues();
  RVector fd(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) fd(i) = f(d(i));
  return es.eigenvectors() * fd.asDiagonal() * es.eigenvectors().adjoint();
}

Operator op_sqrt(const Operator& A, const Tolerances& tol) {
  require_psd(A, "op_sqrt", tol);
  return op_function([](double x) { return std::sqrt(std::max(x, 0.0)); }, A,
                     tol);
}

Operator op_power(const Operator& A, double alpha, const Tolerances& tol) {
  if (alpha == 0.0) {
    require_square(A, "op_power");
    return Operator::Identity(A.rows(), A.cols());
  }
  bool needs_strict = alpha < 0.0 || std::floor(alpha) != alpha;
  if (needs_strict) {
    require_strictly_positive(A, "op_power", tol);
  }
  return op_function([alpha](double x) { return std::pow(x, alpha); }, A, tol);
}

Operator op_log(const Operator& A, const Tolerances& tol) {
  require_strictly_positive(A, "op_log", tol);
  return op_function([](double x) { return std::log(x); }, A, tol);
}

Operator op_exp(const Operator& A, const Tolerances& tol) {
  return op_function([](double x) { return std::exp(x); }, A, tol);
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real();
  if (z.imag() >= 0) {
    os << "+" << z.imag() << "i";
  } else {
    os << z.imag() << "i";
  }
  return os.str();
}

}  // namespace qmpa
