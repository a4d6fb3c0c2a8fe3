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

#ifndef QMPA_OPERATOR_ALGEBRA_HPP_
#define QMPA_OPERATOR_ALGEBRA_HPP_

#include <functional>

#include "qmpa/types.hpp"

namespace qmpa {

// Hilbert-Schmidt inner product Tr{A^dag B}; conjugate-linear in the first
// argument.
Complex hs_inner(const Operator& A, const Operator& B);

// Frobenius (Hilbert-Schmidt) norm.
double frob(const Operator& A);

// Column-stacking vectorization: vec(X)[i + N*j] = X(i, j). With this
// convention vec(A X B) = kron(B^T, A) vec(X).
CVector vectorize(const Operator& X);
Operator devectorize(const CVector& v, int dim);

// Dense Kronecker product.
CMatrix kron(const CMatrix& A, const CMatrix& B);

// Commutator [A, B] = AB - BA and anticommutator {A, B} = AB + BA.
Operator commutator(const Operator& A, const Operator& B);
Operator anticommutator(const Operator& A, const Operator& B);

// Predicates. The require_* variants throw (NotHermitian, NotPositive,
// NotStrictlyPositive) with a context string on failure.
bool is_hermitian(const Operator& A, const Tolerances& tol = {});
void require_hermitian(const Operator& A, const std::string& context,
                       const Tolerances& tol = {});
bool is_psd(const Operator& A, const Tolerances& tol = {});
void require_psd(const Operator& A, const std::string& context,
                 const Tolerances& tol = {});
// Strict positivity of a trace-normalized state: min eig > tol * (tr A / N).
bool is_strictly_positive(const Operator& A, const Tolerances& tol = {});
void require_strictly_positive(const Operator& A, const std::string& context,
                               const Tolerances& tol = {});

// Exact hermitian part (A + A^dag)/2.
Operator hermitize(const Operator& A);

// Smallest eigenvalue of a hermitian matrix.
double min_eigenvalue(const Operator& A);

// Spectral calculus f(A) = U f(D) U^dag for hermitian A. The scalar function
// is applied to each eigenvalue; the result is assembled from the
// eigendecomposition, never from a power series.
Operator op_function(const std::function<double(double)>& f,
                     const Operator& A, const Tolerances& tol = {});

// Convenience wrappers around op_function. op_power/op_log/op_sqrt_inv
// require strict positivity for negative/fractional powers and logarithms.
Operator op_sqrt(const Operator& A, const Tolerances& tol = {});
Operator op_power(const Operator& A, double alpha, const Tolerances& tol = {});
Operator op_log(const Operator& A, const Tolerances& tol = {});
Operator op_exp(const Operator& A, const Tolerances& tol = {});

// Short human-readable rendering of a complex number for diagnostics.
std::string format_complex(Complex z);

}  // namespace qmpa

#endif  // QMPA_OPERATOR_ALGEBRA_HPP_
