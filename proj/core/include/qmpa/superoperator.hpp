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

#ifndef QMPA_SUPEROPERATOR_HPP_
#define QMPA_SUPEROPERATOR_HPP_

#include <vector>

#include "qmpa/types.hpp"

namespace qmpa {

// A linear map on operators, stored as its N^2 x N^2 matrix in the
// column-stacking convention (see vectorize). The Hilbert-Schmidt adjoint of
// the map is exactly the conjugate transpose of this matrix.
class Superoperator {
 public:
  Superoperator(int dim, CMatrix mat);

  static Superoperator identity(int dim);
  static Superoperator zero(int dim);

  int dim() const { return dim_; }          // Hilbert-space dimension N
  const CMatrix& matrix() const { return mat_; }  // N^2 x N^2

  // Apply the map to an operator: devectorize(matrix * vectorize(X)).
  Operator apply(const Operator& X) const;

  // Hilbert-Schmidt adjoint (conjugate transpose of the matrix).
  Superoperator adjoint() const;

  Superoperator operator+(const Superoperator& other) const;
  Superoperator operator-(const Superoperator& other) const;
  Superoperator operator*(const Superoperator& other) const;  // composition
  Superoperator operator*(Complex scale) const;

 private:
  int dim_;
  CMatrix mat_;
};

// Left multiplication L_P: X -> P X, as a superoperator (kron(I, P)).
Superoperator left_mult_super(const Operator& P);

// Right multiplication R_P: X -> X P, as a superoperator (kron(P^T, I)).
Superoperator right_mult_super(const Operator& P);

// Relative modular operator Delta_{Q,P} = L_Q R_{P^{-1}}: X -> Q X P^{-1}.
// P must be strictly positive.
Superoperator relative_modular(const Operator& Q, const Operator& P,
                               const Tolerances& tol = {});

// Choi matrix of a Kraus map T(X) = sum_j A_j X A_j^dag:
// C = sum_j vec(A_j) vec(A_j)^dag. Positive semidefinite by construction.
CMatrix choi_matrix(const std::vector<Operator>& kraus);

// Choi matrix obtained by reshuffling an arbitrary superoperator matrix:
// C[(i + N j), (k + N l)] = S[(i + N k), (j + N l)]. Agrees with choi_matrix
// when S is the matrix of the Kraus map; has negative eigenvalues exactly
// when the map is not completely positive.
CMatrix choi_from_super(const Superoperator& S);

}  // namespace qmpa

#endif  // QMPA_SUPEROPERATOR_HPP_
