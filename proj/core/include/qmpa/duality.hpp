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

#ifndef QMPA_DUALITY_HPP_
#define QMPA_DUALITY_HPP_

#include <cstdint>

#include "qmpa/monotone.hpp"
#include "qmpa/spectral.hpp"
#include "qmpa/types.hpp"

namespace qmpa {

// k-scalar product (X, Y)_k = (X, k(Delta_{sigma1,sigma2})(Y) sigma2^{-1})
// built from two faithful sub-invariant states. Conjugate-linear in X. For
// operator monotone k this is positive definite, and the two pictures of the
// evolution are mutually adjoint with respect to it.
Complex k_scalar_product(const Operator& X, const Operator& Y,
                         const MonotoneFunction& k, const Operator& sigma1,
                         const Operator& sigma2, const Tolerances& tol = {});

// The picture-switching bijection X -> k(Delta_{sigma1,sigma2})(X)
// sigma2^{-1}. Maps eigenoperators of the Schrodinger picture at lambda to
// eigenoperators of the Heisenberg picture at conj(lambda), on the
// peripheral spectrum.
Operator to_heisenberg(const Operator& X, const MonotoneFunction& k,
                       const Operator& sigma1, const Operator& sigma2,
                       const Tolerances& tol = {});

// Closed form of the bijection for power functions, valid for every real
// alpha: X -> sigma1^alpha X sigma2^{-alpha-1}.
Operator power_bijection(const Operator& X, double alpha,
                         const Operator& sigma1, const Operator& sigma2,
                         const Tolerances& tol = {});

// log(Delta_{sigma1,sigma2}) acts as the endomorphism
// X -> log(sigma1) X - X log(sigma2); it preserves the attractor space.
Operator log_endomorphism(const Operator& X, const Operator& sigma1,
                          const Operator& sigma2, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Dual bases
// ---------------------------------------------------------------------------

struct DualEigenspace {
  Complex value;
  // Primal basis, k-orthogonalized within the block by modified Gram-Schmidt
  // (directions of the incoming basis are kept; elements are not rescaled,
  // so an already k-orthogonal input passes through unchanged).
  std::vector<Operator> primal;
  // dual[i] = to_heisenberg(primal[i]) / (primal[i], primal[i])_k. Lives in
  // the Heisenberg eigenspace at conj(value).
  std::vector<Operator> dual;
};

struct DualBasis {
  Operator sigma1, sigma2;
  std::vector<DualEigenspace> spaces;

  int total() const;
  // Flattened (block-major) access.
  const Operator& primal_at(int flat) const;
  const Operator& dual_at(int flat) const;
  Complex value_at(int flat) const;
};

// Build the biorthogonal dual family of the attractor bases:
//   Tr{ (X^{l2,j})^dag X_{l1,i} } = delta_{l1 l2} delta_{ij}
// across all blocks. Throws SingularGram when a block's basis is degenerate
// under the k-scalar product (relative pivot below tol.gram_pivot).
DualBasis dual_basis(const AttractorDecomposition& d, const MonotoneFunction& k,
                     const Operator& sigma1, const Operator& sigma2,
                     const Tolerances& tol = {});

// Full pairing matrix M(i, j) = hs_inner(dual_i, primal_j) over the
// flattened index; equals the identity within tolerance.
CMatrix pairing_matrix(const DualBasis& db);

// Orthogonality relations of the k-scalar product:
//  - attractors associated with different peripheral eigenvalues are
//    k-orthogonal;
//  - attractors are k-orthogonal to the range of (G - lambda I), probed with
//    `samples` seeded random operators per eigenvalue.
// Reported values are normalized by the k-norms of the factors.
struct KOrthogonalityReport {
  double max_cross_block = 0.0;
  double max_range_residual = 0.0;
  int samples = 0;
  double tolerance = 0.0;
  bool pass = false;
};
KOrthogonalityReport k_orthogonality_report(
    const Model& m, const AttractorDecomposition& d, const MonotoneFunction& k,
    const Operator& sigma1, const Operator& sigma2, std::uint64_t seed,
    int samples = 8);

}  // namespace qmpa

#endif  // QMPA_DUALITY_HPP_
