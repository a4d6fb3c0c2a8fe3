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

#ifndef QMPA_SPECTRAL_HPP_
#define QMPA_SPECTRAL_HPP_

#include <vector>

#include "qmpa/model.hpp"
#include "qmpa/superoperator.hpp"
#include "qmpa/types.hpp"

namespace qmpa {

// Full (non-normal) eigendecomposition of a superoperator matrix.
struct Spectrum {
  CVector eigenvalues;   // length N^2
  CMatrix eigenvectors;  // right eigenvectors, unit columns
};
Spectrum full_spectrum(const Superoperator& S);

// One cluster of peripheral eigenvalues: nearby eigenvalues (within the
// cluster tolerance) merged to their mean, with the summed multiplicity.
struct PeripheralCluster {
  Complex value;
  int algebraic_multiplicity;
};

// Peripheral part of the spectrum: |lambda| = 1 (discrete) or Re lambda = 0
// (continuous), within the peripheral tolerance (scaled by ||L||_F in the
// continuous case). Clusters are sorted by descending multiplicity, then by
// eigenvalue argument.
std::vector<PeripheralCluster> asymptotic_spectrum(const Superoperator& S,
                                                   ModelKind kind,
                                                   const Tolerances& tol = {});

// Hilbert-Schmidt-orthonormal basis of Ker(S - lambda I), extracted by SVD
// with threshold tol.kernel * sigma_max. Empty when lambda is not an
// eigenvalue.
std::vector<Operator> attractor_basis(const Superoperator& S, Complex lambda,
                                      const Tolerances& tol = {});

// One peripheral eigenvalue with eigenoperator bases in both pictures. The
// Schrodinger basis spans Ker(S - lambda I); the Heisenberg basis spans
// Ker(S^dag - conj(lambda) I). Both are Hilbert-Schmidt orthonormal and have
// equal dimension (= the algebraic multiplicity; a defective peripheral part
// throws DefectivePeripheralPart).
struct EigenspacePair {
  Complex value;
  int multiplicity;
  std::vector<Operator> schrodinger;
  std::vector<Operator> heisenberg;
};

struct AttractorDecomposition {
  ModelKind kind = ModelKind::kDiscrete;
  int dim = 0;
  std::vector<EigenspacePair> spaces;
  // Full eigenvalue list of the Schrodinger generator, for convergence-rate
  // diagnostics.
  CVector all_eigenvalues;
  // Largest non-peripheral |lambda| (discrete) or largest non-peripheral
  // Re lambda (continuous); 0 / -inf when every eigenvalue is peripheral.
  double subperipheral_bound = 0.0;

  int total_multiplicity() const;
  // The cluster holding the stationary eigenvalue (1 for discrete, 0 for
  // continuous), or nullptr when absent.
  const EigenspacePair* stationary_space() const;
  const EigenspacePair* space_at(Complex lambda, double cluster_tol) const;
};

// Compute the full attractor decomposition of a model: peripheral spectrum,
// eigenoperator bases in both pictures, residual checks, and conjugation
// closure of the peripheral spectrum.
AttractorDecomposition decompose(const Model& m);

// Same computation on a raw superoperator matrix (also used to analyze maps
// that do not come from a model file).
AttractorDecomposition decompose_superoperator(const Superoperator& S,
                                               ModelKind kind,
                                               const Tolerances& tol = {});

// Orthonormal kernel basis of an arbitrary rectangular matrix, by SVD with
// threshold tol.kernel * sigma_max. Columns span Ker(M).
CMatrix svd_kernel(const CMatrix& M, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Span utilities
// ---------------------------------------------------------------------------

// Matrix whose columns are the vectorized operators.
CMatrix span_matrix(const std::vector<Operator>& ops);

// Orthogonal projector onto the span of the (vectorized) operators.
CMatrix span_projector(const std::vector<Operator>& ops);

// Frobenius distance ||P_a - P_b||_F between span projectors.
double projector_distance(const std::vector<Operator>& a,
                          const std::vector<Operator>& b);

// ||(I - P_outer) P_inner||_F; zero iff span(inner) is contained in
// span(outer).
double containment_residual(const std::vector<Operator>& inner,
                            const std::vector<Operator>& outer);

// Residual of X against the span: ||(I - P) vec(X)|| / ||X||_F.
double span_membership_residual(const Operator& X,
                                const CMatrix& span_proj);

// Oblique spectral projector onto the direct sum of peripheral eigenspaces
// (all peripheral clusters), computed from kernel bases of S - lambda I and
// S^dag - conj(lambda) I as P = sum_lambda V (W^dag V)^{-1} W^dag. Needs no
// reference state.
Superoperator peripheral_projector(const Superoperator& S, ModelKind kind,
                                   const Tolerances& tol = {});

// Same construction restricted to the stationary eigenvalue (1 for discrete,
// 0 for continuous).
Superoperator fixed_point_projector(const Superoperator& S, ModelKind kind,
                                    const Tolerances& tol = {});

}  // namespace qmpa

#endif  // QMPA_SPECTRAL_HPP_
