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

#include "qmpa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qmpa/operator_algebra.hpp"

namespace qmpa {

namespace {

bool is_peripheral(Complex lambda, ModelKind kind, double threshold) {
  if (kind == ModelKind::kDiscrete) {
    return std::abs(std::abs(lambda) - 1.0) <= threshold;
  }
  return std::abs(lambda.real()) <= threshold;
}

double peripheral_threshold(const Superoperator& S, ModelKind kind,
                            const Tolerances& tol) {
  if (kind == ModelKind::kDiscrete) return tol.peripheral;
  return tol.peripheral * S.matrix().norm();
}

struct ClusterAccumulator {
  Complex sum = 0.0;
  int count = 0;
  Complex mean() const { return sum / static_cast<double>(count); }
};

}  // namespace

CMatrix svd_kernel(const CMatrix& M, const Tolerances& tol) {
  Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double threshold = tol.kernel * smax;
  int kdim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= threshold) ++kdim;
  }
  // Singular values are sorted descending, so the kernel occupies the
  // trailing columns of V. A rank-deficient M with fewer rows than columns
  // hides extra kernel directions beyond the singular value count.
  Eigen::Index cols = M.cols();
  Eigen::Index extra = cols - sv.size();
  return svd.matrixV().rightCols(kdim + extra);
}

Spectrum full_spectrum(const Superoperator& S) {
  Eigen::ComplexEigenSolver<CMatrix> es(S.matrix());
  if (es.info() != Eigen::Success) {
    throw EigensolverFailure("full_spectrum: eigensolver did not converge");
  }
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

std::vector<PeripheralCluster> asymptotic_spectrum(const Superoperator& S,
                                                   ModelKind kind,
                                                   const Tolerances& tol) {
  Spectrum spectrum = full_spectrum(S);
  double threshold = peripheral_threshold(S, kind, tol);

  std::vector<ClusterAccumulator> clusters;
  for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
    Complex lambda = spectrum.eigenvalues(i);
    if (!is_peripheral(lambda, kind, threshold)) continue;
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(lambda - c.mean()) <= tol.cluster) {
        c.sum += lambda;
        ++c.count;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({lambda, 1});
  }

  std::vector<PeripheralCluster> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) {
    out.push_back({c.mean(), c.count});
  }
  std::sort(out.begin(), out.end(),
            [](const PeripheralCluster& a, const PeripheralCluster& b) {
              if (a.algebraic_multiplicity != b.algebraic_multiplicity) {
                return a.algebraic_multiplicity > b.algebraic_multiplicity;
              }
              return std::arg(a.value) < std::arg(b.value);
            });
  return out;
}

std::vector<Operator> attractor_basis(const Superoperator& S, Complex lambda,
                                      const Tolerances& tol) {
  Eigen::Index n2 = S.matrix().rows();
  CMatrix shifted = S.matrix() - lambda * CMatrix::Identity(n2, n2);
  CMatrix V = svd_kernel(shifted, tol);
  std::vector<Operator> out;
  out.reserve(V.cols());
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    out.push_back(devectorize(V.col(c), S.dim()));
  }
  return out;
}

int AttractorDecomposition::total_multiplicity() const {
  int total = 0;
  for (const auto& s : spaces) total += s.multiplicity;
  return total;
}

const EigenspacePair* AttractorDecomposition::stationary_space() const {
  Complex target = kind == ModelKind::kDiscrete ? Complex(1, 0) : Complex(0, 0);
  // The stationary eigenvalue is isolated from the rest of the peripheral
  // spectrum by far more than any sensible cluster tolerance.
  return space_at(target, 1e-6);
}

const EigenspacePair* AttractorDecomposition::space_at(
    Complex lambda, double cluster_tol) const {
  for (const auto& s : spaces) {
    if (std::abs(s.value - lambda) <= cluster_tol) return &s;
  }
  return nullptr;
}

namespace {

void check_basis_residuals(const Superoperator& G, Complex lambda,
                           const std::vector<Operator>& basis,
                           const Tolerances& tol, const char* picture) {
  double scale = G.matrix().norm();
  for (const Operator& X : basis) {
    double residual = (G.apply(X) - lambda * X).norm();
    if (residual > tol.eigen_residual * std::max(1.0, scale) * X.norm()) {
      std::ostringstream os;
      os << "decompose: " << picture << " eigenoperator residual " << residual
         << " at eigenvalue " << format_complex(lambda) << " exceeds "
         << tol.eigen_residual * std::max(1.0, scale) * X.norm();
      throw EigensolverFailure(os.str());
    }
  }
}

}  // namespace

AttractorDecomposition decompose_superoperator(const Superoperator& S,
                                               ModelKind kind,
                                               const Tolerances& tol) {
  AttractorDecomposition out;
  out.kind = kind;
  out.dim = S.dim();

  Spectrum spectrum = full_spectrum(S);
  out.all_eigenvalues = spectrum.eigenvalues;

  std::vector<PeripheralCluster> clusters = asymptotic_spectrum(S, kind, tol);
  Superoperator Sd = S.adjoint();

  for (const auto& c : clusters) {
    EigenspacePair pair;
    pair.value = c.value;
    pair.multiplicity = c.algebraic_multiplicity;
    pair.schrodinger = attractor_basis(S, c.value, tol);
    pair.heisenberg = attractor_basis(Sd, std::conj(c.value), tol);

    if (static_cast<int>(pair.schrodinger.size()) < pair.multiplicity ||
        static_cast<int>(pair.heisenberg.size()) < pair.multiplicity) {
      std::ostringstream os;
      os << "peripheral eigenvalue " << format_complex(c.value)
         << " is defective: algebraic multiplicity " << pair.multiplicity
         << ", eigenoperator count " << pair.schrodinger.size() << " / "
         << pair.heisenberg.size()
         << "; the asymptotic expansion does not exist";
      throw DefectivePeripheralPart(os.str());
    }
    if (pair.schrodinger.size() != pair.heisenberg.size() ||
        static_cast<int>(pair.schrodinger.size()) != pair.multiplicity) {
      std::ostringstream os;
      os << "decompose: inconsistent multiplicities at "
         << format_complex(c.value) << " (algebraic " << pair.multiplicity
         << ", kernels " << pair.schrodinger.size() << " / "
         << pair.heisenberg.size() << "); adjust cluster/kernel tolerances";
      throw EigensolverFailure(os.str());
    }

    check_basis_residuals(S, pair.value, pair.schrodinger, tol, "Schrodinger");
    check_basis_residuals(Sd, std::conj(pair.value), pair.heisenberg, tol,
                          "Heisenberg");
    out.spaces.push_back(std::move(pair));
  }

  // The peripheral spectrum of a hermiticity-preserving map is closed under
  // conjugation.
  for (const auto& s : out.spaces) {
    if (out.space_at(std::conj(s.value), tol.cluster) == nullptr) {
      std::ostringstream os;
      os << "decompose: peripheral spectrum not closed under conjugation at "
         << format_complex(s.value);
      throw ValidationError(os.str());
    }
  }

  // Largest non-peripheral modulus (discrete) or real part (continuous).
  double threshold = peripheral_threshold(S, kind, tol);
  double bound = kind == ModelKind::kDiscrete
                     ? 0.0
                     : -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
    Complex lambda = spectrum.eigenvalues(i);
    if (is_peripheral(lambda, kind, threshold)) continue;
    if (kind == ModelKind::kDiscrete) {
      bound = std::max(bound, std::abs(lambda));
    } else {
      bound = std::max(bound, lambda.real());
    }
  }
  out.subperipheral_bound = bound;
  return out;
}

AttractorDecomposition decompose(const Model& m) {
  return decompose_superoperator(generator_schrodinger(m), model_kind(m),
                                 model_tolerances(m));
}

CMatrix span_matrix(const std::vector<Operator>& ops) {
  if (ops.empty()) return CMatrix();
  Eigen::Index n2 = ops.front().size();
  CMatrix M(n2, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].size() != n2) {
      throw DimensionError("span_matrix: operators differ in shape");
    }
    M.col(static_cast<Eigen::Index>(i)) = vectorize(ops[i]);
  }
  return M;
}

CMatrix span_projector(const std::vector<Operator>& ops) {
  CMatrix M = span_matrix(ops);
  if (M.cols() == 0) return CMatrix();
  Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeThinU);
  const RVector& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-12 * smax) ++rank;
  }
  CMatrix Q = svd.matrixU().leftCols(rank);
  return Q * Q.adjoint();
}

double projector_distance(const std::vector<Operator>& a,
                          const std::vector<Operator>& b) {
  if (a.empty() && b.empty()) return 0.0;
  Eigen::Index n2 = a.empty() ? b.front().size() : a.front().size();
  CMatrix Pa = a.empty() ? CMatrix(CMatrix::Zero(n2, n2)) : span_projector(a);
  CMatrix Pb = b.empty() ? CMatrix(CMatrix::Zero(n2, n2)) : span_projector(b);
  if (Pa.rows() != Pb.rows()) {
    throw DimensionError("projector_distance: spans live in different spaces");
  }
  return (Pa - Pb).norm();
}

double containment_residual(const std::vector<Operator>& inner,
                            const std::vector<Operator>& outer) {
  if (inner.empty()) return 0.0;
  Eigen::Index n2 = inner.front().size();
  CMatrix Pi = span_projector(inner);
  CMatrix Po =
      outer.empty() ? CMatrix(CMatrix::Zero(n2, n2)) : span_projector(outer);
  return ((CMatrix::Identity(n2, n2) - Po) * Pi).norm();
}

double span_membership_residual(const Operator& X, const CMatrix& span_proj) {
  double nx = X.norm();
  if (nx == 0.0) return 0.0;
  CVector v = vectorize(X);
  if (span_proj.size() == 0) return 1.0;
  return (v - span_proj * v).norm() / nx;
}

namespace {

Superoperator oblique_projector(const Superoperator& S,
                                const std::vector<PeripheralCluster>& clusters,
                                const Tolerances& tol) {
  Eigen::Index n2 = S.matrix().rows();
  CMatrix P = CMatrix::Zero(n2, n2);
  Superoperator Sd = S.adjoint();
  for (const auto& c : clusters) {
    CMatrix V = svd_kernel(
        S.matrix() - c.value * CMatrix::Identity(n2, n2), tol);
    CMatrix W = svd_kernel(
        Sd.matrix() - std::conj(c.value) * CMatrix::Identity(n2, n2), tol);
    if (V.cols() != W.cols() ||
        V.cols() < static_cast<Eigen::Index>(c.algebraic_multiplicity)) {
      std::ostringstream os;
      os << "spectral projector: defective peripheral eigenvalue "
         << format_complex(c.value);
      throw DefectivePeripheralPart(os.str());
    }
    CMatrix cross = W.adjoint() * V;
    Eigen::FullPivLU<CMatrix> lu(cross);
    if (!lu.isInvertible()) {
      std::ostringstream os;
      os << "spectral projector: left/right eigenspace pairing singular at "
         << format_complex(c.value) << " (defective peripheral part)";
      throw DefectivePeripheralPart(os.str());
    }
    P += V * lu.solve(W.adjoint());
  }
  return Superoperator(S.dim(), std::move(P));
}

}  // namespace

Superoperator peripheral_projector(const Superoperator& S, ModelKind kind,
                                   const Tolerances& tol) {
  return oblique_projector(S, asymptotic_spectrum(S, kind, tol), tol);
}

Superoperator fixed_point_projector(const Superoperator& S, ModelKind kind,
                                    const Tolerances& tol) {
  Complex target = kind == ModelKind::kDiscrete ? Complex(1, 0) : Complex(0, 0);
  std::vector<PeripheralCluster> clusters;
  for (const auto& c : asymptotic_spectrum(S, kind, tol)) {
    if (std::abs(c.value - target) <= 1e-6) {
      clusters.push_back(c);
      break;
    }
  }
  if (clusters.empty()) {
    // No stationary eigenvalue: project onto nothing.
    return Superoperator::zero(S.dim());
  }
  return oblique_projector(S, clusters, tol);
}

}  // namespace qmpa
