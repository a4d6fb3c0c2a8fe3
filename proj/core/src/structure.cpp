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

#include "qmpa/structure.hpp"

#include <cmath>
#include <sstream>

#include "qmpa/operator_algebra.hpp"

namespace qmpa {

namespace {

// Assemble stacked vectorized equation blocks into one tall matrix and return
// the devectorized orthonormal kernel basis.
std::vector<Operator> solve_blocks(const std::vector<CMatrix>& blocks, int dim,
                                   const Tolerances& tol) {
  Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;
  CMatrix M(static_cast<Eigen::Index>(blocks.size()) * n2, n2);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    M.middleRows(static_cast<Eigen::Index>(b) * n2, n2) = blocks[b];
  }
  CMatrix K = svd_kernel(M, tol);
  std::vector<Operator> out;
  out.reserve(K.cols());
  for (Eigen::Index c = 0; c < K.cols(); ++c) {
    out.push_back(devectorize(K.col(c), dim));
  }
  return out;
}

std::vector<Operator> qmch_blocks(const DiscreteModel& m, const Operator& inv,
                                  Complex lambda) {
  int n = m.dim;
  CMatrix eye = CMatrix::Identity(n, n);
  CMatrix inv_t = inv.transpose();
  std::vector<CMatrix> blocks;
  blocks.reserve(4 * m.kraus.size());
  for (const Operator& A : m.kraus) {
    Operator Ad = A.adjoint();
    // A (X inv) = lambda (X inv) A
    blocks.push_back(kron(inv_t, A) - lambda * kron((inv * A).transpose(), eye));
    // A^dag (X inv) = conj(lambda) (X inv) A^dag
    blocks.push_back(kron(inv_t, Ad) -
                     std::conj(lambda) * kron((inv * Ad).transpose(), eye));
    // A (inv X) = lambda (inv X) A
    blocks.push_back(kron(eye, A * inv) - lambda * kron(A.transpose(), inv));
    // A^dag (inv X) = conj(lambda) (inv X) A^dag
    blocks.push_back(kron(eye, Ad * inv) -
                     std::conj(lambda) * kron(Ad.transpose(), inv));
  }
  return solve_blocks(blocks, n, m.tol);
}

std::vector<Operator> qmds_blocks(const ContinuousModel& m, const Operator& inv,
                                  double a) {
  int n = m.dim;
  CMatrix eye = CMatrix::Identity(n, n);
  CMatrix inv_t = inv.transpose();
  std::vector<CMatrix> blocks;

  auto commute_right = [&](const Operator& B) {
    // [B, X inv] = 0: B X inv - X inv B
    blocks.push_back(kron(inv_t, B) - kron((inv * B).transpose(), eye));
  };
  auto commute_left = [&](const Operator& B) {
    // [B, inv X] = 0: B inv X - inv X B
    blocks.push_back(kron(eye, B * inv) - kron(B.transpose(), inv));
  };

  for (const Operator& L : m.lindblads) {
    commute_right(L);
    commute_right(L.adjoint());
    commute_left(L);
    commute_left(L.adjoint());
  }
  if (m.optical_potential.size() > 0 && m.optical_potential.norm() > 0) {
    commute_right(m.optical_potential);
    commute_left(m.optical_potential);
  }

  const Operator& H = m.hamiltonian;
  // [inv X, H] = a inv X: inv X H - H inv X - a inv X
  blocks.push_back(kron(H.transpose(), inv) - kron(eye, H * inv) -
                   a * kron(eye, inv));
  // [X inv, H] = a X inv: X inv H - H X inv - a X inv
  blocks.push_back(kron((inv * H).transpose(), eye) - kron(inv_t, H) -
                   a * kron(inv_t, eye));

  return solve_blocks(blocks, n, m.tol);
}

}  // namespace

std::vector<Operator> qmch_structure_space(const DiscreteModel& m,
                                           const Operator& sigma,
                                           Complex lambda) {
  require_strictly_positive(sigma, "structure-system reference state", m.tol);
  return qmch_blocks(m, op_power(sigma, -1.0, m.tol), lambda);
}

std::vector<Operator> qmch_structure_space_heisenberg(const DiscreteModel& m,
                                                      Complex lambda) {
  return qmch_blocks(m, Operator::Identity(m.dim, m.dim), lambda);
}

std::vector<Operator> qmds_structure_space(const ContinuousModel& m,
                                           const Operator& sigma, double a) {
  require_strictly_positive(sigma, "structure-system reference state", m.tol);
  return qmds_blocks(m, op_power(sigma, -1.0, m.tol), a);
}

std::vector<Operator> qmds_structure_space_heisenberg(const ContinuousModel& m,
                                                      double a) {
  return qmds_blocks(m, Operator::Identity(m.dim, m.dim), a);
}

namespace {

std::vector<Operator> structure_space(const Model& m, const Operator& sigma,
                                      Complex lambda, bool heisenberg) {
  if (std::holds_alternative<DiscreteModel>(m)) {
    const auto& dm = std::get<DiscreteModel>(m);
    return heisenberg ? qmch_structure_space_heisenberg(dm, lambda)
                      : qmch_structure_space(dm, sigma, lambda);
  }
  const auto& cm = std::get<ContinuousModel>(m);
  double a = lambda.imag();
  return heisenberg ? qmds_structure_space_heisenberg(cm, a)
                    : qmds_structure_space(cm, sigma, a);
}

}  // namespace

CrossValidationReport cross_validate(const Model& m, const Operator& sigma,
                                     bool sigma_stationary,
                                     const AttractorDecomposition& d) {
  const Tolerances& tol = model_tolerances(m);
  CrossValidationReport report;
  report.tolerance = tol.check;
  report.sufficiency =
      classify(m).trace == TraceClass::kPreserving || sigma_stationary;
  report.pass = true;

  for (const auto& space : d.spaces) {
    for (bool heisenberg : {false, true}) {
      // The Heisenberg eigenspace at conj(lambda) is characterized by the
      // sigma = I system at lambda.
      const std::vector<Operator>& spectral =
          heisenberg ? space.heisenberg : space.schrodinger;
      std::vector<Operator> structural =
          structure_space(m, sigma, space.value, heisenberg);

      CrossValidationRow row;
      row.value = space.value;
      row.heisenberg = heisenberg;
      row.spectral_dim = static_cast<int>(spectral.size());
      row.structure_dim = static_cast<int>(structural.size());
      row.containment = containment_residual(spectral, structural);

      if (report.sufficiency) {
        row.distance = projector_distance(spectral, structural);
        row.pass = row.distance <= tol.check &&
                   row.spectral_dim == row.structure_dim;
        if (!row.pass) {
          std::ostringstream os;
          os << "cross_validate: spectral and structure-system subspaces at "
             << format_complex(space.value)
             << (heisenberg ? " (Heisenberg)" : " (Schrodinger)")
             << " differ: dims " << row.spectral_dim << " vs "
             << row.structure_dim << ", projector distance " << row.distance;
          throw MismatchBeyondTolerance(os.str(), space.value, row.distance);
        }
      } else {
        // Necessity only: every spectral eigenoperator must solve the system.
        row.distance = 0.0;
        row.pass = row.containment <= tol.check;
        report.pass = report.pass && row.pass;
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

AlgebraClosureReport algebra_closure_check(const Model& m,
                                           const Operator& sigma,
                                           const AttractorDecomposition& d) {
  const Tolerances& tol = model_tolerances(m);
  require_strictly_positive(sigma, "algebra closure reference state", tol);
  Operator inv = op_power(sigma, -1.0, tol);
  Superoperator S = generator_schrodinger(m);
  double snorm = std::max(1.0, S.matrix().norm());
  bool discrete = model_kind(m) == ModelKind::kDiscrete;

  AlgebraClosureReport report;
  report.tolerance = tol.check;

  // Schrodinger picture: X1 sigma^{-1} X2 is an eigenoperator at the product
  // (discrete) or sum (continuous) of the eigenvalues.
  for (const auto& a : d.spaces) {
    for (const auto& b : d.spaces) {
      Complex combined =
          discrete ? a.value * b.value : a.value + b.value;
      for (const Operator& X1 : a.schrodinger) {
        for (const Operator& X2 : b.schrodinger) {
          Operator P = X1 * inv * X2;
          double np = P.norm();
          if (np < 1e-14) continue;
          double r = (S.apply(P) - combined * P).norm() / (snorm * np);
          report.max_product_residual =
              std::max(report.max_product_residual, r);
        }
      }
    }
  }

  // Heisenberg picture: the attractor span is a *-algebra, and its
  // fixed-point part a subalgebra.
  std::vector<Operator> heisenberg_all;
  for (const auto& space : d.spaces) {
    heisenberg_all.insert(heisenberg_all.end(), space.heisenberg.begin(),
                          space.heisenberg.end());
  }
  CMatrix proj = span_projector(heisenberg_all);
  for (const Operator& A : heisenberg_all) {
    report.max_heisenberg_residual =
        std::max(report.max_heisenberg_residual,
                 span_membership_residual(A.adjoint(), proj));
    for (const Operator& B : heisenberg_all) {
      Operator P = A * B;
      // A vanishing product is trivially inside the span; testing residual
      // noise against its own tiny norm would report spurious failures.
      if (P.norm() < 1e-13 * A.norm() * B.norm()) continue;
      report.max_heisenberg_residual =
          std::max(report.max_heisenberg_residual,
                   span_membership_residual(P, proj));
    }
  }

  const EigenspacePair* fixed = d.stationary_space();
  if (fixed != nullptr) {
    CMatrix fproj = span_projector(fixed->heisenberg);
    for (const Operator& A : fixed->heisenberg) {
      report.max_fixed_point_residual =
          std::max(report.max_fixed_point_residual,
                   span_membership_residual(A.adjoint(), fproj));
      for (const Operator& B : fixed->heisenberg) {
        Operator P = A * B;
        if (P.norm() < 1e-13 * A.norm() * B.norm()) continue;
        report.max_fixed_point_residual =
            std::max(report.max_fixed_point_residual,
                     span_membership_residual(P, fproj));
      }
    }
  }

  report.pass = report.max_product_residual <= report.tolerance &&
                report.max_heisenberg_residual <= report.tolerance &&
                report.max_fixed_point_residual <= report.tolerance;
  return report;
}

}  // namespace qmpa
