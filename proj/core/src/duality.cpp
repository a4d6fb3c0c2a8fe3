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

#include "qmpa/duality.hpp"

#include <cmath>
#include <sstream>

#include "qmpa/operator_algebra.hpp"
#include "qmpa/random.hpp"

namespace qmpa {

Complex k_scalar_product(const Operator& X, const Operator& Y,
                         const MonotoneFunction& k, const Operator& sigma1,
                         const Operator& sigma2, const Tolerances& tol) {
  Operator KY = k_of_delta_apply(k, sigma1, sigma2, Y, tol);
  return hs_inner(X, KY * op_power(sigma2, -1.0, tol));
}

Operator to_heisenberg(const Operator& X, const MonotoneFunction& k,
                       const Operator& sigma1, const Operator& sigma2,
                       const Tolerances& tol) {
  return k_of_delta_apply(k, sigma1, sigma2, X, tol) *
         op_power(sigma2, -1.0, tol);
}

Operator power_bijection(const Operator& X, double alpha,
                         const Operator& sigma1, const Operator& sigma2,
                         const Tolerances& tol) {
  return op_power(sigma1, alpha, tol) * X *
         op_power(sigma2, -alpha - 1.0, tol);
}

Operator log_endomorphism(const Operator& X, const Operator& sigma1,
                          const Operator& sigma2, const Tolerances& tol) {
  return op_log(sigma1, tol) * X - X * op_log(sigma2, tol);
}

int DualBasis::total() const {
  int n = 0;
  for (const auto& s : spaces) n += static_cast<int>(s.primal.size());
  return n;
}

namespace {

const DualEigenspace& locate(const DualBasis& db, int flat, int* offset) {
  int at = flat;
  for (const auto& s : db.spaces) {
    int n = static_cast<int>(s.primal.size());
    if (at < n) {
      *offset = at;
      return s;
    }
    at -= n;
  }
  throw DimensionError("DualBasis: flat index out of range");
}

}  // namespace

const Operator& DualBasis::primal_at(int flat) const {
  int offset = 0;
  const DualEigenspace& s = locate(*this, flat, &offset);
  return s.primal[offset];
}

const Operator& DualBasis::dual_at(int flat) const {
  int offset = 0;
  const DualEigenspace& s = locate(*this, flat, &offset);
  return s.dual[offset];
}

Complex DualBasis::value_at(int flat) const {
  int offset = 0;
  return locate(*this, flat, &offset).value;
}

DualBasis dual_basis(const AttractorDecomposition& d, const MonotoneFunction& k,
                     const Operator& sigma1, const Operator& sigma2,
                     const Tolerances& tol) {
  DualBasis db;
  db.sigma1 = sigma1;
  db.sigma2 = sigma2;

  for (const auto& space : d.spaces) {
    DualEigenspace out;
    out.value = space.value;
    out.primal = space.schrodinger;

    // In-block modified Gram-Schmidt under the k-scalar product, without
    // rescaling: an already k-orthogonal basis passes through unchanged, and
    // each element keeps its own k-norm. A second projection pass cleans up
    // the rounding left by the first.
    std::vector<double> norm2(out.primal.size(), 0.0);
    for (std::size_t i = 0; i < out.primal.size(); ++i) {
      double before =
          k_scalar_product(out.primal[i], out.primal[i], k, sigma1, sigma2,
                           tol)
              .real();
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < i; ++j) {
          Complex coeff = k_scalar_product(out.primal[j], out.primal[i], k,
                                           sigma1, sigma2, tol) /
                          norm2[j];
          out.primal[i] -= coeff * out.primal[j];
        }
      }
      double after =
          k_scalar_product(out.primal[i], out.primal[i], k, sigma1, sigma2,
                           tol)
              .real();
      if (!(before > 0.0) || after <= tol.gram_pivot * before) {
        std::ostringstream os;
        os << "dual_basis: basis of the eigenspace at "
           << format_complex(space.value)
           << " is degenerate under the k-scalar product (pivot ratio "
           << after / before << ")";
        throw SingularGram(os.str());
      }
      norm2[i] = after;
    }

    out.dual.reserve(out.primal.size());
    for (std::size_t i = 0; i < out.primal.size(); ++i) {
      out.dual.push_back(
          to_heisenberg(out.primal[i], k, sigma1, sigma2, tol) / norm2[i]);
    }
    db.spaces.push_back(std::move(out));
  }
  return db;
}

CMatrix pairing_matrix(const DualBasis& db) {
  int n = db.total();
  CMatrix M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      M(i, j) = hs_inner(db.dual_at(i), db.primal_at(j));
    }
  }
  return M;
}

KOrthogonalityReport k_orthogonality_report(
    const Model& m, const AttractorDecomposition& d, const MonotoneFunction& k,
    const Operator& sigma1, const Operator& sigma2, std::uint64_t seed,
    int samples) {
  const Tolerances& tol = model_tolerances(m);
  KOrthogonalityReport report;
  report.samples = samples;
  report.tolerance = tol.check;

  auto knorm = [&](const Operator& X) {
    return std::sqrt(std::abs(
        k_scalar_product(X, X, k, sigma1, sigma2, tol).real()));
  };

  // Attractors of distinct peripheral eigenvalues are k-orthogonal.
  for (std::size_t a = 0; a < d.spaces.size(); ++a) {
    for (std::size_t b = a + 1; b < d.spaces.size(); ++b) {
      for (const Operator& X : d.spaces[a].schrodinger) {
        for (const Operator& Y : d.spaces[b].schrodinger) {
          double v = std::abs(k_scalar_product(X, Y, k, sigma1, sigma2, tol)) /
                     (knorm(X) * knorm(Y));
          report.max_cross_block = std::max(report.max_cross_block, v);
        }
      }
    }
  }

  // Attractors at lambda are k-orthogonal to the range of (G - lambda I),
  // probed with seeded random directions.
  Superoperator S = generator_schrodinger(m);
  Rng rng = make_rng(seed);
  for (const auto& space : d.spaces) {
    for (int s = 0; s < samples; ++s) {
      Operator R = random_matrix(rng, d.dim);
      Operator Y = S.apply(R) - space.value * R;
      double ny = knorm(Y);
      if (ny < 1e-14) continue;
      for (const Operator& X : space.schrodinger) {
        double v = std::abs(k_scalar_product(X, Y, k, sigma1, sigma2, tol)) /
                   (knorm(X) * ny);
        report.max_range_residual = std::max(report.max_range_residual, v);
      }
    }
  }

  report.pass = report.max_cross_block <= report.tolerance &&
                report.max_range_residual <= report.tolerance;
  return report;
}

}  // namespace qmpa
