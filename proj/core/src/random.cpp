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

#include "qmpa/random.hpp"

#include <cmath>

namespace qmpa {

namespace {

CMatrix gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix G(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      G(i, j) = Complex(normal(rng), normal(rng)) / std::sqrt(2.0);
    }
  }
  return G;
}

// Phase-corrected thin QR: Q with R's diagonal made real positive, which
// turns QR of a Gaussian block into a Haar-distributed isometry.
CMatrix haar_isometry(Rng& rng, int rows, int cols) {
  CMatrix G = gaussian(rng, rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(G);
  CMatrix Q = qr.householderQ() * CMatrix::Identity(rows, cols);
  CMatrix R = Q.adjoint() * G;
  for (int j = 0; j < cols; ++j) {
    Complex d = R(j, j);
    double a = std::abs(d);
    Q.col(j) *= a > 0 ? d / a : Complex(1.0, 0.0);
  }
  return Q;
}

}  // namespace

Operator random_matrix(Rng& rng, int dim) { return gaussian(rng, dim, dim); }

Operator random_hermitian(Rng& rng, int dim) {
  Operator G = gaussian(rng, dim, dim);
  return (G + G.adjoint()) / 2.0;
}

Operator random_state(Rng& rng, int dim) {
  Operator G = gaussian(rng, dim, dim);
  Operator W = G * G.adjoint();
  return W / W.trace().real();
}

Operator random_unitary(Rng& rng, int dim) {
  return haar_isometry(rng, dim, dim);
}

std::vector<Operator> random_kraus_channel(Rng& rng, int dim,
                                           int kraus_count) {
  // Stacked Kraus block [A_1; ...; A_k] is an exact isometry, so
  // sum_j A_j^dag A_j = I to machine precision.
  CMatrix V = haar_isometry(rng, kraus_count * dim, dim);
  std::vector<Operator> out;
  out.reserve(kraus_count);
  for (int j = 0; j < kraus_count; ++j) {
    out.push_back(V.middleRows(j * dim, dim));
  }
  return out;
}

std::vector<Operator> random_unitary_mixture(Rng& rng, int dim, int terms) {
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  std::vector<double> weights(terms);
  double total = 0.0;
  for (double& w : weights) {
    w = uniform(rng);
    total += w;
  }
  std::vector<Operator> out;
  out.reserve(terms);
  for (int j = 0; j < terms; ++j) {
    out.push_back(std::sqrt(weights[j] / total) * random_unitary(rng, dim));
  }
  return out;
}

}  // namespace qmpa
