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

#ifndef QMPA_RANDOM_HPP_
#define QMPA_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "qmpa/model.hpp"
#include "qmpa/types.hpp"

namespace qmpa {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Matrix with independent standard complex Gaussian entries.
Operator random_matrix(Rng& rng, int dim);

// Random hermitian matrix (hermitized Gaussian).
Operator random_hermitian(Rng& rng, int dim);

// Random full-rank density matrix G G^dag / Tr(G G^dag).
Operator random_state(Rng& rng, int dim);

// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
Operator random_unitary(Rng& rng, int dim);

// Trace-preserving Kraus family: QR of a (k*dim) x dim Gaussian block gives
// an exact isometry, sliced into k Kraus operators.
std::vector<Operator> random_kraus_channel(Rng& rng, int dim, int kraus_count);

// Random mixture of unitary conjugations sum_j p_j U_j (.) U_j^dag
// (trace-preserving and unital).
std::vector<Operator> random_unitary_mixture(Rng& rng, int dim, int terms);

}  // namespace qmpa

#endif  // QMPA_RANDOM_HPP_
