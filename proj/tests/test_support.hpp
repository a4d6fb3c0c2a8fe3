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

// Shared fixtures for the test suite: the two bundled reference models and
// their exactly known attractor structure.
//
// Two-qubit controlled-NOT random-unitary channel (dim 4):
//   T(rho) = 1/2 (U12 rho U12 + U21 rho U21)
//   phi = |00>, psi = (|01> + |10> + |11>)/sqrt(3). Attractor spectrum
//   {1 (x5), -1 (x1)} with attractors {I, P_phi, P_psi, |phi><psi|,
//   |psi><phi|} and the antisymmetric X_minus1 at -1.
//
// Two-level jump semigroup with degenerate level pairs (dim 4):
//   H = diag(0, 0, 1, 1), L1 = sqrt(2)(|0><1| + |2><3|),
//   L2 = |1><0| + |3><2|. Attractor spectrum {0 (x2), +i, -i} with
//   attractors X1 = 2|0><0| + |1><1|, X2 = 2|2><2| + |3><3|,
//   Xp = 2|0><2| + |1><3| at +i and Xm = Xp^dag at -i.

#pragma once

#include <cmath>
#include <string>

#include "qmpa/qmpa.hpp"

#ifndef QMPA_MODELS_DIR
#error "QMPA_MODELS_DIR must point at the bundled model files"
#endif

namespace qmpa_test {

using namespace qmpa;

inline std::string models_dir() { return QMPA_MODELS_DIR; }

inline Model load_cnot() {
  return parse_model_file(models_dir() + "/cnot_ruo.json");
}
inline Model load_jump() {
  return parse_model_file(models_dir() + "/jump_lindblad.json");
}
inline Model load_damping() {
  return parse_model_file(models_dir() + "/amplitude_damping.json");
}

// --------------------------------------------------------------------------
// Controlled-NOT random-unitary channel: exact attractors
// --------------------------------------------------------------------------

inline CVector ket_phi() {
  CVector v = CVector::Zero(4);
  v(0) = 1.0;
  return v;
}

inline CVector ket_psi() {
  CVector v = CVector::Zero(4);
  v(1) = v(2) = v(3) = 1.0 / std::sqrt(3.0);
  return v;
}

inline Operator proj_phi() { return ket_phi() * ket_phi().adjoint(); }
inline Operator proj_psi() { return ket_psi() * ket_psi().adjoint(); }
inline Operator phi_psi() { return ket_phi() * ket_psi().adjoint(); }
inline Operator psi_phi() { return ket_psi() * ket_phi().adjoint(); }

// Eigenoperator at -1: antisymmetric on span{|01>,|10>,|11>}.
inline Operator x_minus1() {
  Operator X = Operator::Zero(4, 4);
  X(1, 2) = -1.0;
  X(1, 3) = 1.0;
  X(2, 1) = 1.0;
  X(2, 3) = -1.0;
  X(3, 1) = -1.0;
  X(3, 2) = 1.0;
  return X;
}

// Faithful stationary state (1/5)(I + P_phi).
inline Operator sigma_cnot() {
  return (Operator::Identity(4, 4) + proj_phi()) / 5.0;
}

inline std::vector<Operator> cnot_fixed_attractors() {
  return {Operator::Identity(4, 4), proj_phi(), proj_psi(), phi_psi(),
          psi_phi()};
}

// --------------------------------------------------------------------------
// Jump semigroup: exact attractors
// --------------------------------------------------------------------------

inline Operator basis_unit(int i, int j) {
  Operator E = Operator::Zero(4, 4);
  E(i, j) = 1.0;
  return E;
}

inline Operator jump_hamiltonian() {
  Operator H = Operator::Zero(4, 4);
  H(2, 2) = 1.0;
  H(3, 3) = 1.0;
  return H;
}

inline Operator x1() { return 2.0 * basis_unit(0, 0) + basis_unit(1, 1); }
inline Operator x2() { return 2.0 * basis_unit(2, 2) + basis_unit(3, 3); }
inline Operator x_plus() { return 2.0 * basis_unit(0, 2) + basis_unit(1, 3); }
inline Operator x_minus() { return x_plus().adjoint(); }

// Ladder operators between the degenerate level pairs and their hermitian
// combinations (Heisenberg-picture attractors of the jump model).
inline Operator a_minus() { return basis_unit(0, 2) + basis_unit(1, 3); }
inline Operator a_plus() { return a_minus().adjoint(); }
inline Operator a_r() { return (a_plus() + a_minus()) / 2.0; }
inline Operator a_i() {
  return (a_plus() - a_minus()) / Complex(0.0, 2.0);
}

// Faithful stationary state (X1 + X2)/6 = diag(2,1,2,1)/6.
inline Operator sigma_jump() { return (x1() + x2()) / 6.0; }

// Stationary state of the Hamiltonian-free variant, inside the enlarged
// attractor space: (2 X1 + 2 X2 + Xp + Xm)/12.
inline Operator sigma_jump_h0() {
  return (2.0 * x1() + 2.0 * x2() + x_plus() + x_minus()) / 12.0;
}

// The jump model with the Hamiltonian removed: every peripheral eigenvalue
// collapses to 0 and the attractor space becomes 4-dimensional.
inline ContinuousModel jump_h0() {
  ContinuousModel m = std::get<ContinuousModel>(load_jump());
  m.hamiltonian.setZero();
  return m;
}

// --------------------------------------------------------------------------
// Small helpers
// --------------------------------------------------------------------------

inline double span_distance(const std::vector<Operator>& a,
                            const std::vector<Operator>& b) {
  return projector_distance(a, b);
}

inline const EigenspacePair& space_of(const AttractorDecomposition& d,
                                      Complex value) {
  const EigenspacePair* s = d.space_at(value, 1e-6);
  if (s == nullptr) {
    throw std::runtime_error("expected eigenvalue missing from decomposition");
  }
  return *s;
}

}  // namespace qmpa_test
