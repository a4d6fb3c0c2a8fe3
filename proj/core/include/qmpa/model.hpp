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

#ifndef QMPA_MODEL_HPP_
#define QMPA_MODEL_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmpa/superoperator.hpp"
#include "qmpa/types.hpp"

namespace qmpa {

enum class ModelKind { kDiscrete, kContinuous };

// A quantum Markov chain in discrete time: one step acts as
// T(X) = sum_j A_j X A_j^dag with sum_j A_j^dag A_j <= I.
struct DiscreteModel {
  int dim = 0;
  std::vector<Operator> kraus;
  // Optional user-supplied faithful sub-invariant state candidate.
  std::optional<Operator> tstate;
  Tolerances tol;
};

// A quantum dynamical semigroup in continuous time. The generator in the
// Schrodinger picture, including an optical-potential damping term G >= 0, is
//
//   L(X) = i[X, H] + sum_j (L_j X L_j^dag
//          - (1/2){L_j^dag L_j, X}) - G X - X G .
//
// The Heisenberg generator is its Hilbert-Schmidt adjoint; the effective
// non-hermitian drift K = iH + (1/2) sum_j L_j^dag L_j + G is reconstructed
// from the stored parts whenever needed and never stored.
struct ContinuousModel {
  int dim = 0;
  Operator hamiltonian;
  std::vector<Operator> lindblads;
  Operator optical_potential;  // zero when absent from the model file
  std::optional<Operator> tstate;
  Tolerances tol;
};

using Model = std::variant<DiscreteModel, ContinuousModel>;

ModelKind model_kind(const Model& m);
int model_dim(const Model& m);
const Tolerances& model_tolerances(const Model& m);
const std::optional<Operator>& model_tstate(const Model& m);

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class TraceClass { kPreserving, kNonincreasing };
enum class UnitalClass { kUnital, kSubUnital, kNeither };

struct Classification {
  TraceClass trace;
  UnitalClass unital;
};

std::string to_string(TraceClass c);
std::string to_string(UnitalClass c);

// Discrete: trace class from sum_j A_j^dag A_j vs I, unital class from
// sum_j A_j A_j^dag vs I. Continuous: trace class from the Heisenberg
// generator applied to I (zero iff G = 0), unital class from the Schrodinger
// generator applied to I.
Classification classify(const Model& m);

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

// Matrix of one evolution step (discrete) or of the generator (continuous),
// acting in the Schrodinger picture.
Superoperator generator_schrodinger(const Model& m);
Superoperator generator_schrodinger(const DiscreteModel& m);
Superoperator generator_schrodinger(const ContinuousModel& m);

// Heisenberg-picture counterpart: the Hilbert-Schmidt adjoint of the
// Schrodinger generator (conjugate transpose of its matrix).
Superoperator generator_heisenberg(const Model& m);

// ---------------------------------------------------------------------------
// Parsing / serialization
// ---------------------------------------------------------------------------
//
// Model files are JSON objects:
//   {
//     "kind": "discrete" | "continuous",
//     "dim": N,
//     "kraus": [matrix, ...],                 // discrete
//     "hamiltonian": matrix,                  // continuous
//     "lindblads": [matrix, ...],             // continuous
//     "optical_potential": matrix,            // continuous, optional (0)
//     "tstate": matrix,                       // optional
//     "tolerances": { "peripheral": x, ... }  // optional overrides
//   }
// where a matrix is a row-major nested array and every entry is a
// two-element array [re, im].
//
// parse_model throws ParseError on malformed documents and ValidationError
// (or a subclass) on dimension mismatches, non-hermitian hamiltonian, G not
// positive semidefinite, or sum_j A_j^dag A_j exceeding I.

Model parse_model(const std::string& json_text);
Model parse_model_file(const std::string& path);
std::string to_json_string(const Model& m, int indent = 2);

// State files reuse the complex-matrix encoding: either a bare nested array
// or an object with a "matrix" field.
Operator parse_operator(const std::string& json_text);
Operator parse_operator_file(const std::string& path);

}  // namespace qmpa

#endif  // QMPA_MODEL_HPP_
