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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_support.hpp"

using namespace qmpa;
using namespace qmpa_test;

TEST_CASE("structure space of the controlled-NOT mixture at +1 and -1") {
  const DiscreteModel dm = std::get<DiscreteModel>(load_cnot());
  Operator sigma = sigma_cnot();

  std::vector<Operator> fixed =
      qmch_structure_space(dm, sigma, Complex(1, 0));
  CHECK(fixed.size() == 5);
  CHECK(span_distance(fixed, cnot_fixed_attractors()) <= 1e-8);

  std::vector<Operator> minus =
      qmch_structure_space(dm, sigma, Complex(-1, 0));
  CHECK(minus.size() == 1);
  CHECK(span_distance(minus, {x_minus1()}) <= 1e-8);

  // A non-peripheral value has no solutions.
  CHECK(qmch_structure_space(dm, sigma, Complex(0, 1)).empty());
}

TEST_CASE("heisenberg structure space uses sigma = I") {
  const DiscreteModel dm = std::get<DiscreteModel>(load_cnot());
  // The channel is self-adjoint, so Heisenberg solutions at lambda span the
  // same spaces as the Schrodinger ones.
  std::vector<Operator> h1 =
      qmch_structure_space_heisenberg(dm, Complex(1, 0));
  CHECK(h1.size() == 5);
  CHECK(span_distance(h1, cnot_fixed_attractors()) <= 1e-8);
}

TEST_CASE("structure spaces of the jump semigroup") {
  const ContinuousModel cm = std::get<ContinuousModel>(load_jump());
  Operator sigma = sigma_jump();

  std::vector<Operator> fixed = qmds_structure_space(cm, sigma, 0.0);
  CHECK(fixed.size() == 2);
  CHECK(span_distance(fixed, {x1(), x2()}) <= 1e-8);

  // lambda = i corresponds to a = 1.
  std::vector<Operator> plus = qmds_structure_space(cm, sigma, 1.0);
  CHECK(plus.size() == 1);
  CHECK(span_distance(plus, {x_plus()}) <= 1e-8);

  std::vector<Operator> minusv = qmds_structure_space(cm, sigma, -1.0);
  CHECK(minusv.size() == 1);
  CHECK(span_distance(minusv, {x_minus()}) <= 1e-8);

  CHECK(qmds_structure_space(cm, sigma, 0.5).empty());

  // Heisenberg fixed space is span{I, H}.
  std::vector<Operator> hfixed = qmds_structure_space_heisenberg(cm, 0.0);
  CHECK(hfixed.size() == 2);
  CHECK(span_distance(
            hfixed, {Operator::Identity(4, 4), jump_hamiltonian()}) <= 1e-8);
}

TEST_CASE("structure solutions solve the eigenvalue equation") {
  Model m = load_jump();
  const ContinuousModel& cm = std::get<ContinuousModel>(m);
  Superoperator L = generator_schrodinger(m);
  for (double a : {0.0, 1.0, -1.0}) {
    for (const Operator& X : qmds_structure_space(cm, sigma_jump(), a)) {
      CHECK((L.apply(X) - Complex(0, a) * X).norm() <= 1e-9);
    }
  }
}

TEST_CASE("cross validation in sufficiency mode on both bundled models") {
  for (const Model& m : {load_cnot(), load_jump()}) {
    AttractorDecomposition d = decompose(m);
    TStateCertificate cert = find_tstate(m);
    CrossValidationReport r =
        cross_validate(m, cert.sigma, cert.stationary, d);
    CHECK(r.sufficiency);
    CHECK(r.pass);
    // One row per peripheral eigenvalue and picture.
    CHECK(r.rows.size() == 2 * d.spaces.size());
    for (const auto& row : r.rows) {
      CHECK(row.spectral_dim == row.structure_dim);
      CHECK(row.distance <= 1e-8);
    }
  }
}

TEST_CASE("cross validation flags an engineered mismatch") {
  Model m = load_cnot();
  AttractorDecomposition d = decompose(m);
  // Corrupt one spectral subspace: replace the -1 eigenoperator with an
  // operator outside the true eigenspace.
  for (auto& s : d.spaces) {
    if (std::abs(s.value - Complex(-1, 0)) < 1e-6) {
      s.schrodinger[0] = basis_unit(0, 1);
    }
  }
  CHECK_THROWS_AS(cross_validate(m, sigma_cnot(), true, d),
                  MismatchBeyondTolerance);
}

TEST_CASE("containment mode for sub-invariant (non-stationary) references") {
  // Pure-loss model: T(X) = X/2. Not trace preserving; sigma = I/2 is
  // sub-invariant but not stationary, so sufficiency fails and the
  // validation downgrades to one-sided containment. The peripheral spectrum
  // is empty (the only eigenvalue is 1/2), making containment trivial.
  DiscreteModel m;
  m.dim = 2;
  m.kraus = {std::sqrt(0.5) * Operator::Identity(2, 2)};
  AttractorDecomposition d = decompose(Model(m));
  CHECK(d.spaces.empty());
  CrossValidationReport r =
      cross_validate(Model(m), Operator::Identity(2, 2) / 2.0, false, d);
  CHECK_FALSE(r.sufficiency);
  CHECK(r.pass);
}

TEST_CASE("algebra closure on both bundled models") {
  for (const Model& m : {load_cnot(), load_jump()}) {
    AttractorDecomposition d = decompose(m);
    Operator sigma = find_tstate(m).sigma;
    AlgebraClosureReport r = algebra_closure_check(m, sigma, d);
    CHECK(r.pass);
    CHECK(r.max_product_residual <= 1e-8);
    CHECK(r.max_heisenberg_residual <= 1e-8);
    CHECK(r.max_fixed_point_residual <= 1e-8);
  }
}

TEST_CASE("products of attractors are eigenoperators at combined values") {
  // X_plus sigma^{-1} X_minus must be a fixed point (i + (-i) = 0), and
  // X_plus sigma^{-1} X_plus must vanish (2i is not peripheral).
  Model m = load_jump();
  Superoperator L = generator_schrodinger(m);
  Operator inv = op_power(sigma_jump(), -1.0);
  Operator P = x_plus() * inv * x_minus();
  CHECK(P.norm() > 0.1);
  CHECK(L.apply(P).norm() <= 1e-9 * P.norm());
  CHECK((x_plus() * inv * x_plus()).norm() <= 1e-12);
}

TEST_CASE("seeded random trace-preserving models cross-validate") {
  // A light version of the randomized agreement suite (the acceptance
  // harness runs the full 20-model sweep).
  for (std::uint64_t seed : {2001ull, 2002ull}) {
    Rng rng = make_rng(seed);
    DiscreteModel dm;
    dm.dim = 3;
    dm.kraus = random_kraus_channel(rng, 3, 2);
    Model m(dm);
    AttractorDecomposition d = decompose(m);
    TStateCertificate cert = find_tstate(m);
    CrossValidationReport r =
        cross_validate(m, cert.sigma, cert.stationary, d);
    CHECK(r.pass);
  }
}
