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

namespace {

struct Fixture {
  Model model;
  AttractorDecomposition d;
  Operator sigma;
  DualBasis db;
  AsymptoticPropagator prop;

  explicit Fixture(Model m)
      : model(std::move(m)),
        d(decompose(model)),
        sigma(find_tstate(model).sigma),
        db(dual_basis(d, MonotoneFunction::power(0.5), sigma, sigma)),
        prop(model_kind(model), model_dim(model), db) {}
};

}  // namespace

TEST_CASE("asymptotic trajectory is itself a trajectory of the evolution") {
  Fixture f(load_cnot());
  Rng rng = make_rng(61);
  Operator rho = random_state(rng, 4);
  Superoperator T = generator_schrodinger(f.model);
  for (int n : {0, 1, 5}) {
    Operator now = f.prop.state(rho, n);
    Operator next = f.prop.state(rho, n + 1);
    CHECK((T.apply(now) - next).norm() <= 1e-10);
  }
}

TEST_CASE("continuous asymptotic trajectory is flowed by the semigroup") {
  Fixture f(load_jump());
  Rng rng = make_rng(67);
  Operator rho = random_state(rng, 4);
  Superoperator E = evolution_operator(f.model, 0.7);
  Operator now = f.prop.state(rho, 1.1);
  Operator later = f.prop.state(rho, 1.8);
  CHECK((E.apply(now) - later).norm() <= 1e-9);
}

TEST_CASE("state and observable pictures agree on expectation values") {
  for (auto loader : {load_cnot, load_jump}) {
    Fixture f(loader());
    bool discrete = model_kind(f.model) == ModelKind::kDiscrete;
    Rng rng = make_rng(71);
    for (int trial = 0; trial < 5; ++trial) {
      Operator rho = random_state(rng, 4);
      Operator A = random_hermitian(rng, 4);
      double t = discrete ? 9.0 : 2.3;
      Complex lhs = (A * f.prop.state(rho, t)).trace();
      Complex rhs = (f.prop.observable(A, t) * rho).trace();
      CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
  }
}

TEST_CASE("heisenberg asymptotics evolve by the adjoint map") {
  Fixture f(load_cnot());
  Superoperator Th = generator_heisenberg(f.model);
  Rng rng = make_rng(73);
  Operator A = random_hermitian(rng, 4);
  Operator a1 = f.prop.observable(A, 3.0);
  Operator a2 = f.prop.observable(A, 4.0);
  CHECK((Th.apply(a1) - a2).norm() <= 1e-10);
}

TEST_CASE("oscillating component of the controlled-NOT mixture") {
  Fixture f(load_cnot());
  // A state with a component along the -1 eigenoperator flips that
  // component each step: rho(n) alternates with period two.
  Operator rho = (Operator::Identity(4, 4) +
                  0.5 * Complex(0, 1) * x_minus1()) /
                 4.0;  // i*X_minus1 is hermitian
  Operator r0 = f.prop.state(rho, 0);
  Operator r1 = f.prop.state(rho, 1);
  Operator r2 = f.prop.state(rho, 2);
  CHECK((r2 - r0).norm() <= 1e-10);
  CHECK((r1 - r0).norm() >= 0.1);
}

TEST_CASE("discrete propagation requires integral time") {
  Fixture f(load_cnot());
  Operator rho = Operator::Identity(4, 4) / 4.0;
  CHECK_THROWS_AS(f.prop.state(rho, 2.5), ValidationError);
  CHECK_NOTHROW(f.prop.state(rho, 3.0));
}

TEST_CASE("projection onto the attractor span") {
  Fixture f(load_jump());
  // Attractors are reproduced exactly.
  for (const Operator& X : {x1(), x2(), x_plus(), x_minus()}) {
    CHECK((f.prop.project(X) - X).norm() <= 1e-9 * X.norm());
    CHECK(f.prop.membership_residual(X) <= 1e-9);
  }
  // Idempotence on random input.
  Rng rng = make_rng(79);
  Operator R = random_matrix(rng, 4);
  Operator once = f.prop.project(R);
  CHECK((f.prop.project(once) - once).norm() <=
        1e-9 * std::max(1.0, once.norm()));
  // Trace preservation of the projection for a trace-preserving model.
  Operator rho = random_state(rng, 4);
  CHECK(f.prop.project(rho).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("evolution operator semantics") {
  Model m = load_cnot();
  Superoperator T = generator_schrodinger(m);
  Superoperator T3 = evolution_operator(m, 3.0);
  CHECK((T3.matrix() - (T.matrix() * T.matrix() * T.matrix())).norm() <=
        1e-10);
  CHECK_THROWS_AS(evolution_operator(m, -1.0), ValidationError);
  CHECK_THROWS_AS(evolution_operator(m, 1.5), ValidationError);

  Model j = load_jump();
  Superoperator L = generator_schrodinger(j);
  Superoperator E = evolution_operator(j, 0.5);
  // exp(0.5 L) applied twice equals exp(L).
  Superoperator E1 = evolution_operator(j, 1.0);
  CHECK(((E * E).matrix() - E1.matrix()).norm() <= 1e-9);
  // Generator consistency: d/dt exp(tL) at 0 is L (finite difference).
  double h = 1e-6;
  Superoperator Eh = evolution_operator(j, h);
  CMatrix approx = (Eh.matrix() - CMatrix::Identity(16, 16)) / h;
  CHECK((approx - L.matrix()).norm() <= 1e-4);
}

TEST_CASE("convergence report approaches the asymptotic expansion") {
  for (auto loader : {load_cnot, load_jump}) {
    Fixture f(loader());
    bool discrete = model_kind(f.model) == ModelKind::kDiscrete;
    Rng rng = make_rng(83);
    Operator rho = random_state(rng, 4);
    ConvergenceReport r = convergence_report(f.model, f.prop, rho, f.d, 50);
    REQUIRE(r.times.size() == r.distances.size());
    REQUIRE(r.times.size() > 10);
    // Discrete: |lambda_2|^50 = 2^-50. Continuous horizons are sampled so
    // the slowest subperipheral mode decays to about e^-16 by the end.
    CHECK(r.final_distance <= (discrete ? 1e-8 : 1e-6));
    CHECK(r.distances.front() > r.final_distance);
  }
}

TEST_CASE("fitted decay rate matches the subperipheral modulus") {
  Fixture f(load_cnot());
  Rng rng = make_rng(89);
  Operator rho = random_state(rng, 4);
  ConvergenceReport r = convergence_report(f.model, f.prop, rho, f.d, 50);
  CHECK(std::isfinite(r.fitted_rate));
  CHECK(std::abs(r.fitted_rate - r.reference_rate) <= 0.05);
  CHECK(r.reference_rate == doctest::Approx(f.d.subperipheral_bound));
}

TEST_CASE("petz recovery of the controlled-NOT mixture") {
  Fixture f(load_cnot());
  const DiscreteModel& dm = std::get<DiscreteModel>(f.model);
  DiscreteModel rec = petz_recovery(dm, f.sigma);
  REQUIRE(rec.kraus.size() == dm.kraus.size());
  // Kraus operators are sigma^{1/2} A^dag sigma^{-1/2}.
  Operator rt = op_sqrt(f.sigma);
  Operator rti = op_power(f.sigma, -0.5);
  for (std::size_t i = 0; i < rec.kraus.size(); ++i) {
    Operator expect = rt * dm.kraus[i].adjoint() * rti;
    CHECK((rec.kraus[i] - expect).norm() <= 1e-10);
  }
  // The recovery map is itself a valid (trace-nonincreasing) model; its
  // composition with the channel restores every attractor.
  Superoperator T = generator_schrodinger(Model(dm));
  Superoperator R = generator_schrodinger(Model(rec));
  double worst = 0.0;
  for (const auto& space : f.d.spaces) {
    for (const Operator& X : space.schrodinger) {
      worst = std::max(worst, (R.apply(T.apply(X)) - X).norm());
      worst = std::max(worst, (T.apply(R.apply(X)) - X).norm());
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("petz recovery rejects a non-invariant reference state") {
  const DiscreteModel dm = std::get<DiscreteModel>(load_cnot());
  Operator bad = Operator::Zero(4, 4);
  bad.diagonal() << 0.1, 0.5, 0.2, 0.2;  // permuted by one of the unitaries
  CHECK_THROWS_AS(petz_recovery(dm, bad), Error);
}

TEST_CASE("k-isometry of the evolution on the attractor span") {
  for (auto loader : {load_cnot, load_jump}) {
    Fixture f(loader());
    KIsometryReport r = k_isometry_check(f.model, f.d, f.sigma, 12345);
    CHECK(r.pass);
    CHECK(r.max_attractor_deviation <= r.tolerance);
  }
}

TEST_CASE("asymptotic motion reduces to a hamiltonian rotation") {
  Model m = load_jump();
  const ContinuousModel& cm = std::get<ContinuousModel>(m);
  AttractorDecomposition d = decompose(m);
  MasterCheckReport r = asymptotic_master_check(cm, d, sigma_jump());
  CHECK(r.pass);
  CHECK(r.residuals.size() == 4);
  CHECK(r.max_residual <= 1e-8);
}

TEST_CASE("hamiltonian-free variant has a frozen asymptotic motion") {
  ContinuousModel cm = jump_h0();
  AttractorDecomposition d = decompose(Model(cm));
  // All four attractors collapse to eigenvalue 0.
  CHECK(d.total_multiplicity() == 4);
  CHECK(d.spaces.size() == 1);
  MasterCheckReport r = asymptotic_master_check(cm, d, sigma_jump_h0());
  CHECK(r.pass);
  CHECK(r.max_residual <= 1e-8);
}
