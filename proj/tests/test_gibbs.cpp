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

HermitianBasis manual_basis(std::vector<Operator> elements) {
  HermitianBasis b;
  b.scope = BasisScope::kFullAttractor;
  b.elements = std::move(elements);
  return b;
}

}  // namespace

TEST_CASE("hermitian basis sizes for the bundled models") {
  {
    AttractorDecomposition d = decompose(load_cnot());
    HermitianBasis full = hermitian_basis(d, BasisScope::kFullAttractor);
    CHECK(full.size() == 6);
    HermitianBasis fixed = hermitian_basis(d, BasisScope::kFixedPoints);
    CHECK(fixed.size() == 5);
    for (const Operator& Z : full.elements) {
      CHECK((Z - Z.adjoint()).norm() <= 1e-12);
    }
  }
  {
    AttractorDecomposition d = decompose(load_jump());
    CHECK(hermitian_basis(d, BasisScope::kFullAttractor).size() == 4);
    CHECK(hermitian_basis(d, BasisScope::kFixedPoints).size() == 2);
  }
}

TEST_CASE("form 1 round trip on the jump semigroup") {
  Fixture f(load_jump());
  HermitianBasis basis = hermitian_basis(f.d, BasisScope::kFullAttractor);
  Rng rng = make_rng(91);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  RVector c(basis.size());
  for (int i = 0; i < c.size(); ++i) c(i) = u(rng);

  GibbsState gs = state_from_form1(f.prop, basis, c, f.sigma);
  CHECK(std::abs(gs.state.trace().real() - 1.0) <= 1e-12);
  CHECK(min_eigenvalue(hermitize(gs.state)) > 0.0);
  CHECK(f.prop.membership_residual(gs.state) <= 1e-9);

  GibbsCoefficients back = coeffs_form1(gs.state, basis, f.sigma);
  GibbsState again = state_from_form1(f.prop, basis, back.coeffs, f.sigma);
  CHECK((again.state - gs.state).norm() <= 1e-9);
  CHECK(back.residual <= 1e-9);
}

TEST_CASE("form 2 round trip on the jump semigroup") {
  Fixture f(load_jump());
  HermitianBasis basis = hermitian_basis(f.d, BasisScope::kFullAttractor);
  Rng rng = make_rng(97);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  RVector c(basis.size());
  for (int i = 0; i < c.size(); ++i) c(i) = u(rng);

  GibbsState gs = state_from_form2(f.prop, basis, c, f.sigma);
  CHECK(std::abs(gs.state.trace().real() - 1.0) <= 1e-12);
  GibbsCoefficients back = coeffs_form2(gs.state, basis, f.sigma);
  GibbsState again = state_from_form2(f.prop, basis, back.coeffs, f.sigma);
  CHECK((again.state - gs.state).norm() <= 1e-9);
}

TEST_CASE("the two exponential forms differ for noncommuting exponents") {
  // Same coefficient data fed through both characterizations must produce
  // visibly different states when the basis element does not commute with
  // sigma (the forms agree only in the commuting case).
  Fixture f(load_cnot());
  Operator Z = phi_psi() + psi_phi();
  HermitianBasis basis = manual_basis({Z});
  RVector c(1);
  c(0) = 1.0;
  GibbsState rho2 = state_from_form1(f.prop, basis, c, sigma_cnot());
  GibbsState rho1 = state_from_form2(f.prop, basis, c, sigma_cnot());
  CHECK((rho1.state - rho2.state).norm() > 1e-3);
}

TEST_CASE("the two forms coincide for exponents commuting with sigma") {
  Fixture f(load_jump());
  // Z = I - 2 H lies in the observable-side attractor algebra and is
  // diagonal, like sigma.
  HermitianBasis basis =
      manual_basis({Operator::Identity(4, 4) - 2.0 * jump_hamiltonian()});
  RVector c(1);
  c(0) = 0.3;
  GibbsState a = state_from_form1(f.prop, basis, c, f.sigma);
  GibbsState b = state_from_form2(f.prop, basis, c, f.sigma);
  CHECK((a.state - b.state).norm() <= 1e-10);
}

TEST_CASE("exact form 2 coefficients for diagonal interpolations") {
  // rho(s) = ((1-s) X1 + s X2)/3 has log rho - log sigma =
  // ln(2(1-s)) I + ln(s/(1-s)) H in the basis {I, H}.
  Fixture f(load_jump());
  HermitianBasis basis =
      manual_basis({Operator::Identity(4, 4), jump_hamiltonian()});
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    Operator rho = ((1.0 - s) * x1() + s * x2()) / 3.0;
    GibbsCoefficients gc = coeffs_form2(rho, basis, f.sigma);
    REQUIRE(gc.coeffs.size() == 2);
    CHECK(std::abs(gc.coeffs(1) - std::log(s / (1.0 - s))) <= 1e-8);
    CHECK(std::abs(gc.coeffs(0) - std::log(2.0 * (1.0 - s))) <= 1e-8);
    CHECK(gc.residual <= 1e-9);
  }
}

TEST_CASE("exact form 2 coefficients for coherent interpolations") {
  // rho(s) = (X1 + X2 + s Xp + s Xm)/6 has log rho - log sigma =
  // (1/2) ln(1 - s^2) I + ln((1+s)/(1-s)) A_R over {I, H, A_R, A_I}.
  Fixture f(load_jump());
  HermitianBasis basis = manual_basis(
      {Operator::Identity(4, 4), jump_hamiltonian(), a_r(), a_i()});
  for (double s : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    Operator rho = (x1() + x2() + s * x_plus() + s * x_minus()) / 6.0;
    GibbsCoefficients gc = coeffs_form2(rho, basis, f.sigma);
    REQUIRE(gc.coeffs.size() == 4);
    CHECK(std::abs(gc.coeffs(0) - 0.5 * std::log(1.0 - s * s)) <= 1e-8);
    CHECK(std::abs(gc.coeffs(1)) <= 1e-8);
    CHECK(std::abs(gc.coeffs(2) - std::log((1.0 + s) / (1.0 - s))) <= 1e-8);
    CHECK(std::abs(gc.coeffs(3)) <= 1e-8);
  }
}

TEST_CASE("rank-deficient states are rejected with a pointer to the limit") {
  Fixture f(load_cnot());
  HermitianBasis basis = hermitian_basis(f.d, BasisScope::kFullAttractor);
  CHECK_THROWS_AS(coeffs_form1(proj_phi(), basis, f.sigma),
                  NotStrictlyPositive);
}

TEST_CASE("states outside the attractor span are rejected") {
  Fixture f(load_jump());
  HermitianBasis basis = hermitian_basis(f.d, BasisScope::kFullAttractor);
  // A strictly positive state with support pattern outside the attractor
  // algebra (coherence between levels 0 and 1).
  Operator rho = Operator::Identity(4, 4) / 4.0;
  rho(0, 1) = rho(1, 0) = 0.1;
  CHECK_THROWS_AS(coeffs_form1(rho, basis, f.sigma), NotAsymptoticState);
  CHECK_THROWS_AS(coeffs_form2(rho, basis, f.sigma), NotForm2Representable);
}

TEST_CASE("limit procedure tracks a diverging coefficient") {
  // For the pure attractor state P_phi of the controlled-NOT mixture the
  // form-1 coefficients diverge as s -> 0+, while every interpolated state
  // is reconstructed exactly.
  Fixture f(load_cnot());
  HermitianBasis basis = hermitian_basis(f.d, BasisScope::kFullAttractor);
  std::vector<LimitPoint> track =
      limit_procedure(f.prop, proj_phi(), f.sigma, basis,
                      default_limit_grid());
  REQUIRE(track.size() == default_limit_grid().size());
  for (const LimitPoint& p : track) {
    CHECK(p.residual <= 1e-8);
    CHECK(p.reconstruction_error <= 1e-8);
  }
  // Coefficient norm grows as the interpolation weight shrinks.
  CHECK(track.back().coeff_norm > track.front().coeff_norm);
  CHECK(track.back().coeff_norm > 3.0);
  // Grid values outside (0, 1] are rejected.
  CHECK_THROWS_AS(limit_procedure(f.prop, proj_phi(), f.sigma, basis, {0.0}),
                  ValidationError);
  CHECK_THROWS_AS(limit_procedure(f.prop, proj_phi(), f.sigma, basis, {1.5}),
                  ValidationError);
}

TEST_CASE("fixed-scope basis spans only the stationary block") {
  Fixture f(load_jump());
  HermitianBasis fixed = hermitian_basis(f.d, BasisScope::kFixedPoints);
  // Stationary Heisenberg block of the jump model is span{I, H}.
  CHECK(span_distance(fixed.elements,
                      {Operator::Identity(4, 4), jump_hamiltonian()}) <=
        1e-8);
}

TEST_CASE("default limit grid is the documented geometric sequence") {
  std::vector<double> g = default_limit_grid();
  REQUIRE(g.size() == 8);
  CHECK(g.front() == doctest::Approx(0.5));
  CHECK(g.back() == doctest::Approx(0.001));
}
