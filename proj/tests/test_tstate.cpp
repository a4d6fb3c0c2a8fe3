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

TEST_CASE("the documented stationary state of the controlled-NOT mixture") {
  Model m = load_cnot();
  TStateCertificate cert = verify_tstate(m, sigma_cnot());
  CHECK(cert.stationary);
  CHECK(cert.min_eigenvalue == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(std::abs(cert.defect_min_eigenvalue) <= 1e-12);
  CHECK_FALSE(cert.sampled_grid);
}

TEST_CASE("commutator scaling of the stationary state with a coherence") {
  // sigma = (I + P_phi)/5 and the coherence |phi><psi| obey
  // [sigma, |phi><psi|] = (1/5)|phi><psi| exactly.
  double lhs = frob(commutator(sigma_cnot(), phi_psi()));
  double rhs = frob(phi_psi()) / 5.0;
  CHECK(std::abs(lhs - rhs) <= 1e-10);
  std::vector<double> norms = commutant_check(sigma_cnot(), {phi_psi()});
  REQUIRE(norms.size() == 1);
  CHECK(std::abs(norms[0] - rhs) <= 1e-10);
}

TEST_CASE("constructed state for the controlled-NOT mixture is faithful") {
  TStateCertificate cert = find_tstate(load_cnot());
  CHECK(cert.stationary);
  CHECK(cert.min_eigenvalue > 0.0);
  // Must be an exact fixed point of the channel.
  Superoperator S = generator_schrodinger(load_cnot());
  CHECK((S.apply(cert.sigma) - cert.sigma).norm() <= 1e-10);
}

TEST_CASE("constructed state for the jump semigroup") {
  TStateCertificate cert = find_tstate(load_jump());
  CHECK(cert.stationary);
  CHECK(cert.sampled_grid);  // continuous models verify on a sampled grid
  // The unique stationary state is (X1 + X2)/6.
  CHECK((cert.sigma - sigma_jump()).norm() <= 1e-9);
}

TEST_CASE("verification of the documented jump stationary state") {
  TStateCertificate cert = verify_tstate(load_jump(), sigma_jump());
  CHECK(cert.stationary);
  Superoperator L = generator_schrodinger(load_jump());
  CHECK(L.apply(sigma_jump()).norm() <= 1e-12);
}

TEST_CASE("amplitude damping has no faithful sub-invariant state") {
  try {
    find_tstate(load_damping());
    FAIL("expected NoFaithfulTState");
  } catch (const NoFaithfulTState& e) {
    CHECK(e.rank == 1);
    CHECK(e.dim == 2);
  }
}

TEST_CASE("candidate validation rejects malformed states") {
  Model m = load_cnot();
  // Non-hermitian.
  Operator N = Operator::Zero(4, 4);
  N(0, 1) = 1.0;
  CHECK_THROWS_AS(verify_tstate(m, N), NotHermitian);
  // Wrong trace.
  CHECK_THROWS_AS(verify_tstate(m, Operator::Identity(4, 4)),
                  ValidationError);
  // Rank deficient.
  Operator P = Operator::Zero(4, 4);
  P(0, 0) = 1.0;
  CHECK_THROWS_AS(verify_tstate(m, P), NotStrictlyPositive);
  // Strictly positive but not sub-invariant: the defect sigma - T(sigma)
  // acquires a negative eigenvalue. (diag entries 1 and 3 are swapped by one
  // of the unitaries, so this is not a fixed point.)
  Operator bad = Operator::Zero(4, 4);
  bad.diagonal() << 0.1, 0.5, 0.2, 0.2;
  CHECK_THROWS_AS(verify_tstate(m, bad), DefectNegative);
}

TEST_CASE("sub-invariance accepts genuinely sub-invariant states") {
  // Pure loss: single Kraus sqrt(0.5) I. sigma - T(sigma) = sigma/2 >= 0,
  // so any faithful state passes but is flagged non-stationary.
  DiscreteModel m;
  m.dim = 2;
  m.kraus = {std::sqrt(0.5) * Operator::Identity(2, 2)};
  TStateCertificate cert =
      verify_tstate(Model(m), Operator::Identity(2, 2) / 2.0);
  CHECK_FALSE(cert.stationary);
  CHECK(cert.defect_min_eigenvalue >= -1e-12);
}

TEST_CASE("user-supplied candidate is verified, not replaced") {
  DiscreteModel dm = std::get<DiscreteModel>(load_cnot());
  dm.tstate = sigma_cnot();
  TStateCertificate cert = find_tstate(Model(dm));
  CHECK((cert.sigma - sigma_cnot()).norm() <= 1e-12);
  CHECK(cert.detail.find("user-supplied") != std::string::npos);

  // A supplied candidate that fails verification propagates the error.
  dm.tstate = Operator::Zero(4, 4);
  dm.tstate->coeffRef(0, 0) = 1.0;
  CHECK_THROWS_AS(find_tstate(Model(dm)), NotStrictlyPositive);
}

TEST_CASE("non-trace-preserving model without candidate is rejected") {
  DiscreteModel m;
  m.dim = 2;
  m.kraus = {std::sqrt(0.5) * Operator::Identity(2, 2)};
  CHECK_THROWS_AS(find_tstate(Model(m)), ValidationError);
}

TEST_CASE("hamiltonian-free jump variant keeps a faithful stationary state") {
  Model m(jump_h0());
  TStateCertificate cert = find_tstate(m);
  CHECK(cert.stationary);
  CHECK(cert.min_eigenvalue > 0.0);
  // The documented stationary state of the enlarged attractor space is also
  // accepted by verification.
  TStateCertificate doc = verify_tstate(m, sigma_jump_h0());
  CHECK(doc.stationary);
}
