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

// qmpa: analyze the long-time behavior of quantum Markov processes given as
// JSON model files. JSON reports on stdout by default; --human for text.
//
// Exit codes (stable contract):
//   0  success, all executed checks passed
//   1  internal error
//   2  parse error (model/state/coefficient documents)
//   3  validation error (model or input violates a precondition)
//   4  no faithful reference state (tstate search/verification failed)
//   5  subspace mismatch beyond tolerance (cross-validation)
//   6  state not representable in the requested exponential form
//   7  defective peripheral part (no asymptotic expansion)

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "qmpa/qmpa.hpp"

namespace {

using nlohmann::json;
using namespace qmpa;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitTState = 4;
constexpr int kExitMismatch = 5;
constexpr int kExitRepresentability = 6;
constexpr int kExitDefective = 7;

struct Options {
  std::string model_path;
  std::string k_spec = "power:0.5";
  double tol_peripheral = -1.0;
  double tol_eigen = -1.0;
  std::uint64_t seed = 12345;
  bool human = false;
  std::string csv_dir;
  std::string initial_path;
  std::string state_path;
  std::string coeffs_json;
  int steps = -1;
  double time_value = std::numeric_limits<double>::quiet_NaN();
  bool compare_exact = false;
  int horizon = 50;
  int form = 1;
  std::string scope = "full";
};

json j_complex(Complex z) { return json::array({z.real(), z.imag()}); }

json j_operator(const Operator& A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      row.push_back(j_complex(A(i, j)));
    }
    rows.push_back(row);
  }
  return rows;
}

json j_operator_list(const std::vector<Operator>& ops) {
  json out = json::array();
  for (const Operator& X : ops) out.push_back(j_operator(X));
  return out;
}

MonotoneFunction parse_k(const std::string& text) {
  if (text == "log1p") return MonotoneFunction::log1p();
  const std::string prefix = "power:";
  if (text.rfind(prefix, 0) == 0) {
    std::string tail = text.substr(prefix.size());
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(tail, &used);
    } catch (const std::exception&) {
      throw ParseError("--k: cannot parse exponent in '" + text + "'");
    }
    if (used != tail.size()) {
      throw ParseError("--k: trailing characters in '" + text + "'");
    }
    return MonotoneFunction::power(alpha);
  }
  throw ParseError("--k: expected power:<alpha> or log1p, got '" + text + "'");
}

Model load_model(const Options& opt) {
  Model m = parse_model_file(opt.model_path);
  auto patch = [&](Tolerances& tol) {
    if (opt.tol_peripheral >= 0.0) tol.peripheral = opt.tol_peripheral;
    if (opt.tol_eigen >= 0.0) tol.eigen_residual = opt.tol_eigen;
  };
  std::visit([&](auto& model) { patch(model.tol); }, m);
  return m;
}

json j_classification(const Classification& c) {
  return json{{"trace", to_string(c.trace)}, {"unital", to_string(c.unital)}};
}

json j_certificate(const TStateCertificate& cert) {
  return json{{"status", "ok"},
              {"stationary", cert.stationary},
              {"min_eigenvalue", cert.min_eigenvalue},
              {"defect_min_eigenvalue", cert.defect_min_eigenvalue},
              {"sampled_grid", cert.sampled_grid},
              {"detail", cert.detail},
              {"sigma", j_operator(cert.sigma)}};
}

json j_spectrum(const AttractorDecomposition& d) {
  json peripheral = json::array();
  for (const auto& s : d.spaces) {
    peripheral.push_back(json{{"value", j_complex(s.value)},
                              {"multiplicity", s.multiplicity},
                              {"schrodinger_dim", s.schrodinger.size()},
                              {"heisenberg_dim", s.heisenberg.size()}});
  }
  return json{{"peripheral", peripheral},
              {"total_multiplicity", d.total_multiplicity()},
              {"subperipheral_bound", d.subperipheral_bound}};
}

double pairing_deviation(const DualBasis& db) {
  CMatrix P = pairing_matrix(db);
  return (P - CMatrix::Identity(P.rows(), P.cols())).cwiseAbs().maxCoeff();
}

json j_k_orthogonality(const KOrthogonalityReport& r) {
  return json{{"max_cross_block", r.max_cross_block},
              {"max_range_residual", r.max_range_residual},
              {"samples", r.samples},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

json j_cross_validation(const CrossValidationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"value", j_complex(row.value)},
                        {"picture", row.heisenberg ? "heisenberg" : "schrodinger"},
                        {"spectral_dim", row.spectral_dim},
                        {"structure_dim", row.structure_dim},
                        {"distance", row.distance},
                        {"containment", row.containment},
                        {"pass", row.pass}});
  }
  return json{{"sufficiency", r.sufficiency},
              {"rows", rows},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

json j_algebra_closure(const AlgebraClosureReport& r) {
  return json{{"max_product_residual", r.max_product_residual},
              {"max_heisenberg_residual", r.max_heisenberg_residual},
              {"max_fixed_point_residual", r.max_fixed_point_residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

json j_convergence(const ConvergenceReport& r) {
  return json{{"times", r.times},
              {"distances", r.distances},
              {"fitted_rate", r.fitted_rate},
              {"reference_rate", r.reference_rate},
              {"final_distance", r.final_distance}};
}

void write_convergence_csv(const std::string& dir,
                           const ConvergenceReport& r) {
  std::string path = dir + "/convergence.csv";
  std::ofstream out(path);
  if (!out) throw Error("cannot open CSV output file: " + path);
  out << "time,distance\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    out << r.times[i] << "," << r.distances[i] << "\n";
  }
}

json model_summary(const Options& opt, const Model& m) {
  json out{{"path", opt.model_path},
           {"kind",
            model_kind(m) == ModelKind::kDiscrete ? "discrete" : "continuous"},
           {"dim", model_dim(m)},
           {"classification", j_classification(classify(m))}};
  if (std::holds_alternative<DiscreteModel>(m)) {
    out["kraus_count"] = std::get<DiscreteModel>(m).kraus.size();
  } else {
    out["lindblad_count"] = std::get<ContinuousModel>(m).lindblads.size();
  }
  return out;
}

void emit(const Options& opt, const json& report) {
  if (!opt.human) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  // Flat, indented key/value rendering for terminals.
  std::function<void(const json&, int)> render = [&](const json& node,
                                                     int depth) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (node.is_object()) {
      for (const auto& item : node.items()) {
        if (item.value().is_object() || item.value().is_array()) {
          std::cout << pad << item.key() << ":\n";
          render(item.value(), depth + 1);
        } else {
          std::cout << pad << item.key() << ": " << item.value().dump()
                    << "\n";
        }
      }
    } else if (node.is_array()) {
      bool scalars = true;
      for (const auto& e : node) {
        if (e.is_object() || e.is_array()) scalars = false;
      }
      if (scalars) {
        std::cout << pad << node.dump() << "\n";
      } else {
        for (const auto& e : node) {
          std::cout << pad << "-\n";
          render(e, depth + 1);
        }
      }
    } else {
      std::cout << pad << node.dump() << "\n";
    }
  };
  render(report, 0);
}

// Shared pipeline state for commands that need the full decomposition.
struct Pipeline {
  Model model;
  std::optional<TStateCertificate> cert;
  json tstate_report;
  bool tstate_ok = false;
  int tstate_exit = kExitOk;
  AttractorDecomposition decomp;
};

// Run tstate search + decomposition, downgrading a missing faithful state to
// a partial report instead of an immediate failure.
Pipeline run_pipeline(const Options& opt) {
  Pipeline p{load_model(opt), std::nullopt, json(), false, kExitOk, {}};
  try {
    p.cert = find_tstate(p.model);
    p.tstate_report = j_certificate(*p.cert);
    p.tstate_ok = true;
  } catch (const NoFaithfulTState& e) {
    p.tstate_report = json{{"status", "unavailable"},
                           {"error", e.what()},
                           {"rank", e.rank},
                           {"dim", e.dim}};
    p.tstate_exit = kExitTState;
  }
  p.decomp = decompose(p.model);
  return p;
}

int cmd_analyze(const Options& opt) {
  Pipeline p = run_pipeline(opt);
  MonotoneFunction k = parse_k(opt.k_spec);

  json report{{"command", "analyze"},
              {"model", model_summary(opt, p.model)},
              {"seed", opt.seed},
              {"k", opt.k_spec},
              {"tstate", p.tstate_report},
              {"spectrum", j_spectrum(p.decomp)}};

  bool all_pass = true;
  if (p.tstate_ok) {
    const Operator& sigma = p.cert->sigma;
    DualBasis db = dual_basis(p.decomp, k, sigma, sigma,
                              model_tolerances(p.model));
    double dev = pairing_deviation(db);
    double tol = model_tolerances(p.model).check;
    KOrthogonalityReport ko = k_orthogonality_report(
        p.model, p.decomp, k, sigma, sigma, opt.seed);
    CrossValidationReport cv =
        cross_validate(p.model, sigma, p.cert->stationary, p.decomp);
    AlgebraClosureReport ac = algebra_closure_check(p.model, sigma, p.decomp);
    report["checks"] = json{
        {"biorthogonality",
         json{{"max_deviation", dev}, {"tolerance", tol}, {"pass", dev <= tol}}},
        {"k_orthogonality", j_k_orthogonality(ko)},
        {"cross_validation", j_cross_validation(cv)},
        {"algebra_closure", j_algebra_closure(ac)}};
    all_pass = dev <= tol && ko.pass && cv.pass && ac.pass;
    report["status"] = all_pass ? "ok" : "fail";
  } else {
    report["status"] = "partial";
  }
  emit(opt, report);
  if (!p.tstate_ok) return p.tstate_exit;
  return all_pass ? kExitOk : kExitValidation;
}

int cmd_tstate(const Options& opt) {
  Model m = load_model(opt);
  TStateCertificate cert = find_tstate(m);
  AttractorDecomposition d = decompose(m);
  std::vector<Operator> attractors;
  for (const auto& s : d.spaces) {
    attractors.insert(attractors.end(), s.schrodinger.begin(),
                      s.schrodinger.end());
  }
  json report{{"command", "tstate"},
              {"model", model_summary(opt, m)},
              {"tstate", j_certificate(cert)},
              {"commutant_check",
               json{{"commutator_norms",
                     commutant_check(cert.sigma, attractors)},
                    {"note",
                     "nonzero entries are expected: a faithful reference "
                     "state need not commute with every attractor"}}}};
  emit(opt, report);
  return kExitOk;
}

int cmd_dual(const Options& opt) {
  Pipeline p = run_pipeline(opt);
  if (!p.tstate_ok) {
    emit(opt, json{{"command", "dual"},
                   {"model", model_summary(opt, p.model)},
                   {"tstate", p.tstate_report},
                   {"status", "partial"}});
    return p.tstate_exit;
  }
  MonotoneFunction k = parse_k(opt.k_spec);
  const Operator& sigma = p.cert->sigma;
  const Tolerances& tol = model_tolerances(p.model);
  DualBasis db = dual_basis(p.decomp, k, sigma, sigma, tol);

  json blocks = json::array();
  for (const auto& space : db.spaces) {
    blocks.push_back(json{{"value", j_complex(space.value)},
                          {"primal", j_operator_list(space.primal)},
                          {"dual", j_operator_list(space.dual)}});
  }
  double dev = pairing_deviation(db);
  KOrthogonalityReport ko =
      k_orthogonality_report(p.model, p.decomp, k, sigma, sigma, opt.seed);
  bool pass = dev <= tol.check && ko.pass;
  json report{{"command", "dual"},
              {"model", model_summary(opt, p.model)},
              {"seed", opt.seed},
              {"k", opt.k_spec},
              {"tstate", p.tstate_report},
              {"blocks", blocks},
              {"biorthogonality",
               json{{"max_deviation", dev},
                    {"tolerance", tol.check},
                    {"pass", dev <= tol.check}}},
              {"k_orthogonality", j_k_orthogonality(ko)},
              {"status", pass ? "ok" : "fail"}};
  emit(opt, report);
  return pass ? kExitOk : kExitValidation;
}

int cmd_evolve(const Options& opt) {
  Pipeline p = run_pipeline(opt);
  if (!p.tstate_ok) {
    emit(opt, json{{"command", "evolve"},
                   {"model", model_summary(opt, p.model)},
                   {"tstate", p.tstate_report},
                   {"status", "partial"}});
    return p.tstate_exit;
  }
  if (opt.initial_path.empty()) {
    throw ValidationError("evolve: --initial <state file> is required");
  }
  Operator rho0 = parse_operator_file(opt.initial_path);
  bool discrete = model_kind(p.model) == ModelKind::kDiscrete;
  double t;
  if (discrete) {
    if (opt.steps < 0) {
      throw ValidationError("evolve: --steps <n> required for discrete models");
    }
    t = opt.steps;
  } else {
    if (std::isnan(opt.time_value)) {
      throw ValidationError(
          "evolve: --time <t> required for continuous models");
    }
    t = opt.time_value;
  }

  MonotoneFunction k = parse_k(opt.k_spec);
  const Operator& sigma = p.cert->sigma;
  DualBasis db =
      dual_basis(p.decomp, k, sigma, sigma, model_tolerances(p.model));
  AsymptoticPropagator prop(model_kind(p.model), model_dim(p.model), db);

  json report{{"command", "evolve"},
              {"model", model_summary(opt, p.model)},
              {"time", t},
              {"initial_membership_residual",
               prop.membership_residual(rho0)},
              {"asymptotic_state", j_operator(prop.state(rho0, t))},
              {"status", "ok"}};
  if (opt.compare_exact) {
    ConvergenceReport cr =
        convergence_report(p.model, prop, rho0, p.decomp, opt.horizon);
    report["convergence"] = j_convergence(cr);
    if (!opt.csv_dir.empty()) write_convergence_csv(opt.csv_dir, cr);
  }
  emit(opt, report);
  return kExitOk;
}

RVector parse_coeffs(const std::string& text, int expected) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("--coeffs: invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("--coeffs: expected a JSON array");
  if (static_cast<int>(doc.size()) != expected) {
    std::ostringstream os;
    os << "--coeffs: expected " << expected << " entries for this basis, got "
       << doc.size();
    throw ValidationError(os.str());
  }
  RVector out(expected);
  for (int i = 0; i < expected; ++i) {
    if (!doc[static_cast<std::size_t>(i)].is_number()) {
      throw ParseError("--coeffs: entries must be real numbers");
    }
    out(i) = doc[static_cast<std::size_t>(i)].get<double>();
  }
  return out;
}

int cmd_gibbs(const Options& opt) {
  Pipeline p = run_pipeline(opt);
  if (!p.tstate_ok) {
    emit(opt, json{{"command", "gibbs"},
                   {"model", model_summary(opt, p.model)},
                   {"tstate", p.tstate_report},
                   {"status", "partial"}});
    return p.tstate_exit;
  }
  const Operator& sigma = p.cert->sigma;
  const Tolerances& tol = model_tolerances(p.model);
  BasisScope scope = opt.scope == "fixed" ? BasisScope::kFixedPoints
                                          : BasisScope::kFullAttractor;
  HermitianBasis basis = hermitian_basis(p.decomp, scope, tol);
  MonotoneFunction k = parse_k(opt.k_spec);
  DualBasis db = dual_basis(p.decomp, k, sigma, sigma, tol);
  AsymptoticPropagator prop(model_kind(p.model), model_dim(p.model), db);

  json report{{"command", "gibbs"},
              {"model", model_summary(opt, p.model)},
              {"form", opt.form},
              {"scope", opt.scope},
              {"basis_size", basis.size()},
              {"basis", j_operator_list(basis.elements)},
              {"tstate", p.tstate_report}};

  if (!opt.coeffs_json.empty()) {
    RVector coeffs = parse_coeffs(opt.coeffs_json, basis.size());
    GibbsState gs = opt.form == 2
                        ? state_from_form2(prop, basis, coeffs, sigma, tol)
                        : state_from_form1(prop, basis, coeffs, sigma, tol);
    report["state"] = j_operator(gs.state);
    report["normalization"] = gs.normalization;
    report["status"] = "ok";
  } else if (!opt.state_path.empty()) {
    Operator rho = parse_operator_file(opt.state_path);
    double lo = min_eigenvalue(hermitize(rho));
    double tr = rho.trace().real();
    if (lo <= tol.strict_positivity * (tr / model_dim(p.model))) {
      // Rank-deficient boundary state: expansion only exists in the limit.
      std::vector<LimitPoint> track = limit_procedure(
          prop, rho / tr, sigma, basis, default_limit_grid(), tol);
      json points = json::array();
      for (const auto& pt : track) {
        points.push_back(json{{"s", pt.s},
                              {"coeffs", std::vector<double>(
                                             pt.coeffs.data(),
                                             pt.coeffs.data() + pt.coeffs.size())},
                              {"coeff_norm", pt.coeff_norm},
                              {"normalization", pt.normalization},
                              {"residual", pt.residual},
                              {"reconstruction_error",
                               pt.reconstruction_error}});
      }
      report["mode"] = "limit";
      report["limit_track"] = points;
      report["status"] = "ok";
    } else {
      GibbsCoefficients gc = opt.form == 2
                                 ? coeffs_form2(rho, basis, sigma, tol)
                                 : coeffs_form1(rho, basis, sigma, tol);
      report["mode"] = "direct";
      report["coeffs"] = std::vector<double>(
          gc.coeffs.data(), gc.coeffs.data() + gc.coeffs.size());
      report["residual"] = gc.residual;
      report["normalization"] = gc.normalization;
      report["status"] = "ok";
    }
  } else {
    throw ValidationError("gibbs: pass --coeffs <json> or --state <file>");
  }
  emit(opt, report);
  return kExitOk;
}

int cmd_recover(const Options& opt) {
  Pipeline p = run_pipeline(opt);
  if (!std::holds_alternative<DiscreteModel>(p.model)) {
    throw ValidationError(
        "recover: the recovery construction is defined for discrete models");
  }
  if (!p.tstate_ok) {
    emit(opt, json{{"command", "recover"},
                   {"model", model_summary(opt, p.model)},
                   {"tstate", p.tstate_report},
                   {"status", "partial"}});
    return p.tstate_exit;
  }
  const DiscreteModel& dm = std::get<DiscreteModel>(p.model);
  const Operator& sigma = p.cert->sigma;
  DiscreteModel rec = petz_recovery(dm, sigma);

  // Reversal quality on the attractor span, in both compositions.
  Superoperator T = generator_schrodinger(dm);
  Superoperator R = generator_schrodinger(rec);
  double worst = 0.0;
  for (const auto& space : p.decomp.spaces) {
    for (const Operator& X : space.schrodinger) {
      worst = std::max(worst, (R.apply(T.apply(X)) - X).norm());
      worst = std::max(worst, (T.apply(R.apply(X)) - X).norm());
    }
  }
  const Tolerances& tol = dm.tol;
  bool pass = worst <= tol.check;
  json report{{"command", "recover"},
              {"model", model_summary(opt, p.model)},
              {"tstate", p.tstate_report},
              {"recovered_model", json::parse(to_json_string(Model(rec)))},
              {"reversal",
               json{{"max_attractor_residual", worst},
                    {"tolerance", tol.check},
                    {"pass", pass}}},
              {"status", pass ? "ok" : "fail"}};
  emit(opt, report);
  return pass ? kExitOk : kExitValidation;
}

int cmd_verify(const Options& opt) {
  Pipeline p = run_pipeline(opt);
  const Tolerances& tol = model_tolerances(p.model);
  bool discrete = model_kind(p.model) == ModelKind::kDiscrete;
  int n = model_dim(p.model);
  json checks = json::array();
  bool all_pass = true;
  auto add_check = [&](const std::string& name, bool pass, json detail) {
    detail["name"] = name;
    detail["pass"] = pass;
    checks.push_back(detail);
    all_pass = all_pass && pass;
  };

  // Peripheral spectrum sanity: conjugation closure is enforced inside
  // decompose; report adjoint closure of the spans (lambda-bar spans).
  {
    double worst = 0.0;
    for (const auto& space : p.decomp.spaces) {
      const EigenspacePair* conj_space =
          p.decomp.space_at(std::conj(space.value), tol.cluster);
      std::vector<Operator> adjoints;
      adjoints.reserve(space.schrodinger.size());
      for (const Operator& X : space.schrodinger) {
        adjoints.push_back(X.adjoint());
      }
      worst = std::max(
          worst, containment_residual(adjoints, conj_space->schrodinger));
    }
    add_check("adjoint_closure", worst <= tol.check,
              json{{"max_residual", worst}, {"tolerance", tol.check}});
  }

  if (!p.tstate_ok) {
    json report{{"command", "verify"},
                {"model", model_summary(opt, p.model)},
                {"seed", opt.seed},
                {"tstate", p.tstate_report},
                {"spectrum", j_spectrum(p.decomp)},
                {"checks", checks},
                {"status", "partial"}};
    emit(opt, report);
    return p.tstate_exit;
  }

  const Operator& sigma = p.cert->sigma;
  std::optional<DualBasis> main_db;

  // Duality suite across the three bundled scalar products.
  for (const std::string& kname :
       {std::string("power:0.5"), std::string("power:1"),
        std::string("log1p")}) {
    MonotoneFunction k = parse_k(kname);
    DualBasis db = dual_basis(p.decomp, k, sigma, sigma, tol);
    double dev = pairing_deviation(db);
    KOrthogonalityReport ko =
        k_orthogonality_report(p.model, p.decomp, k, sigma, sigma, opt.seed);
    add_check("duality[" + kname + "]", dev <= tol.check && ko.pass,
              json{{"biorthogonality_deviation", dev},
                   {"k_orthogonality", j_k_orthogonality(ko)},
                   {"tolerance", tol.check}});
    if (kname == "power:0.5") main_db = std::move(db);
  }

  AsymptoticPropagator prop(model_kind(p.model), n, *main_db);

  // Projection properties of the asymptotic map.
  {
    Rng rng = make_rng(opt.seed);
    double idem = 0.0, fix = 0.0, trace_dev = 0.0, duality_dev = 0.0;
    for (int s = 0; s < 4; ++s) {
      Operator R = random_matrix(rng, n);
      Operator once = prop.project(R);
      idem = std::max(idem, (prop.project(once) - once).norm() /
                                std::max(1.0, once.norm()));
      Operator rho = random_state(rng, n);
      if (classify(p.model).trace == TraceClass::kPreserving) {
        trace_dev = std::max(
            trace_dev, std::abs(prop.project(rho).trace().real() - 1.0));
      }
      // Mean-value duality between the two pictures at a positive time.
      Operator A = random_hermitian(rng, n);
      double t = discrete ? 7 : 1.5;
      Complex lhs = (A * prop.state(rho, t)).trace();
      Complex rhs = (prop.observable(A, t) * rho).trace();
      duality_dev = std::max(duality_dev, std::abs(lhs - rhs));
    }
    for (const auto& space : p.decomp.spaces) {
      for (const Operator& X : space.schrodinger) {
        fix = std::max(fix, (prop.project(X) - X).norm());
      }
    }
    add_check("asymptotic_projection",
              idem <= tol.check && fix <= tol.check &&
                  trace_dev <= tol.check && duality_dev <= tol.check,
              json{{"idempotence", idem},
                   {"attractors_fixed", fix},
                   {"trace_preservation", trace_dev},
                   {"picture_duality", duality_dev},
                   {"tolerance", tol.check}});
  }

  // Structure systems against the spectral route.
  {
    CrossValidationReport cv =
        cross_validate(p.model, sigma, p.cert->stationary, p.decomp);
    add_check("cross_validation", cv.pass, j_cross_validation(cv));
    AlgebraClosureReport ac = algebra_closure_check(p.model, sigma, p.decomp);
    add_check("algebra_closure", ac.pass, j_algebra_closure(ac));
  }

  // Convergence of the exact evolution toward the asymptotic expansion.
  {
    Rng rng = make_rng(opt.seed + 1);
    Operator rho0 = random_state(rng, n);
    ConvergenceReport cr =
        convergence_report(p.model, prop, rho0, p.decomp, opt.horizon);
    bool pass = cr.final_distance <= 1e-6;
    add_check("convergence", pass, j_convergence(cr));
    if (!opt.csv_dir.empty()) write_convergence_csv(opt.csv_dir, cr);
  }

  // Isometry of the evolution under the power(1/2) product.
  {
    KIsometryReport ki = k_isometry_check(p.model, p.decomp, sigma, opt.seed);
    add_check("k_isometry", ki.pass,
              json{{"max_attractor_deviation", ki.max_attractor_deviation},
                   {"max_offspan_deviation", ki.max_offspan_deviation},
                   {"tolerance", ki.tolerance}});
  }

  if (discrete) {
    const DiscreteModel& dm = std::get<DiscreteModel>(p.model);
    DiscreteModel rec = petz_recovery(dm, sigma);
    Superoperator T = generator_schrodinger(dm);
    Superoperator R = generator_schrodinger(rec);
    double worst = 0.0;
    for (const auto& space : p.decomp.spaces) {
      for (const Operator& X : space.schrodinger) {
        worst = std::max(worst, (R.apply(T.apply(X)) - X).norm());
        worst = std::max(worst, (T.apply(R.apply(X)) - X).norm());
      }
    }
    add_check("reversal", worst <= tol.check,
              json{{"max_attractor_residual", worst}, {"tolerance", tol.check}});
  } else {
    const ContinuousModel& cm = std::get<ContinuousModel>(p.model);
    MasterCheckReport mc = asymptotic_master_check(cm, p.decomp, sigma);
    add_check("asymptotic_master_equation", mc.pass,
              json{{"residuals", mc.residuals},
                   {"max_residual", mc.max_residual},
                   {"tolerance", mc.tolerance}});
  }

  // Exponential-form round trip on a seeded strictly positive state.
  {
    HermitianBasis basis =
        hermitian_basis(p.decomp, BasisScope::kFullAttractor, tol);
    Rng rng = make_rng(opt.seed + 2);
    std::uniform_real_distribution<double> uniform(-0.4, 0.4);
    RVector coeffs(basis.size());
    for (int i = 0; i < basis.size(); ++i) coeffs(i) = uniform(rng);
    GibbsState gs = state_from_form1(prop, basis, coeffs, sigma, tol);
    GibbsCoefficients gc = coeffs_form1(gs.state, basis, sigma, tol);
    GibbsState back = state_from_form1(prop, basis, gc.coeffs, sigma, tol);
    double err = (back.state - gs.state).norm();
    add_check("gibbs_round_trip", err <= tol.check,
              json{{"round_trip_error", err},
                   {"expansion_residual", gc.residual},
                   {"tolerance", tol.check}});
  }

  json report{{"command", "verify"},
              {"model", model_summary(opt, p.model)},
              {"seed", opt.seed},
              {"tstate", p.tstate_report},
              {"spectrum", j_spectrum(p.decomp)},
              {"checks", checks},
              {"status", all_pass ? "ok" : "fail"}};
  emit(opt, report);
  return all_pass ? kExitOk : kExitValidation;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("model", opt.model_path, "model JSON file")->required();
  cmd->add_option("--k", opt.k_spec,
                  "scalar product kernel: power:<alpha> or log1p");
  cmd->add_option("--tol-peripheral", opt.tol_peripheral,
                  "override the peripheral selection tolerance");
  cmd->add_option("--tol-eigen", opt.tol_eigen,
                  "override the eigen-residual tolerance");
  cmd->add_option("--seed", opt.seed, "seed for randomized checks");
  cmd->add_flag("--human", opt.human, "text output instead of JSON");
  cmd->add_option("--csv", opt.csv_dir, "directory for CSV curve output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qmpa: asymptotics of quantum Markov processes (attractor spectra, "
      "dual bases, exponential state forms, recovery maps)"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* analyze =
      app.add_subcommand("analyze", "full analysis of one model");
  add_common(analyze, opt);

  CLI::App* evolve =
      app.add_subcommand("evolve", "asymptotic propagation of a state");
  add_common(evolve, opt);
  evolve->add_option("--initial", opt.initial_path, "initial state JSON file");
  evolve->add_option("--steps", opt.steps, "step count (discrete models)");
  evolve->add_option("--time", opt.time_value, "time (continuous models)");
  evolve->add_flag("--compare-exact", opt.compare_exact,
                   "append exact-vs-asymptotic convergence data");
  evolve->add_option("--horizon", opt.horizon,
                     "sample count for --compare-exact");

  CLI::App* gibbs =
      app.add_subcommand("gibbs", "exponential-form conversions");
  add_common(gibbs, opt);
  gibbs->add_option("--state", opt.state_path, "state JSON file to expand");
  gibbs->add_option("--coeffs", opt.coeffs_json,
                    "JSON array of real coefficients to assemble");
  gibbs->add_option("--form", opt.form, "exponential form (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  gibbs->add_option("--scope", opt.scope, "basis scope: fixed or full")
      ->check(CLI::IsMember({"fixed", "full"}));

  CLI::App* dual =
      app.add_subcommand("dual", "biorthogonal dual attractor bases");
  add_common(dual, opt);

  CLI::App* tstate =
      app.add_subcommand("tstate", "find/verify a faithful reference state");
  add_common(tstate, opt);

  CLI::App* recover =
      app.add_subcommand("recover", "recovery map reversing the evolution");
  add_common(recover, opt);

  CLI::App* verify =
      app.add_subcommand("verify", "run the full invariant suite");
  add_common(verify, opt);
  verify->add_option("--horizon", opt.horizon,
                     "sample count for the convergence check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(opt);
    if (evolve->parsed()) return cmd_evolve(opt);
    if (gibbs->parsed()) return cmd_gibbs(opt);
    if (dual->parsed()) return cmd_dual(opt);
    if (tstate->parsed()) return cmd_tstate(opt);
    if (recover->parsed()) return cmd_recover(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DefectivePeripheralPart& e) {
    std::cerr << "defective peripheral part: " << e.what() << "\n";
    return kExitDefective;
  } catch (const NoFaithfulTState& e) {
    std::cerr << "no faithful reference state: " << e.what() << "\n";
    return kExitTState;
  } catch (const MismatchBeyondTolerance& e) {
    std::cerr << "subspace mismatch: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const NotForm2Representable& e) {
    std::cerr << "not representable: " << e.what() << "\n";
    return kExitRepresentability;
  } catch (const NotAsymptoticState& e) {
    std::cerr << "not an asymptotic state: " << e.what() << "\n";
    return kExitRepresentability;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
