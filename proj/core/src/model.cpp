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

#include "qmpa/model.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmpa/operator_algebra.hpp"

namespace qmpa {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError(context +
                     ": complex entries must be two-element arrays [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Operator parse_matrix(const json& j, int dim, const std::string& context) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    std::ostringstream os;
    os << context << ": expected " << dim << " rows";
    throw ParseError(os.str());
  }
  Operator out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      std::ostringstream os;
      os << context << ": row " << r << " must have " << dim << " entries";
      throw ParseError(os.str());
    }
    for (int c = 0; c < dim; ++c) {
      out(r, c) = parse_complex(row[c], context);
    }
  }
  return out;
}

json matrix_to_json(const Operator& A) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      row.push_back({A(r, c).real(), A(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Tolerances parse_tolerances(const json& j) {
  Tolerances tol;
  if (!j.is_object()) {
    throw ParseError("tolerances: expected an object");
  }
  auto read = [&j](const char* key, double& slot) {
    if (j.contains(key)) {
      if (!j[key].is_number()) {
        throw ParseError(std::string("tolerances: ") + key +
                         " must be a number");
      }
      slot = j[key].get<double>();
    }
  };
  read("hermiticity", tol.hermiticity);
  read("strict_positivity", tol.strict_positivity);
  read("psd_defect", tol.psd_defect);
  read("peripheral", tol.peripheral);
  read("cluster", tol.cluster);
  read("kernel", tol.kernel);
  read("eigen_residual", tol.eigen_residual);
  read("check", tol.check);
  read("defect", tol.defect);
  read("gram_pivot", tol.gram_pivot);
  return tol;
}

json tolerances_to_json(const Tolerances& tol) {
  return json{{"hermiticity", tol.hermiticity},
              {"strict_positivity", tol.strict_positivity},
              {"psd_defect", tol.psd_defect},
              {"peripheral", tol.peripheral},
              {"cluster", tol.cluster},
              {"kernel", tol.kernel},
              {"eigen_residual", tol.eigen_residual},
              {"check", tol.check},
              {"defect", tol.defect},
              {"gram_pivot", tol.gram_pivot}};
}

void validate_discrete(const DiscreteModel& m) {
  if (m.kraus.empty()) {
    throw ValidationError("discrete model: at least one Kraus operator "
                          "required");
  }
  Operator gram = Operator::Zero(m.dim, m.dim);
  for (const Operator& A : m.kraus) {
    gram += A.adjoint() * A;
  }
  // sum_j A_j^dag A_j <= I: the defect I - sum must be PSD.
  Operator defect = Operator::Identity(m.dim, m.dim) - gram;
  require_psd(hermitize(defect), "discrete model: sum A^dag A exceeds I",
              m.tol);
}

void validate_continuous(const ContinuousModel& m) {
  require_hermitian(m.hamiltonian, "continuous model: hamiltonian", m.tol);
  require_psd(m.optical_potential, "continuous model: optical_potential",
              m.tol);
}

void validate_tstate_shape(const Model& m) {
  const auto& ts = model_tstate(m);
  if (!ts.has_value()) return;
  int n = model_dim(m);
  if (ts->rows() != n || ts->cols() != n) {
    throw ValidationError("tstate: dimension mismatch with model");
  }
  require_hermitian(*ts, "tstate", model_tolerances(m));
}

}  // namespace

ModelKind model_kind(const Model& m) {
  return std::holds_alternative<DiscreteModel>(m) ? ModelKind::kDiscrete
                                                  : ModelKind::kContinuous;
}

int model_dim(const Model& m) {
  return std::visit([](const auto& v) { return v.dim; }, m);
}

const Tolerances& model_tolerances(const Model& m) {
  return std::visit([](const auto& v) -> const Tolerances& { return v.tol; },
                    m);
}

const std::optional<Operator>& model_tstate(const Model& m) {
  return std::visit(
      [](const auto& v) -> const std::optional<Operator>& { return v.tstate; },
      m);
}

std::string to_string(TraceClass c) {
  return c == TraceClass::kPreserving ? "preserving" : "nonincreasing";
}

std::string to_string(UnitalClass c) {
  switch (c) {
    case UnitalClass::kUnital:
      return "unital";
    case UnitalClass::kSubUnital:
      return "sub_unital";
    default:
      return "neither";
  }
}

Classification classify(const Model& m) {
  const Tolerances& tol = model_tolerances(m);
  int n = model_dim(m);
  Operator eye = Operator::Identity(n, n);
  Classification out{TraceClass::kNonincreasing, UnitalClass::kNeither};

  // Trace class: the Heisenberg generator applied to I. Discrete:
  // sum A^dag A (= I iff trace-preserving). Continuous: -2G (= 0 iff
  // trace-preserving).
  Superoperator heis = generator_heisenberg(m);
  Operator heis_id = heis.apply(eye);
  Operator trace_defect = model_kind(m) == ModelKind::kDiscrete
                              ? Operator(eye - heis_id)
                              : Operator(-heis_id);
  double scale = std::max(1.0, heis.matrix().norm());
  if (trace_defect.norm() <= tol.check * scale) {
    out.trace = TraceClass::kPreserving;
  } else {
    out.trace = TraceClass::kNonincreasing;  // validated PSD at parse time
  }

  // Unital class from the Schrodinger generator applied to I.
  Superoperator schr = generator_schrodinger(m);
  Operator schr_id = schr.apply(eye);
  Operator unital_defect = model_kind(m) == ModelKind::kDiscrete
                               ? Operator(eye - schr_id)
                               : Operator(-schr_id);
  if (unital_defect.norm() <= tol.check * scale) {
    out.unital = UnitalClass::kUnital;
  } else if (min_eigenvalue(hermitize(unital_defect)) >=
             -tol.psd_defect * scale) {
    out.unital = UnitalClass::kSubUnital;
  } else {
    out.unital = UnitalClass::kNeither;
  }
  return out;
}

Superoperator generator_schrodinger(const DiscreteModel& m) {
  Eigen::Index n2 = static_cast<Eigen::Index>(m.dim) * m.dim;
  CMatrix S = CMatrix::Zero(n2, n2);
  for (const Operator& A : m.kraus) {
    // vec(A X A^dag) = kron(conj(A), A) vec(X).
    S += kron(A.conjugate(), A);
  }
  return Superoperator(m.dim, std::move(S));
}

Superoperator generator_schrodinger(const ContinuousModel& m) {
  int n = m.dim;
  CMatrix eye = CMatrix::Identity(n, n);
  // i[X, H] = i(XH - HX): vec -> i (kron(H^T, I) - kron(I, H)).
  CMatrix S = Complex(0, 1) * (kron(m.hamiltonian.transpose(), eye) -
                               kron(eye, m.hamiltonian));
  for (const Operator& L : m.lindblads) {
    Operator LdL = L.adjoint() * L;
    S += kron(L.conjugate(), L) - 0.5 * kron(LdL.transpose(), eye) -
         0.5 * kron(eye, LdL);
  }
  // Optical-potential damping -GX - XG.
  S -= kron(eye, m.optical_potential);
  S -= kron(m.optical_potential.transpose(), eye);
  return Superoperator(n, std::move(S));
}

Superoperator generator_schrodinger(const Model& m) {
  return std::visit(
      [](const auto& v) { return generator_schrodinger(v); }, m);
}

Superoperator generator_heisenberg(const Model& m) {
  return generator_schrodinger(m).adjoint();
}

Model parse_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("model: top level must be an object");
  }
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw ParseError("model: missing string field 'kind'");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ParseError("model: missing integer field 'dim'");
  }
  int dim = doc["dim"].get<int>();
  if (dim < 1) {
    throw ParseError("model: dim must be >= 1");
  }
  Tolerances tol;
  if (doc.contains("tolerances")) {
    tol = parse_tolerances(doc["tolerances"]);
  }
  std::optional<Operator> tstate;
  if (doc.contains("tstate")) {
    tstate = parse_matrix(doc["tstate"], dim, "tstate");
  }

  std::string kind = doc["kind"].get<std::string>();
  if (kind == "discrete") {
    DiscreteModel m;
    m.dim = dim;
    m.tol = tol;
    m.tstate = std::move(tstate);
    if (!doc.contains("kraus") || !doc["kraus"].is_array() ||
        doc["kraus"].empty()) {
      throw ParseError("discrete model: nonempty array 'kraus' required");
    }
    for (std::size_t i = 0; i < doc["kraus"].size(); ++i) {
      std::ostringstream ctx;
      ctx << "kraus[" << i << "]";
      m.kraus.push_back(parse_matrix(doc["kraus"][i], dim, ctx.str()));
    }
    validate_discrete(m);
    Model out = std::move(m);
    validate_tstate_shape(out);
    return out;
  }
  if (kind == "continuous") {
    ContinuousModel m;
    m.dim = dim;
    m.tol = tol;
    m.tstate = std::move(tstate);
    if (!doc.contains("hamiltonian")) {
      throw ParseError("continuous model: field 'hamiltonian' required");
    }
    m.hamiltonian = parse_matrix(doc["hamiltonian"], dim, "hamiltonian");
    if (!doc.contains("lindblads") || !doc["lindblads"].is_array()) {
      throw ParseError("continuous model: array 'lindblads' required");
    }
    for (std::size_t i = 0; i < doc["lindblads"].size(); ++i) {
      std::ostringstream ctx;
      ctx << "lindblads[" << i << "]";
      m.lindblads.push_back(parse_matrix(doc["lindblads"][i], dim, ctx.str()));
    }
    if (doc.contains("optical_potential")) {
      m.optical_potential =
          parse_matrix(doc["optical_potential"], dim, "optical_potential");
    } else {
      m.optical_potential = Operator::Zero(dim, dim);
    }
    validate_continuous(m);
    Model out = std::move(m);
    validate_tstate_shape(out);
    return out;
  }
  throw ParseError("model: kind must be \"discrete\" or \"continuous\"");
}

Model parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open model file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

std::string to_json_string(const Model& m, int indent) {
  json doc;
  doc["dim"] = model_dim(m);
  doc["tolerances"] = tolerances_to_json(model_tolerances(m));
  if (model_tstate(m).has_value()) {
    doc["tstate"] = matrix_to_json(*model_tstate(m));
  }
  if (const auto* d = std::get_if<DiscreteModel>(&m)) {
    doc["kind"] = "discrete";
    json kraus = json::array();
    for (const Operator& A : d->kraus) kraus.push_back(matrix_to_json(A));
    doc["kraus"] = std::move(kraus);
  } else {
    const auto& c = std::get<ContinuousModel>(m);
    doc["kind"] = "continuous";
    doc["hamiltonian"] = matrix_to_json(c.hamiltonian);
    json lindblads = json::array();
    for (const Operator& L : c.lindblads) lindblads.push_back(matrix_to_json(L));
    doc["lindblads"] = std::move(lindblads);
    doc["optical_potential"] = matrix_to_json(c.optical_potential);
  }
  return doc.dump(indent);
}

Operator parse_operator(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("operator: invalid JSON: ") + e.what());
  }
  const json* mat = &doc;
  if (doc.is_object()) {
    if (!doc.contains("matrix")) {
      throw ParseError("operator: object form requires a 'matrix' field");
    }
    mat = &doc["matrix"];
  }
  if (!mat->is_array() || mat->empty()) {
    throw ParseError("operator: expected a nonempty nested array");
  }
  int dim = static_cast<int>(mat->size());
  return parse_matrix(*mat, dim, "operator");
}

Operator parse_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open state file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_operator(buffer.str());
}

}  // namespace qmpa
