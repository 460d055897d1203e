// Copyright 2026 The qgames Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qgames/io.hpp"

#include <fstream>
#include <sstream>

namespace qgames {
namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw IoError("expected a complex number [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t positive(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0) {
    throw IoError(std::string("field '") + key + "' must be a positive integer");
  }
  return j[key].get<std::size_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw IoError(std::string("missing field '") + key + "'");
  }
  return j[key];
}

Json form_to_json(const sdp::LinearForm& f) {
  Json out = Json::array();
  for (const auto& t : f) {
    Json e;
    e["var"] = t.var;
    e["row"] = t.row;
    e["col"] = t.col;
    e["coeff"] = complex_to_json(t.coeff);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
  }
  j["data"] = std::move(data);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = positive(j, "rows");
  const std::size_t cols = positive(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != rows * cols) {
    throw IoError("matrix data must hold rows*cols entries");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[i * cols + k]);
  }
  if (!is_finite(m)) throw IoError("matrix has non-finite entries");
  return m;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("expected a list of complex numbers");
  ComplexVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json game_to_json(const RankOneGame& g) {
  Json j;
  j["dA"] = g.dA;
  j["dB"] = g.dB;
  j["M"] = matrix_to_json(g.M);
  return j;
}

RankOneGame game_from_json(const Json& j) {
  if (is_purification_json(j)) return from_states(purification_from_json(j));
  RankOneGame g{positive(j, "dA"), positive(j, "dB"), matrix_from_json(field(j, "M"))};
  try {
    g.validate();
  } catch (const std::exception& e) {
    throw IoError(std::string("invalid game: ") + e.what());
  }
  return g;
}

bool is_purification_json(const Json& j) {
  return j.is_object() && j.contains("psi") && j.contains("gamma");
}

Json purification_to_json(const GamePurification& p) {
  Json j;
  j["dA"] = p.dA;
  j["dB"] = p.dB;
  j["dC"] = p.dC;
  j["psi"] = vector_to_json(p.psi);
  j["gamma"] = vector_to_json(p.gamma);
  return j;
}

GamePurification purification_from_json(const Json& j) {
  GamePurification p;
  p.dA = positive(j, "dA");
  p.dB = positive(j, "dB");
  p.dC = positive(j, "dC");
  p.psi = vector_from_json(field(j, "psi"));
  p.gamma = vector_from_json(field(j, "gamma"));
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw IoError(std::string("invalid purification: ") + e.what());
  }
  return p;
}

Json strategy_to_json(const Strategy& s) {
  Json j;
  if (const auto* e = std::get_if<EntangledStrategy>(&s)) {
    j["kind"] = "entangled";
    j["dAp"] = e->dAp;
    j["dBp"] = e->dBp;
    j["U"] = matrix_to_json(e->U);
    j["V"] = matrix_to_json(e->V);
    j["phi"] = vector_to_json(e->phi);
  } else {
    const auto& o = std::get<OneWayStrategy>(s);
    j["kind"] = "oneway";
    j["dAp"] = o.dAp;
    j["U"] = matrix_to_json(o.U);
    j["V"] = matrix_to_json(o.V);
  }
  return j;
}

Strategy strategy_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (kind == "entangled") {
    EntangledStrategy s;
    s.dAp = positive(j, "dAp");
    s.dBp = positive(j, "dBp");
    s.U = matrix_from_json(field(j, "U"));
    s.V = matrix_from_json(field(j, "V"));
    s.phi = vector_from_json(field(j, "phi"));
    return s;
  }
  if (kind == "oneway") {
    OneWayStrategy s;
    s.dAp = positive(j, "dAp");
    s.U = matrix_from_json(field(j, "U"));
    s.V = matrix_from_json(field(j, "V"));
    return s;
  }
  throw IoError("strategy kind must be 'entangled' or 'oneway'");
}

Json sdp_to_json(const sdp::SdpProblem& p) {
  Json j;
  j["sense"] = p.sense == sdp::Sense::kMaximize ? "maximize" : "minimize";
  Json vars = Json::array();
  for (const auto& v : p.variables) {
    Json x;
    x["name"] = v.name;
    x["side"] = v.side;
    x["domain"] = sdp::to_string(v.domain);
    vars.push_back(std::move(x));
  }
  j["variables"] = std::move(vars);
  j["objective"] = form_to_json(p.objective);
  Json psd = Json::array();
  for (const auto& c : p.psd) {
    Json x;
    x["name"] = c.name;
    x["side"] = c.side;
    x["domain"] = sdp::to_string(c.domain);
    x["constant"] = matrix_to_json(c.constant.size() != 0
                                       ? c.constant
                                       : ComplexMatrix::Zero(c.side, c.side));
    Json terms = Json::array();
    for (const auto& t : c.terms) {
      Json e;
      e["out_row"] = t.out_row;
      e["out_col"] = t.out_col;
      e["var"] = t.var;
      e["row"] = t.row;
      e["col"] = t.col;
      e["coeff"] = complex_to_json(t.coeff);
      terms.push_back(std::move(e));
    }
    x["terms"] = std::move(terms);
    psd.push_back(std::move(x));
  }
  j["psd"] = std::move(psd);
  Json eqs = Json::array();
  for (const auto& e : p.equalities) {
    Json x;
    x["name"] = e.name;
    x["lhs"] = form_to_json(e.lhs);
    x["rhs"] = e.rhs;
    eqs.push_back(std::move(x));
  }
  j["equalities"] = std::move(eqs);
  return j;
}

void write_sdp_json(const sdp::SdpProblem& p, const std::string& path) {
  write_text_file(path, dump_json(sdp_to_json(p)));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw IoError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace qgames
