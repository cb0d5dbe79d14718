// Copyright 2026 The sectorctl Authors
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

#include "sectorctl/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sectorctl/error.hpp"

namespace sectorctl {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "JSON: " + what);
}

std::size_t get_count(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    bad(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

double get_finite(const Json& v) {
  if (!v.is_number()) bad("matrix entry is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad("matrix entry is not finite");
  return x;
}

std::vector<std::size_t> get_dims(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) bad(std::string("missing array '") + key + "'");
  std::vector<std::size_t> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer() || v.get<long long>() < 1) bad("sector dimensions must be >= 1");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = get_count(j, "rows"), cols = get_count(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) bad("missing array 'data'");
  const Json& data = j.at("data");
  if (data.size() != rows * cols)
    bad("data has " + std::to_string(data.size()) + " entries, expected " +
        std::to_string(rows * cols));
  ComplexMatrix m(rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) {
    const Json& e = data[k];
    if (!e.is_array() || e.size() != 2) bad("entries must be [re, im] pairs");
    m(k / cols, k % cols) = Complex(get_finite(e[0]), get_finite(e[1]));
  }
  return m;
}

Json cp_map_to_json(const CPMap& c) {
  Json kraus = Json::array();
  for (const auto& k : c.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"dim_in", c.dim_in()}, {"dim_out", c.dim_out()}, {"kraus", std::move(kraus)}};
}

CPMap cp_map_from_json(const Json& j) {
  const std::size_t din = get_count(j, "dim_in"), dout = get_count(j, "dim_out");
  if (!j.contains("kraus") || !j.at("kraus").is_array()) bad("missing array 'kraus'");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
  return CPMap(din, dout, std::move(kraus));
}

Json channel_to_json(const KrausChannel& c) { return cp_map_to_json(c.map()); }

KrausChannel channel_from_json(const Json& j, double tol) {
  return KrausChannel(cp_map_from_json(j), tol);
}

Json route_to_json(const Route& r) {
  Json rows = Json::array();
  for (const auto& row : r.to_matrix()) {
    Json jr = Json::array();
    for (bool b : row) jr.push_back(b);
    rows.push_back(std::move(jr));
  }
  return rows;
}

Route route_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("route must be a non-empty array of rows");
  std::vector<std::vector<bool>> m;
  for (const auto& row : j) {
    if (!row.is_array()) bad("route rows must be arrays");
    std::vector<bool> r;
    for (const auto& v : row) {
      if (v.is_boolean()) r.push_back(v.get<bool>());
      else if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1))
        r.push_back(v.get<int>() == 1);
      else bad("route entries must be booleans or 0/1");
    }
    m.push_back(std::move(r));
  }
  return Route(m);
}

Json routed_to_json(const RoutedKrausChannel& c) {
  Json j = channel_to_json(c.channel());
  j["sectors_in"] = c.space_in().sector_dims();
  j["sectors_out"] = c.space_out().sector_dims();
  j["route"] = route_to_json(c.route());
  return j;
}

RoutedKrausChannel routed_from_json(const Json& j, double tol) {
  PartitionedSpace sin(get_dims(j, "sectors_in"));
  PartitionedSpace sout(get_dims(j, "sectors_out"));
  if (!j.contains("route")) bad("missing field 'route'");
  return RoutedKrausChannel(sin, sout, route_from_json(j.at("route")), channel_from_json(j, tol),
                            tol);
}

Json controlled_to_json(const ControlledChannel& c) {
  Json j = channel_to_json(c.channel());
  j["control_dim"] = c.control_dim();
  j["target_in"] = c.target_in();
  j["target_out"] = c.target_out();
  return j;
}

ControlledChannel controlled_from_json(const Json& j, double tol) {
  return ControlledChannel(get_count(j, "control_dim"), get_count(j, "target_in"),
                           get_count(j, "target_out"), channel_from_json(j, tol), tol);
}

Json verify_report_to_json(const VerifyReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json aux = Json::array();
    for (const auto& a : f.aux) aux.push_back(Json::array({a.in, a.out}));
    failures.push_back(Json{{"trial", f.trial},
                            {"aux", std::move(aux)},
                            {"leakage", f.leakage},
                            {"tp_defect", f.tp_defect}});
  }
  return Json{{"trials", r.trials},
              {"passes", r.passes},
              {"worst_leakage", r.worst_leakage},
              {"worst_tp_defect", r.worst_tp_defect},
              {"failures", std::move(failures)}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("JSON parse error: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace sectorctl
