// Copyright 2026 the smfbm authors
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

#include "smfbm/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

namespace smfbm::io {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_double(v);
}

std::string json_number(long v) { return std::to_string(v); }

std::string json_string(const std::string& s) {
  return ordered_json(s).dump();
}

std::string json_array(const std::vector<double>& v) {
  ordered_json arr = ordered_json::array();
  for (double x : v) arr.push_back(x);
  return arr.dump();
}

std::string json_array(const std::vector<long>& v) {
  ordered_json arr = ordered_json::array();
  for (long x : v) arr.push_back(x);
  return arr.dump();
}

std::string spec_json(const ProcessSpec& spec) {
  ordered_json j;
  j["process"] = to_string(spec.kind());
  j["a"] = spec.coeffs().a;
  j["b"] = spec.coeffs().b;
  j["hurst"] = spec.hurst().value();
  return j.dump();
}

std::string to_json_string(const DiagnosticsReport& r) {
  ordered_json doc;
  doc["spec"] = ordered_json::parse(spec_json(r.spec));
  doc["operation"] = r.operation;
  const auto fill = [](ordered_json& dst,
                       const std::vector<std::pair<std::string, std::string>>& kv) {
    dst = ordered_json::object();
    for (const auto& [key, fragment] : kv) dst[key] = ordered_json::parse(fragment);
  };
  fill(doc["inputs"], r.inputs);
  fill(doc["outputs"], r.outputs);
  fill(doc["trend_fits"], r.trend_fits);
  doc["verdict"] = r.verdict;
  doc["citations"] = r.citations;
  return doc.dump(2) + "\n";
}

std::string ensemble_metadata_json(const PathEnsemble& e) {
  ordered_json doc;
  doc["spec"] = ordered_json::parse(spec_json(e.config.spec));
  doc["grid"] = e.config.grid.points();
  doc["paths"] = e.config.n_paths;
  doc["seed"] = e.config.seed;
  doc["method"] = to_string(e.config.method);
  doc["jitter"] = e.jitter;
  doc["factor_diag_ratio"] = e.factor_diag_ratio;
  return doc.dump(2) + "\n";
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

void write_paths_csv(std::ostream& os, const PathEnsemble& e) {
  os << "path_id";
  for (Eigen::Index k = 0; k < e.values.cols(); ++k) os << ",t_" << k;
  os << '\n';
  for (Eigen::Index p = 0; p < e.values.rows(); ++p) {
    os << p;
    for (Eigen::Index k = 0; k < e.values.cols(); ++k) {
      os << ',' << format_double(e.values(p, k));
    }
    os << '\n';
  }
}

}  // namespace smfbm::io
