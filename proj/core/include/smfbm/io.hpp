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

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "smfbm/simulate.hpp"

namespace smfbm::io {

// Shortest decimal representation that round-trips to the same double. CSV
// written with this is byte-stable across reruns.
std::string format_double(double v);

// JSON value fragments (validated and re-emitted by the document builders).
std::string json_number(double v);
std::string json_number(long v);
std::string json_string(const std::string& s);
std::string json_array(const std::vector<double>& v);
std::string json_array(const std::vector<long>& v);

// {"process": ..., "a": ..., "b": ..., "hurst": ...}
std::string spec_json(const ProcessSpec& spec);

// Structured result of a diagnostic run. inputs/outputs/trend_fits are
// ordered key -> JSON-fragment pairs; the serializer keeps their order.
struct DiagnosticsReport {
  ProcessSpec spec = ProcessSpec::bm();
  std::string operation;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> outputs;
  std::vector<std::pair<std::string, std::string>> trend_fits;
  std::string verdict;
  std::vector<std::string> citations;
};

// One JSON document: {spec, operation, inputs, outputs, trend_fits, verdict,
// citations}, two-space indented, stable key order.
std::string to_json_string(const DiagnosticsReport& r);

// Sidecar metadata for a sampled ensemble: {spec, grid, paths, seed, method,
// jitter, factor_diag_ratio}.
std::string ensemble_metadata_json(const PathEnsemble& e);

// Bare numeric matrix, one CSV row per matrix row, LF line endings.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);

// Header row `path_id,t_0,...,t_{n-1}`, then one row per path.
void write_paths_csv(std::ostream& os, const PathEnsemble& e);

}  // namespace smfbm::io
