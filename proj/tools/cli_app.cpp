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

#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "smfbm/diagnostics.hpp"
#include "smfbm/errors.hpp"
#include "smfbm/estimators.hpp"
#include "smfbm/increments.hpp"
#include "smfbm/io.hpp"
#include "smfbm/kernels.hpp"
#include "smfbm/numerics.hpp"
#include "smfbm/simulate.hpp"
#include "smfbm/version.hpp"

namespace smfbm::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON config files for CLI11: {"simulate": {"paths": 200}, "threads": 2}.
// Command-line flags override config values, which override defaults.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    ordered_json doc;
    try {
      doc = ordered_json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
      throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    walk(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void walk(const ordered_json& node, std::vector<std::string> parents,
                   std::vector<CLI::ConfigItem>& items) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it->is_object()) {
        auto next = parents;
        next.push_back(it.key());
        walk(*it, std::move(next), items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& v : *it) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(*it));
      }
      items.push_back(std::move(item));
    }
  }
};

// ---------------------------------------------------------------------------
// Flag bundles.

struct SpecFlags {
  std::string process = "smfbm";
  double a = 1.0;
  double b = 1.0;
  double hurst = 0.5;

  ProcessSpec build() const {
    return ProcessSpec::make(process_kind_from_string(process), MixCoeffs(a, b),
                             HurstParam(hurst));
  }
};

struct GridFlags {
  std::string range;      // start:end:count (count intervals, count+1 points)
  std::string grid_file;  // explicit points, whitespace/comma separated

  TimeGrid build() const {
    if (!grid_file.empty()) {
      std::ifstream in(grid_file);
      if (!in.good()) throw std::invalid_argument("--grid-file: cannot open " + grid_file);
      std::vector<double> pts;
      std::string tok;
      while (in >> tok) {
        std::replace(tok.begin(), tok.end(), ',', ' ');
        std::istringstream ss(tok);
        double v;
        while (ss >> v) pts.push_back(v);
      }
      return TimeGrid(pts);
    }
    if (range.empty()) throw std::invalid_argument("one of --grid/--grid-file is required");
    double start = 0.0, end = 0.0;
    int count = 0;
    parse_range(range, start, end, count);
    return TimeGrid::uniform(start, end, count);
  }

  static void parse_range(const std::string& text, double& start, double& end, int& count) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw std::invalid_argument("range expects start:end:count, got '" + text + "'");
    }
    try {
      std::size_t used = 0;
      const std::string head = text.substr(0, c1);
      const std::string mid = text.substr(c1 + 1, c2 - c1 - 1);
      const std::string tail = text.substr(c2 + 1);
      start = std::stod(head, &used);
      if (used != head.size()) throw std::invalid_argument(text);
      end = std::stod(mid, &used);
      if (used != mid.size()) throw std::invalid_argument(text);
      count = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw std::invalid_argument("range expects start:end:count, got '" + text + "'");
    }
    if (count < 1) throw std::invalid_argument("range needs at least one interval");
  }
};

// Dyadic ladder "lo:hi" of exponents -> {2^lo, ..., 2^hi}.
std::vector<long> parse_ladder(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("--n-ladder expects lo:hi (base-2 exponents), got '" + text + "'");
  }
  int lo = 0, hi = 0;
  try {
    std::size_t used = 0;
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    lo = std::stoi(head, &used);
    if (used != head.size()) throw std::invalid_argument(text);
    hi = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("--n-ladder expects lo:hi, got '" + text + "'");
  }
  if (lo < 0 || hi < lo || hi > 30) {
    throw std::invalid_argument("--n-ladder exponents must satisfy 0 <= lo <= hi <= 30");
  }
  std::vector<long> out;
  for (int k = lo; k <= hi; ++k) out.push_back(1L << k);
  return out;
}

void add_spec_options(CLI::App* cmd, SpecFlags& spec) {
  cmd->add_option("--process", spec.process, "process family")
      ->check(CLI::IsMember({"bm", "fbm", "sfbm", "mfbm", "smfbm"}));
  cmd->add_option("--a", spec.a, "Brownian component weight");
  cmd->add_option("--b", spec.b, "sub-fractional component weight");
  cmd->add_option("--hurst", spec.hurst, "Hurst index in (0,1)");
}

void add_grid_options(CLI::App* cmd, GridFlags& grid) {
  cmd->add_option("--grid", grid.range, "uniform grid start:end:count (count intervals)");
  cmd->add_option("--grid-file", grid.grid_file, "file with explicit grid points");
}

void add_threads_option(CLI::App* cmd, int& threads) {
  cmd->add_option("--threads", threads, "parallelism cap (0 = hardware); never changes results")
      ->envname("SMFBM_THREADS");
}

// ---------------------------------------------------------------------------
// Output plumbing.

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw std::invalid_argument("cannot open output file " + path);
  out << content;
  out.flush();
  if (!out.good()) throw std::runtime_error("failed writing " + path);
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  p.replace_extension();
  return p.string() + suffix;
}

void write_manifest(const std::string& command, const ordered_json& params,
                    const ordered_json& outputs, int threads, const std::string& out_path) {
  ordered_json m;
  m["tool"] = "smfbm";
  m["version"] = kVersion;
  m["command"] = command;
  m["parameters"] = params;
  m["threads"] = threads;  // informational: outputs never depend on it
  m["outputs"] = outputs;
  write_text_file(sibling_path(out_path, ".manifest.json"), m.dump(2) + "\n");
}

double jget(const ordered_json& p, const char* key) {
  if (!p.contains(key)) throw std::invalid_argument(std::string("missing parameter: ") + key);
  return p.at(key).get<double>();
}

std::string jgets(const ordered_json& p, const char* key) {
  if (!p.contains(key)) throw std::invalid_argument(std::string("missing parameter: ") + key);
  return p.at(key).get<std::string>();
}

SpecFlags spec_from_json(const ordered_json& p) {
  SpecFlags s;
  s.process = jgets(p, "process");
  s.a = jget(p, "a");
  s.b = jget(p, "b");
  s.hurst = jget(p, "hurst");
  return s;
}

GridFlags grid_from_json(const ordered_json& p) {
  GridFlags g;
  if (p.contains("grid")) g.range = p.at("grid").get<std::string>();
  if (p.contains("grid_file")) g.grid_file = p.at("grid_file").get<std::string>();
  return g;
}

// ---------------------------------------------------------------------------
// Command implementations. Each consumes a fully resolved parameter object --
// the same object the manifest records -- so a rerun retraces this exact path.

void run_cov(const ordered_json& params, int threads) {
  const SpecFlags spec = spec_from_json(params);
  const GridFlags grid = grid_from_json(params);
  const std::string out = jgets(params, "out");
  const auto cov = cov_matrix(spec.build(), grid.build());
  std::ostringstream csv;
  io::write_matrix_csv(csv, cov.entries);
  write_text_file(out, csv.str());
  ordered_json outputs;
  outputs["csv"] = out;
  write_manifest("cov", params, outputs, threads, out);
}

// Estimator closure block for the metadata sidecar: empirical statistics of
// the freshly sampled ensemble next to their analytic counterparts.
ordered_json estimator_check(const PathEnsemble& ensemble) {
  ordered_json check;
  const auto& grid = ensemble.config.grid;
  const auto& spec = ensemble.config.spec;
  const std::size_t last = grid.size() - 1;
  const auto end_var = empirical_cov(ensemble, last, last);
  check["var_at_end"] = {{"value", end_var.value},
                        {"std_error", end_var.std_error},
                        {"analytic", spec.variance(grid[last])}};
  if (grid.size() >= 2) {
    const auto cov = empirical_cov(ensemble, last / 2, last);
    check["cov_mid_end"] = {{"value", cov.value},
                            {"std_error", cov.std_error},
                            {"analytic", spec.covariance(grid[last / 2], grid[last])}};
  }
  if (grid.is_uniform_from_zero() && grid.size() >= 3) {
    const auto qv = realized_qv(ensemble);
    check["realized_qv"] = {
        {"value", qv.value},
        {"std_error", qv.std_error},
        {"analytic", expected_qv(grid[last], static_cast<long>(grid.size() - 1),
                                 spec.coeffs(), spec.hurst())}};
  }
  return check;
}

void run_simulate(const ordered_json& params, int threads) {
  const SpecFlags spec = spec_from_json(params);
  const GridFlags grid = grid_from_json(params);
  const std::string out = jgets(params, "out");
  const int paths = static_cast<int>(jget(params, "paths"));
  const auto seed = params.at("seed").get<std::uint64_t>();
  const SampleMethod method = sample_method_from_string(jgets(params, "method"));
  const bool check = params.contains("check") && params.at("check").get<bool>();
  const SamplerConfig cfg{spec.build(), grid.build(), paths, seed, method};
  const PathEnsemble ensemble = sample(cfg, threads);

  std::ostringstream csv;
  io::write_paths_csv(csv, ensemble);
  write_text_file(out, csv.str());
  const std::string meta = sibling_path(out, ".meta.json");
  if (check && paths >= 2) {
    ordered_json doc = ordered_json::parse(io::ensemble_metadata_json(ensemble));
    doc["estimator_check"] = estimator_check(ensemble);
    write_text_file(meta, doc.dump(2) + "\n");
  } else {
    write_text_file(meta, io::ensemble_metadata_json(ensemble));
  }

  ordered_json outputs;
  outputs["csv"] = out;
  outputs["meta"] = meta;
  write_manifest("simulate", params, outputs, threads, out);
}

void run_diag(const ordered_json& params, int threads) {
  const SpecFlags sf = spec_from_json(params);
  const ProcessSpec spec = sf.build();
  const MixCoeffs c = spec.coeffs();
  const HurstParam h = spec.hurst();
  const std::string sub = jgets(params, "sub");
  const std::string out = jgets(params, "out");

  io::DiagnosticsReport report;
  report.spec = spec;
  report.operation = sub;
  std::string extra_csv;

  if (sub == "markov") {
    const double s = jget(params, "s"), t = jget(params, "t"), u = jget(params, "u");
    const double defect = markov_defect(s, t, u, spec);
    report.inputs = {{"s", io::json_number(s)},
                     {"t", io::json_number(t)},
                     {"u", io::json_number(u)}};
    report.outputs = {{"defect", io::json_number(defect)}};
    report.verdict = std::abs(defect) <= 1e-12
                         ? "consistent with the Markov factorization"
                         : "not Markovian (factorization residual is nonzero)";
  } else if (sub == "qv") {
    const double T = jget(params, "t");
    const auto ladder = parse_ladder(jgets(params, "n_ladder"));
    const QvReport qv = qv_report(T, ladder, c, h);
    report.inputs = {{"t", io::json_number(T)},
                     {"n_ladder", io::json_string(jgets(params, "n_ladder"))}};
    report.outputs = {{"n", io::json_array(qv.n_values)},
                      {"a_n", io::json_array(qv.a_n)},
                      {"limit_class", io::json_string(to_string(qv.limit_class))}};
    if (h.value() > 0.5 && c.b != 0.0 && qv.n_values.size() >= 3) {
      // fitted convergence rate of |A_n - a^2 T| toward its limit
      std::vector<double> ns, gaps;
      for (std::size_t i = 0; i < qv.n_values.size(); ++i) {
        const double gap = std::abs(qv.a_n[i] - c.a2() * T);
        if (gap > 0.0) {
          ns.push_back(static_cast<double>(qv.n_values[i]));
          gaps.push_back(gap);
        }
      }
      if (ns.size() >= 3) {
        const auto fit = num::fit_loglog(ns, gaps);
        report.trend_fits = {{"qv_gap_exponent", io::json_number(fit.slope)},
                             {"expected_exponent", io::json_number(1.0 - h.two_h())}};
      }
    }
    report.verdict = to_string(qv.limit_class);
    std::ostringstream csv;
    csv << "n,a_n\n";
    for (std::size_t i = 0; i < qv.n_values.size(); ++i) {
      csv << qv.n_values[i] << ',' << io::format_double(qv.a_n[i]) << '\n';
    }
    extra_csv = csv.str();
  } else if (sub == "quasimart") {
    const double T = jget(params, "t");
    const auto ladder = parse_ladder(jgets(params, "n_ladder"));
    std::vector<double> ns, sums;
    double last_uv = 0.0;
    for (long n : ladder) {
      if (n < 2) continue;
      const auto qm = quasi_mart_sum(T, n, c, h);
      ns.push_back(static_cast<double>(n));
      sums.push_back(qm.i_n);
      last_uv = qm.uv_terms.back();
    }
    report.inputs = {{"t", io::json_number(T)},
                     {"n_ladder", io::json_string(jgets(params, "n_ladder"))}};
    std::vector<long> n_long(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) n_long[i] = static_cast<long>(ns[i]);
    report.outputs = {{"n", io::json_array(n_long)},
                      {"i_n", io::json_array(sums)},
                      {"uv_last", io::json_number(last_uv)}};
    const double uv_limit = (std::exp2(h.two_h()) - 2.0) /
                            std::sqrt(c.a2() * T + c.b2() * std::pow(T, h.two_h()));
    report.trend_fits = {{"uv_limit", io::json_number(uv_limit)}};
    bool fitted = false;
    if (!sums.empty() && sums.front() > 0.0 && sums.back() > 0.0) {
      const auto fit = num::fit_loglog(ns, sums);
      report.trend_fits.emplace_back("i_n_exponent", io::json_number(fit.slope));
      report.trend_fits.emplace_back("expected_exponent", io::json_number(1.5 - h.two_h()));
      fitted = true;
    }
    report.verdict = !fitted ? "uncorrelated increments (I_n = 0)"
                     : (1.5 - h.two_h() > 0.0 ? "I_n diverges: not a quasi-martingale"
                                              : "I_n stays bounded");
    std::ostringstream csv;
    csv << "n,i_n\n";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      csv << static_cast<long>(ns[i]) << ',' << io::format_double(sums[i]) << '\n';
    }
    extra_csv = csv.str();
  } else if (sub == "condl2") {
    const double T = jget(params, "t");
    const long n = static_cast<long>(jget(params, "n"));
    const auto r = cond_l2_sum(T, n, c, h);
    std::vector<double> floors;
    floors.reserve(r.per_j.size());
    for (long j = 1; j <= static_cast<long>(r.per_j.size()); ++j) {
      floors.push_back(cond_l2_term_floor(j, n, T, c));
    }
    report.inputs = {{"t", io::json_number(T)}, {"n", io::json_number(n)}};
    report.outputs = {{"total", io::json_number(r.total)},
                      {"per_j", io::json_array(r.per_j)},
                      {"floor_per_j", io::json_array(floors)},
                      {"lambda_max", io::json_number(r.lambda_max)},
                      {"lambda_bound", io::json_number(r.lambda_bound)},
                      {"lambda_max_bound_ok", r.lambda_max_bound_ok ? "true" : "false"}};
    report.verdict = h.value() == 0.75
                         ? "conditional L2 mass grows with n: not a quasi-martingale at H = 3/4"
                         : "conditional L2 mass computed (analytic floor applies at H = 3/4)";
  } else if (sub == "l2probe") {
    const double T = jget(params, "t");
    const int levels = static_cast<int>(jget(params, "levels"));
    const auto probe = l2_mixed_partial_probe(T, c, h, levels);
    report.inputs = {{"t", io::json_number(T)}, {"levels", io::json_number(static_cast<long>(levels))}};
    report.outputs = {{"estimates", io::json_array(probe.estimates)},
                      {"converged", probe.converged ? "true" : "false"}};
    report.verdict = probe.converged
                         ? "band integrals saturate: mixed partial is square integrable"
                         : "band integrals keep growing: mixed partial is not square integrable";
  } else if (sub == "verdict") {
    const auto v = semimart_verdict(c, h);
    report.outputs = {{"is_semimartingale", v.is_semimartingale ? "true" : "false"},
                      {"regime", io::json_string(to_string(v.regime))}};
    report.verdict = v.is_semimartingale ? "semimartingale" : "not a semimartingale";
    report.citations = v.citations;
  } else {
    throw std::invalid_argument("unknown diag subcommand: " + sub);
  }

  write_text_file(out, io::to_json_string(report));
  ordered_json outputs;
  outputs["json"] = out;
  if (!extra_csv.empty()) {
    const std::string csv_path = sibling_path(out, ".csv");
    write_text_file(csv_path, extra_csv);
    outputs["csv"] = csv_path;
  }
  write_manifest("diag", params, outputs, threads, out);
}

void run_compare(const ordered_json& params, int threads) {
  const SpecFlags sf = spec_from_json(params);
  const std::string out = jgets(params, "out");
  const std::string sweep = params.contains("sweep") ? jgets(params, "sweep") : "";
  const long lag_p = params.contains("lag_p") ? static_cast<long>(jget(params, "lag_p")) : 0;

  std::ostringstream csv;
  if (sweep == "n") {
    // lag-covariance ladder with its n^{2H-3} asymptote
    const auto ladder = parse_ladder(jgets(params, "range"));
    const MixCoeffs c(sf.a, sf.b);
    const HurstParam h(sf.hurst);
    csv << "p,n,a,b,hurst,lag_cov,asymptote,ratio\n";
    for (long n : ladder) {
      const double v = lag_cov(lag_p, n, c, h);
      const double hv = h.value();
      const double asym = 2.0 * (1.0 - hv) * hv * (2.0 * hv - 1.0) *
                          static_cast<double>(2 * lag_p + 1) * c.b2() *
                          std::pow(static_cast<double>(n), h.two_h() - 3.0);
      csv << lag_p << ',' << n << ',' << io::format_double(c.a) << ','
          << io::format_double(c.b) << ',' << io::format_double(hv) << ','
          << io::format_double(v) << ',' << io::format_double(asym) << ',';
      if (asym != 0.0) csv << io::format_double(v / asym);
      csv << '\n';
    }
  } else {
    double u = 0.0, v = 0.0, s = 0.0, t = 0.0;
    if (params.contains("r")) {
      const double r = jget(params, "r");
      if (!(r > 0.0)) throw std::invalid_argument("--r must be positive");
      u = jget(params, "u");
      v = u + r;
      s = v;
      t = u + 2.0 * r;
    } else {
      u = jget(params, "u");
      v = jget(params, "v");
      s = jget(params, "s");
      t = jget(params, "t");
    }
    std::vector<double> sweep_values;
    if (!sweep.empty()) {
      double lo = 0.0, hi = 0.0;
      int count = 0;
      GridFlags::parse_range(jgets(params, "range"), lo, hi, count);
      for (int i = 0; i <= count; ++i) {
        sweep_values.push_back(lo + (hi - lo) * static_cast<double>(i) / count);
      }
    } else {
      sweep_values.push_back(0.0);  // single row, value unused
    }
    const bool adjacent = (v == s) && std::abs((v - u) - (t - s)) <= 1e-12 * (t - u);
    csv << "u,v,s,t,a,b,hurst,r_mfbm,c_smfbm,d_gap,rho_mfbm,rho_smfbm\n";
    for (double x : sweep_values) {
      SpecFlags cur = sf;
      if (sweep == "hurst") {
        cur.hurst = x;
      } else if (sweep == "a") {
        cur.a = x;
      } else if (sweep == "b") {
        cur.b = x;
      } else if (!sweep.empty()) {
        throw std::invalid_argument("unknown sweep axis: " + sweep);
      }
      const MixCoeffs c(cur.a, cur.b);
      const HurstParam h(cur.hurst);
      const IntervalPair pair(u, v, s, t);
      csv << io::format_double(u) << ',' << io::format_double(v) << ','
          << io::format_double(s) << ',' << io::format_double(t) << ','
          << io::format_double(cur.a) << ',' << io::format_double(cur.b) << ','
          << io::format_double(cur.hurst) << ','
          << io::format_double(nonoverlap_cov_mfbm(pair, c, h)) << ','
          << io::format_double(nonoverlap_cov_smfbm(pair, c, h)) << ','
          << io::format_double(cov_gap(pair, c, h)) << ',';
      if (adjacent) {
        const auto rho = adjacent_corr_pair(u, v - u, c, h);
        csv << io::format_double(rho.rho_mfbm) << ',' << io::format_double(rho.rho_smfbm);
      } else {
        csv << ',';
      }
      csv << '\n';
    }
  }
  write_text_file(out, csv.str());
  ordered_json outputs;
  outputs["csv"] = out;
  write_manifest("compare", params, outputs, threads, out);
}

void dispatch(const std::string& command, const ordered_json& params, int threads) {
  if (command == "cov") return run_cov(params, threads);
  if (command == "simulate") return run_simulate(params, threads);
  if (command == "diag") return run_diag(params, threads);
  if (command == "compare") return run_compare(params, threads);
  throw std::invalid_argument("unknown command in manifest: " + command);
}

void run_rerun(const std::string& manifest_path, int threads) {
  std::ifstream in(manifest_path);
  if (!in.good()) throw std::invalid_argument("cannot open manifest " + manifest_path);
  ordered_json m;
  try {
    m = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!m.contains("command") || !m.contains("parameters")) {
    throw std::invalid_argument("manifest lacks command/parameters");
  }
  dispatch(m.at("command").get<std::string>(), m.at("parameters"), threads);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"sub-mixed fractional Brownian motion toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file (flags override config)");
  app.require_subcommand(1);
  // let --config / --threads be written after the subcommand name
  app.fallthrough();

  int threads = 0;

  // --- cov -----------------------------------------------------------------
  SpecFlags cov_spec;
  GridFlags cov_grid;
  std::string cov_out = "cov.csv";
  auto* cov_cmd = app.add_subcommand("cov", "write a covariance matrix as CSV");
  add_spec_options(cov_cmd, cov_spec);
  add_grid_options(cov_cmd, cov_grid);
  cov_cmd->add_option("--out", cov_out, "output CSV path");
  add_threads_option(cov_cmd, threads);

  // --- simulate --------------------------------------------------------------
  SpecFlags sim_spec;
  GridFlags sim_grid;
  std::string sim_out = "paths.csv";
  int sim_paths = 1;
  std::uint64_t sim_seed = 0;
  std::string sim_method = "direct";
  auto* sim_cmd = app.add_subcommand("simulate", "sample paths exactly and write CSV");
  add_spec_options(sim_cmd, sim_spec);
  add_grid_options(sim_cmd, sim_grid);
  sim_cmd->add_option("--paths", sim_paths, "number of paths")
      ->check(CLI::Range(1, 1 << 30));
  sim_cmd->add_option("--seed", sim_seed, "RNG seed (64-bit)");
  sim_cmd->add_option("--method", sim_method, "sampling route")
      ->check(CLI::IsMember({"direct", "constructive"}));
  sim_cmd->add_option("--out", sim_out, "output CSV path");
  bool sim_check = false;
  sim_cmd->add_flag("--check", sim_check,
                    "append empirical-vs-analytic estimator rows to the metadata");
  add_threads_option(sim_cmd, threads);

  // --- diag ------------------------------------------------------------------
  auto* diag_cmd = app.add_subcommand("diag", "analytic diagnostics, JSON reports");
  diag_cmd->require_subcommand(1);
  struct DiagState {
    SpecFlags spec;
    double s = 1.0, t = 2.0, u = 3.0;
    double horizon = 1.0;
    std::string ladder = "4:14";
    long n = 512;
    int levels = 26;
    std::string out;
  } diag;
  const auto add_diag_sub = [&](const std::string& name, const std::string& desc) {
    auto* sub = diag_cmd->add_subcommand(name, desc);
    add_spec_options(sub, diag.spec);
    sub->add_option("--out", diag.out, "output JSON path");
    add_threads_option(sub, threads);
    return sub;
  };
  auto* markov_cmd = add_diag_sub("markov", "Markov factorization residual");
  markov_cmd->add_option("--s", diag.s, "first time");
  markov_cmd->add_option("--t", diag.t, "middle time");
  markov_cmd->add_option("--u", diag.u, "last time");
  auto* qv_cmd = add_diag_sub("qv", "expected quadratic variation ladder");
  qv_cmd->add_option("--t", diag.horizon, "horizon T");
  qv_cmd->add_option("--n-ladder", diag.ladder, "dyadic exponents lo:hi");
  auto* quasi_cmd = add_diag_sub("quasimart", "quasi-martingale lower-bound sums");
  quasi_cmd->add_option("--t", diag.horizon, "horizon T");
  quasi_cmd->add_option("--n-ladder", diag.ladder, "dyadic exponents lo:hi");
  auto* condl2_cmd = add_diag_sub("condl2", "conditional-L2 sums with eigenvalue bound");
  condl2_cmd->add_option("--t", diag.horizon, "horizon T");
  condl2_cmd->add_option("--n", diag.n, "partition size (O(n^3) cost)");
  auto* probe_cmd = add_diag_sub("l2probe", "square-integrability probe of the mixed partial");
  probe_cmd->add_option("--t", diag.horizon, "horizon T");
  probe_cmd->add_option("--levels", diag.levels, "band-shrink levels (>= 3)");
  auto* verdict_cmd = add_diag_sub("verdict", "semimartingale classification");

  // --- compare -----------------------------------------------------------------
  SpecFlags cmp_spec;
  std::string cmp_out = "compare.csv";
  double cmp_u = 0.0, cmp_v = 1.0, cmp_s = 1.0, cmp_t = 2.0, cmp_r = 0.0;
  std::string cmp_sweep, cmp_range;
  long cmp_lag_p = 0;
  auto* cmp_cmd = app.add_subcommand(
      "compare", "mixed vs sub-mixed increment covariances and correlations");
  add_spec_options(cmp_cmd, cmp_spec);
  cmp_cmd->add_option("--u", cmp_u, "pair left endpoint");
  auto* vopt = cmp_cmd->add_option("--v", cmp_v, "end of first interval");
  auto* sopt = cmp_cmd->add_option("--s", cmp_s, "start of second interval");
  auto* topt = cmp_cmd->add_option("--t", cmp_t, "end of second interval");
  auto* ropt =
      cmp_cmd->add_option("--r", cmp_r, "adjacent mode: intervals [u,u+r],[u+r,u+2r]");
  cmp_cmd->add_option("--sweep", cmp_sweep, "sweep axis")
      ->check(CLI::IsMember({"hurst", "a", "b", "n"}));
  cmp_cmd->add_option("--range", cmp_range,
                      "sweep range lo:hi:count (hurst/a/b) or exponents lo:hi (n)");
  cmp_cmd->add_option("--lag-p", cmp_lag_p, "offset p for the n sweep");
  cmp_cmd->add_option("--out", cmp_out, "output CSV path");
  add_threads_option(cmp_cmd, threads);

  // --- rerun ---------------------------------------------------------------
  std::string rerun_manifest;
  auto* rerun_cmd = app.add_subcommand("rerun", "re-execute a recorded manifest");
  rerun_cmd->add_option("--manifest", rerun_manifest, "manifest JSON path")->required();
  add_threads_option(rerun_cmd, threads);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cov_cmd) {
      ordered_json p;
      p["process"] = cov_spec.process;
      p["a"] = cov_spec.a;
      p["b"] = cov_spec.b;
      p["hurst"] = cov_spec.hurst;
      if (!cov_grid.range.empty()) p["grid"] = cov_grid.range;
      if (!cov_grid.grid_file.empty()) p["grid_file"] = cov_grid.grid_file;
      p["out"] = cov_out;
      run_cov(p, threads);
    } else if (*sim_cmd) {
      ordered_json p;
      p["process"] = sim_spec.process;
      p["a"] = sim_spec.a;
      p["b"] = sim_spec.b;
      p["hurst"] = sim_spec.hurst;
      if (!sim_grid.range.empty()) p["grid"] = sim_grid.range;
      if (!sim_grid.grid_file.empty()) p["grid_file"] = sim_grid.grid_file;
      p["paths"] = sim_paths;
      p["seed"] = sim_seed;
      p["method"] = sim_method;
      p["check"] = sim_check;
      p["out"] = sim_out;
      run_simulate(p, threads);
    } else if (*diag_cmd) {
      ordered_json p;
      p["process"] = diag.spec.process;
      p["a"] = diag.spec.a;
      p["b"] = diag.spec.b;
      p["hurst"] = diag.spec.hurst;
      std::string sub;
      if (*markov_cmd) {
        sub = "markov";
        p["s"] = diag.s;
        p["t"] = diag.t;
        p["u"] = diag.u;
      } else if (*qv_cmd) {
        sub = "qv";
        p["t"] = diag.horizon;
        p["n_ladder"] = diag.ladder;
      } else if (*quasi_cmd) {
        sub = "quasimart";
        p["t"] = diag.horizon;
        p["n_ladder"] = diag.ladder;
      } else if (*condl2_cmd) {
        sub = "condl2";
        p["t"] = diag.horizon;
        p["n"] = diag.n;
      } else if (*probe_cmd) {
        sub = "l2probe";
        p["t"] = diag.horizon;
        p["levels"] = diag.levels;
      } else if (*verdict_cmd) {
        sub = "verdict";
      }
      p["sub"] = sub;
      p["out"] = diag.out.empty() ? ("diag_" + sub + ".json") : diag.out;
      run_diag(p, threads);
    } else if (*cmp_cmd) {
      ordered_json p;
      p["process"] = cmp_spec.process;
      p["a"] = cmp_spec.a;
      p["b"] = cmp_spec.b;
      p["hurst"] = cmp_spec.hurst;
      if (*ropt) {
        if (*vopt || *sopt || *topt) {
          throw std::invalid_argument("--r (adjacent mode) excludes --v/--s/--t");
        }
        p["u"] = cmp_u;
        p["r"] = cmp_r;
      } else {
        p["u"] = cmp_u;
        p["v"] = cmp_v;
        p["s"] = cmp_s;
        p["t"] = cmp_t;
      }
      if (!cmp_sweep.empty()) {
        p["sweep"] = cmp_sweep;
        if (cmp_range.empty()) throw std::invalid_argument("--sweep requires --range");
        p["range"] = cmp_range;
      }
      p["lag_p"] = cmp_lag_p;
      p["out"] = cmp_out;
      run_compare(p, threads);
    } else if (*rerun_cmd) {
      run_rerun(rerun_manifest, threads);
    }
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace smfbm::cli
