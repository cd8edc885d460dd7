// Copyright 2026 The gscount Authors
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

// Command-line front end: table, verify, count, refute.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or domain error,
// 3 I/O error.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gscount/channel_basis.hpp"
#include "gscount/complexity_model.hpp"
#include "gscount/io.hpp"
#include "gscount/ortho_kernel.hpp"
#include "gscount/refutation.hpp"

namespace gscount::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

enum class Command { table, verify, count, refute };
enum class Format { csv, json, md };

inline constexpr const char* kSeedEnv = "GSCOUNT_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

struct RunConfig {
  Command command = Command::table;
  int n_min = 2;
  int n_max = 8;
  std::uint64_t seed = kDefaultSeed;
  int trials = 1;
  double tol = kEquivalenceTol;
  Format format = Format::md;
  std::optional<std::string> out;
  /// count: write the first trial's channel and basis at each N here.
  std::optional<std::string> dump;
  /// Draw unpaired channels; negative control for verify.
  bool unpaired = false;
};

inline std::string to_string(Command c) {
  switch (c) {
    case Command::table: return "table";
    case Command::verify: return "verify";
    case Command::count: return "count";
    case Command::refute: return "refute";
  }
  return "?";
}

inline std::string to_string(Format f) {
  switch (f) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::md: return "md";
  }
  return "?";
}

/// "a..b" or "a".
inline std::pair<int, int> parse_range(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw DomainError("bad N range '" + text + "'");
    }
    if (used != s.size()) throw DomainError("bad N range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int n = parse_int(text);
    return {n, n};
  }
  return {parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
}

inline void validate(const RunConfig& cfg) {
  if (cfg.n_min < 2) throw DomainError("N must be >= 2");
  if (cfg.n_max < cfg.n_min) throw DomainError("N range is empty");
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  if (!(cfg.tol > 0.0)) throw DomainError("tol must be > 0");
}

inline nlohmann::json config_json(const RunConfig& cfg) {
  return {{"command", to_string(cfg.command)},
          {"n_min", cfg.n_min},
          {"n_max", cfg.n_max},
          {"seed", cfg.seed},
          {"trials", cfg.trials},
          {"tol", cfg.tol},
          {"format", to_string(cfg.format)}};
}

inline nlohmann::json cost_json(const DetectorCost& c) {
  return {{"rm", c.rm}, {"ra", c.ra}, {"total", c.total}};
}

inline nlohmann::json counts_json(const OpCounts& c) {
  return {{"rm", c.real_mults},
          {"ra", c.real_adds},
          {"cmul", c.complex_mults},
          {"cadd", c.complex_adds},
          {"total", c.total_flops()}};
}

inline nlohmann::json phases_json(const PhaseCosts& p) {
  nlohmann::json out = nlohmann::json::object();
  for (Phase ph : kAllPhases) out[std::string(phase_name(ph))] = counts_json(p[ph]);
  return out;
}

inline std::string fixed(double x, int digits) {
  if (std::isnan(x)) return "n/a";
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

inline std::string sci(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

/// Rows of text printed either as CSV or as an aligned Markdown table.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write_csv(std::ostream& os) const {
    write_csv_row(os, header_);
    for (const auto& r : rows_) write_csv_row(os, r);
  }

  void write_md(std::ostream& os) const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) {
      width[c] = std::max<std::size_t>(3, header_[c].size());
      for (const auto& r : rows_) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
      os << '|';
      for (std::size_t c = 0; c < r.size(); ++c) {
        os << ' ' << std::setw(static_cast<int>(width[c])) << r[c] << " |";
      }
      os << '\n';
    };
    line(header_);
    os << '|';
    for (std::size_t w : width) os << ' ' << std::string(w - 1, '-') << ": |";
    os << '\n';
    for (const auto& r : rows_) line(r);
  }

 private:
  static void write_csv_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Check {
  std::string name;
  int n = 0;
  bool pass = true;
  double max_dev = 0.0;
};

inline nlohmann::json checks_json(const std::vector<Check>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j = {{"name", c.name}, {"pass", c.pass}};
    if (c.n > 0) j["n"] = c.n;
    // JSON has no infinity; an aborted check reports null.
    j["max_dev"] = std::isfinite(c.max_dev) ? nlohmann::json(c.max_dev) : nlohmann::json();
    out.push_back(std::move(j));
  }
  return out;
}

inline bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

inline int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rows = table2(cfg.n_min, cfg.n_max);
  const bool golden = matches_golden(rows);
  if (cfg.format == Format::json) {
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows) {
      jrows.push_back({{"n", r.n},
                       {"model",
                        {{"ml", cost_json(r.ml)},
                         {"mmse", cost_json(r.mmse)},
                         {"ratio_mmse_over_ml", r.ratio}}},
                       {"claimed_ref1", cost_json(ref1_claimed_cost(r.n))}});
    }
    nlohmann::json doc = {{"config", config_json(cfg)},
                          {"rows", std::move(jrows)},
                          {"checks", checks_json({{"table2_golden", 0, golden, 0.0}})}};
    out << doc.dump(2) << '\n';
  } else {
    std::vector<std::string> header = {"N",       "ml_rm",   "ml_ra",     "ml_total",
                                       "mmse_rm", "mmse_ra", "mmse_total"};
    if (cfg.format == Format::md) header.push_back("mmse/ml");
    TextTable t(header);
    for (const auto& r : rows) {
      std::vector<std::string> cells = {
          std::to_string(r.n),         std::to_string(r.ml.rm),
          std::to_string(r.ml.ra),     std::to_string(r.ml.total),
          std::to_string(r.mmse.rm),   std::to_string(r.mmse.ra),
          std::to_string(r.mmse.total)};
      if (cfg.format == Format::md) cells.push_back(fixed(r.ratio, 2));
      t.add(std::move(cells));
    }
    cfg.format == Format::csv ? t.write_csv(out) : t.write_md(out);
  }
  if (!golden) {
    err << "table: output differs from the published N=2..8 values\n";
    return kCheckFailed;
  }
  return kPass;
}

namespace detail {

struct CheckAccumulator {
  std::vector<std::string> names;
  std::vector<double> worst;
  std::vector<bool> pass;

  void record(const std::string& name, double dev, bool ok) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.push_back(name);
      worst.push_back(dev);
      pass.push_back(ok);
      return;
    }
    const auto k = static_cast<std::size_t>(it - names.begin());
    worst[k] = std::max(worst[k], dev);
    pass[k] = pass[k] && ok;
  }
};

}  // namespace detail

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<Check> checks;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    detail::CheckAccumulator acc;
    for (int t = 0; t < cfg.trials; ++t) {
      const auto seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(t));
      auto record = [&](const std::string& name, double dev, bool ok) {
        acc.record(name, dev, ok);
        if (!ok) {
          err << "FAIL N=" << n << " seed=" << seed << " check=" << name
              << " max_dev=" << sci(dev) << '\n';
        }
      };
      const auto basis = build_basis(
          gen_channel(n, seed, cfg.unpaired ? Pairing::unpaired : Pairing::alamouti));

      const auto ref = gs_reference(basis);
      const double ortho_ref = verify_orthonormality(ref.basis);
      record("orthonormality_reference", ortho_ref, ortho_ref < cfg.tol);
      const double sparse_ref = max_outside_sparsity_bound(ref.basis);
      record("sparsity_reference", sparse_ref, sparse_ref < kExactZeroTol);
      const double partner = partner_consistency(ref.basis);
      record("alamouti_consistency", partner, partner < cfg.tol);

      std::optional<GsRun> opt;
      AccountingContext ctx;
      try {
        opt = gs_optimized(basis, ctx);
      } catch (const StructureError& e) {
        err << "N=" << n << " seed=" << seed << ": " << e.what() << '\n';
      }
      if (!opt) {
        for (const char* name : {"orthonormality_optimized", "oracle_equivalence",
                                 "sparsity_optimized", "span_preservation",
                                 "divisor_safety"}) {
          record(name, kInf, false);
        }
        continue;
      }
      const double ortho_opt = verify_orthonormality(opt->basis);
      record("orthonormality_optimized", ortho_opt, ortho_opt < cfg.tol);
      const double equiv = max_entrywise_diff(opt->basis, ref.basis);
      record("oracle_equivalence", equiv, equiv < cfg.tol);
      const double sparse_opt = max_outside_sparsity_bound(opt->basis);
      record("sparsity_optimized", sparse_opt,
             sparse_opt == 0.0 && declared_supports_match_bound(opt->basis));
      const double span = span_residual(basis, opt->basis);
      record("span_preservation", span, span < cfg.tol);
      const double min_div = *std::min_element(opt->divisors.begin(), opt->divisors.end());
      record("divisor_safety", std::max(0.0, 1.0 - min_div), min_div >= 1.0);
    }
    for (std::size_t k = 0; k < acc.names.size(); ++k) {
      checks.push_back({acc.names[k], n, static_cast<bool>(acc.pass[k]), acc.worst[k]});
    }
  }

  if (cfg.format == Format::json) {
    nlohmann::json doc = {{"config", config_json(cfg)},
                          {"rows", nlohmann::json::array()},
                          {"checks", checks_json(checks)}};
    out << doc.dump(2) << '\n';
  } else {
    TextTable t({"N", "check", "max_dev", "pass"});
    for (const auto& c : checks) {
      t.add({std::to_string(c.n), c.name, sci(c.max_dev), c.pass ? "yes" : "no"});
    }
    cfg.format == Format::csv ? t.write_csv(out) : t.write_md(out);
  }
  return all_pass(checks) ? kPass : kCheckFailed;
}

inline int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Check> checks;
  nlohmann::json jrows = nlohmann::json::array();
  nlohmann::json dumps = nlohmann::json::array();
  TextTable t({"N", "phase", "rm", "ra", "cmul", "cadd", "flops"});
  TextTable summary({"N", "cmul", "model_cmul", "cmul/(2/3N^3)", "cadd",
                     "model_cadd", "flops", "model_flops", "flops/model"});

  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    std::optional<PhaseCosts> first;
    bool consistent = true;
    for (int t_idx = 0; t_idx < cfg.trials; ++t_idx) {
      const auto seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(t_idx));
      const auto m = measure_gs(n, seed);
      if (!first) {
        first = m.phases;
        if (cfg.dump) {
          const auto ch = gen_channel(n, seed);
          AccountingContext scratch;
          dumps.push_back({{"channel", channel_to_json(ch)},
                           {"basis", basis_to_json(gs_optimized(build_basis(ch), scratch).basis)}});
        }
      } else if (!(m.phases == *first)) {
        consistent = false;
        err << "count: N=" << n << " seed=" << seed
            << " charged different counts than the first trial\n";
      }
    }
    const PhaseCosts& phases = *first;
    const OpCounts total = phases.total();
    const auto model = gs_model_row(n);
    const auto model_real = to_real_ops(model);
    const double cubic = 2.0 / 3.0 * n * n * n;

    checks.push_back({"seed_independence", n, consistent, 0.0});
    const auto& th = phases[Phase::theta12];
    const bool eq13 = th.real_mults == 9 && th.real_adds == 4 && th.complex_mults == 0 &&
                      th.complex_adds == 0;
    checks.push_back({"theta12_matches_eq13", n, eq13, 0.0});

    for (Phase p : kAllPhases) {
      const auto& c = phases[p];
      t.add({std::to_string(n), std::string(phase_name(p)), std::to_string(c.real_mults),
             std::to_string(c.real_adds), std::to_string(c.complex_mults),
             std::to_string(c.complex_adds), std::to_string(c.total_flops())});
    }
    t.add({std::to_string(n), "total", std::to_string(total.real_mults),
           std::to_string(total.real_adds), std::to_string(total.complex_mults),
           std::to_string(total.complex_adds), std::to_string(total.total_flops())});
    t.add({std::to_string(n), "model_eq13_eq14", std::to_string(model_real.rm),
           std::to_string(model_real.ra), std::to_string(model.cmul),
           std::to_string(model.cadd), std::to_string(model_real.total)});

    const double flops_ratio =
        static_cast<double>(total.total_flops()) / static_cast<double>(model_real.total);
    summary.add({std::to_string(n), std::to_string(total.complex_mults),
                 std::to_string(model.cmul),
                 fixed(static_cast<double>(total.complex_mults) / cubic, 4),
                 std::to_string(total.complex_adds), std::to_string(model.cadd),
                 std::to_string(total.total_flops()), std::to_string(model_real.total),
                 fixed(flops_ratio, 4)});

    jrows.push_back(
        {{"n", n},
         {"model",
          {{"eq13_eq14",
            {{"cmul", model.cmul}, {"cadd", model.cadd}, {"rm", model.rm}, {"ra", model.ra}}},
           {"real_ops", cost_json(model_real)}}},
         {"measured",
          {{"rm", total.real_mults},
           {"ra", total.real_adds},
           {"cmul", total.complex_mults},
           {"cadd", total.complex_adds},
           {"total", total.total_flops()},
           {"phases", phases_json(phases)}}},
         {"ratios",
          {{"cmul_over_two_thirds_n3", static_cast<double>(total.complex_mults) / cubic},
           {"flops_over_model", flops_ratio}}},
         {"claimed_ref1", cost_json(ref1_claimed_cost(n))}});
  }

  if (cfg.format == Format::json) {
    nlohmann::json doc = {{"config", config_json(cfg)},
                          {"rows", std::move(jrows)},
                          {"checks", checks_json(checks)}};
    out << doc.dump(2) << '\n';
  } else if (cfg.format == Format::csv) {
    t.write_csv(out);
  } else {
    t.write_md(out);
    out << '\n';
    summary.write_md(out);
  }
  if (cfg.dump) {
    std::ofstream file(*cfg.dump, std::ios::binary);
    if (!file || !(file << nlohmann::json{{"runs", std::move(dumps)}}.dump(2) << '\n')) {
      err << "cannot write " << *cfg.dump << '\n';
      return kIo;
    }
  }
  return all_pass(checks) ? kPass : kCheckFailed;
}

inline int cmd_refute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto report = refutation_report(cfg.n_min, cfg.n_max, cfg.seed, cfg.trials);
  std::vector<Check> checks = {
      {"measured_exceeds_claimed_n_ge_10", 0, report.measured_exceeds_claimed, 0.0},
      {"leading_coefficient_within_15pct", 0, report.fit_within_tolerance,
       std::abs(report.fitted_leading - kCorrectedLeadingCoefficient) /
           kCorrectedLeadingCoefficient},
      {"seed_independence", 0, report.seeds_consistent, 0.0},
  };

  if (cfg.format == Format::json) {
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : report.rows) {
      jrows.push_back({{"n", r.n},
                       {"model",
                        {{"ml", cost_json(r.ml_model)},
                         {"mmse", cost_json(r.mmse_model)},
                         {"ratio_mmse_over_ml", r.ratio_mmse_over_ml}}},
                       {"measured",
                        {{"rm", r.measured_gs.real_mults},
                         {"ra", r.measured_gs.real_adds},
                         {"total", r.measured_gs.total_flops()},
                         {"phases", phases_json(r.measured_phases)}}},
                       {"claimed_ref1", cost_json(r.ref1_claimed)}});
    }
    nlohmann::json doc = {
        {"config", config_json(cfg)},
        {"rows", std::move(jrows)},
        {"fit",
         {{"leading_coefficient", report.fitted_leading},
          {"target", kCorrectedLeadingCoefficient},
          {"asserted", report.fit_asserted}}},
        {"checks", checks_json(checks)}};
    out << doc.dump(2) << '\n';
  } else {
    TextTable t({"N", "gs_rm", "gs_ra", "gs_total", "ref1_total", "gs/ref1", "ml_total",
                 "mmse_total", "mmse/ml"});
    for (const auto& r : report.rows) {
      t.add({std::to_string(r.n), std::to_string(r.measured_gs.real_mults),
             std::to_string(r.measured_gs.real_adds),
             std::to_string(r.measured_gs.total_flops()), std::to_string(r.ref1_claimed.total),
             fixed(static_cast<double>(r.measured_gs.total_flops()) /
                       static_cast<double>(r.ref1_claimed.total),
                   3),
             std::to_string(r.ml_model.total), std::to_string(r.mmse_model.total),
             fixed(r.ratio_mmse_over_ml, 2)});
    }
    if (cfg.format == Format::csv) {
      t.write_csv(out);
    } else {
      t.write_md(out);
      out << "\nleading coefficient of measured flops: " << fixed(report.fitted_leading, 4)
          << " (corrected model " << fixed(kCorrectedLeadingCoefficient, 4) << ", "
          << (report.fit_asserted ? "asserted" : "informational, no N >= 10 in range")
          << ")\n";
    }
  }
  for (const auto& c : checks) {
    if (!c.pass) err << "refute: check failed: " << c.name << '\n';
  }
  return all_pass(checks) ? kPass : kCheckFailed;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::table: return cmd_table(cfg, out, err);
    case Command::verify: return cmd_verify(cfg, out, err);
    case Command::count: return cmd_count(cfg, out, err);
    case Command::refute: return cmd_refute(cfg, out, err);
  }
  return kUsage;
}

/// Runs a validated config, sending output to `cfg.out` when set.
inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (!cfg.out) return dispatch(cfg, out, err);
    std::ostringstream buffer;
    const int code = dispatch(cfg, buffer, err);
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!file || !(file << buffer.str()) || !file.flush()) {
      err << "cannot write " << *cfg.out << '\n';
      return kIo;
    }
    return code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError(std::string(kSeedEnv) + " is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operation-counted structured Gram-Schmidt and detector cost tables",
               "gscount"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string range = "2..8";
  std::string format = "md";
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string dump_path;

  const std::map<std::string, Format> formats = {
      {"csv", Format::csv}, {"json", Format::json}, {"md", Format::md}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", range, "N or N_min..N_max (receive antennas)");
    sub->add_option("--seed", seed, std::string("base seed (default $") + kSeedEnv + " or 1)");
    sub->add_option("--trials", cfg.trials, "seeded trials per N");
    sub->add_option("--tol", cfg.tol, "orthonormality / equivalence tolerance");
    sub->add_option("--format", format, "csv, json or md")
        ->check(CLI::IsMember({"csv", "json", "md"}));
    sub->add_option("--out", out_path, "write to a file instead of stdout");
    sub->add_flag("--unpaired", cfg.unpaired)->group("");
  };

  auto* table = app.add_subcommand("table", "detector cost comparison table");
  auto* verify = app.add_subcommand("verify", "check orthonormality, sparsity, pairing");
  auto* count = app.add_subcommand("count", "counted orthonormalization vs cost model");
  auto* refute = app.add_subcommand("refute", "measured cost vs claimed quadratic cost");
  for (auto* sub : {table, verify, count, refute}) add_common(sub);
  count->add_option("--dump", dump_path, "write channel and basis JSON of the first trial per N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (*table) cfg.command = Command::table;
  if (*verify) cfg.command = Command::verify;
  if (*count) cfg.command = Command::count;
  if (*refute) cfg.command = Command::refute;

  try {
    std::tie(cfg.n_min, cfg.n_max) = parse_range(range);
    cfg.seed = seed ? *seed : default_seed();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  cfg.format = formats.at(format);
  if (!out_path.empty()) cfg.out = out_path;
  if (!dump_path.empty()) cfg.dump = dump_path;
  return execute(cfg, out, err);
}

}  // namespace gscount::cli
