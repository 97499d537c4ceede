#ifndef GLLP_CLI_HPP
#define GLLP_CLI_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gllp/csv.hpp"
#include "gllp/edp_mc.hpp"
#include "gllp/keyrate.hpp"
#include "gllp/lemma_verify.hpp"
#include "gllp/parallel.hpp"
#include "gllp/wcp.hpp"

namespace gllp::cli {

// Exit codes: 0 success, 1 usage/config error, 2 infeasible model,
// 3 verification failure.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kInfeasible = 2;
inline constexpr int kVerifyFailure = 3;

namespace detail {

inline double parse_double(const std::string& s, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "': cannot parse '" + s + "'");
  }
  if (used != s.size())
    throw std::invalid_argument("key '" + key + "': cannot parse '" + s + "'");
  return v;
}

}  // namespace detail

/// Angles are accepted in degrees with a `deg` suffix, radians bare.
inline double parse_angle(const std::string& s) {
  if (s.size() > 3 && s.substr(s.size() - 3) == "deg")
    return detail::parse_double(s.substr(0, s.size() - 3), "theta") *
           std::numbers::pi / 180.0;
  return detail::parse_double(s, "theta");
}

/// Parameter value: a scalar or a `start:end:step` range, inclusive of both
/// endpoints within half a step. Angle-typed keys take a trailing `deg`
/// that applies to every number given.
struct ValueSpec {
  std::vector<double> values;
  bool is_range = false;
};

inline ValueSpec parse_values(std::string s, const std::string& key,
                              bool angle) {
  double unit = 1.0;
  if (angle && s.size() > 3 && s.substr(s.size() - 3) == "deg") {
    unit = std::numbers::pi / 180.0;
    s = s.substr(0, s.size() - 3);
  }
  ValueSpec out;
  const auto c1 = s.find(':');
  if (c1 == std::string::npos) {
    out.values.push_back(detail::parse_double(s, key) * unit);
    return out;
  }
  const auto c2 = s.find(':', c1 + 1);
  if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
    throw std::invalid_argument("key '" + key +
                                "': range must be start:end:step");
  const double start = detail::parse_double(s.substr(0, c1), key) * unit;
  const double end = detail::parse_double(s.substr(c1 + 1, c2 - c1 - 1), key) * unit;
  const double step = detail::parse_double(s.substr(c2 + 1), key) * unit;
  if (!(step > 0.0))
    throw std::invalid_argument("key '" + key + "': range step must be > 0");
  if (end < start - 0.5 * step)
    throw std::invalid_argument("key '" + key + "': range end before start");
  const auto n = static_cast<long long>(std::floor((end - start) / step + 0.5));
  if (n < 0 || n > 10'000'000)
    throw std::invalid_argument("key '" + key + "': range too long");
  out.is_range = true;
  out.values.reserve(static_cast<std::size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i)
    out.values.push_back(start + static_cast<double>(i) * step);
  return out;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Expand `--config FILE` into `--key=value` tokens inserted right after the
// subcommand, so every explicit command-line flag (parsed later, take-last)
// overrides the file. Lines are `key = value`, # starts a comment.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::size_t pos = args.size();
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config needs a file path");
      path = args[i + 1];
      pos = i;
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      pos = i;
      args.erase(args.begin() + i);
      break;
    }
  }
  if (pos == args.size() && path.empty()) return args;
  for (std::size_t i = 1; i < args.size(); ++i)
    if (args[i] == "--config" || args[i].rfind("--config=", 0) == 0)
      throw std::invalid_argument("--config given more than once");

  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::vector<std::string> expanded;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line has no '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line has empty key: " + line);
    expanded.push_back("--" + key + "=" + value);
  }
  // args[0] is the program, args[1] the subcommand.
  const std::size_t insert_at = std::min<std::size_t>(2, args.size());
  args.insert(args.begin() + insert_at, expanded.begin(), expanded.end());
  return args;
}

struct ModelOpts {
  std::string model;
  std::map<std::string, std::string> given;  // key -> raw value spec
  std::string mode = "biased_efficiency";
  bool mode_given = false;
  double slack = 0.0;
};

// Parameter sets per model; anything else on the command line is an error
// naming the offending key.
inline const std::map<std::string, std::pair<std::set<std::string>,
                                             std::set<std::string>>>&
model_keys() {
  static const std::map<std::string,
                        std::pair<std::set<std::string>, std::set<std::string>>>
      table = {
          {"basis_independent", {{"delta"}, {}}},
          {"delta_balanced", {{"delta", "Delta"}, {}}},
          {"source_flaw", {{"delta", "eps-s"}, {}}},
          {"oblivious_individual", {{"delta", "eps"}, {}}},
          {"misalignment", {{"delta", "theta"}, {}}},
          {"generic_individual", {{"delta", "eps"}, {}}},
          {"tagging_simple", {{"delta", "Delta"}, {}}},
          {"tagging", {{"delta", "Delta"}, {}}},
          {"coherent_tagging", {{"delta", "Delta"}, {}}},
          {"trojan_pony", {{"delta", "Delta"}, {"f-random"}}},
          {"double_click", {{"delta", "Delta"}, {}}},
          {"refined_bias", {{"delta-x", "delta-z", "p-x"}, {"mode"}}},
      };
  return table;
}

inline void check_model_keys(const ModelOpts& mo) {
  const auto it = model_keys().find(mo.model);
  if (it == model_keys().end())
    throw std::invalid_argument("unknown model '" + mo.model + "'");
  const auto& [required, optional] = it->second;
  for (const auto& [key, value] : mo.given)
    if (!required.count(key) && !optional.count(key))
      throw std::invalid_argument("model " + mo.model + " does not use key '" +
                                  key + "'");
  for (const auto& key : required)
    if (!mo.given.count(key))
      throw std::invalid_argument("model " + mo.model + " requires key '" +
                                  key + "'");
  if (mo.mode_given && !optional.count("mode"))
    throw std::invalid_argument("model " + mo.model + " does not use key 'mode'");
}

inline FlawModel build_model(const ModelOpts& mo,
                             const std::map<std::string, double>& v) {
  const auto get = [&](const char* k) { return v.at(k); };
  if (mo.model == "basis_independent") return BasisIndependent{get("delta")};
  if (mo.model == "delta_balanced")
    return DeltaBalanced{get("delta"), get("Delta")};
  if (mo.model == "source_flaw") return SourceFlaw{get("delta"), get("eps-s")};
  if (mo.model == "oblivious_individual")
    return ObliviousIndividual{get("delta"), get("eps")};
  if (mo.model == "misalignment")
    return Misalignment{get("delta"), get("theta")};
  if (mo.model == "generic_individual")
    return GenericIndividual{get("delta"), get("eps")};
  if (mo.model == "tagging_simple")
    return TaggingSimple{get("delta"), get("Delta")};
  if (mo.model == "tagging") return Tagging{get("delta"), get("Delta")};
  if (mo.model == "coherent_tagging")
    return CoherentTagging{get("delta"), get("Delta")};
  if (mo.model == "trojan_pony")
    return TrojanPony{get("delta"), get("Delta"),
                      v.count("f-random") ? v.at("f-random") : 0.0};
  if (mo.model == "double_click")
    return DoubleClick{get("delta"), get("Delta")};
  if (mo.model == "refined_bias") {
    RefinedMode mode;
    if (mo.mode == "biased_efficiency")
      mode = RefinedMode::biased_efficiency;
    else if (mo.mode == "pure_refined")
      mode = RefinedMode::pure_refined;
    else
      throw std::invalid_argument(
          "key 'mode': must be biased_efficiency or pure_refined");
    return RefinedBias{get("delta-x"), get("delta-z"), get("p-x"), mode};
  }
  throw std::invalid_argument("unknown model '" + mo.model + "'");
}

inline double bit_error_of(const FlawModel& m) {
  return std::visit(
      [](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RefinedBias>) {
          if (x.mode == RefinedMode::biased_efficiency)
            return x.p_x * x.delta_x + (1.0 - x.p_x) * x.delta_z;
          return x.delta_z;
        } else {
          return x.delta;
        }
      },
      m);
}

// `raw` must outlive the app; map nodes are stable so the option pointers
// stay valid as keys are inserted.
inline void add_model_options(CLI::App* cmd, ModelOpts& mo,
                              std::map<std::string, std::string>& raw) {
  cmd->add_option("--model", mo.model, "Flaw model name")->required();
  static const char* keys[] = {"delta",   "Delta",   "eps",
                               "eps-s",   "theta",   "delta-x",
                               "delta-z", "p-x",     "f-random"};
  for (const char* k : keys)
    cmd->add_option(std::string("--") + k, raw[k],
                    std::string("Model parameter ") + k);
  cmd->add_option("--mode", mo.mode,
                  "refined_bias mode: biased_efficiency | pure_refined");
  cmd->add_option("--slack", mo.slack,
                  "Additive engineering margin on delta and Delta");
}

inline void collect_given(CLI::App* cmd, ModelOpts& mo,
                          const std::map<std::string, std::string>& raw) {
  for (const auto& [key, storage] : raw)
    if (cmd->count(std::string("--") + key)) mo.given[key] = storage;
  mo.mode_given = cmd->count("--mode") > 0;
}

inline int exit_code_for_rate(const KeyRate& r) {
  return r.feasible ? kOk : kInfeasible;
}

inline void print_rate(std::ostream& os, const std::string& model,
                       const KeyRate& r) {
  os << "model: " << model << "\n"
     << "rate: " << io::fmt(r.clamped) << "\n"
     << "rate_raw: " << io::fmt(r.raw) << "\n"
     << "Delta_eff: " << io::fmt(r.effective_delta.value()) << "\n"
     << "phase_rate: " << io::fmt(r.effective_phase_rate.value()) << "\n"
     << "feasible: " << (r.feasible ? "yes" : "no") << "\n";
}

}  // namespace detail

/// Exit code for a batch of verification reports.
inline int exit_code_for_reports(const std::vector<VerifyReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return kVerifyFailure;
  return kOk;
}

inline int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    args = detail::expand_config(std::move(args));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  CLI::App app{"BB84 key rates and verification for imperfect devices"};
  app.require_subcommand(1);

  // Expanded away before parsing; declared so every subcommand documents it.
  const auto document_config = [](CLI::App* cmd) {
    static std::string sink;
    cmd->add_option("--config", sink,
                    "Config file with `key = value` lines, # comments; "
                    "command-line flags override it");
  };
  // Config expansion prepends file values, so repeated options must resolve
  // to the last occurrence.
  const auto take_last = [](CLI::App* cmd) {
    for (CLI::Option* o : cmd->get_options())
      o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  };

  // ---- rate ----------------------------------------------------------------
  auto* rate_cmd = app.add_subcommand("rate", "Evaluate one key-rate formula");
  detail::ModelOpts rate_mo;
  std::map<std::string, std::string> rate_raw;
  detail::add_model_options(rate_cmd, rate_mo, rate_raw);

  // ---- sweep ---------------------------------------------------------------
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Sweep one model parameter, write a table");
  detail::ModelOpts sweep_mo;
  std::map<std::string, std::string> sweep_raw;
  detail::add_model_options(sweep_cmd, sweep_mo, sweep_raw);
  std::string sweep_out;
  std::string sweep_format = "csv";
  sweep_cmd->add_option("--out", sweep_out, "Output table path")->required();
  sweep_cmd->add_option("--format", sweep_format, "csv | tsv");

  // ---- wcp -----------------------------------------------------------------
  auto* wcp_cmd =
      app.add_subcommand("wcp", "Weak-coherent-pulse link budget");
  double wcp_mu = 0.1, wcp_nu = 1e6, wcp_eta_det = 1.0, wcp_alpha = 0.25;
  double wcp_dark = 0.0, wcp_dint = 0.0;
  double wcp_mu_min = 1e-4, wcp_mu_max = 1.0;
  double wcp_pd_measured = -1.0;
  bool wcp_optimize = false;
  std::string wcp_lengths = "0", wcp_out, wcp_format = "csv";
  wcp_cmd->add_option("--mu", wcp_mu, "Mean photon number");
  wcp_cmd->add_option("--nu", wcp_nu, "Repetition frequency, Hz");
  wcp_cmd->add_option("--eta-det", wcp_eta_det, "Detector efficiency");
  wcp_cmd->add_option("--alpha-db-per-km", wcp_alpha, "Fiber attenuation");
  wcp_cmd->add_option("--dark", wcp_dark, "Per-gate dark-count probability");
  wcp_cmd->add_option("--delta-intrinsic", wcp_dint, "Baseline bit error rate");
  wcp_cmd->add_option("--pd-measured", wcp_pd_measured,
                      "Measured detection probability override");
  wcp_cmd->add_flag("--optimize-mu", wcp_optimize,
                    "Optimize mu per length instead of using --mu");
  wcp_cmd->add_option("--mu-min", wcp_mu_min, "Optimization bracket, lower");
  wcp_cmd->add_option("--mu-max", wcp_mu_max, "Optimization bracket, upper");
  wcp_cmd->add_option("--lengths", wcp_lengths,
                      "Link length(s) in km, scalar or start:end:step");
  wcp_cmd->add_option("--out", wcp_out, "Output table path");
  wcp_cmd->add_option("--format", wcp_format, "csv | tsv");

  // ---- verify --------------------------------------------------------------
  auto* verify_cmd =
      app.add_subcommand("verify", "Run the operator verification suite");
  std::string verify_suite = "all", verify_out, verify_format = "csv";
  std::uint64_t verify_seed = 0;
  verify_cmd->add_option(
      "--suite", verify_suite,
      "all | gap_reduction | coin_tail | outcome_bound | dilation | coin_leak");
  verify_cmd->add_option("--seed", verify_seed, "Master seed");
  verify_cmd->add_option("--out", verify_out, "Output table path");
  verify_cmd->add_option("--format", verify_format, "csv | tsv");

  // ---- simulate ------------------------------------------------------------
  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo entanglement-protocol run");
  std::string sim_scenario, sim_theta, sim_out, sim_format = "csv";
  std::uint64_t sim_n = 1000000, sim_seed = 0;
  double sim_q = -1.0, sim_Delta = -1.0, sim_p = -1.0;
  sim_cmd->add_option("--scenario", sim_scenario,
                      "null | tagging | pony | misalign")
      ->required();
  sim_cmd->add_option("--n", sim_n, "Number of pairs");
  sim_cmd->add_option("--seed", sim_seed, "Master seed");
  sim_cmd->add_option("--q", sim_q, "Symmetric error probability");
  sim_cmd->add_option("--Delta", sim_Delta, "Tagged / removable fraction");
  sim_cmd->add_option("--p", sim_p, "Pre-removal error probability (pony)");
  sim_cmd->add_option("--theta", sim_theta, "Misalignment angle (rad or deg)");
  sim_cmd->add_option("--out", sim_out, "Output table path");
  sim_cmd->add_option("--format", sim_format, "csv | tsv");

  for (CLI::App* cmd : {rate_cmd, sweep_cmd, wcp_cmd, verify_cmd, sim_cmd}) {
    document_config(cmd);
    take_last(cmd);
  }

  std::vector<const char*> cargs;
  cargs.reserve(args.size());
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const auto pick_sep = [](const std::string& f) {
    if (f == "csv") return ',';
    if (f == "tsv") return '\t';
    throw std::invalid_argument("key 'format': must be csv or tsv");
  };

  try {
    if (rate_cmd->parsed()) {
      detail::collect_given(rate_cmd, rate_mo, rate_raw);
      detail::check_model_keys(rate_mo);
      std::map<std::string, double> vals;
      for (const auto& [key, spec] : rate_mo.given) {
        const ValueSpec v = parse_values(spec, key, key == "theta");
        if (v.is_range)
          throw std::invalid_argument("key '" + key +
                                      "': rate takes scalars, use sweep");
        vals[key] = v.values.front();
      }
      const FlawModel model = detail::build_model(rate_mo, vals);
      const KeyRate r = rate(model, rate_mo.slack);
      detail::print_rate(std::cout, rate_mo.model, r);
      return detail::exit_code_for_rate(r);
    }

    if (sweep_cmd->parsed()) {
      detail::collect_given(sweep_cmd, sweep_mo, sweep_raw);
      detail::check_model_keys(sweep_mo);
      std::string range_key;
      std::map<std::string, ValueSpec> specs;
      for (const auto& [key, spec] : sweep_mo.given) {
        specs[key] = parse_values(spec, key, key == "theta");
        if (specs[key].is_range) {
          if (!range_key.empty())
            throw std::invalid_argument("sweep takes exactly one range, got '" +
                                        range_key + "' and '" + key + "'");
          range_key = key;
        }
      }
      if (range_key.empty())
        throw std::invalid_argument(
            "sweep needs one range parameter (start:end:step)");

      const std::vector<double>& grid = specs[range_key].values;
      std::vector<KeyRate> rates(grid.size());
      std::vector<FlawModel> models;
      models.reserve(grid.size());
      for (double g : grid) {
        std::map<std::string, double> vals;
        for (const auto& [key, spec] : specs)
          vals[key] = key == range_key ? g : spec.values.front();
        models.push_back(detail::build_model(sweep_mo, vals));
      }
      const double slack = sweep_mo.slack;
      parallel_for(grid.size(),
                   [&](std::size_t i) { rates[i] = rate(models[i], slack); });

      io::Table table({"param", "delta", "Delta_eff", "phase_rate", "rate_raw",
                       "rate", "feasible"},
                      pick_sep(sweep_format));
      for (std::size_t i = 0; i < grid.size(); ++i)
        table.row(grid[i], detail::bit_error_of(models[i]),
                  rates[i].effective_delta.value(),
                  rates[i].effective_phase_rate.value(), rates[i].raw,
                  rates[i].clamped, rates[i].feasible);
      table.write_file(sweep_out);
      std::cout << "sweep: " << grid.size() << " rows over " << range_key
                << " -> " << sweep_out << "\n";
      return kOk;
    }

    if (wcp_cmd->parsed()) {
      wcp::Link link;
      link.eta_det = wcp_eta_det;
      link.alpha_db_per_km = wcp_alpha;
      link.dark_prob = wcp_dark;
      link.delta_intrinsic = wcp_dint;
      if (wcp_cmd->count("--pd-measured")) link.measured_pd = wcp_pd_measured;
      const wcp::WcpSource src{wcp_mu, wcp_nu};
      const ValueSpec lengths = parse_values(wcp_lengths, "lengths", false);

      std::vector<wcp::DistanceRow> rows;
      if (wcp_optimize) {
        rows.reserve(lengths.values.size());
        for (double L : lengths.values) {
          wcp::Link l = link;
          l.length_km = L;
          const wcp::MuOptimum opt =
              wcp::optimize_mu(wcp_nu, l, wcp_mu_min, wcp_mu_max);
          if (!opt.unimodal)
            std::cerr << "warning: throughput not unimodal on the mu bracket "
                         "at length "
                      << L << " km; using the scan-global maximum\n";
          rows.push_back({L, l.eta(), opt.mu_star, opt.at_star});
        }
      } else {
        rows = wcp::rate_vs_distance(src, link, lengths.values, false);
      }

      io::Table table({"length_km", "eta", "mu", "p0", "p1", "pM", "pD",
                       "Delta", "delta_bits", "sifted_hz", "rate",
                       "throughput_hz"},
                      pick_sep(wcp_format));
      bool any_feasible = false;
      for (const auto& r : rows) {
        table.row(r.length_km, r.eta, r.mu, r.b.p0, r.b.p1, r.b.pM, r.b.pD,
                  r.b.delta_tag, r.b.delta_bits, r.b.sifted_rate_hz,
                  r.b.final_rate.clamped, r.b.throughput_hz);
        any_feasible = any_feasible || r.b.final_rate.feasible;
      }
      if (!wcp_out.empty()) table.write_file(wcp_out);
      const auto& last = rows.back();
      std::cout << "wcp: " << rows.size() << " point(s); at " << last.length_km
                << " km: Delta = " << io::fmt(last.b.delta_tag)
                << ", rate = " << io::fmt(last.b.final_rate.clamped)
                << ", throughput = " << io::fmt(last.b.throughput_hz)
                << " Hz\n";
      return any_feasible ? kOk : kInfeasible;
    }

    if (verify_cmd->parsed()) {
      const auto reports = verify::run_verify_suite(verify_suite, verify_seed);
      io::Table table({"claim_id", "params", "measured", "bound", "pass"},
                      pick_sep(verify_format));
      for (const auto& r : reports) {
        table.row(r.claim_id, r.params, r.measured, r.bound, r.pass);
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.claim_id << " ("
                  << r.params << ") measured=" << io::fmt(r.measured)
                  << " bound=" << io::fmt(r.bound) << "\n";
      }
      if (!verify_out.empty()) table.write_file(verify_out);
      return exit_code_for_reports(reports);
    }

    if (sim_cmd->parsed()) {
      static const std::map<std::string, std::set<std::string>> scenario_keys =
          {{"null", {"q"}},
           {"tagging", {"Delta", "q"}},
           {"pony", {"p", "Delta"}},
           {"misalign", {"theta", "q"}}};
      const auto sit = scenario_keys.find(sim_scenario);
      if (sit == scenario_keys.end())
        throw std::invalid_argument("unknown scenario '" + sim_scenario + "'");
      std::set<std::string> given;
      if (sim_cmd->count("--q")) given.insert("q");
      if (sim_cmd->count("--Delta")) given.insert("Delta");
      if (sim_cmd->count("--p")) given.insert("p");
      if (sim_cmd->count("--theta")) given.insert("theta");
      for (const auto& key : given)
        if (!sit->second.count(key))
          throw std::invalid_argument("scenario " + sim_scenario +
                                      " does not use key '" + key + "'");
      for (const auto& key : sit->second)
        if (!given.count(key))
          throw std::invalid_argument("scenario " + sim_scenario +
                                      " requires key '" + key + "'");
      mc::AttackScenario scenario;
      if (sim_scenario == "null") {
        scenario = mc::NullAttack{sim_q};
      } else if (sim_scenario == "tagging") {
        scenario = mc::TaggingAttack{sim_Delta, sim_q};
      } else if (sim_scenario == "pony") {
        scenario = mc::PonyAttack{sim_p, sim_Delta};
      } else {
        scenario = mc::MisalignAttack{parse_angle(sim_theta), sim_q};
      }
      const mc::Tally t = mc::simulate(scenario, sim_n, sim_seed);
      io::Table table({"scenario", "n_pairs", "n_sifted", "bit_err",
                       "phase_err", "delta_hat", "delta_p_hat", "gap_hat",
                       "ci99"},
                      pick_sep(sim_format));
      table.row(sim_scenario, t.n_pairs, t.n_sifted, t.n_bit_err,
                t.n_phase_err, t.delta_hat, t.delta_p_hat, t.gap_hat,
                t.ci_half_width);
      if (!sim_out.empty()) table.write_file(sim_out);
      std::cout << "simulate " << sim_scenario << ": n=" << t.n_pairs
                << " sifted=" << t.n_sifted
                << " delta_hat=" << io::fmt(t.delta_hat)
                << " delta_p_hat=" << io::fmt(t.delta_p_hat)
                << " gap=" << io::fmt(t.gap_hat)
                << " ci99=" << io::fmt(t.ci_half_width) << "\n";
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace gllp::cli

#endif
