// specsense: moments, thresholds, false-alarm curves and ROC generation for
// multi-antenna multi-primary-user spectrum sensing detectors.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specsense/beta_approx.hpp"
#include "specsense/detectors.hpp"
#include "specsense/errors.hpp"
#include "specsense/moments.hpp"
#include "specsense/simulator.hpp"

namespace {

using nlohmann::json;
using namespace specsense;

constexpr const char* kArtifactVersion = "0.1.0";
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso8601_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Options shared by every subcommand. Each subcommand registers its own
// copies so no fallthrough rules are needed.
struct Common {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t trials = 1'000'000;
  bool trials_given = false;
  unsigned threads = 0;
  std::string output;
  std::string format = "csv";
};

void add_common_options(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed,
                  "RNG seed (default: $SPECSENSE_SEED, else 1)")
      ->each([&common](const std::string&) { common.seed_given = true; });
  cmd->add_option("--trials", common.trials, "Monte Carlo trial count")
      ->each([&common](const std::string&) { common.trials_given = true; });
  cmd->add_option("--threads", common.threads,
                  "Worker threads (0 = hardware; never changes results)");
  cmd->add_option("--output", common.output,
                  "Output file (moments/threshold/pfa-curve) or file prefix "
                  "(roc); default stdout");
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

std::uint64_t resolve_seed(const Common& common,
                           std::optional<std::uint64_t> config_seed) {
  if (common.seed_given) return common.seed;
  if (config_seed) return *config_seed;
  if (const char* env = std::getenv("SPECSENSE_SEED")) {
    try {
      std::size_t pos = 0;
      const std::uint64_t v = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError("SPECSENSE_SEED is not a valid unsigned integer: " +
                       std::string(env));
    }
  }
  return 1;
}

json make_manifest(const std::string& command, const json& parameters,
                   std::uint64_t seed,
                   const std::vector<std::string>& argv) {
  return json{{"command", command},
              {"parameters", parameters},
              {"seed", seed},
              {"artifact_version", kArtifactVersion},
              {"timestamp", iso8601_now()},
              {"argv", argv}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << content;
  if (!out) throw Error("failed writing output file: " + path);
}

// CSV (or JSON) payload to --output or stdout; files get a manifest sidecar.
void emit(const Common&, const std::string& path, const std::string& payload,
          const json& manifest) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  write_file(path, payload);
  write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

// ---------------------------------------------------------------- moments

struct MomentsArgs {
  Common common;
  unsigned K = 0;
  unsigned N = 0;
  unsigned m_max = 2;
  unsigned m_cap = 16;
};

int run_moments(const MomentsArgs& a, const std::vector<std::string>& argv) {
  if (a.K < 1 || a.N < a.K)
    throw UsageError("moments: require N >= K >= 1");
  if (a.m_max > a.m_cap)
    throw UsageError("moments: --m-max exceeds --m-cap (" +
                     std::to_string(a.m_cap) + ")");
  json rows = json::array();
  std::ostringstream csv;
  csv << "m,numerator,denominator,value\n";
  for (unsigned m = 0; m <= a.m_max; ++m) {
    const ExactRational mm = moment_tj(m, a.K, a.N);
    const std::string num = numerator(mm).str();
    const std::string den = denominator(mm).str();
    const double value = to_double(mm);
    csv << m << ',' << num << ',' << den << ',' << fmt_double(value) << '\n';
    rows.push_back(
        {{"m", m}, {"numerator", num}, {"denominator", den}, {"value", value}});
  }
  const json params{{"K", a.K}, {"N", a.N}, {"m_max", a.m_max}};
  const json manifest =
      make_manifest("moments", params, resolve_seed(a.common, {}), argv);
  if (a.common.format == "json") {
    json doc{{"command", "moments"}, {"parameters", params}, {"rows", rows}};
    emit(a.common, a.common.output, doc.dump(2) + "\n", manifest);
  } else {
    emit(a.common, a.common.output, csv.str(), manifest);
  }
  return 0;
}

// --------------------------------------------------------------- threshold

struct ThresholdArgs {
  Common common;
  unsigned K = 0;
  unsigned N = 0;
  double target_pfa = 0.1;
};

int run_threshold(const ThresholdArgs& a, const std::vector<std::string>& argv) {
  if (a.K < 2 || a.N < a.K)
    throw UsageError("threshold: require N >= K >= 2");
  if (!(a.target_pfa > 0.0) || !(a.target_pfa < 1.0))
    throw UsageError("threshold: --target-pfa must lie in (0, 1)");
  const BetaFit fit = fit_tj_h0(a.K, a.N);
  const double zeta = threshold_for_pfa(a.target_pfa, fit);
  const double achieved = pfa(zeta, fit);

  const json params{{"K", a.K}, {"N", a.N}, {"target_pfa", a.target_pfa}};
  const json manifest =
      make_manifest("threshold", params, resolve_seed(a.common, {}), argv);
  if (a.common.format == "json") {
    json doc{{"command", "threshold"},
             {"parameters", params},
             {"zeta", zeta},
             {"pfa_achieved", achieved},
             {"alpha", fit.alpha},
             {"beta", fit.beta},
             {"M1", fit.m1},
             {"M2", fit.m2}};
    emit(a.common, a.common.output, doc.dump(2) + "\n", manifest);
  } else {
    std::ostringstream csv;
    csv << "K,N,target_pfa,zeta,pfa_achieved\n"
        << a.K << ',' << a.N << ',' << fmt_double(a.target_pfa) << ','
        << fmt_double(zeta) << ',' << fmt_double(achieved) << '\n';
    emit(a.common, a.common.output, csv.str(), manifest);
  }
  return 0;
}

// --------------------------------------------------------------- pfa-curve

struct PfaCurveArgs {
  Common common;
  unsigned K = 0;
  unsigned N = 0;
  double zeta_lo = 0.0;
  double zeta_hi = 0.0;
  unsigned points = 0;
  std::uint64_t simulate_trials = 0;  // 0 = analytic only
};

int run_pfa_curve(const PfaCurveArgs& a, const std::vector<std::string>& argv) {
  if (a.K < 2 || a.N < a.K)
    throw UsageError("pfa-curve: require N >= K >= 2");
  if (a.points < 2) throw UsageError("pfa-curve: --points must be >= 2");
  if (!(a.zeta_lo >= 1.0 / a.K) || !(a.zeta_lo < a.zeta_hi) ||
      !(a.zeta_hi <= 1.0))
    throw UsageError("pfa-curve: require 1/K <= zeta-lo < zeta-hi <= 1");

  const bool simulate = a.simulate_trials > 0;
  const std::uint64_t seed = resolve_seed(a.common, {});
  json params{{"K", a.K},          {"N", a.N},
              {"zeta_lo", a.zeta_lo}, {"zeta_hi", a.zeta_hi},
              {"points", a.points},   {"simulate_trials", a.simulate_trials}};
  const json manifest = make_manifest("pfa-curve", params, seed, argv);

  std::ostringstream csv;
  json rows = json::array();
  double average_abs_error = 0.0;
  if (simulate) {
    const PfaCurve curve =
        pfa_curve_study(a.K, a.N, a.zeta_lo, a.zeta_hi, a.points,
                        a.simulate_trials, RngStream(seed), a.common.threads);
    average_abs_error = curve.average_abs_error;
    csv << "zeta,pfa_analytic,pfa_empirical,stderr\n";
    for (const auto& row : curve.rows) {
      csv << fmt_double(row.zeta) << ',' << fmt_double(row.pfa_analytic) << ','
          << fmt_double(row.pfa_empirical) << ',' << fmt_double(row.std_error)
          << '\n';
      rows.push_back({{"zeta", row.zeta},
                      {"pfa_analytic", row.pfa_analytic},
                      {"pfa_empirical", row.pfa_empirical},
                      {"stderr", row.std_error}});
    }
  } else {
    const BetaFit fit = fit_tj_h0(a.K, a.N);
    csv << "zeta,pfa_analytic\n";
    for (unsigned g = 0; g < a.points; ++g) {
      const double zeta = a.zeta_lo + (a.zeta_hi - a.zeta_lo) *
                                          static_cast<double>(g) /
                                          static_cast<double>(a.points - 1);
      const double analytic = pfa(zeta, fit);
      csv << fmt_double(zeta) << ',' << fmt_double(analytic) << '\n';
      rows.push_back({{"zeta", zeta}, {"pfa_analytic", analytic}});
    }
  }

  if (a.common.format == "json") {
    json doc{{"command", "pfa-curve"}, {"parameters", params}, {"rows", rows}};
    if (simulate) doc["average_abs_error"] = average_abs_error;
    emit(a.common, a.common.output, doc.dump(2) + "\n", manifest);
  } else {
    emit(a.common, a.common.output, csv.str(), manifest);
    if (simulate) {
      // Keep the CSV stream clean: the scalar goes to stdout when the CSV
      // went to a file, otherwise to stderr.
      std::ostream& side = a.common.output.empty() ? std::cerr : std::cout;
      side << "average_abs_error=" << fmt_double(average_abs_error) << "\n";
    }
  }
  return 0;
}

// --------------------------------------------------------------------- roc

struct RocArgs {
  Common common;
  std::string config_path;
  std::vector<std::string> detectors;  // overrides config when nonempty
  std::vector<double> pfa_grid;        // overrides config when nonempty
};

DetectorKind parse_detector(const std::string& name,
                            std::vector<std::string>& errors) {
  if (name == "john") return DetectorKind::John;
  if (name == "st") return DetectorKind::SphericalTest;
  if (name == "sle") return DetectorKind::ScaledLargestEigenvalue;
  if (name == "er") return DetectorKind::EigenvalueRatio;
  if (name == "le") return DetectorKind::LargestEigenvalue;
  errors.push_back("detectors: unknown detector '" + name +
                   "' (expected john|st|sle|er|le)");
  return DetectorKind::John;
}

struct RocConfig {
  Scenario scenario;
  std::optional<std::uint64_t> seed;
  std::vector<DetectorKind> detectors;
  std::vector<double> pfa_grid;
};

RocConfig parse_roc_config(const json& j, const std::vector<std::string>& cli_detectors,
                           const std::vector<double>& cli_grid) {
  std::vector<std::string> errors;
  RocConfig cfg;
  auto require_uint = [&](const char* field, auto& out, std::uint64_t min_v) {
    if (!j.contains(field)) {
      errors.push_back(std::string(field) + ": required field is missing");
      return;
    }
    if (!j[field].is_number_unsigned()) {
      errors.push_back(std::string(field) + ": must be a non-negative integer");
      return;
    }
    const std::uint64_t v = j[field].get<std::uint64_t>();
    if (v < min_v) {
      errors.push_back(std::string(field) + ": must be >= " +
                       std::to_string(min_v));
      return;
    }
    out = static_cast<std::remove_reference_t<decltype(out)>>(v);
  };

  require_uint("K", cfg.scenario.K, 1);
  require_uint("N", cfg.scenario.N, 1);
  require_uint("trials", cfg.scenario.trials, 1);

  if (j.contains("noise_power")) {
    if (!j["noise_power"].is_number() || !(j["noise_power"].get<double>() > 0))
      errors.push_back("noise_power: must be a number > 0");
    else
      cfg.scenario.noise_power = j["noise_power"].get<double>();
  }
  if (j.contains("snrs_db")) {
    if (!j["snrs_db"].is_array())
      errors.push_back("snrs_db: must be an array of numbers (dB)");
    else
      for (const auto& v : j["snrs_db"]) {
        if (!v.is_number()) {
          errors.push_back("snrs_db: entries must be numbers (dB)");
          break;
        }
        cfg.scenario.snrs_db.push_back(v.get<double>());
      }
  }
  if (j.contains("P")) {
    std::uint64_t p = 0;
    require_uint("P", p, 0);
    cfg.scenario.P = static_cast<unsigned>(p);
    if (cfg.scenario.P != cfg.scenario.snrs_db.size())
      errors.push_back("P: must equal the length of snrs_db");
  } else {
    cfg.scenario.P = static_cast<unsigned>(cfg.scenario.snrs_db.size());
  }
  if (j.contains("sigma_spectrum")) {
    std::vector<double> spectrum;
    if (!j["sigma_spectrum"].is_array())
      errors.push_back("sigma_spectrum: must be an array of numbers");
    else {
      for (const auto& v : j["sigma_spectrum"]) {
        if (!v.is_number() || !(v.get<double>() > 0)) {
          errors.push_back("sigma_spectrum: entries must be numbers > 0");
          break;
        }
        spectrum.push_back(v.get<double>());
      }
      if (cfg.scenario.K >= 1 && spectrum.size() != cfg.scenario.K)
        errors.push_back("sigma_spectrum: length must equal K");
      const double min_entry =
          spectrum.empty() ? 0.0
                           : *std::min_element(spectrum.begin(), spectrum.end());
      if (!spectrum.empty() &&
          std::abs(min_entry - cfg.scenario.noise_power) >
              1e-9 * cfg.scenario.noise_power)
        errors.push_back(
            "sigma_spectrum: smallest entry must equal noise_power");
      cfg.scenario.sigma_spectrum = std::move(spectrum);
    }
  }
  if (j.contains("seed")) {
    std::uint64_t s = 0;
    require_uint("seed", s, 0);
    cfg.seed = s;
    cfg.scenario.seed = s;
  }

  std::vector<std::string> names = cli_detectors;
  if (names.empty() && j.contains("detectors")) {
    if (!j["detectors"].is_array())
      errors.push_back("detectors: must be an array of detector names");
    else
      for (const auto& v : j["detectors"])
        names.push_back(v.is_string() ? v.get<std::string>() : std::string());
  }
  if (names.empty())
    errors.push_back("detectors: none given (config field or --detectors)");
  for (const auto& name : names) cfg.detectors.push_back(parse_detector(name, errors));

  cfg.pfa_grid = cli_grid;
  if (cfg.pfa_grid.empty() && j.contains("pfa_grid")) {
    if (!j["pfa_grid"].is_array())
      errors.push_back("pfa_grid: must be an array of numbers");
    else
      for (const auto& v : j["pfa_grid"])
        cfg.pfa_grid.push_back(v.is_number() ? v.get<double>() : -1.0);
  }
  if (cfg.pfa_grid.empty())
    errors.push_back("pfa_grid: none given (config field or --pfa-grid)");
  for (std::size_t i = 0; i < cfg.pfa_grid.size(); ++i) {
    if (!(cfg.pfa_grid[i] > 0.0) || !(cfg.pfa_grid[i] < 1.0)) {
      errors.push_back("pfa_grid: values must lie in (0, 1)");
      break;
    }
    if (i > 0 && !(cfg.pfa_grid[i] > cfg.pfa_grid[i - 1])) {
      errors.push_back("pfa_grid: values must be strictly increasing");
      break;
    }
  }

  for (const DetectorKind kind : cfg.detectors)
    if (kind == DetectorKind::EigenvalueRatio &&
        cfg.scenario.N < cfg.scenario.K)
      errors.push_back("detectors: 'er' requires N >= K");

  if (!errors.empty()) {
    std::string msg = "invalid ROC config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw UsageError(msg);
  }
  return cfg;
}

int run_roc(const RocArgs& a, const std::vector<std::string>& argv) {
  json j;
  {
    std::ifstream in(a.config_path);
    if (!in) throw UsageError("roc: cannot open config file: " + a.config_path);
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw UsageError("roc: config parse error in " + a.config_path + ": " +
                       e.what());
    }
  }
  RocConfig cfg = parse_roc_config(j, a.detectors, a.pfa_grid);
  if (a.common.trials_given) cfg.scenario.trials = a.common.trials;
  const std::uint64_t seed = resolve_seed(a.common, cfg.seed);
  cfg.scenario.seed = seed;

  const std::string prefix =
      a.common.output.empty() ? std::string("roc") : a.common.output;
  for (const DetectorKind kind : cfg.detectors) {
    const RocCurve curve =
        roc(kind, cfg.scenario, cfg.pfa_grid, RngStream(seed), a.common.threads);

    std::ostringstream csv;
    csv << "pfa_target,threshold,pfa_empirical,pd_empirical,pd_stderr\n";
    json rows = json::array();
    for (const auto& pt : curve.points) {
      csv << fmt_double(pt.target_pfa) << ',' << fmt_double(pt.threshold) << ','
          << fmt_double(pt.pfa.value) << ',' << fmt_double(pt.pd.value) << ','
          << fmt_double(pt.pd.std_error) << '\n';
      rows.push_back({{"pfa_target", pt.target_pfa},
                      {"threshold", pt.threshold},
                      {"pfa_empirical", pt.pfa.value},
                      {"pfa_stderr", pt.pfa.std_error},
                      {"pd_empirical", pt.pd.value},
                      {"pd_stderr", pt.pd.std_error}});
    }

    json params{{"config", a.config_path},
                {"detector", detector_name(kind)},
                {"K", cfg.scenario.K},
                {"N", cfg.scenario.N},
                {"P", cfg.scenario.P},
                {"snrs_db", cfg.scenario.snrs_db},
                {"snrs_linear", snrs_linear(cfg.scenario)},
                {"noise_power", cfg.scenario.noise_power},
                {"trials", cfg.scenario.trials},
                {"pfa_grid", cfg.pfa_grid},
                {"sigma_route",
                 cfg.scenario.sigma_spectrum ? "spectrum" : "channels"}};
    if (cfg.scenario.sigma_spectrum)
      params["sigma_spectrum"] = *cfg.scenario.sigma_spectrum;
    const json manifest = make_manifest("roc", params, seed, argv);

    const std::string path = prefix + "_" + detector_name(kind) +
                             (a.common.format == "json" ? ".json" : ".csv");
    if (a.common.format == "json") {
      json doc{{"command", "roc"}, {"parameters", params}, {"rows", rows}};
      write_file(path, doc.dump(2) + "\n");
    } else {
      write_file(path, csv.str());
    }
    write_file(path + ".manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- rerun

int run_cli(std::vector<std::string> args, int depth);

struct RerunArgs {
  std::string manifest_path;
  unsigned threads = 0;
  bool threads_given = false;
  std::string output;
};

int run_rerun(const RerunArgs& a, int depth) {
  if (depth > 2) throw UsageError("rerun: manifest chain too deep");
  json manifest;
  {
    std::ifstream in(a.manifest_path);
    if (!in)
      throw UsageError("rerun: cannot open manifest: " + a.manifest_path);
    try {
      in >> manifest;
    } catch (const json::parse_error& e) {
      throw UsageError("rerun: manifest parse error: " + std::string(e.what()));
    }
  }
  if (!manifest.contains("argv") || !manifest["argv"].is_array())
    throw UsageError("rerun: manifest has no argv record");
  std::vector<std::string> args;
  for (const auto& v : manifest["argv"]) args.push_back(v.get<std::string>());

  // Strip recorded --threads / --output so overrides take effect cleanly.
  auto strip = [&args](const std::string& flag) {
    for (std::size_t i = 0; i < args.size();) {
      if (args[i] == flag) {
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                   args.begin() + static_cast<std::ptrdiff_t>(
                                      std::min(i + 2, args.size())));
      } else if (args[i].rfind(flag + "=", 0) == 0) {
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
  };
  if (a.threads_given) {
    strip("--threads");
    args.push_back("--threads");
    args.push_back(std::to_string(a.threads));
  }
  if (!a.output.empty()) {
    strip("--output");
    args.push_back("--output");
    args.push_back(a.output);
  }
  return run_cli(std::move(args), depth + 1);
}

// ------------------------------------------------------------------ driver

int run_cli(std::vector<std::string> args, int depth) {
  CLI::App app{"Spectrum sensing detectors for multiple primary users: exact "
               "T_J moments, Beta-approximated false-alarm analytics, and a "
               "reproducible Monte Carlo ROC harness"};
  app.require_subcommand(1);

  MomentsArgs moments_args;
  CLI::App* cmd_moments =
      app.add_subcommand("moments", "Exact moments of T_J under H0");
  cmd_moments->add_option("--K", moments_args.K, "Number of sensors")
      ->required();
  cmd_moments->add_option("--N", moments_args.N, "Samples per sensor")
      ->required();
  cmd_moments->add_option("--m-max", moments_args.m_max,
                          "Highest moment order to emit");
  cmd_moments->add_option("--m-cap", moments_args.m_cap,
                          "Safety cap on moment order");
  add_common_options(cmd_moments, moments_args.common);

  ThresholdArgs threshold_args;
  CLI::App* cmd_threshold = app.add_subcommand(
      "threshold", "Analytic decision threshold for a target P_fa");
  cmd_threshold->add_option("--K", threshold_args.K, "Number of sensors")
      ->required();
  cmd_threshold->add_option("--N", threshold_args.N, "Samples per sensor")
      ->required();
  cmd_threshold
      ->add_option("--target-pfa", threshold_args.target_pfa,
                   "Desired false alarm probability")
      ->required();
  add_common_options(cmd_threshold, threshold_args.common);

  PfaCurveArgs pfa_args;
  CLI::App* cmd_pfa = app.add_subcommand(
      "pfa-curve", "Analytic (optionally simulated) P_fa vs threshold curve");
  cmd_pfa->add_option("--K", pfa_args.K, "Number of sensors")->required();
  cmd_pfa->add_option("--N", pfa_args.N, "Samples per sensor")->required();
  cmd_pfa->add_option("--zeta-lo", pfa_args.zeta_lo, "Grid start (>= 1/K)")
      ->required();
  cmd_pfa->add_option("--zeta-hi", pfa_args.zeta_hi, "Grid end (<= 1)")
      ->required();
  cmd_pfa->add_option("--points", pfa_args.points, "Grid size")->required();
  cmd_pfa->add_option("--simulate", pfa_args.simulate_trials,
                      "Also simulate with this many H0 trials");
  add_common_options(cmd_pfa, pfa_args.common);

  RocArgs roc_args;
  CLI::App* cmd_roc =
      app.add_subcommand("roc", "ROC curves for a scenario config (one CSV "
                                "per detector)");
  cmd_roc->add_option("--config", roc_args.config_path, "Scenario JSON file")
      ->required();
  cmd_roc->add_option("--detectors", roc_args.detectors,
                      "Detector subset (john,st,sle,er,le)")
      ->delimiter(',');
  cmd_roc->add_option("--pfa-grid", roc_args.pfa_grid,
                      "Target P_fa grid, strictly increasing")
      ->delimiter(',');
  add_common_options(cmd_roc, roc_args.common);

  RerunArgs rerun_args;
  CLI::App* cmd_rerun = app.add_subcommand(
      "rerun", "Re-execute a command from its manifest sidecar");
  cmd_rerun
      ->add_option("--manifest", rerun_args.manifest_path, "Manifest JSON path")
      ->required();
  cmd_rerun->add_option("--threads", rerun_args.threads, "Thread override")
      ->each([&rerun_args](const std::string&) {
        rerun_args.threads_given = true;
      });
  cmd_rerun->add_option("--output", rerun_args.output, "Output override");

  const std::vector<std::string> argv_record = args;
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_moments->parsed()) return run_moments(moments_args, argv_record);
    if (cmd_threshold->parsed())
      return run_threshold(threshold_args, argv_record);
    if (cmd_pfa->parsed()) return run_pfa_curve(pfa_args, argv_record);
    if (cmd_roc->parsed()) return run_roc(roc_args, argv_record);
    if (cmd_rerun->parsed()) return run_rerun(rerun_args, depth);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(std::move(args), 0);
}
