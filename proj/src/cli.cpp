// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include "qswitch/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qswitch/channel_props.hpp"
#include "qswitch/csv.hpp"
#include "qswitch/info_bounds.hpp"
#include "qswitch/open_dynamics.hpp"
#include "qswitch/parallel.hpp"
#include "qswitch/quantum_core.hpp"
#include "qswitch/switch_model.hpp"
#include "qswitch/szilard.hpp"
#include "qswitch/util.hpp"

namespace qswitch {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": cannot parse '" + text + "'");
  }
  if (used != text.size())
    throw std::invalid_argument(what + ": trailing characters in '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_double(trim(item), what));
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

// "lo:hi:step" with step > 0 and hi >= lo; the grid includes both ends up
// to a half-ulp-scale guard so 0.01:0.49:0.01 yields exactly 49 points.
std::vector<double> parse_grid(const std::string& text, const std::string& what) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.size() != 3)
    throw std::invalid_argument(what + ": expected lo:hi:step, got '" + text + "'");
  double lo = parse_double(parts[0], what);
  double hi = parse_double(parts[1], what);
  double step = parse_double(parts[2], what);
  if (step <= 0.0) throw std::invalid_argument(what + ": step must be positive");
  if (hi < lo) throw std::invalid_argument(what + ": hi is below lo");
  int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + i * step;
  return out;
}

std::string default_out(const std::string& filename) {
  const char* dir = std::getenv(kOutDirEnvVar);
  if (dir == nullptr || *dir == '\0') return filename;
  return (std::filesystem::path(dir) / filename).string();
}

// Effective parameters in declaration order; feeds both the CSV comment
// header and the reproducibility hash.
struct ParamTrail {
  std::vector<std::pair<std::string, std::string>> kv;

  void add(const std::string& key, const std::string& value) {
    kv.emplace_back(key, value);
  }
  void add(const std::string& key, double value) {
    kv.emplace_back(key, format_number(value));
  }
  std::string joined() const {
    std::string out;
    for (const auto& [k, v] : kv) {
      if (!out.empty()) out += " ";
      out += k + "=" + v;
    }
    return out;
  }
};

void write_preamble(CsvWriter& csv, const std::string& command,
                    const ParamTrail& trail, std::uint64_t seed) {
  std::string params = trail.joined();
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(
                    command + "\n" + params + "\n" + std::to_string(seed))));
  csv.comment(std::string("tool: qswitch ") + kToolVersion);
  csv.comment("command: " + command);
  csv.comment("params: " + params);
  csv.comment("seed: " + std::to_string(seed));
  csv.comment(std::string("config-hash: ") + hash);
}

int run_switch_overlap(const std::string& d_list, const std::string& kt_list,
                       std::string out) {
  std::vector<double> ds = parse_list(d_list, "--D");
  std::vector<double> kts = parse_list(kt_list, "--kT-over-hw");
  for (double d : ds) (void)SwitchParams{d, 1.0, 0.0, 0}.validate();
  for (double kt : kts) (void)SwitchParams{1.0, 1.0, kt, 0}.validate();
  if (out.empty()) out = default_out("switch_overlap.csv");

  const std::size_t nk = kts.size();
  auto rows = parallel_map(ds.size() * nk, [&](std::size_t i) {
    SwitchParams p{ds[i / nk], 1.0, kts[i % nk], 0};
    return std::vector<double>{p.D, p.kT, overlap_analytic(p),
                               overlap_numeric(p)};
  });

  ParamTrail trail;
  trail.add("D", d_list);
  trail.add("kT-over-hw", kt_list);
  CsvWriter csv(out);
  write_preamble(csv, "switch-overlap", trail, 0);
  csv.header({"D", "kT_over_hw0", "eps_closed_form", "eps_numeric"});
  for (const auto& r : rows) csv.row(r);
  csv.close();
  write_plot_script(out + ".plt", out, "pointer-state overlap", "kT / hw0",
                    "overlap", {{2, 3}, {2, 4}});
  std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  return 0;
}

int run_switch_lifetime(const std::string& d_list, double kt, double gamma_o,
                        double gamma_1, std::string out) {
  std::vector<double> ds = parse_list(d_list, "--D");
  BathSpec bath{kt, gamma_o, gamma_1};
  bath.validate();
  for (double d : ds) (void)SwitchParams{d, 1.0, kt, 0}.validate();
  if (out.empty()) out = default_out("switch_lifetime.csv");

  auto rows = parallel_map(ds.size(), [&](std::size_t i) {
    SwitchParams p{ds[i], 1.0, kt, 0};
    LifetimeEstimate est = estimate_lifetime(p, bath);
    double w = barrier_energy(p);
    double theta = noise_temperature(p);
    return std::vector<double>{p.D,
                               w,
                               theta,
                               est.tau,
                               est.tau0,
                               std::log(est.tau / est.tau0),
                               w / theta,
                               est.flagged ? 1.0 : 0.0};
  });

  ParamTrail trail;
  trail.add("D", d_list);
  trail.add("kT", kt);
  trail.add("gamma-o", gamma_o);
  trail.add("gamma-1", gamma_1);
  CsvWriter csv(out);
  write_preamble(csv, "switch-lifetime", trail, 0);
  csv.header({"D", "barrier_W", "noise_theta", "tau", "tau0", "ln_tau_ratio",
              "W_over_theta", "flagged"});
  for (const auto& r : rows) csv.row(r);
  csv.close();
  write_plot_script(out + ".plt", out, "switch lifetime scaling", "W / Theta",
                    "ln(tau / tau0)", {{7, 6}});
  std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  return 0;
}

int run_szilard_sweep(const std::string& grid, std::string out) {
  std::vector<double> eps = parse_grid(grid, "--eps-grid");
  for (double e : eps)
    if (e <= 0.0 || e >= 0.5)
      throw std::invalid_argument("--eps-grid: error rate must lie in (0, 0.5)");
  if (out.empty()) out = default_out("szilard_sweep.csv");

  auto rows = parallel_map(eps.size(), [&](std::size_t i) {
    OptimalWork ow = optimal_work(eps[i], 1.0);
    return std::vector<double>{eps[i], ow.E0_star, ow.W_star,
                               efficiency(eps[i], 1.0, 1.0), 0.0};
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][3] > rows[best][3]) best = i;
  rows[best][4] = 1.0;

  ParamTrail trail;
  trail.add("eps-grid", grid);
  CsvWriter csv(out);
  write_preamble(csv, "szilard-sweep", trail, 0);
  csv.header({"eps", "E0_star_over_kT", "W_star_over_kT",
              "eta_times_theta_over_kT", "is_max_eta"});
  for (const auto& r : rows) csv.row(r);
  csv.close();
  write_plot_script(out + ".plt", out, "engine efficiency vs error rate",
                    "eps", "eta Theta / kT", {{1, 4}});
  std::cout << "wrote " << rows.size() << " rows to " << out
            << " (max eta at eps=" << format_number(rows[best][0]) << ")\n";
  return 0;
}

int run_bounds(const std::string& grid, const std::string& n_list,
               double theta_over_kt, std::string out) {
  std::vector<double> eps = parse_grid(grid, "--eps-grid");
  std::vector<double> ns = parse_list(n_list, "--N");
  for (double e : eps)
    if (e <= 0.0 || e > 0.5)
      throw std::invalid_argument("--eps-grid: error rate must lie in (0, 0.5]");
  for (double n : ns)
    if (n < 2.0) throw std::invalid_argument("--N: step count must be >= 2");
  if (theta_over_kt <= 0.0)
    throw std::invalid_argument("--theta-over-kT must be positive");
  if (out.empty()) out = default_out("bounds.csv");

  const double theta = theta_over_kt;  // kT = 1
  const std::size_t nn = ns.size();
  auto rows = parallel_map(eps.size() * nn, [&](std::size_t i) {
    double e = eps[i / nn];
    double n = ns[i % nn];
    BoundReport cost = computation_cost(n, theta, 1.0);
    return std::vector<double>{e,
                               encode_work(e, theta) / theta,
                               max_lifetime(e, 1.0),
                               n,
                               cost.value / theta,
                               cost.ratio};
  });

  ParamTrail trail;
  trail.add("eps-grid", grid);
  trail.add("N", n_list);
  trail.add("theta-over-kT", theta_over_kt);
  CsvWriter csv(out);
  write_preamble(csv, "bounds", trail, 0);
  csv.header({"eps", "W_over_theta", "tau_over_tau0", "N", "cost_over_theta",
              "landauer_ratio"});
  for (const auto& r : rows) csv.row(r);
  csv.close();
  write_plot_script(out + ".plt", out, "encoding work and lifetime bounds",
                    "eps", "W / Theta", {{1, 2}, {1, 3}});
  std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  return 0;
}

int run_channel_props(int dim, int env_dim, int count, std::uint64_t seed,
                      std::string out) {
  SampleConfig cfg;
  cfg.dim = dim;
  cfg.env_dim = env_dim;
  cfg.count = count;
  cfg.seed = seed;
  cfg.validate();
  if (out.empty()) out = default_out("channel_props.csv");

  AxiomReport rep = check_axioms(cfg);

  ParamTrail trail;
  trail.add("dim", static_cast<double>(dim));
  trail.add("env-dim", static_cast<double>(env_dim));
  trail.add("count", static_cast<double>(count));
  CsvWriter csv(out);
  write_preamble(csv, "channel-props", trail, seed);
  csv.header({"sample", "identity_error", "range_error", "factorization_error",
              "monotonicity_margin"});
  for (const AxiomSample& s : rep.samples)
    csv.row({format_number(static_cast<double>(s.index)),
             format_number(s.identity_error), format_number(s.range_error),
             format_number(s.factorization_error),
             format_number(s.monotonicity_margin)});
  csv.close();
  write_plot_script(out + ".plt", out, "overlap monotonicity margins",
                    "sample", "margin", {{1, 5}});

  bool pass = rep.monotonicity_violations == 0 &&
              rep.max_identity_error <= 1e-10 && rep.max_range_error <= 1e-10 &&
              rep.max_factorization_error < 1e-8;
  std::printf(
      "channel-props: %d samples at dim %d env %d | max identity %.3g | "
      "max range %.3g | max factorization %.3g | min margin %.3g | "
      "violations %d | %s\n",
      count, dim, env_dim, rep.max_identity_error, rep.max_range_error,
      rep.max_factorization_error, rep.min_monotonicity_margin,
      rep.monotonicity_violations, pass ? "PASS" : "FAIL");
  std::cout << "wrote " << rep.samples.size() << " rows to " << out << "\n";
  return pass ? 0 : 1;
}

int run_holevo(const std::string& grid, std::string out) {
  std::vector<double> eps = parse_grid(grid, "--eps-grid");
  for (double e : eps)
    if (e < 0.0 || e > 0.5)
      throw std::invalid_argument("--eps-grid: noise must lie in [0, 0.5]");
  if (out.empty()) out = default_out("holevo.csv");

  Ensemble pair;
  Matrix zero = Matrix::Zero(2, 2), one = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  one(1, 1) = 1.0;
  pair.states = {DensityMatrix{zero, SpaceSpec{{2}}},
                 DensityMatrix{one, SpaceSpec{{2}}}};
  pair.probabilities = {0.5, 0.5};

  auto rows = parallel_map(eps.size(), [&](std::size_t i) {
    NoisyHolevo nh = noisy_holevo_bound(pair, eps[i]);
    return std::vector<double>{eps[i], nh.chi, nh.entropy_difference, nh.bound};
  });

  ParamTrail trail;
  trail.add("eps-grid", grid);
  CsvWriter csv(out);
  write_preamble(csv, "holevo", trail, 0);
  csv.header({"eps", "chi", "entropy_difference", "bound"});
  for (const auto& r : rows) csv.row(r);
  csv.close();
  write_plot_script(out + ".plt", out,
                    "readable information under measurement noise", "eps",
                    "nats", {{1, 2}, {1, 4}});
  std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  return 0;
}

int run_double_well(double kt, double splitting, std::string out) {
  if (out.empty()) out = default_out("double_well.csv");
  DoubleWellReport rep = double_well_demo(kt, splitting);

  ParamTrail trail;
  trail.add("kT", kt);
  trail.add("splitting", splitting);
  CsvWriter csv(out);
  write_preamble(csv, "double-well", trail, 0);
  csv.header({"kT", "entropy", "decomposition_distance", "extractable_work",
              "free_energy_excess"});
  csv.row({kt, rep.entropy, rep.decomposition_distance, rep.extractable_work,
           rep.free_energy_excess});
  csv.close();
  write_plot_script(out + ".plt", out, "degenerate double well", "kT",
                    "free energy excess", {{1, 5}});
  std::cout << "wrote 1 row to " << out << "\n";
  return 0;
}

// Pulls --config out of the raw argument list and splices the file's
// key=value pairs in as flags directly after the subcommand, so that
// explicit command-line flags, appearing later, take precedence.
std::vector<std::string> inject_config(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config: missing file path");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i),
                 args.begin() + static_cast<long>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  if (config_path.empty()) return args;

  RunConfig file = load_config(config_path);
  std::size_t insert_at = 0;
  while (insert_at < args.size() && !args[insert_at].empty() &&
         args[insert_at][0] == '-')
    ++insert_at;
  if (insert_at == args.size())
    throw std::invalid_argument(
        "--config requires a subcommand to apply its keys to");
  ++insert_at;  // past the subcommand token
  std::vector<std::string> injected;
  injected.reserve(file.params.size());
  for (const auto& [k, v] : file.params) injected.push_back("--" + k + "=" + v);
  args.insert(args.begin() + static_cast<long>(insert_at), injected.begin(),
              injected.end());
  return args;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": empty key");
    cfg.params.emplace_back(key, value);
    if (key == "out") cfg.output_path = value;
    if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(std::strtoull(value.c_str(), nullptr, 10));
  }
  return cfg;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  try {
    args = inject_config(std::move(args));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"bistable-switch thermodynamics and information-bound toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", kToolVersion);

  int status = 0;
  std::string config_doc = "flat key=value defaults file (flags override)";
  std::string unused_config;

  auto* overlap = app.add_subcommand(
      "switch-overlap", "closed-form vs numeric pointer-state overlap");
  std::string ov_d = "0.5,1,2", ov_kt = "0.25,1,4", ov_out;
  overlap->add_option("--D", ov_d, "well displacements, comma separated");
  overlap->add_option("--kT-over-hw", ov_kt,
                      "temperatures in units of hw0, comma separated");
  overlap->add_option("--out", ov_out, "output CSV path");
  overlap->add_option("--config", unused_config, config_doc);
  overlap->callback([&] { status = run_switch_overlap(ov_d, ov_kt, ov_out); });

  auto* lifetime = app.add_subcommand(
      "switch-lifetime", "relaxation-based bit lifetime across barrier heights");
  std::string lt_d = "0.6,0.8,1.0,1.2,1.4", lt_out;
  double lt_kt = 0.1, lt_go = 1.0, lt_g1 = 0.05;
  lifetime->add_option("--D", lt_d, "well displacements, comma separated");
  lifetime->add_option("--kT", lt_kt, "bath temperature in units of hw0");
  lifetime->add_option("--gamma-o", lt_go, "oscillator damping rate");
  lifetime->add_option("--gamma-1", lt_g1, "spin-flip coupling rate");
  lifetime->add_option("--out", lt_out, "output CSV path");
  lifetime->add_option("--config", unused_config, config_doc);
  lifetime->callback(
      [&] { status = run_switch_lifetime(lt_d, lt_kt, lt_go, lt_g1, lt_out); });

  auto* szilard = app.add_subcommand(
      "szilard-sweep", "optimal engine work and efficiency vs error rate");
  std::string sz_grid = "0.01:0.49:0.01", sz_out;
  szilard->add_option("--eps-grid", sz_grid, "error-rate grid lo:hi:step");
  szilard->add_option("--out", sz_out, "output CSV path");
  szilard->add_option("--config", unused_config, config_doc);
  szilard->callback([&] { status = run_szilard_sweep(sz_grid, sz_out); });

  auto* bounds = app.add_subcommand(
      "bounds", "encoding work, lifetime, and computation-cost bounds");
  std::string bd_grid = "0.05:0.45:0.05", bd_n = "10,100,1000", bd_out;
  double bd_theta = 2.0;
  bounds->add_option("--eps-grid", bd_grid, "error-rate grid lo:hi:step");
  bounds->add_option("--N", bd_n, "computation step counts, comma separated");
  bounds->add_option("--theta-over-kT", bd_theta,
                     "noise temperature in units of kT");
  bounds->add_option("--out", bd_out, "output CSV path");
  bounds->add_option("--config", unused_config, config_doc);
  bounds->callback(
      [&] { status = run_bounds(bd_grid, bd_n, bd_theta, bd_out); });

  auto* channels = app.add_subcommand(
      "channel-props", "randomized overlap-axiom suite over sampled channels");
  int ch_dim = 2, ch_env = 2, ch_count = 1000;
  std::uint64_t ch_seed = 0;
  std::string ch_out;
  channels->add_option("--dim", ch_dim, "system dimension");
  channels->add_option("--env-dim", ch_env, "environment dimension");
  channels->add_option("--count", ch_count, "number of samples");
  channels->add_option("--seed", ch_seed, "base RNG seed");
  channels->add_option("--out", ch_out, "output CSV path");
  channels->add_option("--config", unused_config, config_doc);
  channels->callback([&] {
    status = run_channel_props(ch_dim, ch_env, ch_count, ch_seed, ch_out);
  });

  auto* holevo = app.add_subcommand(
      "holevo", "readable information of a noisy two-state ensemble");
  std::string hv_grid = "0:0.5:0.025", hv_out;
  holevo->add_option("--eps-grid", hv_grid, "flip-probability grid lo:hi:step");
  holevo->add_option("--out", hv_out, "output CSV path");
  holevo->add_option("--config", unused_config, config_doc);
  holevo->callback([&] { status = run_holevo(hv_grid, hv_out); });

  auto* dwell = app.add_subcommand(
      "double-well", "degenerate double-well free-energy accounting");
  double dw_kt = 1.0, dw_split = 1e-8;
  std::string dw_out;
  dwell->add_option("--kT", dw_kt, "temperature in energy units");
  dwell->add_option("--splitting", dw_split, "residual level splitting");
  dwell->add_option("--out", dw_out, "output CSV path");
  dwell->add_option("--config", unused_config, config_doc);
  dwell->callback([&] { status = run_double_well(dw_kt, dw_split, dw_out); });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}

}  // namespace qswitch
