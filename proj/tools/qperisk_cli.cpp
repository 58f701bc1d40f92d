// qperisk: command-line front end for risk-minimizing QPEA register states.
//
// Every command writes one tidy table (CSV or JSON) to --output, or stdout,
// and echoes a one-line JSON run header (version + full config) on stderr.
// Exit status: 0 success, 2 argument/configuration/I-O error, 3 numeric error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qperisk/qperisk.hpp"

namespace {

using namespace qperisk;

struct RunConfig {
  std::string command;
  std::string loss = "holevo";
  std::string epsilon;
  double loss_value = 0.0;
  int m = 0;
  int m_min = 0;
  int m_max = 0;
  int kmax = 0;
  std::string omega;
  double lambda = 0.0;
  std::string state = "uniform";
  std::string state_file;
  bool optimal = false;
  std::string method;
  int grid = 0;
  int measurements = 1;
  int measurements_min = 0;
  int measurements_max = 0;
  int samples = 100000;
  std::uint64_t seed = 1;
  int fit_min = 6;
  int fit_max = 12;
  int curve = 0;
  std::string states = "uniform,cosine,optimal";
  std::string output;
  std::string format = "csv";
};

struct MRange {
  int lo;
  int hi;
};

MRange m_range(const RunConfig& cfg) {
  if (cfg.m_min > 0 || cfg.m_max > 0) {
    const int lo = cfg.m_min > 0 ? cfg.m_min : 1;
    const int hi = cfg.m_max > 0 ? cfg.m_max : lo;
    if (lo > hi) throw ArgumentError("empty register range: m-min > m-max");
    check_register_size(lo);
    check_register_size(hi);
    return {lo, hi};
  }
  if (cfg.m <= 0) throw ArgumentError("--m (or --m-min/--m-max) is required");
  check_register_size(cfg.m);
  return {cfg.m, cfg.m};
}

/// Loss for register size m; a 1-0 loss without --epsilon uses ε = π/2^m.
LossSpec make_loss(const RunConfig& cfg, std::optional<int> m) {
  if (cfg.loss == "absolute") return LossSpec::absolute();
  if (cfg.loss == "squared") return LossSpec::squared();
  if (cfg.loss == "holevo") return LossSpec::holevo();
  if (cfg.loss == "constant") return LossSpec::constant(cfg.loss_value);
  if (cfg.loss == "one_zero") {
    if (!cfg.epsilon.empty()) return LossSpec::one_zero(parse_angle(cfg.epsilon));
    if (m) return LossSpec::one_zero_for_register(*m);
    throw ArgumentError("one_zero loss needs --epsilon when no register size is given");
  }
  throw ArgumentError("unknown loss '" + cfg.loss + "'");
}

Cell opt_cell(std::optional<double> v) {
  if (v) return *v;
  return std::string();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Table risk_table() {
  return Table{{"m", "N", "loss", "lambda", "state", "omega", "risk", "method"}, {}};
}

void add_risk_row(Table& t, const RiskReport& r) {
  t.add_row({std::int64_t{r.m}, std::int64_t{resource_count(r.m)}, r.loss, r.lambda, r.state, opt_cell(r.omega), r.risk,
             std::string(to_string(r.method))});
}

Table state_table(const RegisterState& s) {
  Table t{{"c_i"}, {}};
  for (double c : s.amplitudes()) t.add_row({c});
  return t;
}

RegisterState build_state(const RunConfig& cfg, const std::string& kind, int m, const LossSpec& loss) {
  if (kind == "uniform") return uniform_state(m);
  if (kind == "cosine") {
    if (!cfg.omega.empty()) return cosine_state(m, parse_angle(cfg.omega));
    const auto fl = fourier_coefficients(loss, resource_count(m));
    return cosine_state(m, optimize_omega(m, fl).omega);
  }
  if (kind == "optimal") return optimal_state(m, fourier_coefficients(loss, resource_count(m)));
  if (kind == "file") {
    if (cfg.state_file.empty()) throw ArgumentError("--state file needs --state-file");
    return read_state_csv(cfg.state_file);
  }
  throw ArgumentError("unknown state '" + kind + "'");
}

Table cmd_fourier(const RunConfig& cfg) {
  if (cfg.kmax < 1) throw ArgumentError("--kmax must be >= 1");
  std::optional<int> m;
  if (cfg.m > 0) m = cfg.m;
  const auto fl = fourier_coefficients(make_loss(cfg, m), cfg.kmax);
  Table t{{"k", "L_k"}, {}};
  for (int k = 0; k <= fl.kmax(); ++k) t.add_row({std::int64_t{k}, fl.at(k)});
  return t;
}

Table cmd_state(const RunConfig& cfg) {
  const auto [m, hi] = m_range(cfg);
  if (m != hi) throw ArgumentError("state takes a single register size --m");
  const std::string kind = cfg.optimal ? "optimal" : cfg.state;
  return state_table(build_state(cfg, kind, m, make_loss(cfg, m)));
}

Table cmd_prep_binary(const RunConfig& cfg) {
  const auto [m, hi] = m_range(cfg);
  if (m != hi) throw ArgumentError("prep-binary takes a single register size --m");
  const auto loss = LossSpec::one_zero_for_register(m);
  return state_table(optimal_state(m, fourier_coefficients(loss, resource_count(m))));
}

// The single-shot formulas score the grid estimate 2πy/2^m. For a custom state
// that need not be the Bayes estimate, so say so rather than fail.
void warn_estimator_gap(const RegisterState& state, const LossSpec& loss, const NoiseModel& noise) {
  if (state.label() != StateLabel::custom) return;
  const double gap = single_shot_estimator_gap(state, fourier_coefficients(loss, state.n()), noise);
  if (gap > 1e-9) {
    std::cerr << "warning: grid estimate is not Bayes-optimal for this state (expected-loss gap " << format_double(gap)
              << "); reported risk is for the grid estimator\n";
  }
}

RiskReport evaluate_risk(const RunConfig& cfg, const std::string& kind, int m, const LossSpec& loss) {
  const NoiseModel noise(cfg.lambda);
  const std::string method = cfg.method.empty() ? "closed_form" : cfg.method;
  if (method == "named") {
    if (kind != "uniform") throw ArgumentError("--method named applies to the uniform state only");
    return uniform_named_risk(m, loss, noise);
  }
  const auto state = build_state(cfg, kind, m, loss);
  warn_estimator_gap(state, loss, noise);
  if (method == "bruteforce") {
    const int grid = cfg.grid > 0 ? cfg.grid : std::max(1024, 1 << (state.m() + 4));
    return risk_bruteforce_oracle(state, loss, noise, grid);
  }
  const auto fl = fourier_coefficients(loss, state.n());
  if (method == "closed_form") {
    if (kind == "uniform") return risk_uniform_closed(m, fl, noise);
    if (kind == "cosine") return risk_cosine_closed(m, *state.omega(), fl, noise);
    return risk_of_state(state, fl, noise, RiskPath::autocorrelation);
  }
  if (method == "matrix_form") return risk_of_state(state, fl, noise, RiskPath::quadratic_form);
  throw ArgumentError("unknown --method '" + method + "'");
}

Table cmd_risk(const RunConfig& cfg) {
  Table t = risk_table();
  const auto [lo, hi] = m_range(cfg);
  for (int m = lo; m <= hi; ++m) add_risk_row(t, evaluate_risk(cfg, cfg.state, m, make_loss(cfg, m)));
  return t;
}

Table cmd_sweep_m(const RunConfig& cfg) {
  Table t = risk_table();
  const auto [lo, hi] = m_range(cfg);
  const auto kinds = split_list(cfg.states);
  for (int m = lo; m <= hi; ++m) {
    const auto loss = make_loss(cfg, m);
    for (const auto& kind : kinds) add_risk_row(t, evaluate_risk(cfg, kind, m, loss));
  }
  return t;
}

Table cmd_sweep_omega(const RunConfig& cfg) {
  const auto [lo, hi] = m_range(cfg);
  if (cfg.curve > 0) {
    if (cfg.curve < 2) throw ArgumentError("--curve needs at least 2 points");
    Table t{{"m", "N", "loss", "omega", "risk"}, {}};
    for (int m = lo; m <= hi; ++m) {
      const auto loss = make_loss(cfg, m);
      const auto fl = fourier_coefficients(loss, resource_count(m));
      const double top = cosine_omega_max(m);
      for (int i = 0; i < cfg.curve; ++i) {
        const double w = top * i / (cfg.curve - 1);
        t.add_row({std::int64_t{m}, std::int64_t{resource_count(m)}, fl.name(), w,
                   risk_cosine_closed(m, w, fl, NoiseModel(0.0)).risk});
      }
    }
    return t;
  }
  Table t{{"m", "N", "loss", "omega_star", "pi_over_omega_minus_N", "risk"}, {}};
  std::vector<double> xs;
  std::vector<double> ys;
  for (int m = lo; m <= hi; ++m) {
    const auto loss = make_loss(cfg, m);
    const int n = resource_count(m);
    const auto fl = fourier_coefficients(loss, n);
    const auto opt = optimize_omega(m, fl);
    const double inv = opt.omega > 0.0 ? kPi / opt.omega : std::numeric_limits<double>::infinity();
    t.add_row({std::int64_t{m}, std::int64_t{n}, fl.name(), opt.omega, inv - n, opt.risk});
    if (m >= cfg.fit_min && m <= cfg.fit_max && std::isfinite(inv)) {
      xs.push_back(n);
      ys.push_back(inv);
    }
  }
  if (xs.size() >= 2) {
    const auto fit = linear_fit(xs, ys);
    nlohmann::ordered_json j;
    j["fit"] = {{"quantity", "pi/omega_star vs N"},
                {"m_min", cfg.fit_min},
                {"m_max", cfg.fit_max},
                {"slope", fit.slope},
                {"intercept", fit.intercept},
                {"r_squared", fit.r_squared}};
    std::cerr << j.dump() << '\n';
  }
  return t;
}

Table cmd_baselines(const RunConfig& cfg) {
  const auto [lo, hi] = m_range(cfg);
  if (cfg.measurements < 1) throw ArgumentError("--M must be >= 1 for baselines");
  Table t{{"m", "N", "resources", "loss", "sigma2_shot", "risk_shot", "sigma2_heisenberg", "risk_heisenberg"}, {}};
  for (int m = lo; m <= hi; ++m) {
    const auto loss = make_loss(cfg, m);
    const double resources = static_cast<double>(cfg.measurements) * resource_count(m);
    const auto shot = SigmaModel::shot_noise(resources);
    const auto heis = SigmaModel::heisenberg(resources);
    t.add_row({std::int64_t{m}, std::int64_t{resource_count(m)}, resources, loss.descriptor(), shot.sigma2(),
               baseline_risk(shot, loss), heis.sigma2(), baseline_risk(heis, loss)});
  }
  return t;
}

Table cmd_multi(const RunConfig& cfg) {
  const auto [lo, hi] = m_range(cfg);
  int mlo = cfg.measurements;
  int mhi = cfg.measurements;
  if (cfg.measurements_min > 0 || cfg.measurements_max > 0) {
    mlo = cfg.measurements_min > 0 ? cfg.measurements_min : 1;
    mhi = cfg.measurements_max > 0 ? cfg.measurements_max : mlo;
  }
  if (mlo < 0 || mlo > mhi) throw ArgumentError("empty measurement-count range");
  const std::string method = cfg.method.empty() ? "exact" : cfg.method;
  if (method != "exact" && method != "mc") throw ArgumentError("multi --method must be exact or mc");
  const NoiseModel noise(cfg.lambda);
  Table t{{"m", "M", "resources", "loss", "lambda", "state", "omega", "risk", "stderr", "method"}, {}};
  for (int m = lo; m <= hi; ++m) {
    const auto loss = make_loss(cfg, m);
    const auto state = build_state(cfg, cfg.state, m, loss);
    for (int big_m = mlo; big_m <= mhi; ++big_m) {
      const auto fl = fourier_coefficients(loss, std::max(1, big_m * state.n()));
      const auto r = method == "exact" ? exact_multi_risk(state, big_m, fl, noise)
                                       : mc_multi_risk(state, big_m, fl, noise, cfg.samples, cfg.seed);
      t.add_row({std::int64_t{m}, std::int64_t{big_m}, std::int64_t{big_m} * resource_count(m), r.loss, r.lambda,
                 r.state, opt_cell(r.omega), r.risk, opt_cell(r.standard_error), std::string(to_string(r.method))});
    }
  }
  return t;
}

std::string resolve_output(const std::string& path) {
  if (path.empty() || path == "-") return {};
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("QPERISK_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p.string();
}

Table dispatch(const RunConfig& cfg) {
  if (cfg.command == "fourier") return cmd_fourier(cfg);
  if (cfg.command == "state") return cmd_state(cfg);
  if (cfg.command == "prep-binary") return cmd_prep_binary(cfg);
  if (cfg.command == "risk") return cmd_risk(cfg);
  if (cfg.command == "sweep-m") return cmd_sweep_m(cfg);
  if (cfg.command == "sweep-omega") return cmd_sweep_omega(cfg);
  if (cfg.command == "baselines") return cmd_baselines(cfg);
  if (cfg.command == "multi") return cmd_multi(cfg);
  throw ArgumentError("unknown command '" + cfg.command + "'");
}

nlohmann::ordered_json run_header(const CLI::App& sub, const std::string& command) {
  nlohmann::ordered_json j;
  j["qperisk_version"] = kVersion;
  j["command"] = command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string key = opt->get_name();
    key.erase(0, key.find_first_not_of('-'));
    const auto& res = opt->results();
    if (!res.empty()) {
      config[key] = res.size() == 1 ? nlohmann::ordered_json(res.front()) : nlohmann::ordered_json(res);
    } else {
      config[key] = opt->get_default_str();
    }
  }
  j["config"] = config;
  return j;
}

// Config file: `key = value` lines mirroring the long flags, `#` comments.
// Keys before any `[command]` header apply to every command; keys under a
// header only to that command. A flag given on the command line wins over
// the file. Returns argv with --config removed and file values spliced in
// right after the subcommand name.
std::vector<std::string> apply_config_file(std::vector<std::string> args, const std::set<std::string>& commands,
                                           const std::set<std::string>& flags) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigurationError("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file '" + path + "'");

  auto sub = std::find_if(args.begin() + 1, args.end(), [&](const std::string& a) { return commands.count(a) > 0; });
  if (sub == args.end()) return args;
  const std::string command = *sub;
  auto given = [&](const std::string& key) {
    for (auto it = sub + 1; it != args.end(); ++it) {
      if (*it == "--" + key || it->rfind("--" + key + "=", 0) == 0) return true;
      if (key == "output" && *it == "-o") return true;
    }
    return false;
  };
  auto trim = [](std::string t) {
    const auto b = t.find_first_not_of(" \t\r");
    const auto e = t.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };

  std::vector<std::string> extra;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigurationError(path + ":" + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigurationError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty() || key == "config") throw ConfigurationError(path + ":" + std::to_string(lineno) + ": bad key");
    if (!section.empty() && section != command) continue;
    if (given(key)) continue;
    if (flags.count(key)) {
      if (value == "true" || value == "1") extra.push_back("--" + key);
      else if (value != "false" && value != "0") throw ConfigurationError("config key '" + key + "' takes true or false");
      continue;
    }
    extra.push_back("--" + key + "=" + value);
  }
  args.insert(sub + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-minimizing register states for quantum phase estimation", "qperisk"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string config_path;
  app.add_option("--config", config_path, "key = value file mirroring the flags; command-line flags take precedence");
  app.require_subcommand(1);

  RunConfig cfg;
  const std::vector<std::string> losses = {"absolute", "squared", "holevo", "one_zero", "constant"};

  auto add_loss = [&](CLI::App* sub) {
    sub->add_option("--loss", cfg.loss, "absolute | squared | holevo | one_zero | constant")
        ->check(CLI::IsMember(losses))
        ->capture_default_str();
    sub->add_option("--epsilon", cfg.epsilon, "1-0 tolerance: radians or pi/<n> (default pi/2^m)");
    sub->add_option("--loss-value", cfg.loss_value, "value of the constant loss")->capture_default_str();
  };
  auto add_m = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "register size");
    sub->add_option("--m-min", cfg.m_min, "first register size of a range");
    sub->add_option("--m-max", cfg.m_max, "last register size of a range");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output,-o", cfg.output, "output file (relative paths resolve under $QPERISK_OUTPUT_DIR)");
    sub->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", cfg.state, "uniform | cosine | optimal | file")
        ->check(CLI::IsMember({"uniform", "cosine", "optimal", "file"}))
        ->capture_default_str();
    sub->add_option("--omega", cfg.omega, "cosine frequency: radians or pi/<n> (default: optimal omega')");
    sub->add_option("--state-file", cfg.state_file, "state CSV (header c_i) for --state file");
  };

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients L_0..L_K of a loss");
  add_loss(fourier);
  fourier->add_option("--kmax", cfg.kmax, "number of coefficients K")->required();
  fourier->add_option("--m", cfg.m, "register size (sets the default 1-0 epsilon)");
  add_output(fourier);

  auto* state = app.add_subcommand("state", "Export a register state (CSV header c_i)");
  add_loss(state);
  add_m(state);
  add_state(state);
  state->add_flag("--optimal", cfg.optimal, "the risk-minimizing state for --loss");
  add_output(state);

  auto* prep = app.add_subcommand("prep-binary", "Optimal state for m-bit binary-representation preparation");
  prep->add_option("--m", cfg.m, "register size")->required();
  add_output(prep);

  auto* risk = app.add_subcommand("risk", "Bayes risk of one register state");
  add_loss(risk);
  add_m(risk);
  add_state(risk);
  risk->add_option("--lambda", cfg.lambda, "depolarizing strength per U(theta)")->capture_default_str();
  risk->add_option("--method", cfg.method, "closed_form | matrix_form | bruteforce | named")
      ->check(CLI::IsMember({"closed_form", "matrix_form", "bruteforce", "named"}));
  risk->add_option("--grid", cfg.grid, "panels for --method bruteforce (>= 2^(m+4))");
  add_output(risk);

  auto* sweep_m = app.add_subcommand("sweep-m", "Risks of several states over a range of register sizes");
  add_loss(sweep_m);
  add_m(sweep_m);
  sweep_m->add_option("--states", cfg.states, "comma-separated states")->capture_default_str();
  sweep_m->add_option("--omega", cfg.omega, "fixed cosine frequency (default: optimal omega' per m)");
  sweep_m->add_option("--lambda", cfg.lambda, "depolarizing strength per U(theta)")->capture_default_str();
  sweep_m->add_option("--method", cfg.method, "closed_form | matrix_form")
      ->check(CLI::IsMember({"closed_form", "matrix_form"}));
  add_output(sweep_m);

  auto* sweep_omega = app.add_subcommand("sweep-omega", "Optimal cosine frequency omega' per register size");
  add_loss(sweep_omega);
  add_m(sweep_omega);
  sweep_omega->add_option("--fit-min", cfg.fit_min, "first m of the pi/omega' vs N regression")->capture_default_str();
  sweep_omega->add_option("--fit-max", cfg.fit_max, "last m of the regression")->capture_default_str();
  sweep_omega->add_option("--curve", cfg.curve, "emit the noiseless risk at this many omega points instead");
  add_output(sweep_omega);

  auto* baselines = app.add_subcommand("baselines", "Shot-noise and Heisenberg Gaussian reference risks");
  add_loss(baselines);
  add_m(baselines);
  baselines->add_option("--M", cfg.measurements, "measurements per run (resources = M*N)")->capture_default_str();
  add_output(baselines);

  auto* multi = app.add_subcommand("multi", "Risk of M repeated measurements with Bayesian post-processing");
  add_loss(multi);
  add_m(multi);
  add_state(multi);
  multi->add_option("--M", cfg.measurements, "number of measurements")->capture_default_str();
  multi->add_option("--M-min", cfg.measurements_min, "first M of a range");
  multi->add_option("--M-max", cfg.measurements_max, "last M of a range");
  multi->add_option("--lambda", cfg.lambda, "depolarizing strength per U(theta)")->capture_default_str();
  multi->add_option("--method", cfg.method, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
  multi->add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
  multi->add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
  add_output(multi);

  std::vector<std::string> args(argv, argv + argc);
  try {
    std::set<std::string> commands;
    for (const CLI::App* sub : app.get_subcommands({})) commands.insert(sub->get_name());
    args = apply_config_file(std::move(args), commands, {"optimal"});
  } catch (const std::exception& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  }
  args.erase(args.begin());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  std::cerr << run_header(*chosen, cfg.command).dump() << '\n';

  try {
    const Table table = dispatch(cfg);
    const OutputFormat format = cfg.format == "json" ? OutputFormat::json : OutputFormat::csv;
    emit(table, format, resolve_output(cfg.output), std::cout);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
