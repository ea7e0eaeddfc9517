// rescap: reproducible experiment runner for the capacity / preservability /
// thermalization toolkit. Subcommands: bounds | thermo | localtherm | asym |
// fef | sweep.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rescap/capacity.hpp"
#include "rescap/io.hpp"
#include "rescap/localtherm.hpp"
#include "rescap/parallel.hpp"
#include "rescap/thermo.hpp"

using namespace rescap;

namespace {

constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string config_path;
  uint64_t seed = 1;
  int jobs = 0;
  std::string out_path;
  std::string format = "table";
  std::vector<std::string> tol_overrides;
};

int resolve_jobs(int flag_jobs) {
  if (flag_jobs > 0) return flag_jobs;
  if (const char* env = std::getenv("RESCAP_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

void apply_tolerance_overrides(const std::vector<std::string>& overrides) {
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects NAME=VALUE, got: " + ov);
    const std::string name = ov.substr(0, eq);
    const double value = std::stod(ov.substr(eq + 1));
    if (!tols().set(name, value)) throw ConfigError("unknown tolerance name: " + name);
  }
}

void reject_unknown_keys(const Json& config, const std::vector<std::string>& allowed) {
  for (auto it = config.begin(); it != config.end(); ++it) {
    bool ok = false;
    for (const auto& key : allowed)
      if (it.key() == key) ok = true;
    if (!ok) throw ConfigError("unknown config key: " + it.key());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

// --- object parsers ------------------------------------------------------

Hamiltonian parse_hamiltonian(const Json& j) {
  if (j.is_array()) {
    RVec e(j.size());
    for (size_t k = 0; k < j.size(); ++k) e(k) = j[k].get<double>();
    return Hamiltonian::diagonal(e);
  }
  if (!j.is_object() || !j.contains("energies"))
    throw ConfigError("hamiltonian: expected array of energies or {energies, basis}");
  RVec e(j.at("energies").size());
  for (size_t k = 0; k < j.at("energies").size(); ++k)
    e(k) = j.at("energies")[k].get<double>();
  if (!j.contains("basis") || j.at("basis") == "computational")
    return Hamiltonian::diagonal(e);
  Hamiltonian h;
  h.energies = e;
  h.eigenbasis = matrix_from_json(j.at("basis"));
  h.validate();
  return h;
}

UnitaryGroup parse_group(const Json& j) {
  if (j.is_array()) {
    UnitaryGroup g;
    for (const auto& m : j) g.elements.push_back(matrix_from_json(m));
    if (!g.verify_closure()) throw ConfigError("group: element list not closed");
    return g;
  }
  const std::string s = j.get<std::string>();
  auto parts = split(s, ':');
  if (parts[0] == "trivial" && parts.size() == 2)
    return UnitaryGroup::trivial(std::stoi(parts[1]));
  if (parts[0] == "pauli_z") return UnitaryGroup::pauli_z();
  if (parts[0] == "phase" && parts.size() == 2)
    return UnitaryGroup::phase_group(std::stoi(parts[1]));
  if (parts[0] == "weyl" && parts.size() == 2) return UnitaryGroup::weyl(std::stoi(parts[1]));
  throw ConfigError("unknown group: " + s);
}

DensityMatrix parse_state(const Json& j) {
  if (j.is_object()) return make_state(matrix_from_json(j));
  const std::string s = j.get<std::string>();
  auto parts = split(s, ':');
  if (parts[0] == "plus") {
    Ket v(2);
    v << 1, 1;
    return pure_state(v);
  }
  if (parts[0] == "pure" && parts.size() == 3) {
    const int d = std::stoi(parts[1]);
    Ket v = Ket::Zero(d);
    v(std::stoi(parts[2])) = 1;
    return pure_state(v);
  }
  if (parts[0] == "max_entangled" && parts.size() == 2)
    return max_entangled(std::stoi(parts[1]));
  if (parts[0] == "isotropic" && parts.size() == 3) {
    const int d = std::stoi(parts[1]);
    const double p = std::stod(parts[2]);
    Mat iso = p * max_entangled(d).mat + (1 - p) * identity(d * d) / (d * d);
    return make_state(iso, {d, d});
  }
  throw ConfigError("unknown state: " + s);
}

ChannelChoi parse_channel(const Json& j) {
  if (j.is_object()) {
    if (j.contains("choi")) {
      ChannelChoi e;
      e.d_in = j.at("d_in").get<int>();
      e.d_out = j.at("d_out").get<int>();
      e.choi = matrix_from_json(j.at("choi"));
      e.validate();
      return e;
    }
    throw ConfigError("channel object must carry {d_in, d_out, choi}");
  }
  const std::string s = j.get<std::string>();
  auto parts = split(s, ':');
  if (parts[0] == "identity" && parts.size() == 2)
    return identity_channel(std::stoi(parts[1]));
  if (parts[0] == "dephasing" && parts.size() == 2) return dephasing(std::stoi(parts[1]));
  if (parts[0] == "depolarizing" && parts.size() == 3)
    return depolarizing(std::stoi(parts[1]), std::stod(parts[2]));
  if (parts[0] == "constant" && parts.size() == 2) {
    auto sigma = make_state(matrix_from_json(load_json_file(parts[1])));
    return constant_channel(sigma.mat);
  }
  if (parts[0] == "file" && parts.size() == 2) return parse_channel(load_json_file(parts[1]));
  throw ConfigError("unknown channel: " + s);
}

ResourceSpec parse_resource(const Json& j) {
  if (j.is_string()) {
    auto parts = split(j.get<std::string>(), ':');
    if (parts[0] == "coherence" && parts.size() == 2)
      return ResourceSpec::coherence(std::stoi(parts[1]));
    throw ConfigError("unknown resource shorthand: " + j.get<std::string>());
  }
  reject_unknown_keys(j, {"kind", "d", "basis", "hamiltonian", "beta", "group"});
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "coherence") {
    if (j.contains("basis")) return ResourceSpec::coherence_in_basis(matrix_from_json(j.at("basis")));
    return ResourceSpec::coherence(j.at("d").get<int>());
  }
  if (kind == "athermality") {
    auto h = parse_hamiltonian(j.at("hamiltonian"));
    return ResourceSpec::athermality(thermal_state(h, j.at("beta").get<double>()));
  }
  if (kind == "asymmetry") return ResourceSpec::asymmetry(parse_group(j.at("group")));
  throw ConfigError("unknown resource kind: " + kind);
}

// --- output assembly -----------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;  // key, value
};

void emit(const Table& t, const Json& config, const CommonArgs& args) {
  std::ostringstream body;
  const Json cfg_line = Json{{"schema_version", kSchemaVersion}, {"config", config},
                             {"seed", args.seed}};
  if (args.format == "json") {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json row = Json::object();
      for (size_t c = 0; c < t.columns.size(); ++c) row[t.columns[c]] = r[c];
      rows.push_back(row);
    }
    Json out = {{"schema_version", kSchemaVersion},
                {"config", config},
                {"seed", args.seed},
                {"rows", rows}};
    for (const auto& [k, v] : t.summary) out[k] = v;
    body << out.dump(2) << "\n";
  } else if (args.format == "csv") {
    body << "# " << cfg_line.dump() << "\n";
    body << "schema_version";
    for (const auto& c : t.columns) body << "," << c;
    body << "\n";
    for (const auto& r : t.rows) {
      body << kSchemaVersion;
      for (const auto& v : r) body << "," << v;
      body << "\n";
    }
    for (const auto& [k, v] : t.summary) body << "# " << k << " = " << v << "\n";
  } else {
    body << "# " << cfg_line.dump() << "\n";
    for (size_t c = 0; c < t.columns.size(); ++c)
      body << (c ? "  " : "") << t.columns[c];
    body << "\n";
    for (const auto& r : t.rows) {
      for (size_t c = 0; c < r.size(); ++c) body << (c ? "  " : "") << r[c];
      body << "\n";
    }
    for (const auto& [k, v] : t.summary) body << k << " = " << v << "\n";
  }
  if (args.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(args.out_path);
    if (!out) throw std::runtime_error("cannot write " + args.out_path);
    out << body.str();
  }
}

std::string report_row_value(const BoundReport& r) {
  return fmt_double(r.value) + " (" + to_string(r.kind) + ")";
}

void push_report(Table& t, const BoundReport& r) {
  t.rows.push_back({r.name, fmt_double(r.value), to_string(r.kind), r.method,
                    fmt_double(r.tol)});
}

// --- commands ------------------------------------------------------------

int cmd_bounds(const Json& config, const CommonArgs& args) {
  reject_unknown_keys(config, {"channel", "resource", "epsilon", "delta", "kappa", "gibbs",
                               "m_max", "restarts"});
  auto channel = parse_channel(config.at("channel"));
  auto spec = parse_resource(config.at("resource"));
  const double epsilon = config.value("epsilon", 0.0);
  const double delta = config.value("delta", 0.0);
  const double kappa = config.value("kappa", 1e-6);

  CapacityOptions copts;
  if (config.contains("m_max")) copts.m_max = config.at("m_max").get<int>();
  if (config.contains("restarts")) copts.restarts = config.at("restarts").get<int>();
  auto pipe = bounds_pipeline(spec, channel, epsilon, delta, kappa, args.seed, copts);

  Table t;
  t.columns = {"name", "value", "kind", "method", "tol"};
  push_report(t, pipe.capacity_lower);
  push_report(t, pipe.p_lower);
  push_report(t, pipe.p_upper);
  push_report(t, pipe.gamma);
  push_report(t, pipe.theorem1_upper);
  if (config.contains("gibbs")) {
    auto gj = config.at("gibbs");
    reject_unknown_keys(gj, {"hamiltonian", "beta"});
    auto ctx = thermal_state(parse_hamiltonian(gj.at("hamiltonian")),
                             gj.at("beta").get<double>());
    auto cor = corollary1_upper(channel, ctx, spec, epsilon, kappa);
    push_report(t, cor);
  }
  t.summary.emplace_back("consistency",
                         pipe.consistent ? "pass (capacity_lower <= theorem1_upper)"
                                         : "VIOLATION");
  emit(t, config, args);
  return pipe.consistent ? 0 : 1;
}

int cmd_thermo(const Json& config, const CommonArgs& args) {
  reject_unknown_keys(config,
                      {"hamiltonian", "beta", "epsilon", "n_max", "style", "state", "channel",
                       "probes", "t_points"});
  auto ctx = thermal_state(parse_hamiltonian(config.at("hamiltonian")),
                           config.at("beta").get<double>());
  const double epsilon = config.at("epsilon").get<double>();
  const int n_max = config.value("n_max", 4);

  std::optional<SwapStyle> style;
  if (config.contains("style")) {
    const std::string s = config.at("style").get<std::string>();
    if (s == "full-swap") style = SwapStyle::FullSwap;
    else if (s == "partial-swap") style = SwapStyle::PartialSwap;
    else if (s != "both") throw ConfigError("unknown style: " + s);
  }

  Table t;
  t.columns = {"target", "n_star", "bath", "time", "style", "residual_ok"};
  BathSizeReport rep;
  std::string target;
  if (config.contains("channel")) {
    auto ch = parse_channel(config.at("channel"));
    rep = channel_bath_size(ch, ctx, epsilon, n_max, config.value("probes", 6), args.seed);
    target = "channel";
  } else {
    auto rho = parse_state(config.at("state"));
    rep = min_bath_size_state(rho, ctx, epsilon, n_max, config.value("t_points", 16), style);
    target = "state";
  }
  t.rows.push_back({target, rep.found() ? fmt_double(rep.n_star) : "not-found",
                    rep.found() ? fmt_double(rep.bath_size()) : "not-found",
                    std::isinf(rep.time) ? "inf" : fmt_double(rep.time), rep.style,
                    rep.found() ? "yes" : "no"});
  t.summary.emplace_back("epsilon", fmt_double(epsilon));
  t.summary.emplace_back("kind", "upper (protocol-achieved)");
  emit(t, config, args);
  return 0;
}

Theorem5Report run_localtherm(const Json& config, uint64_t seed, TripartiteSetup* out_setup) {
  const int d = config.value("d", 2);
  TripartiteSetup defaults = TripartiteSetup::make(d, config.value("beta_a", 0.0),
                                                   config.value("beta_b", 0.0),
                                                   config.value("beta_c", 0.0));
  auto ctx_for = [&](const char* key, const ThermalContext& fallback, double beta) {
    if (!config.contains(key)) return fallback;
    return thermal_state(parse_hamiltonian(config.at(key)), beta);
  };
  auto ctx_a = ctx_for("h_a", defaults.ctx_a, config.value("beta_a", 0.0));
  auto ctx_b = ctx_for("h_b", defaults.ctx_b, config.value("beta_b", 0.0));
  auto ctx_c = ctx_for("h_c", defaults.ctx_c, config.value("beta_c", 0.0));
  std::vector<Mat> vs;
  if (config.contains("v_list") && config.at("v_list") != "weyl")
    for (const auto& m : config.at("v_list")) vs.push_back(matrix_from_json(m));
  TripartiteSetup setup = TripartiteSetup::make(d, ctx_a, ctx_b, ctx_c, vs);
  const double kappa = config.value("kappa", -1.0);
  if (out_setup) *out_setup = setup;
  return theorem5_demo(setup, kappa, seed);
}

int cmd_localtherm(const Json& config, const CommonArgs& args) {
  reject_unknown_keys(config,
                      {"d", "beta_a", "beta_b", "beta_c", "h_a", "h_b", "h_c", "kappa",
                       "v_list"});
  auto rep = run_localtherm(config, args.seed, nullptr);

  Table t;
  t.columns = {"kappa", "success", "success_analytic", "eps_threshold", "capacity_lb",
               "fef", "marginal_dev"};
  t.rows.push_back({fmt_double(rep.kappa), fmt_double(rep.success_measured),
                    fmt_double(rep.success_analytic), fmt_double(rep.epsilon_threshold),
                    fmt_double(rep.capacity_bits), fmt_double(rep.fef_value),
                    fmt_double(std::max(rep.marginals.max_dev_a, rep.marginals.max_dev_bc))});
  t.summary.emplace_back("success_matches_closed_form", rep.success_matches ? "yes" : "NO");
  t.summary.emplace_back("marginals_thermal", rep.marginals.pass ? "yes" : "NO");
  t.summary.emplace_back("fef_entangled", rep.fef_entangled ? "yes" : "no");
  emit(t, config, args);
  return (rep.success_matches && rep.marginals.pass) ? 0 : 1;
}

int cmd_asym(const Json& config, const CommonArgs& args) {
  reject_unknown_keys(config, {"group", "state", "m", "trials", "kappa"});
  auto g = parse_group(config.at("group"));
  auto rho = parse_state(config.at("state"));
  const int m = config.value("m", 2);
  const int trials = config.value("trials", 10000);
  const double kappa = config.value("kappa", 0.1);
  auto rep = random_codebook_experiment(rho, g, m, trials, kappa, args.seed);

  Table t;
  t.columns = {"m", "trials", "empirical_mean", "std_error", "d_spectrum", "analytic_rhs",
               "pass"};
  t.rows.push_back({fmt_double(rep.m), fmt_double(rep.trials), fmt_double(rep.empirical_mean),
                    fmt_double(rep.std_error), fmt_double(rep.d_spectrum),
                    fmt_double(rep.analytic_rhs), rep.pass ? "yes" : "NO"});
  emit(t, config, args);
  return rep.pass ? 0 : 1;
}

int cmd_fef(const Json& config, const CommonArgs& args) {
  reject_unknown_keys(config, {"state", "restarts"});
  auto rho = parse_state(config.at("state"));
  auto rep = fef(rho, config.value("restarts", 32), args.seed);
  Table t;
  t.columns = {"fef", "restarts", "converged"};
  t.rows.push_back({fmt_double(rep.value), fmt_double(rep.restarts),
                    rep.converged ? "yes" : "no"});
  emit(t, config, args);
  return 0;
}

int cmd_sweep(const Json& config, const CommonArgs& args) {
  reject_unknown_keys(config, {"command", "param", "values", "base"});
  const std::string command = config.at("command").get<std::string>();
  const std::string param = config.at("param").get<std::string>();
  std::vector<double> values;
  for (const auto& v : config.at("values")) values.push_back(v.get<double>());
  Json base = config.value("base", Json::object());

  Table t;
  std::vector<std::vector<std::string>> rows(values.size());
  const int jobs = resolve_jobs(args.jobs);

  if (command == "localtherm") {
    t.columns = {"value", "success", "success_analytic", "capacity_lb", "fef"};
    parallel_for(jobs, static_cast<int>(values.size()), [&](int i) {
      Json cfg = base;
      cfg[param] = values[i];
      auto rep = run_localtherm(cfg, args.seed, nullptr);
      rows[i] = {fmt_double(values[i]), fmt_double(rep.success_measured),
                 fmt_double(rep.success_analytic), fmt_double(rep.capacity_bits),
                 fmt_double(rep.fef_value)};
    });
  } else if (command == "thermo") {
    t.columns = {"value", "n_star", "bath", "time"};
    auto ctx = thermal_state(parse_hamiltonian(base.at("hamiltonian")),
                             base.at("beta").get<double>());
    auto rho = parse_state(base.at("state"));
    const int n_max = base.value("n_max", 4);
    parallel_for(jobs, static_cast<int>(values.size()), [&](int i) {
      Json cfg = base;
      cfg[param] = values[i];
      auto rep = min_bath_size_state(rho, ctx, cfg.at("epsilon").get<double>(), n_max);
      rows[i] = {fmt_double(values[i]), rep.found() ? fmt_double(rep.n_star) : "not-found",
                 rep.found() ? fmt_double(rep.bath_size()) : "not-found",
                 std::isinf(rep.time) ? "inf" : fmt_double(rep.time)};
    });
  } else if (command == "asym") {
    t.columns = {"value", "empirical_mean", "std_error", "analytic_rhs", "pass"};
    auto g = parse_group(base.at("group"));
    auto rho = parse_state(base.at("state"));
    parallel_for(jobs, static_cast<int>(values.size()), [&](int i) {
      Json cfg = base;
      cfg[param] = values[i];
      auto rep = random_codebook_experiment(rho, g, cfg.value("m", 2),
                                            cfg.value("trials", 2000),
                                            cfg.value("kappa", 0.1), args.seed + i);
      rows[i] = {fmt_double(values[i]), fmt_double(rep.empirical_mean),
                 fmt_double(rep.std_error), fmt_double(rep.analytic_rhs),
                 rep.pass ? "yes" : "NO"};
    });
  } else {
    throw ConfigError("sweep: unsupported command " + command);
  }
  t.rows = rows;
  emit(t, config, args);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity bounds, preservability brackets, and thermalization experiments"};
  app.require_subcommand(1);

  CommonArgs args;
  Json inline_config = Json::object();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "JSON config file");
    sub->add_option("--seed", args.seed, "RNG seed (64-bit)");
    sub->add_option("--jobs", args.jobs, "worker count (env RESCAP_JOBS as default)");
    sub->add_option("--out", args.out_path, "output path (default stdout)");
    sub->add_option("--format", args.format, "json|csv|table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--tol", args.tol_overrides, "tolerance override NAME=VALUE")
        ->take_all();
  };

  auto* bounds = app.add_subcommand("bounds", "capacity bounds pipeline");
  auto* thermo = app.add_subcommand("thermo", "bath-size estimation");
  auto* localtherm = app.add_subcommand("localtherm", "tripartite local thermalization demo");
  auto* asym = app.add_subcommand("asym", "random-codebook experiment");
  auto* feft = app.add_subcommand("fef", "fully entangled fraction");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep over a command");
  for (auto* sub : {bounds, thermo, localtherm, asym, feft, sweep}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    apply_tolerance_overrides(args.tol_overrides);
    Json config = Json::object();
    if (!args.config_path.empty()) config = load_json_file(args.config_path);

    if (bounds->parsed()) return cmd_bounds(config, args);
    if (thermo->parsed()) return cmd_thermo(config, args);
    if (localtherm->parsed()) return cmd_localtherm(config, args);
    if (asym->parsed()) return cmd_asym(config, args);
    if (feft->parsed()) return cmd_fef(config, args);
    if (sweep->parsed()) return cmd_sweep(config, args);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
