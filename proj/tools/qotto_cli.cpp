// Copyright 2026 The qotto Authors
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

// qotto: command-line front end for cycles, sweeps, LGI scans, circuit
// comparisons, cost maps and the self test.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qotto/circuit.hpp"
#include "qotto/config.hpp"
#include "qotto/leggett_garg.hpp"
#include "qotto/sweep.hpp"
#include "qotto/zbasis_oracle.hpp"
#include "selftest.hpp"

namespace {

using nlohmann::json;
using namespace qotto;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitSelftest = 4;

struct Options {
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  int workers = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;
};

/// Raised for anything the user can fix in the config or flags.
struct ConfigProblem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::set<std::string, std::less<>> kSections{"sweep", "lg", "circuit", "cost"};

json load_document(const Options& o) {
  json doc = json::object();
  if (!o.config_path.empty()) {
    std::ifstream f(o.config_path);
    if (!f) throw ConfigProblem("cannot read config file " + o.config_path);
    try {
      doc = json::parse(f);
    } catch (const json::parse_error& e) {
      throw ConfigProblem(std::string("config is not valid JSON: ") + e.what());
    }
  }
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigProblem("--set expects key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq), raw = kv.substr(eq + 1);
    json value;
    try {
      value = json::parse(raw);
    } catch (const json::parse_error&) {
      value = raw;  // bare words are strings
    }
    std::string pointer = "/" + key;
    for (auto& ch : pointer)
      if (ch == '.') ch = '/';
    doc[json::json_pointer(pointer)] = value;
  }
  if (!doc.is_object()) throw ConfigProblem("config must be a JSON object");
  return doc;
}

json section(const json& doc, const char* name) {
  if (!doc.contains(name)) return json::object();
  if (!doc[name].is_object()) throw ConfigProblem(std::string(name) + ": expected an object");
  return doc[name];
}

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  for (const auto& [key, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigProblem(std::string(where) + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigProblem(std::string("bad value for '") + key + "'");
  }
}

Axis1D axis_from(const json& j, const std::string& name, Axis1D fallback) {
  if (!j.is_object()) throw ConfigProblem(name + ": expected {min, max, n}");
  check_keys(j, name.c_str(), {"name", "min", "max", "n"});
  fallback.name = get_or<std::string>(j, "name", name);
  fallback.min = get_or<double>(j, "min", fallback.min);
  fallback.max = get_or<double>(j, "max", fallback.max);
  fallback.n = get_or<int>(j, "n", fallback.n);
  if (fallback.n < 2) throw ConfigProblem(name + ": n must be at least 2");
  return fallback;
}

/// Ensures every parameter point of a grid is valid before any work starts.
void validate_grid(const CycleParams& base, const std::vector<Axis1D>& axes) {
  std::vector<CycleParams> frontier{base};
  for (const auto& a : axes) {
    std::vector<CycleParams> next;
    for (const auto& c : frontier)
      for (double v : {a.min, a.max}) {
        CycleParams d = c;
        set_axis(d, a.name, v);
        next.push_back(d);
      }
    frontier = std::move(next);
  }
  for (const auto& c : frontier) c.validate();
}

// ---------------------------------------------------------------- output

struct Output {
  std::string text;
  json meta;
};

void emit(const Options& o, const json& doc, const Output& out) {
  if (o.out_path.empty()) {
    std::cout << out.text;
    return;
  }
  json sidecar{{"version", std::string(kVersion)},
               {"command", o.command},
               {"format", o.format},
               {"seed", o.seed},
               {"config", doc},
               {"resolved", out.meta}};
  write_file_atomic(o.out_path, out.text);
  write_file_atomic(o.out_path + ".meta.json", sidecar.dump(2) + "\n");
}

std::string render(const Options& o, const Table& t) {
  return o.format == "json" ? to_json(t).dump(2) + "\n" : to_csv(t);
}

json state_json(const DensityMatrix& r) {
  const auto b = bloch_vector(r);
  return {{"bloch", {cell_json(b[0]), cell_json(b[1]), cell_json(b[2])}},
          {"entropy", cell_json(von_neumann_entropy(r))}};
}

// ---------------------------------------------------------------- commands

Output cmd_cycle(const Options& o, const CycleParams& params) {
  const CycleModel m = build_cycle_model(params);
  const CycleResult r = run_cycle(m);
  if (o.format == "csv") {
    std::vector<std::string> all;
    for (const auto& q : kQuantities) all.emplace_back(q.name);
    Table t{all, {evaluate_point(params, all)}, {}};
    return {to_csv(t), params_to_json(params)};
  }
  json states = json::object();
  for (std::size_t k = 0; k < r.states.size(); ++k) states[std::string(kCheckpointNames[k])] = state_json(r.states[k]);
  json j{{"params", params_to_json(params)},
         {"w_exp", cell_json(r.w_exp)},
         {"w_comp", cell_json(r.w_comp)},
         {"w_total", cell_json(r.w_total)},
         {"q_h", cell_json(r.q_h)},
         {"q_c", cell_json(r.q_c)},
         {"delta_u", cell_json(r.delta_u)},
         {"first_law_residual", cell_json(r.first_law_residual)},
         {"eta", r.eta_defined ? cell_json(r.eta) : json(nullptr)},
         {"eta_defined", r.eta_defined},
         {"eta_E", cell_json(r.eta_E)},
         {"eta_otto", cell_json(r.eta_otto)},
         {"eta_carnot", cell_json(r.eta_carnot)},
         {"regime", std::string(to_string(r.regime))},
         {"entropy_terms",
          {{"d_exp_thf", cell_json(r.entropy.d_exp_hot)},
           {"d_comp_tc", cell_json(r.entropy.d_comp_cold)},
           {"correction", cell_json(r.entropy.correction)},
           {"delta_s_th", cell_json(r.entropy.delta_s_th)}}},
         {"states", states},
         {"eigenbasis_ordering", "ascending energy; slot 0 is the ground state"}};
  return {j.dump(2) + "\n", params_to_json(params)};
}

Output cmd_sweep(const Options& o, const SweepConfig& cfg) {
  const Table t = run_sweep(cfg);
  json axes = json::array();
  for (const auto& a : cfg.axes) axes.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"n", a.n}});
  return {render(o, t), {{"base", params_to_json(cfg.base)}, {"axes", axes}, {"outputs", cfg.outputs}}};
}

struct LgConfig {
  Axis1D t{"t", 0.1, 10.0, 100};
  LgiScheme scheme = LgiScheme::collapse;
};

Output cmd_lg(const Options& o, const CycleParams& base, const LgConfig& cfg) {
  const std::vector<double> ts = cfg.t.values();
  Table table;
  table.columns = {"t", "k_numeric", "c12", "c23", "c13", "violated", "k_analytic_real", "k_analytic_imag"};
  table.units = {"time", "1", "1", "1", "1", "label", "1", "1"};
  table.rows = parallel_map<std::vector<Cell>>(ts.size(), o.workers, [&](std::size_t i) {
    CycleParams c = base;
    c.tau = ts[i];
    c.t_noise = ts[i];
    const LgiResult r = lgi_k(c, cfg.scheme);
    oracle::OracleInputs in = oracle::inputs_from(base);
    in.t = ts[i];
    const auto ka = oracle::k_analytic(in, cfg.t.max);
    return std::vector<Cell>{ts[i], r.k, r.c12, r.c23, r.c13, std::string(r.violated ? "true" : "false"), ka.real(),
                             ka.imag()};
  });
  return {render(o, table),
          {{"base", params_to_json(base)},
           {"t", {{"min", cfg.t.min}, {"max", cfg.t.max}, {"n", cfg.t.n}}},
           {"scheme", cfg.scheme == LgiScheme::collapse ? "collapse" : "symmetrized"},
           {"analytic_tau", cfg.t.max}}};
}

struct CircuitConfig {
  std::optional<Axis1D> taus;
  double t_one_qubit = 0.01;
  double t_two_qubit = 0.1;
  LambdaVariant variant = LambdaVariant::unitary;
  std::optional<std::uint64_t> shots;
  double flip_probability = 0.0;
  std::string program_in;
  std::string program_out;
};

json readout_json(const Estimate& e, bool sampled) {
  if (!sampled) return cell_json(e.value);
  return {{"value", cell_json(e.value)}, {"stderr", cell_json(e.std_error)}};
}

Output cmd_circuit_program(const Options& o, const CycleParams& base, const CircuitConfig& cc) {
  std::ifstream f(cc.program_in);
  if (!f) throw ConfigProblem("cannot read circuit program " + cc.program_in);
  json pj;
  try {
    pj = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigProblem(std::string("circuit program is not valid JSON: ") + e.what());
  }
  CircuitProgram prog;
  try {
    prog = circuit_from_json(pj);
  } catch (const Error& e) {
    throw ConfigProblem(e.what());
  }
  const NoiseModel noise =
      NoiseModel::from_rates(NoisePolicy::all, base.gamma, base.p, base.noise_time(), cc.t_one_qubit, cc.t_two_qubit);
  const SimulationResult sim = simulate(prog, noise, all_zero_state(prog.n_qubits));
  json qubits = json::array();
  for (int q = 0; q < prog.n_qubits; ++q) qubits.push_back(state_json(partial_trace(sim.final_state, q)));
  json cps = json::object();
  for (const auto& [name, s] : sim.checkpoints) {
    json per = json::array();
    for (int q = 0; q < prog.n_qubits; ++q) per.push_back(state_json(partial_trace(s, q)));
    cps[name] = per;
  }
  json j{{"program", cc.program_in}, {"final_qubits", qubits}, {"checkpoints", cps}};
  (void)o;
  return {j.dump(2) + "\n", {{"program", pj}}};
}

Output cmd_circuit(const Options& o, const CycleParams& base, const CircuitConfig& cc) {
  if (!cc.program_in.empty()) return cmd_circuit_program(o, base, cc);
  const std::vector<double> taus = cc.taus ? cc.taus->values() : std::vector<double>{base.tau};
  const OttoCircuitOptions copt{cc.variant, true};

  struct Point {
    json row;
    double d_none = 0, d_all = 0, d_except = 0, state_dev = 0;
  };
  const auto points = parallel_map<Point>(taus.size(), o.workers, [&](std::size_t i) {
    CycleParams c = base;
    c.tau = taus[i];
    if (cc.taus) c.t_noise = taus[i];
    const CycleModel m = build_cycle_model(c);
    const CycleResult r = run_cycle(m);
    ReadoutOptions ro{cc.shots, o.seed + 1000 * i, cc.flip_probability};
    auto model = [&](NoisePolicy p) {
      return NoiseModel::from_rates(p, c.gamma, c.p, c.noise_time(), cc.t_one_qubit, cc.t_two_qubit);
    };
    const CircuitWork none = circuit_work(m, model(NoisePolicy::none), copt, ro);
    const CircuitWork all = circuit_work(m, model(NoisePolicy::all), copt, ro);
    const CircuitWork except = circuit_work(m, model(NoisePolicy::all_except_cnot), copt, ro);
    double dev = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
      dev = std::max(dev, max_abs_diff(partial_trace(none.sim.checkpoint(kCheckpointNames[k]), kTarget).mat(),
                                       r.states[k].mat()));
    Point p;
    p.d_none = none.w_total - r.w_total;
    p.d_all = all.w_total - r.w_total;
    p.d_except = except.w_total - r.w_total;
    p.state_dev = dev;
    const bool sampled = cc.shots.has_value();
    p.row = {{"tau", cell_json(taus[i])},
             {"w_numeric", cell_json(r.w_total)},
             {"w_circuit_noiseless", cell_json(none.w_total)},
             {"w_circuit_noisy_all", cell_json(all.w_total)},
             {"w_circuit_noisy_except_cnot", cell_json(except.w_total)},
             {"deltas",
              {{"noiseless", cell_json(p.d_none)}, {"noisy_all", cell_json(p.d_all)},
               {"noisy_except_cnot", cell_json(p.d_except)}}},
             {"target_state_deviation_noiseless", cell_json(dev)}};
    if (sampled) {
      p.row["w_exp_noiseless"] = readout_json(none.w_exp, true);
      p.row["w_comp_noiseless"] = readout_json(none.w_comp, true);
    }
    return p;
  });

  double m_none = 0, m_all = 0, m_except = 0, m_state = 0;
  json rows = json::array();
  for (const auto& p : points) {
    m_none = std::max(m_none, std::abs(p.d_none));
    m_all = std::max(m_all, std::abs(p.d_all));
    m_except = std::max(m_except, std::abs(p.d_except));
    m_state = std::max(m_state, p.state_dev);
    rows.push_back(p.row);
  }
  if (!cc.program_out.empty()) {
    CycleParams c = base;
    write_file_atomic(cc.program_out, to_json(build_otto_circuit(c, copt)).dump(2) + "\n");
  }
  json j{{"params", params_to_json(base)},
         {"gate_times", {{"one_qubit", cc.t_one_qubit}, {"two_qubit", cc.t_two_qubit}}},
         {"points", rows},
         {"max_abs_delta",
          {{"noiseless", cell_json(m_none)}, {"noisy_all", cell_json(m_all)},
           {"noisy_except_cnot", cell_json(m_except)}}},
         {"max_target_state_deviation_noiseless", cell_json(m_state)}};
  return {j.dump(2) + "\n", {{"base", params_to_json(base)}}};
}

struct CostConfig {
  Axis1D lambda{"lambda", 0.1, 1.0, 10};
  Axis1D ratio{"beta_ratio", 0.1, 0.9, 9};
  NoisePolicy policy = NoisePolicy::all;
  double t_one_qubit = 0.01;
  double t_two_qubit = 0.1;
};

Output cmd_cost(const Options& o, const CycleParams& base, const CostConfig& cc) {
  const auto ls = cc.lambda.values(), rs = cc.ratio.values();
  Table t;
  t.columns = {"lambda", "t_ratio", "c_t", "bound", "within_bound"};
  t.units = {"1", "1", "energy", "energy", "label"};
  t.rows = parallel_map<std::vector<Cell>>(ls.size() * rs.size(), o.workers, [&](std::size_t i) {
    CycleParams c = base;
    c.lambda = ls[i / rs.size()];
    set_axis(c, "beta_ratio", rs[i % rs.size()]);
    const NoiseModel noise =
        NoiseModel::from_rates(cc.policy, c.gamma, c.p, c.noise_time(), cc.t_one_qubit, cc.t_two_qubit);
    const CostResult r = thermodynamic_cost(c, noise);
    const std::string within = r.bound_applicable ? (r.within_bound ? "true" : "false") : "n/a";
    return std::vector<Cell>{c.lambda, rs[i % rs.size()], r.ct, r.bound, within};
  });
  return {render(o, t), {{"base", params_to_json(base)}, {"policy", std::string(to_string(cc.policy))}}};
}

Output cmd_selftest(bool& all_passed) {
  std::ostringstream os;
  all_passed = true;
  int n = 0, failed = 0;
  for (const auto& check : selftest::checks()) {
    ++n;
    double worst = 0.0;
    std::string note;
    try {
      worst = check.measure();
    } catch (const std::exception& e) {
      worst = 1.0;
      note = e.what();
    }
    const bool ok = worst <= 0.0 && std::isfinite(worst);
    if (!ok) ++failed;
    os << (ok ? "PASS " : "FAIL ") << check.name;
    if (!note.empty()) os << " (" << note << ")";
    os << "\n";
  }
  os << (failed == 0 ? "selftest: all " : "selftest: ") << (n - failed) << "/" << n << " checks passed\n";
  all_passed = failed == 0;
  return {os.str(), json::object()};
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"One-qubit quantum Otto engine simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--config", o.config_path, "JSON config file");
  app.add_option("--out", o.out_path, "Write output here (plus a .meta.json sidecar) instead of stdout");
  app.add_option("--workers", o.workers, "Worker threads for grid evaluation")->check(CLI::Range(1, 64));
  app.add_option("--seed", o.seed, "Seed for shot sampling");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--set", o.overrides, "Override a config entry, key=value (dots for nesting)");
  const std::pair<const char*, const char*> commands[] = {
      {"cycle", "Evaluate one engine cycle"},
      {"sweep", "Evaluate the cycle over a parameter grid"},
      {"lg", "Scan the Leggett-Garg parameter K over time"},
      {"circuit", "Compare the gate-level circuit with the cycle"},
      {"cost", "Map the circuit thermodynamic cost against its bound"},
      {"selftest", "Check numerical invariants"}};
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->callback([&o, name = name] { o.command = name; });
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (o.command == "selftest") {
    bool ok = false;
    const Output out = cmd_selftest(ok);
    try {
      emit(o, json::object(), out);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitNumeric;
    }
    return ok ? kExitOk : kExitSelftest;
  }

  // Phase one: everything that depends only on the config.
  json doc;
  CycleParams base;
  SweepConfig sweep;
  LgConfig lg;
  CircuitConfig circ;
  CostConfig cost;
  try {
    doc = load_document(o);
    base = params_from_json(doc, {}, kSections);
    base.validate();
    if (o.command == "sweep") {
      const json s = section(doc, "sweep");
      check_keys(s, "sweep", {"axes", "outputs"});
      if (!s.contains("axes") || !s["axes"].is_array()) throw ConfigProblem("sweep.axes: expected a list of axes");
      sweep.base = base;
      sweep.workers = o.workers;
      for (const auto& a : s["axes"]) sweep.axes.push_back(axis_from(a, get_or<std::string>(a, "name", ""), {}));
      if (s.contains("outputs")) sweep.outputs = get_or<std::vector<std::string>>(s, "outputs", {});
      sweep.validate();
      validate_grid(base, sweep.axes);
    } else if (o.command == "lg") {
      const json s = section(doc, "lg");
      check_keys(s, "lg", {"t", "scheme"});
      if (s.contains("t")) lg.t = axis_from(s["t"], "t", lg.t);
      const auto scheme = get_or<std::string>(s, "scheme", "collapse");
      if (scheme != "collapse" && scheme != "symmetrized") throw ConfigProblem("lg.scheme: collapse|symmetrized");
      lg.scheme = scheme == "collapse" ? LgiScheme::collapse : LgiScheme::symmetrized;
      if (!(lg.t.min > 0.0)) throw ConfigProblem("lg.t.min must be positive");
    } else if (o.command == "circuit") {
      const json s = section(doc, "circuit");
      check_keys(s, "circuit",
                 {"tau", "gate_time_1q", "gate_time_2q", "lambda_variant", "shots", "flip_probability", "program",
                  "program_out"});
      if (s.contains("tau")) circ.taus = axis_from(s["tau"], "tau", {"tau", 0.5, 10.0, 20});
      if (circ.taus && !(circ.taus->min > 0.0)) throw ConfigProblem("circuit.tau.min must be positive");
      circ.t_one_qubit = get_or<double>(s, "gate_time_1q", circ.t_one_qubit);
      circ.t_two_qubit = get_or<double>(s, "gate_time_2q", circ.t_two_qubit);
      const auto variant = get_or<std::string>(s, "lambda_variant", "unitary");
      if (variant != "unitary" && variant != "literal")
        throw ConfigProblem("circuit.lambda_variant: unitary|literal");
      circ.variant = variant == "unitary" ? LambdaVariant::unitary : LambdaVariant::literal;
      if (s.contains("shots")) circ.shots = get_or<std::uint64_t>(s, "shots", 0);
      if (circ.shots && *circ.shots == 0) throw ConfigProblem("circuit.shots must be positive");
      circ.flip_probability = get_or<double>(s, "flip_probability", 0.0);
      if (!(circ.flip_probability >= 0.0 && circ.flip_probability <= 1.0))
        throw ConfigProblem("circuit.flip_probability must lie in [0, 1]");
      circ.program_in = get_or<std::string>(s, "program", "");
      circ.program_out = get_or<std::string>(s, "program_out", "");
    } else if (o.command == "cost") {
      const json s = section(doc, "cost");
      check_keys(s, "cost", {"lambda", "beta_ratio", "policy", "gate_time_1q", "gate_time_2q"});
      if (s.contains("lambda")) cost.lambda = axis_from(s["lambda"], "lambda", cost.lambda);
      if (s.contains("beta_ratio")) cost.ratio = axis_from(s["beta_ratio"], "beta_ratio", cost.ratio);
      cost.lambda.name = "lambda";
      cost.ratio.name = "beta_ratio";
      cost.policy = noise_policy_from(get_or<std::string>(s, "policy", "all"));
      cost.t_one_qubit = get_or<double>(s, "gate_time_1q", cost.t_one_qubit);
      cost.t_two_qubit = get_or<double>(s, "gate_time_2q", cost.t_two_qubit);
      validate_grid(base, {cost.lambda, cost.ratio});
    } else {
      check_keys(json::object(), "", {});
    }
  } catch (const ConfigProblem& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  // Phase two: numerics and output.
  try {
    Output out;
    if (o.command == "cycle") out = cmd_cycle(o, base);
    else if (o.command == "sweep") out = cmd_sweep(o, sweep);
    else if (o.command == "lg") out = cmd_lg(o, base, lg);
    else if (o.command == "circuit") out = cmd_circuit(o, base, circ);
    else if (o.command == "cost") out = cmd_cost(o, base, cost);
    emit(o, doc, out);
  } catch (const ConfigProblem& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
