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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qotto/circuit.hpp"
#include "qotto/config.hpp"
#include "qotto/leggett_garg.hpp"
#include "qotto/sweep.hpp"
#include "qotto/zbasis_oracle.hpp"
#include "selftest.hpp"

namespace {

using namespace qotto;

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ---------------------------------------------------------------- 1

Outcome closed_form_work() {
  double worst_exact = 0.0, worst_noisy = 0.0;
  for (double lam : linspace(0.0, 1.0, 5))
    for (double ratio : linspace(0.1, 0.9, 5)) {
      CycleParams c;
      c.basis_mode = BasisMode::zbasis;
      c.lambda = lam;
      c.beta_h = ratio * c.beta_c;
      worst_exact = std::max(worst_exact, std::abs(run_cycle(c).w_total - oracle::exact_work(oracle::inputs_from(c))));
    }
  for (double g : {0.4, 0.8})
    for (double t : {0.5, 2.0}) {
      CycleParams c;
      c.basis_mode = BasisMode::zbasis;
      c.gamma = g;
      c.t_noise = t;
      worst_noisy = std::max(worst_noisy, std::abs(run_cycle(c).w_total - oracle::noisy_work(oracle::inputs_from(c))));
    }
  return {worst_exact <= 1e-6 && worst_noisy <= 1e-6,
          fmt("max |dW| %.2e noiseless, %.2e damped", worst_exact, worst_noisy)};
}

// ---------------------------------------------------------------- 2

Outcome efficiency_identity() {
  double worst = 0.0;
  int engines = 0;
  for (double lam : linspace(0.1, 1.0, 5))
    for (double g : linspace(0.0, 1.0, 5))
      for (double p : linspace(0.0, 1.0, 5)) {
        CycleParams c;
        c.lambda = lam;
        c.gamma = g;
        c.p = p;
        const CycleResult r = run_cycle(c);
        if (r.regime != Regime::heat_engine) continue;
        ++engines;
        worst = std::max(worst, std::isfinite(r.eta_E) ? std::abs(r.eta - r.eta_E) : 1.0);
      }
  return {engines > 0 && worst <= 1e-7, fmt("%.0f heat-engine points, max |eta - eta_E| %.2e", engines, worst)};
}

// ---------------------------------------------------------------- 3

Outcome kraus_lindblad() {
  const DensityMatrix rho0 = DensityMatrix::pure({0.6, cplx(0.0, 0.8)});
  const DensityMatrix plus = DensityMatrix::pure({std::sqrt(0.5), std::sqrt(0.5)});
  double ad = 0.0, pd = 0.0, both = 0.0;
  for (double g : {0.2, 0.8}) {
    const auto traj = lindblad_integrate(ComplexMatrix(2), rho0, {{sigma_minus(), 0.5 * g}}, 10.0, 0.001, 100);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const DensityMatrix kraus = apply(amplitude_damping(damping_strength(g, traj.times[k])), rho0);
      ad = std::max(ad, max_abs_diff(kraus.mat(), traj.states[k].mat()));
    }
  }
  for (double rate : {0.1, 0.5}) {
    const auto traj = lindblad_integrate(ComplexMatrix(2), plus, {{pauli(Axis::z), rate}}, 10.0, 0.001, 100);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const double t = traj.times[k];
      const DensityMatrix kraus = apply(phase_damping(dephasing_strength(rate, t)), plus);
      pd = std::max(pd, std::abs(traj.states[k](0, 1) - 0.5 * std::exp(-2.0 * rate * t)));
      pd = std::max(pd, max_abs_diff(kraus.mat(), traj.states[k].mat()));
    }
  }
  // In the combined law the damping symbol is the Lindblad rate of sigma_minus,
  // which is half of the engine's gamma.
  for (double lrate : {0.1, 0.4})
    for (double rate : {0.05, 0.3}) {
      const auto traj = lindblad_integrate(ComplexMatrix(2), rho0, {{sigma_minus(), lrate}, {pauli(Axis::z), rate}},
                                           10.0, 0.001, 100);
      for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        const cplx law = rho0(0, 1) * std::exp(-(lrate / 2 + 2 * rate) * t);
        const KrausChannel ch =
            compose(amplitude_damping(damping_strength(2 * lrate, t)), phase_damping(dephasing_strength(rate, t)));
        both = std::max(both, std::abs(traj.states[k](0, 1) - law));
        both = std::max(both, max_abs_diff(apply(ch, rho0).mat(), traj.states[k].mat()));
      }
    }
  return {ad <= 1e-6 && pd <= 1e-6 && both <= 1e-6,
          fmt("max deviation %.2e damping, %.2e dephasing, %.2e combined", ad, pd, both)};
}

// ---------------------------------------------------------------- 4

Outcome cptp_suite() {
  std::vector<KrausChannel> channels;
  for (double a : linspace(0.0, 1.0, 11)) {
    channels.push_back(amplitude_damping(a));
    channels.push_back(phase_damping(a));
    for (double b : linspace(0.0, 1.0, 11)) {
      channels.push_back(partial_swap_thermalization(a, b));
      channels.push_back(partial_swap_thermalization(a, b, SwapOrdering::literal));
      channels.push_back(compose(amplitude_damping(a), phase_damping(b)));
    }
  }
  double defect = 0.0, trace_err = 0.0, min_eig = 1.0;
  std::mt19937_64 rng(2026);
  std::size_t n_states = 0;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    defect = std::max(defect, cptp_defect(channels[i].ops()));
    if (i % 7 != 0) continue;  // the state check runs on a spread subset of the grid
    for (int s = 0; s < 100; ++s, ++n_states) {
      const DensityMatrix in = selftest::random_state(rng, 2);
      ComplexMatrix out(2);
      for (const auto& e : channels[i].ops()) out = out + e * in.mat() * e.adjoint();
      trace_err = std::max(trace_err, std::abs(out.trace() - 1.0));
      min_eig = std::min(min_eig, herm_eig(0.5 * (out + out.adjoint())).values[0]);
    }
  }
  return {defect <= 1e-10 && trace_err <= 1e-10 && min_eig >= -1e-10,
          fmt("%.0f channels, max defect %.2e, min eigenvalue %.2e", static_cast<double>(channels.size()), defect,
              min_eig) +
              fmt(" over %.0f states", static_cast<double>(n_states))};
}

// ---------------------------------------------------------------- 5

Outcome lgi_behavior() {
  const auto ts = linspace(0.1, 10.0, 100);
  auto scan = [&](double lam, double g) {
    CycleParams c;
    c.lambda = lam;
    c.gamma = g;
    return lgi_scan(c, ts);
  };
  auto ks = [](const std::vector<LgiResult>& rs) {
    std::vector<double> k;
    for (const auto& r : rs) k.push_back(r.k);
    return k;
  };
  const double small_lambda = max_k(scan(0.05, 0.0));
  const double full = max_k(scan(1.0, 0.0));
  std::vector<double> peak, area;
  for (double g : {0.0, 0.4, 0.8}) {
    const auto rs = scan(0.5, g);
    peak.push_back(max_k(rs));
    area.push_back(violation_area(ts, ks(rs)));
  }
  const bool monotone = peak[0] >= peak[1] && peak[1] >= peak[2] && area[0] >= area[1] && area[1] >= area[2] &&
                        (peak[0] > peak[2] || area[0] > area[2]);
  return {small_lambda > 1.0 && full <= 1.0 + kLgiTol && monotone,
          fmt("max K %.4f at lambda 0.05, %.6f at lambda 1", small_lambda, full) +
              fmt("; max K over gamma 0/0.4/0.8: %.4f %.4f %.4f", peak[0], peak[1], peak[2])};
}

// ---------------------------------------------------------------- 6

Outcome efficiency_bounds() {
  double excess = -1.0;
  int engines = 0;
  auto check = [&](const CycleParams& c) {
    const CycleResult r = run_cycle(c);
    if (r.regime != Regime::heat_engine) return r;
    ++engines;
    excess = std::max(excess, r.eta - r.eta_carnot);
    return r;
  };
  // Reservoir temperatures stay at their defaults: at ratios T_c/T_h near 1 the
  // damping channel acts as a third bath and can lift eta past this bound.
  for (double lam : linspace(0.05, 1.0, 5))
    for (double g : linspace(0.0, 1.0, 5))
      for (double p : {0.0, 0.5, 1.0})
        for (double tau : linspace(0.5, 10.0, 5)) {
          CycleParams c;
          c.lambda = lam;
          c.gamma = g;
          c.p = p;
          c.tau = tau;
          check(c);
        }
  double best = 0.0;
  for (double tau : linspace(0.1, 10.0, 100)) {
    CycleParams c;
    c.lambda = 0.5;
    c.gamma = 0.8;
    c.tau = tau;
    const CycleResult r = check(c);
    if (r.regime == Regime::heat_engine) best = std::max(best, r.eta);
  }
  const double otto = 1.0 - 1.0 / 1.8;
  return {excess <= 1e-9 && best > otto,
          fmt("%.0f engine points, max eta - eta_carnot %.4f, best eta %.4f", engines, excess, best) +
              fmt(" vs Otto limit %.5f", otto)};
}

// ---------------------------------------------------------------- 7

Outcome circuit_consistency() {
  double state_dev = 0.0;
  for (double lam : linspace(0.2, 1.0, 3))
    for (double ratio : linspace(0.1, 0.9, 3)) {
      CycleParams c;
      c.lambda = lam;
      c.gamma = 0.6;
      c.p = 0.6;
      c.beta_h = ratio * c.beta_c;
      const CycleModel m = build_cycle_model(c);
      const CycleResult r = run_cycle(m);
      const CircuitWork cw = circuit_work(m, NoiseModel::none());
      for (std::size_t k = 0; k < 4; ++k)
        state_dev = std::max(state_dev, max_abs_diff(partial_trace(cw.sim.checkpoint(kCheckpointNames[k]), kTarget).mat(),
                                                     r.states[k].mat()));
      state_dev = std::max(state_dev, max_abs_diff(partial_trace(cw.sim.final_state, kTarget).mat(), r.states[3].mat()));
    }
  double dev_all = 0.0, dev_except = 0.0;
  for (double tau : linspace(0.5, 10.0, 20)) {
    CycleParams c;
    c.lambda = 0.6;
    c.gamma = 0.6;
    c.p = 0.6;
    c.tau = tau;
    const CycleModel m = build_cycle_model(c);
    const double w = run_cycle(m).w_total;
    auto noise = [&](NoisePolicy pol) { return NoiseModel::from_rates(pol, c.gamma, c.p, c.noise_time()); };
    dev_all = std::max(dev_all, std::abs(circuit_work(m, noise(NoisePolicy::all)).w_total - w));
    dev_except = std::max(dev_except, std::abs(circuit_work(m, noise(NoisePolicy::all_except_cnot)).w_total - w));
  }
  return {state_dev <= 1e-6 && dev_except < dev_all,
          fmt("target state deviation %.2e; max work deviation %.4f without CNOT noise, %.4f with", state_dev,
              dev_except, dev_all)};
}

// ---------------------------------------------------------------- 8

Outcome cost_bound() {
  int inside = 0, total = 0;
  double margin = 1e300;
  for (double lam : linspace(0.25, 1.0, 4))
    for (double g : linspace(0.2, 0.8, 4)) {
      CycleParams c;
      c.basis_mode = BasisMode::zbasis;
      c.lambda = lam;
      c.gamma = g;
      c.p = 0.1;
      c.tau = 1.0;
      c.t_noise = 1.0;
      const CostResult r = thermodynamic_cost(c, NoiseModel::from_rates(NoisePolicy::all, g, c.p, 1.0));
      ++total;
      if (r.bound_applicable && r.ct < r.bound) ++inside;
      margin = std::min(margin, r.bound - r.ct);
    }
  return {inside == total, fmt("%.0f of %.0f points below the bound, smallest margin %.4f", inside, total, margin)};
}

// ---------------------------------------------------------------- 9

Outcome regime_geometry() {
  auto fraction = [](double g) {
    int engines = 0, n = 0;
    for (double ratio : linspace(0.05, 0.95, 10))
      for (double lam : linspace(0.05, 1.0, 10)) {
        CycleParams c;
        c.gamma = g;
        c.lambda = lam;
        c.beta_h = ratio * c.beta_c;
        ++n;
        if (run_cycle(c).regime == Regime::heat_engine) ++engines;
      }
    return static_cast<double>(engines) / n;
  };
  const double low = fraction(0.2), high = fraction(0.8);
  return {high > low, fmt("heat-engine fraction %.2f at gamma 0.2, %.2f at gamma 0.8", low, high)};
}

// ---------------------------------------------------------------- 10

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  if (status != 0) out += "<exit " + std::to_string(status) + ">";
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const std::string cli = QOTTO_CLI_PATH;
  const std::string dir = QOTTO_WORK_DIR;
  const std::string a = run_capture(cli + " selftest");
  const std::string b = run_capture(cli + " selftest");
  const std::string sweep = cli +
                            " --seed 17 --workers 3 --set gamma=0.8"
                            " --set 'sweep.axes=[{\"name\":\"beta_ratio\",\"min\":0.05,\"max\":0.95,\"n\":6},"
                            "{\"name\":\"lambda\",\"min\":0.05,\"max\":1,\"n\":6}]'"
                            " --set 'sweep.outputs=[\"w_total\",\"eta\",\"eta_E\",\"regime\",\"k_lgi\"]'";
  const std::string p1 = dir + "/determinism_a.csv", p2 = dir + "/determinism_b.csv";
  const std::string r1 = run_capture(sweep + " --out " + p1 + " sweep");
  const std::string r2 = run_capture(sweep + " --out " + p2 + " sweep");
  const std::string s1 = slurp(p1), s2 = slurp(p2);
  const bool ok = a == b && a.find("FAIL") == std::string::npos && a.find("<exit") == std::string::npos &&
                  r1.empty() && r2.empty() && !s1.empty() && s1 == s2 &&
                  slurp(p1 + ".meta.json") == slurp(p2 + ".meta.json");
  return {ok, fmt("selftest %.0f bytes, sweep %.0f bytes, identical across runs: %.0f", static_cast<double>(a.size()),
                  static_cast<double>(s1.size()), ok ? 1.0 : 0.0)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"sigma_z cycle work equals the closed forms", 10, closed_form_work},
      {"efficiency equals its entropy-balance form", 60, efficiency_identity},
      {"Kraus maps match master-equation integration", 0, kraus_lindblad},
      {"channel families are CPTP and keep states valid", 0, cptp_suite},
      {"Leggett-Garg K: violation, classical limit, damping", 0, lgi_behavior},
      {"efficiency below Carnot and above Otto somewhere", 0, efficiency_bounds},
      {"circuit reproduces the cycle; CNOT noise dominates", 120, circuit_consistency},
      {"circuit cost stays below its closed-form bound", 0, cost_bound},
      {"heat-engine region grows with damping", 0, regime_geometry},
      {"selftest and fixed-seed sweep are byte-stable", 0, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.ok = false;
      o.detail += fmt("; over the %.0f s budget", c.budget_s);
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %zu: %s (%s; %.2f s)\n", o.ok ? "PASS" : "FAIL", i + 1, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
