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

// Grid sweeps over cycle parameters: axis handling, a bounded worker pool that
// merges by index, and stable text output.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qotto/leggett_garg.hpp"

namespace qotto {

// ---------------------------------------------------------------- axes

struct Axis1D {
  std::string name;
  double min = 0.0, max = 1.0;
  int n = 2;

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1 == n ? max : min + (max - min) * i / (n - 1);
    return v;
  }
};

inline std::vector<double> linspace(double a, double b, int n) { return Axis1D{"", a, b, n}.values(); }

inline constexpr std::array<std::string_view, 7> kAxisNames{"lambda", "gamma",     "p",          "tau",
                                                            "t_noise", "beta_ratio", "omega_ratio"};

inline void validate_axis(const Axis1D& a) {
  if (std::find(kAxisNames.begin(), kAxisNames.end(), a.name) == kAxisNames.end())
    fail(ErrorKind::ConfigError, "unknown sweep axis '" + a.name + "'");
  if (a.n < 2) fail(ErrorKind::ConfigError, "axis '" + a.name + "' needs n >= 2");
  if (!std::isfinite(a.min) || !std::isfinite(a.max)) fail(ErrorKind::ConfigError, "axis '" + a.name + "' bounds");
}

/// beta_ratio sets beta_h = r beta_c (the temperature ratio T_c/T_h);
/// omega_ratio sets omega_c = r omega_h.
inline void set_axis(CycleParams& c, std::string_view name, double v) {
  if (name == "lambda") c.lambda = v;
  else if (name == "gamma") c.gamma = v;
  else if (name == "p") c.p = v;
  else if (name == "tau") c.tau = v;
  else if (name == "t_noise") c.t_noise = v;
  else if (name == "beta_ratio") c.beta_h = v * c.beta_c;
  else if (name == "omega_ratio") c.omega_c = v * c.omega_h;
  else fail(ErrorKind::ConfigError, "unknown sweep axis '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- quantities

using Cell = std::variant<double, std::string>;

struct Quantity {
  std::string_view name;
  std::string_view unit;
};

inline constexpr std::array<Quantity, 17> kQuantities{{
    {"w_exp", "energy"},
    {"w_comp", "energy"},
    {"w_total", "energy"},
    {"q_h", "energy"},
    {"q_c", "energy"},
    {"eta", "1"},
    {"eta_E", "1"},
    {"eta_otto", "1"},
    {"eta_carnot", "1"},
    {"regime", "label"},
    {"first_law_residual", "energy"},
    {"coherence_exp", "nat"},
    {"coherence_thf", "nat"},
    {"coherence_re_thf", "1"},
    {"coherence_im_thf", "1"},
    {"k_lgi", "1"},
    {"entropy_production", "nat"},
}};

inline std::string_view unit_of(std::string_view name) {
  for (const auto& q : kQuantities)
    if (q.name == name) return q.unit;
  for (const auto& a : kAxisNames)
    if (a == name) return a == "tau" || a == "t_noise" ? "time" : a == "gamma" ? "1/time" : "1";
  fail(ErrorKind::ConfigError, "unknown output quantity '" + std::string(name) + "'");
}

inline const std::vector<std::string>& default_outputs() {
  static const std::vector<std::string> out{"w_total", "q_h", "q_c", "eta", "eta_E", "regime"};
  return out;
}

/// Evaluates the requested quantities for one parameter point.
inline std::vector<Cell> evaluate_point(const CycleParams& params, const std::vector<std::string>& outputs) {
  const CycleModel m = build_cycle_model(params);
  const CycleResult r = run_cycle(m);
  std::vector<Cell> row;
  row.reserve(outputs.size());
  for (const auto& q : outputs) {
    if (q == "w_exp") row.emplace_back(r.w_exp);
    else if (q == "w_comp") row.emplace_back(r.w_comp);
    else if (q == "w_total") row.emplace_back(r.w_total);
    else if (q == "q_h") row.emplace_back(r.q_h);
    else if (q == "q_c") row.emplace_back(r.q_c);
    else if (q == "eta") row.emplace_back(r.eta);
    else if (q == "eta_E") row.emplace_back(r.eta_E);
    else if (q == "eta_otto") row.emplace_back(r.eta_otto);
    else if (q == "eta_carnot") row.emplace_back(r.eta_carnot);
    else if (q == "regime") row.emplace_back(std::string(to_string(r.regime)));
    else if (q == "first_law_residual") row.emplace_back(r.first_law_residual);
    else if (q == "coherence_exp") row.emplace_back(coherence_relent(r.states[1], eigenbasis(m.h_exp_end)));
    else if (q == "coherence_thf") row.emplace_back(coherence_relent(r.states[2], m.basis_h));
    else if (q == "coherence_re_thf") row.emplace_back(offdiag_coherence(r.states[2], m.basis_h).real());
    else if (q == "coherence_im_thf") row.emplace_back(offdiag_coherence(r.states[2], m.basis_h).imag());
    else if (q == "k_lgi") row.emplace_back(lgi_k(cycle_dynamics(m)).k);
    else if (q == "entropy_production") row.emplace_back(r.entropy.delta_s_th);
    else fail(ErrorKind::ConfigError, "unknown output quantity '" + q + "'");
  }
  return row;
}

// ---------------------------------------------------------------- parallel map

/// f(i) for i in [0, n) on up to `workers` threads. Results land by index; the
/// lowest-index failure is rethrown after all workers stop.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto work = [&] {
    for (std::size_t i = next++; i < n && !stop; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
        stop = true;
      }
    }
  };
  const int w = std::clamp(workers, 1, 64);
  if (w == 1 || n < 2) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < w; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------- grid sweep

struct SweepConfig {
  CycleParams base;
  std::vector<Axis1D> axes;
  std::vector<std::string> outputs = default_outputs();
  int workers = 1;

  void validate() const {
    if (axes.empty() || axes.size() > 2) fail(ErrorKind::ConfigError, "a sweep takes one or two axes");
    for (const auto& a : axes) validate_axis(a);
    if (axes.size() == 2 && axes[0].name == axes[1].name) fail(ErrorKind::ConfigError, "sweep axes must differ");
    if (outputs.empty()) fail(ErrorKind::ConfigError, "no output quantities requested");
    for (const auto& q : outputs) {
      const bool known = std::any_of(kQuantities.begin(), kQuantities.end(), [&](const Quantity& k) { return k.name == q; });
      if (!known) fail(ErrorKind::ConfigError, "unknown output quantity '" + q + "'");
    }
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> units;  // empty: looked up by column name
};

/// Row-major over the axes (the last axis varies fastest).
inline Table run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<double>> vals;
  for (const auto& a : cfg.axes) vals.push_back(a.values());
  const std::size_t inner = vals.size() == 2 ? vals[1].size() : 1;
  const std::size_t total = vals[0].size() * inner;

  Table t;
  for (const auto& a : cfg.axes) t.columns.push_back(a.name);
  for (const auto& q : cfg.outputs) t.columns.push_back(q);
  t.rows = parallel_map<std::vector<Cell>>(total, cfg.workers, [&](std::size_t i) {
    CycleParams c = cfg.base;
    std::vector<Cell> row;
    const std::array<std::size_t, 2> idx{i / inner, i % inner};
    for (std::size_t a = 0; a < vals.size(); ++a) {
      set_axis(c, cfg.axes[a].name, vals[a][idx[a]]);
      row.emplace_back(vals[a][idx[a]]);
    }
    for (auto& cell : evaluate_point(c, cfg.outputs)) row.push_back(std::move(cell));
    return row;
  });
  return t;
}

// ---------------------------------------------------------------- formatting

/// Twelve significant digits, trailing zeros dropped, negative zero printed as 0.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

inline std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

inline std::string header_with_units(const Table& t) {
  std::string h;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) h += ',';
    const std::string unit = t.units.empty() ? std::string(unit_of(t.columns[i])) : t.units.at(i);
    h += t.columns[i] + " [" + unit + "]";
  }
  return h;
}

inline std::string to_csv(const Table& t, bool units = true) {
  std::string out;
  if (units) {
    out += header_with_units(t);
  } else {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += '\n';
  }
  return out;
}

/// JSON numbers go through the same 12-digit formatting so text output is stable.
inline nlohmann::json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return nlohmann::json::parse(format_number(*d));
  }
  return std::get<std::string>(c);
}

inline nlohmann::json to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Writes through a temporary file and renames, so a failed run leaves nothing behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorKind::ConfigError, "cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f.flush()) {
      f.close();
      std::filesystem::remove(tmp);
      fail(ErrorKind::ConfigError, "write to " + tmp.string() + " failed");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qotto
