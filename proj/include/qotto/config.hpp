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

// JSON round trip for CycleParams. Unknown keys are rejected by name.

#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "qotto/engine.hpp"

namespace qotto {

inline constexpr std::string_view kVersion = "0.1.0";

namespace detail {

template <typename E, std::size_t N>
E enum_from(const nlohmann::json& j, std::string_view key, const std::array<std::pair<E, std::string_view>, N>& names) {
  if (!j.is_string()) fail(ErrorKind::ConfigError, std::string(key) + ": expected a string");
  const auto s = j.get<std::string>();
  for (const auto& [e, n] : names)
    if (n == s) return e;
  std::string allowed;
  for (const auto& [e, n] : names) allowed += (allowed.empty() ? "" : "|") + std::string(n);
  fail(ErrorKind::ConfigError, std::string(key) + ": '" + s + "' is not one of " + allowed);
}

template <typename E, std::size_t N>
std::string enum_name(E e, const std::array<std::pair<E, std::string_view>, N>& names) {
  for (const auto& [v, n] : names)
    if (v == e) return std::string(n);
  return "?";
}

inline double number_at(const nlohmann::json& j, std::string_view key) {
  if (!j.is_number()) fail(ErrorKind::ConfigError, std::string(key) + ": expected a number");
  return j.get<double>();
}

inline constexpr std::array<std::pair<BasisMode, std::string_view>, 2> kBasisModes{
    {{BasisMode::xy, "xy"}, {BasisMode::zbasis, "zbasis"}}};
inline constexpr std::array<std::pair<ExpansionSign, std::string_view>, 2> kSigns{
    {{ExpansionSign::matched, "matched"}, {ExpansionSign::literal, "literal"}}};
inline constexpr std::array<std::pair<FrequencyRamp, std::string_view>, 2> kRamps{
    {{FrequencyRamp::reversed, "reversed"}, {FrequencyRamp::as_written, "as_written"}}};
inline constexpr std::array<std::pair<NoiseBasis, std::string_view>, 2> kNoiseBases{
    {{NoiseBasis::computational, "computational"}, {NoiseBasis::stroke_eigenbasis, "eigenbasis"}}};
inline constexpr std::array<std::pair<NoiseOrder, std::string_view>, 2> kOrders{
    {{NoiseOrder::before, "before"}, {NoiseOrder::after, "after"}}};
inline constexpr std::array<std::pair<SwapOrdering, std::string_view>, 2> kSwapOrders{
    {{SwapOrdering::reordered, "reordered"}, {SwapOrdering::literal, "literal"}}};
inline constexpr std::array<std::pair<HeatConvention, std::string_view>, 2> kHeat{
    {{HeatConvention::post_noise, "post_noise"}, {HeatConvention::pre_noise, "pre_noise"}}};

}  // namespace detail

/// Keys understood by params_from_json.
inline const std::set<std::string, std::less<>>& cycle_keys() {
  static const std::set<std::string, std::less<>> keys{
      "beta_c", "beta_h",     "omega_c",          "omega_h",     "tau",         "lambda",        "lambda_c",
      "gamma",  "p",          "t_noise",          "basis_mode",  "n_steps",     "richardson",    "expansion_sign",
      "compression_ramp",     "noise_basis",      "noise_order", "swap_ordering", "heat"};
  return keys;
}

/// Applies every recognized key of `j` on top of `base`; keys listed in
/// `ignore` are skipped and anything else is a config error.
inline CycleParams params_from_json(const nlohmann::json& j, CycleParams base = {},
                                    const std::set<std::string, std::less<>>& ignore = {}) {
  using namespace detail;
  if (!j.is_object()) fail(ErrorKind::ConfigError, "config must be a JSON object");
  bool tau_set = false;
  for (const auto& [key, v] : j.items()) {
    if (ignore.count(key)) continue;
    if (!cycle_keys().count(key)) fail(ErrorKind::ConfigError, "unknown config key '" + key + "'");
    if (key == "beta_c") base.beta_c = number_at(v, key);
    else if (key == "beta_h") base.beta_h = number_at(v, key);
    else if (key == "omega_c") base.omega_c = number_at(v, key);
    else if (key == "omega_h") base.omega_h = number_at(v, key);
    else if (key == "tau") base.tau = number_at(v, key), tau_set = true;
    else if (key == "lambda") base.lambda = number_at(v, key);
    else if (key == "lambda_c") base.lambda_c = number_at(v, key);
    else if (key == "gamma") base.gamma = number_at(v, key);
    else if (key == "p") base.p = number_at(v, key);
    else if (key == "t_noise") {
      if (v.is_null()) base.t_noise.reset();
      else base.t_noise = number_at(v, key);
    } else if (key == "basis_mode") base.basis_mode = enum_from(v, key, kBasisModes);
    else if (key == "n_steps") {
      if (!v.is_number_integer()) fail(ErrorKind::ConfigError, "n_steps: expected an integer");
      base.propagator.n_steps = v.get<int>();
    } else if (key == "richardson") {
      if (!v.is_boolean()) fail(ErrorKind::ConfigError, "richardson: expected true or false");
      base.propagator.richardson = v.get<bool>();
    } else if (key == "expansion_sign") base.expansion_sign = enum_from(v, key, kSigns);
    else if (key == "compression_ramp") base.compression_ramp = enum_from(v, key, kRamps);
    else if (key == "noise_basis") base.noise_basis = enum_from(v, key, kNoiseBases);
    else if (key == "noise_order") base.noise_order = enum_from(v, key, kOrders);
    else if (key == "swap_ordering") base.swap_ordering = enum_from(v, key, kSwapOrders);
    else if (key == "heat") base.heat = enum_from(v, key, kHeat);
  }
  // The stroke time tracks the frequencies unless given explicitly.
  if (!tau_set && (j.contains("omega_c") || j.contains("omega_h")) && base.omega_h > base.omega_c)
    base.tau = default_tau(base.omega_c, base.omega_h);
  return base;
}

inline nlohmann::json params_to_json(const CycleParams& c) {
  using namespace detail;
  nlohmann::json j{{"beta_c", c.beta_c},
                   {"beta_h", c.beta_h},
                   {"omega_c", c.omega_c},
                   {"omega_h", c.omega_h},
                   {"tau", c.tau},
                   {"lambda", c.lambda},
                   {"lambda_c", c.lambda_c},
                   {"gamma", c.gamma},
                   {"p", c.p},
                   {"t_noise", c.noise_time()},
                   {"basis_mode", enum_name(c.basis_mode, kBasisModes)},
                   {"n_steps", c.propagator.n_steps},
                   {"richardson", c.propagator.richardson},
                   {"expansion_sign", enum_name(c.expansion_sign, kSigns)},
                   {"compression_ramp", enum_name(c.compression_ramp, kRamps)},
                   {"noise_basis", enum_name(c.noise_basis, kNoiseBases)},
                   {"noise_order", enum_name(c.order(), kOrders)},
                   {"swap_ordering", enum_name(c.swap_ordering, kSwapOrders)},
                   {"heat", enum_name(c.heat, kHeat)}};
  return j;
}

}  // namespace qotto
