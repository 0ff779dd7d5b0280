/*
 * Copyright 2026 The platoon-game Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Run configuration: a flat `key = value` file layered under command-line
// flags. Recognised keys:
//
//   epsilon_f  epsilon_e  distance  n_e  n_f  max_platoon_size  xi
//   output_path
//
// Blank lines and lines starting with '#' are ignored. Unknown or repeated
// keys are rejected.

#ifndef PLATOON_CLI_CONFIG_HPP
#define PLATOON_CLI_CONFIG_HPP

#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "platoon/error.hpp"
#include "platoon/game.hpp"

namespace platoon::cli {

/// Usage or configuration problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<double> epsilon_f;
  std::optional<double> epsilon_e;
  std::optional<double> distance;
  std::optional<int> n_e;
  std::optional<int> n_f;
  std::optional<int> max_platoon_size;
  std::optional<double> xi;
  std::optional<std::string> output_path;
};

/// Fields set in `top` override those in `base`.
inline RunConfig merge(const RunConfig& base, const RunConfig& top) {
  RunConfig out = base;
  if (top.epsilon_f) out.epsilon_f = top.epsilon_f;
  if (top.epsilon_e) out.epsilon_e = top.epsilon_e;
  if (top.distance) out.distance = top.distance;
  if (top.n_e) out.n_e = top.n_e;
  if (top.n_f) out.n_f = top.n_f;
  if (top.max_platoon_size) out.max_platoon_size = top.max_platoon_size;
  if (top.xi) out.xi = top.xi;
  if (top.output_path) out.output_path = top.output_path;
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("config key '" + std::string(key) + "': cannot parse '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

inline RunConfig parse_config_text(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("config key '" + key + "' repeated");

    if (key == "epsilon_f") cfg.epsilon_f = detail::parse_number<double>(key, value);
    else if (key == "epsilon_e") cfg.epsilon_e = detail::parse_number<double>(key, value);
    else if (key == "distance") cfg.distance = detail::parse_number<double>(key, value);
    else if (key == "n_e") cfg.n_e = detail::parse_number<int>(key, value);
    else if (key == "n_f") cfg.n_f = detail::parse_number<int>(key, value);
    else if (key == "max_platoon_size") cfg.max_platoon_size = detail::parse_number<int>(key, value);
    else if (key == "xi") cfg.xi = detail::parse_number<double>(key, value);
    else if (key == "output_path") cfg.output_path = std::string(value);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

/// Concrete, validated run parameters.
struct ResolvedConfig {
  SavingsParams params;
  Composition composition;
  std::optional<double> xi;
  std::optional<std::string> output_path;
};

inline constexpr double kDefaultEpsilonF = 0.07;
inline constexpr double kDefaultEpsilonE = 0.048;
inline constexpr double kDefaultDistance = 300.0;
inline constexpr int kDefaultMaxPlatoon = 15;

inline ResolvedConfig resolve(const RunConfig& cfg,
                              double default_epsilon_f = kDefaultEpsilonF) {
  ResolvedConfig out;
  out.params.epsilon_f = cfg.epsilon_f.value_or(default_epsilon_f);
  out.params.epsilon_e = cfg.epsilon_e.value_or(kDefaultEpsilonE);
  out.params.distance = cfg.distance.value_or(kDefaultDistance);
  out.params.max_platoon_size = cfg.max_platoon_size.value_or(kDefaultMaxPlatoon);
  out.composition = {cfg.n_e.value_or(2), cfg.n_f.value_or(3)};
  out.xi = cfg.xi;
  out.output_path = cfg.output_path;
  try {
    out.params.validate();
  } catch (const GameError& e) {
    throw ConfigError(e.what());
  }
  if (out.composition.n_e < 0 || out.composition.n_f < 0) {
    throw ConfigError("n_e and n_f must be non-negative");
  }
  if (out.composition.total() > out.params.max_platoon_size) {
    throw ConfigError("n_e + n_f exceeds max_platoon_size");
  }
  return out;
}

}  // namespace platoon::cli

#endif  // PLATOON_CLI_CONFIG_HPP
