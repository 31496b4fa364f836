/*
 * Copyright 2026 The sessionlens Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sessionlens/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "sessionlens/error.hpp"

namespace sessionlens {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* want) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) +
                    " (expected " + want + ")");
}

long to_long(std::string_view key, std::string_view v) {
  long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

std::size_t to_count(std::string_view key, std::string_view v) {
  const long n = to_long(key, v);
  if (n < 0) bad_value(key, v, "a non-negative integer");
  return static_cast<std::size_t>(n);
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
    bad_value(key, v, "an unsigned integer");
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(d)) bad_value(key, v, "a number");
  return d;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  bad_value(key, v, "true/false");
}

std::vector<std::string> to_list(std::string_view v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto end = comma == std::string_view::npos ? v.size() : comma;
    const auto item = trim(v.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = std::function<void(PipelineConfig&, std::string_view key, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"input", [](auto& c, auto, auto v) { c.input = std::string(v); }},
      {"dialect",
       [](auto& c, auto k, auto v) {
         if (v == "auto") c.dialect.reset();
         else if (v == "common") c.dialect = LogDialect::kCommon;
         else if (v == "combined") c.dialect = LogDialect::kCombined;
         else bad_value(k, v, "auto, common or combined");
       }},
      {"output_dir", [](auto& c, auto, auto v) { c.output_dir = std::string(v); }},
      {"allowed_methods", [](auto& c, auto, auto v) { c.cleaning.allowed_methods = to_list(v); }},
      {"allowed_status",
       [](auto& c, auto k, auto v) {
         c.cleaning.allowed_status.clear();
         for (const auto& s : to_list(v)) c.cleaning.allowed_status.push_back(static_cast<int>(to_long(k, s)));
       }},
      {"dropped_extensions",
       [](auto& c, auto, auto v) { c.cleaning.dropped_extensions = to_list(v); }},
      {"robot_agents", [](auto& c, auto, auto v) { c.cleaning.robot_agents = to_list(v); }},
      {"robots_path", [](auto& c, auto, auto v) { c.cleaning.robots_path = std::string(v); }},
      {"session_timeout_minutes",
       [](auto& c, auto k, auto v) { c.session_timeout_minutes = to_long(k, v); }},
      {"alpha1", [](auto& c, auto k, auto v) { c.alpha1 = to_long(k, v); }},
      {"alpha2", [](auto& c, auto k, auto v) { c.alpha2 = to_long(k, v); }},
      {"beta1", [](auto& c, auto k, auto v) { c.beta1 = to_long(k, v); }},
      {"beta2", [](auto& c, auto k, auto v) { c.beta2 = to_long(k, v); }},
      {"q", [](auto& c, auto k, auto v) { c.q = to_double(k, v); }},
      {"epsilon", [](auto& c, auto k, auto v) { c.epsilon = to_double(k, v); }},
      {"max_iter", [](auto& c, auto k, auto v) { c.max_iter = to_count(k, v); }},
      {"seed", [](auto& c, auto k, auto v) { c.seed = to_u64(k, v); }},
      {"k_min", [](auto& c, auto k, auto v) { c.k_min = to_count(k, v); }},
      {"k_max",
       [](auto& c, auto k, auto v) {
         if (v.empty() || v == "auto") c.k_max.reset();
         else c.k_max = to_count(k, v);
       }},
      {"k",
       [](auto& c, auto k, auto v) {
         if (v.empty()) c.k.reset();
         else c.k = to_count(k, v);
       }},
      {"membership_floor", [](auto& c, auto k, auto v) { c.membership_floor = to_double(k, v); }},
      {"threads",
       [](auto& c, auto k, auto v) {
         if (v.empty()) c.threads.reset();
         else c.threads = to_count(k, v);
       }},
      {"emit_sessions", [](auto& c, auto k, auto v) { c.emit_sessions = to_bool(k, v); }},
      {"emit_vocabulary", [](auto& c, auto k, auto v) { c.emit_vocabulary = to_bool(k, v); }},
      {"emit_cleaning", [](auto& c, auto k, auto v) { c.emit_cleaning = to_bool(k, v); }},
      {"emit_weights", [](auto& c, auto k, auto v) { c.emit_weights = to_bool(k, v); }},
      {"emit_reduction", [](auto& c, auto k, auto v) { c.emit_reduction = to_bool(k, v); }},
      {"emit_matrices", [](auto& c, auto k, auto v) { c.emit_matrices = to_bool(k, v); }},
      {"emit_histogram", [](auto& c, auto k, auto v) { c.emit_histogram = to_bool(k, v); }},
      {"emit_clusters", [](auto& c, auto k, auto v) { c.emit_clusters = to_bool(k, v); }},
      {"fixture_output", [](auto& c, auto, auto v) { c.fixture_output = std::string(v); }},
      {"fixture_profiles", [](auto& c, auto k, auto v) { c.fixture_profiles = to_count(k, v); }},
      {"fixture_sessions", [](auto& c, auto k, auto v) { c.fixture_sessions = to_count(k, v); }},
      {"fixture_noise", [](auto& c, auto k, auto v) { c.fixture_noise = to_bool(k, v); }},
  };
  return table;
}

}  // namespace

void PipelineConfig::set(std::string_view key, std::string_view value) {
  std::string k(trim(key));
  std::replace(k.begin(), k.end(), '-', '_');
  const auto& table = setters();
  auto it = table.find(k);
  if (it == table.end()) throw ConfigError("unknown configuration key '" + k + "'");
  it->second(*this, k, trim(value));
}

void PipelineConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = line;
    const auto hash = v.find('#');
    if (hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      set(v.substr(0, eq), v.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void PipelineConfig::validate() const {
  (void)weight_config();
  if (session_timeout_minutes <= 0) throw ConfigError("session_timeout_minutes must be > 0");
  if (!(q > 1.0)) throw ConfigError("q must be > 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (k_min < 2) throw ConfigError("k_min must be >= 2");
  if (k_max && *k_max < k_min) throw ConfigError("k_max must be >= k_min");
  if (k && *k < 1) throw ConfigError("k must be >= 1");
  if (membership_floor < 0.0 || membership_floor > 1.0)
    throw ConfigError("membership_floor must lie in [0, 1]");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

WeightConfig PipelineConfig::weight_config() const {
  return WeightConfig(alpha1, alpha2, beta1, beta2);
}

FcmConfig PipelineConfig::fcm_config(DistanceMode mode) const {
  FcmConfig cfg;
  cfg.clusters = k.value_or(2);
  cfg.fuzziness = q;
  cfg.epsilon = epsilon;
  cfg.max_iter = max_iter;
  cfg.seed = seed;
  cfg.mode = mode;
  return cfg;
}

SweepOptions PipelineConfig::sweep_options() const {
  SweepOptions opt;
  opt.k_min = k_min;
  opt.k_max = k_max;
  opt.threads = threads.value_or(threads_from_env());
  return opt;
}

std::string PipelineConfig::fixture_path() const {
  return fixture_output.empty() ? output_dir + "/fixture.log" : fixture_output;
}

std::vector<std::string> PipelineConfig::known_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

}  // namespace sessionlens
