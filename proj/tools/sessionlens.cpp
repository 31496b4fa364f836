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

#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "sessionlens/sessionlens.h"

namespace {

// Flag name -> configuration key. Every flag takes a single string value that
// is parsed by the library, so CLI and config file share one grammar.
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"--input", "input"},
    {"--dialect", "dialect"},
    {"--output-dir", "output_dir"},
    {"--timeout", "session_timeout_minutes"},
    {"--alpha1", "alpha1"},
    {"--alpha2", "alpha2"},
    {"--beta1", "beta1"},
    {"--beta2", "beta2"},
    {"--q", "q"},
    {"--epsilon", "epsilon"},
    {"--max-iter", "max_iter"},
    {"--seed", "seed"},
    {"--k", "k"},
    {"--k-min", "k_min"},
    {"--k-max", "k_max"},
    {"--membership-floor", "membership_floor"},
    {"--threads", "threads"},
    {"--profiles", "fixture_profiles"},
    {"--sessions", "fixture_sessions"},
    {"--fixture-output", "fixture_output"},
};

int report(sl_status status) {
  if (status != SL_OK) std::fprintf(stderr, "sessionlens: %s\n", sl_last_error());
  return sl_exit_code(status);
}

struct Invocation {
  std::string config_path;
  std::map<std::string, std::string> flags;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Invocation& inv) {
  sub->add_option("--config", inv.config_path, "flat key = value configuration file");
  for (const auto& [flag, key] : kFlags)
    sub->add_option_function<std::string>(
        flag, [&inv, key = key](const std::string& v) { inv.flags[key] = v; },
        "sets `" + key + "`");
  sub->add_option("--set", inv.sets, "any configuration key as key=value")
      ->type_name("KEY=VALUE");
}

int run(const std::string& command, const Invocation& inv) {
  sl_config* cfg = nullptr;
  if (sl_config_new(&cfg) != SL_OK) return report(SL_ERR_INTERNAL);
  struct Guard {
    sl_config* c;
    ~Guard() { sl_config_free(c); }
  } guard{cfg};

  if (!inv.config_path.empty()) {
    if (const sl_status s = sl_config_load(cfg, inv.config_path.c_str()); s != SL_OK)
      return report(s);
  }
  for (const auto& [key, value] : inv.flags) {
    if (const sl_status s = sl_config_set(cfg, key.c_str(), value.c_str()); s != SL_OK)
      return report(s);
  }
  for (const auto& kv : inv.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "sessionlens: --set expects key=value, got '%s'\n", kv.c_str());
      return 2;
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (const sl_status s = sl_config_set(cfg, key.c_str(), value.c_str()); s != SL_OK)
      return report(s);
  }

  char* summary = nullptr;
  const sl_status s = sl_run_command(cfg, command.c_str(), &summary);
  if (summary) {
    std::fputs(summary, stdout);
    sl_string_free(summary);
  }
  return report(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sessionlens: fuzzy-weighted session clustering of web access logs"};
  app.set_version_flag("--version", std::string(sl_version()));
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"preprocess", "parse, clean and sessionize an access log"},
      {"weigh", "assign fuzzy URL and session weights and reduce the matrix"},
      {"cluster", "run weighted and unweighted fuzzy c-means at --k (sweeps without it)"},
      {"sweep", "sweep the cluster count and compare Xie-Beni indices"},
      {"fixture", "write a synthetic log with planted structure"},
  };
  Invocation inv;
  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, inv);
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(chosen, inv);
}
