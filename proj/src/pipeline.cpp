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

#include "sessionlens/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sessionlens/error.hpp"
#include "sessionlens/fixture.hpp"
#include "sessionlens/format.hpp"

namespace sessionlens {

using Json = nlohmann::ordered_json;

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw InputError("cannot create output directory '" + dir + "'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw InputError("cannot write '" + path + "'");
  os << content;
  if (!os) throw InputError("short write to '" + path + "'");
}

std::string path_in(const PipelineConfig& cfg, const std::string& name) {
  return (fs::path(cfg.output_dir) / name).string();
}

Json real(double v) { return Json(round_significant(v)); }

std::string row_label(std::string label, std::size_t value) {
  label.resize(30, ' ');
  return label + std::to_string(value) + "\n";
}

std::string preprocess_summary(const CleaningReport& report, std::size_t urls, std::size_t users,
                               std::size_t sessions) {
  std::string out;
  out += row_label("Initial log entries", report.input_count);
  out += row_label("Log entries after cleaning", report.retained_count);
  out += row_label("Unique URLs", urls);
  out += row_label("Users identified", users);
  out += row_label("Sessions identified", sessions);
  return out;
}

SessionSet obtain_sessions(const PipelineConfig& cfg) {
  if (cfg.input.empty()) return load_sessions(cfg.output_dir);
  PreprocessResult r = preprocess(cfg);
  write_preprocess_artifacts(r, cfg);
  return std::move(r.data);
}

WeighResult obtain_weights(const PipelineConfig& cfg, const SessionSet& data) {
  WeighResult w = weigh(data, cfg.weight_config());
  write_weigh_artifacts(data, w, cfg);
  return w;
}

std::string reduction_summary(const ReductionReport& r) {
  std::ostringstream os;
  os << "URLs      " << r.urls_before << " -> " << r.urls_after << " ("
     << r.urls_dropped_zero_weight << " zero-weight)\n";
  os << "Sessions  " << r.sessions_before << " -> " << r.sessions_after << " ("
     << r.sessions_dropped_zero_weight << " zero-weight, "
     << r.sessions_dropped_empty_after_column_removal << " emptied by URL removal)\n";
  return os.str();
}

}  // namespace

PreprocessResult preprocess(const PipelineConfig& cfg) {
  if (cfg.input.empty()) throw InputError("no input log given (set input)");
  if (fs::is_directory(cfg.input)) throw InputError("input '" + cfg.input + "' is a directory");
  const auto lines = read_log_lines(cfg.input);
  const ParsedLog parsed = parse_lines(lines, cfg.dialect);

  PreprocessResult r;
  r.dialect = parsed.dialect;
  CleanResult cleaned = clean(parsed, cfg.cleaning);
  r.cleaning = cleaned.report;
  const auto users = identify_users(cleaned.entries);
  r.users = users.size();
  r.data.sessions = identify_sessions(
      users, std::chrono::seconds(cfg.session_timeout_minutes * 60), r.data.vocab);
  return r;
}

WeighResult weigh(const SessionSet& data, const WeightConfig& cfg) {
  WeighResult w;
  w.raw = build_matrix(data.sessions, data.vocab);
  w.reduction = assign_weights_and_reduce(w.raw, cfg);
  return w;
}

void write_preprocess_artifacts(const PreprocessResult& r, const PipelineConfig& cfg) {
  ensure_dir(cfg.output_dir);
  if (cfg.emit_sessions) {
    std::string out = "session_id,user_key,start,end,url_count,url_indices\n";
    for (const auto& s : r.data.sessions) {
      out += std::to_string(s.session_id) + ',' + csv_field(s.user.key()) + ',' +
             format_clf_timestamp(s.start) + ',' + format_clf_timestamp(s.end) + ',' +
             std::to_string(s.url_indices.size()) + ',';
      for (std::size_t i = 0; i < s.url_indices.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(s.url_indices[i]);
      }
      out += '\n';
    }
    write_file(path_in(cfg, "sessions.csv"), out);
  }
  if (cfg.emit_vocabulary) {
    std::string out = "index,path\n";
    for (std::size_t i = 0; i < r.data.vocab.size(); ++i)
      out += std::to_string(i) + ',' + csv_field(r.data.vocab.at(i)) + '\n';
    write_file(path_in(cfg, "vocabulary.csv"), out);
  }
  if (cfg.emit_cleaning) {
    Json j;
    j["dialect"] = std::string(to_string(r.dialect));
    j["input_count"] = r.cleaning.input_count;
    j["retained_count"] = r.cleaning.retained_count;
    Json drops = Json::object();
    for (auto reason : {DropReason::kMalformed, DropReason::kMethod, DropReason::kStatus,
                        DropReason::kExtension, DropReason::kRobot}) {
      auto it = r.cleaning.dropped_by_reason.find(reason);
      drops[std::string(to_string(reason))] =
          it == r.cleaning.dropped_by_reason.end() ? 0 : it->second;
    }
    j["dropped_by_reason"] = drops;
    j["unique_urls"] = r.data.vocab.size();
    j["users"] = r.users;
    j["sessions"] = r.data.sessions.size();
    write_file(path_in(cfg, "cleaning.json"), j.dump(2) + "\n");
  }
}

void write_weigh_artifacts(const SessionSet& data, const WeighResult& w,
                           const PipelineConfig& cfg) {
  ensure_dir(cfg.output_dir);
  const auto& wa = w.reduction.weights;
  if (cfg.emit_weights) {
    std::string out = "url_path,support,weight\n";
    for (std::size_t k = 0; k < w.raw.cols(); ++k) {
      out += csv_field(data.vocab.at(w.raw.col_ids[k])) + ',' + std::to_string(wa.url_support[k]) +
             ',' + format_real(wa.url_weights[k]) + '\n';
    }
    out += "\nsession_id,url_count,weight\n";
    for (std::size_t i = 0; i < w.raw.rows(); ++i) {
      out += std::to_string(w.raw.row_ids[i]) + ',' + std::to_string(wa.session_url_count[i]) +
             ',' + format_real(wa.session_weights[i]) + '\n';
    }
    write_file(path_in(cfg, "weights.csv"), out);
  }
  if (cfg.emit_reduction) {
    const auto& r = w.reduction.report;
    const auto wc = cfg.weight_config();
    Json j;
    j["alpha1"] = wc.alpha1();
    j["alpha2"] = wc.alpha2();
    j["beta1"] = wc.beta1();
    j["beta2"] = wc.beta2();
    j["urls_before"] = r.urls_before;
    j["urls_after"] = r.urls_after;
    j["sessions_before"] = r.sessions_before;
    j["sessions_after"] = r.sessions_after;
    j["urls_dropped_zero_weight"] = r.urls_dropped_zero_weight;
    j["sessions_dropped_zero_weight"] = r.sessions_dropped_zero_weight;
    j["sessions_dropped_empty_after_column_removal"] =
        r.sessions_dropped_empty_after_column_removal;
    write_file(path_in(cfg, "reduction.json"), j.dump(2) + "\n");
  }
  if (cfg.emit_matrices) {
    auto emit = [&](const std::string& stem, const DenseMatrix& m,
                    const std::vector<std::size_t>& row_ids, const std::vector<double>& row_w,
                    const std::vector<std::size_t>& col_ids, const std::vector<double>& col_w) {
      std::ostringstream os;
      write_dense(os, m);
      write_file(path_in(cfg, stem + ".txt"), os.str());
      std::string rows = "session_id,weight\n";
      for (std::size_t i = 0; i < row_ids.size(); ++i)
        rows += std::to_string(row_ids[i]) + ',' + format_real(row_w[i]) + '\n';
      write_file(path_in(cfg, stem + "_rows.csv"), rows);
      std::string cols = "url_index,weight\n";
      for (std::size_t k = 0; k < col_ids.size(); ++k)
        cols += std::to_string(col_ids[k]) + ',' + format_real(col_w[k]) + '\n';
      write_file(path_in(cfg, stem + "_cols.csv"), cols);
    };
    emit("matrix_raw", w.raw.data, w.raw.row_ids, wa.session_weights, w.raw.col_ids,
         wa.url_weights);
    const auto& red = w.reduction.matrix;
    emit("matrix_reduced", red.data, red.row_ids, red.row_weights, red.col_ids, red.col_weights);
  }
  if (cfg.emit_histogram) {
    std::string out = "kind,weight,count\n";
    for (const auto& b : weight_histogram(wa.url_weights))
      out += "url," + format_real(b.weight) + ',' + std::to_string(b.count) + '\n';
    for (const auto& b : weight_histogram(wa.session_weights))
      out += "session," + format_real(b.weight) + ',' + std::to_string(b.count) + '\n';
    write_file(path_in(cfg, "histogram.csv"), out);
  }
}

SessionSet load_sessions(const std::string& output_dir) {
  const std::string vocab_path = (fs::path(output_dir) / "vocabulary.csv").string();
  const std::string sessions_path = (fs::path(output_dir) / "sessions.csv").string();

  std::ifstream vin(vocab_path);
  if (!vin)
    throw InputError("no input log given and '" + vocab_path +
                     "' is missing (run preprocess first or set input)");
  std::vector<std::string> urls;
  std::string line;
  std::getline(vin, line);  // header
  while (std::getline(vin, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 2 || f[0] != std::to_string(urls.size()))
      throw InputError("malformed vocabulary row in '" + vocab_path + "': " + line);
    urls.push_back(f[1]);
  }

  SessionSet set;
  set.vocab = Vocabulary(std::move(urls));

  std::ifstream sin(sessions_path);
  if (!sin)
    throw InputError("no input log given and '" + sessions_path +
                     "' is missing (run preprocess first or set input)");
  std::getline(sin, line);
  while (std::getline(sin, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    auto bad = [&] { return InputError("malformed session row in '" + sessions_path + "': " + line); };
    if (f.size() != 6) throw bad();
    UserSession s;
    try {
      s.session_id = std::stoull(f[0]);
    } catch (const std::exception&) {
      throw bad();
    }
    if (s.session_id != set.sessions.size()) throw bad();
    s.user = UserId::from_key(f[1]);
    auto start = parse_clf_timestamp(f[2]);
    auto end = parse_clf_timestamp(f[3]);
    if (!start || !end) throw bad();
    s.start = *start;
    s.end = *end;
    std::istringstream idx(f[5]);
    std::size_t k = 0;
    while (idx >> k) {
      if (k >= set.vocab.size()) throw bad();
      s.url_indices.push_back(k);
    }
    if (s.url_indices.empty() || std::to_string(s.url_indices.size()) != f[4]) throw bad();
    set.sessions.push_back(std::move(s));
  }
  return set;
}

std::string sweep_csv(const SweepResult& r) {
  std::string out =
      "k,J_weighted,J_unweighted,S_weighted,S_unweighted,iters_w,iters_u,converged_w,"
      "converged_u,error_tag\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  auto iters = [](const SweepCell& c) {
    return c.objective ? std::to_string(c.iterations) : std::string();
  };
  auto conv = [](const SweepCell& c) {
    return c.objective ? std::string(c.converged ? "1" : "0") : std::string();
  };
  for (const auto& rec : r.records) {
    out += std::to_string(rec.k) + ',' + opt(rec.weighted.objective) + ',' +
           opt(rec.unweighted.objective) + ',' + opt(rec.weighted.validity) + ',' +
           opt(rec.unweighted.validity) + ',' + iters(rec.weighted) + ',' +
           iters(rec.unweighted) + ',' + conv(rec.weighted) + ',' + conv(rec.unweighted) + ',' +
           csv_field(rec.error_tag()) + '\n';
  }
  return out;
}

std::string sweep_summary(const SweepResult& r) {
  auto k_text = [](const std::optional<std::size_t>& k) {
    return k ? std::to_string(*k) : std::string("none");
  };
  auto s_at = [&](const std::optional<std::size_t>& k, DistanceMode mode) -> std::optional<double> {
    if (!k) return std::nullopt;
    const auto& rec = r.records[*k - r.k_min];
    return mode == DistanceMode::kWeighted ? rec.weighted.validity : rec.unweighted.validity;
  };
  const auto sw = s_at(r.best_k_weighted, DistanceMode::kWeighted);
  const auto su = s_at(r.best_k_unweighted, DistanceMode::kUnweighted);

  std::string out = "best_k weighted=" + k_text(r.best_k_weighted) +
                    ", unweighted=" + k_text(r.best_k_unweighted) + "\n";
  out += "S at best_k: weighted=" + (sw ? format_real(*sw) : std::string("n/a")) +
         ", unweighted=" + (su ? format_real(*su) : std::string("n/a")) + "\n";
  std::string lower = "n/a";
  if (sw && su) lower = *sw < *su ? "weighted" : (*su < *sw ? "unweighted" : "tie");
  else if (sw) lower = "weighted";
  else if (su) lower = "unweighted";
  out += "lower S at optimum: " + lower + "\n";
  out += "k range: weighted " + std::to_string(r.k_min) + ".." + std::to_string(r.k_max_weighted) +
         ", unweighted " + std::to_string(r.k_min) + ".." + std::to_string(r.k_max_unweighted) +
         "\n";
  return out;
}

std::string clusters_json(const SessionMatrix& matrix, const FcmConfig& cfg,
                          const FcmState& state, double membership_floor) {
  Json j;
  Json c;
  c["k"] = cfg.clusters;
  c["q"] = real(cfg.fuzziness);
  c["epsilon"] = real(cfg.epsilon);
  c["max_iter"] = cfg.max_iter;
  c["seed"] = cfg.seed;
  c["mode"] = std::string(to_string(cfg.mode));
  c["membership_floor"] = real(membership_floor);
  j["config"] = c;
  j["rows"] = matrix.rows();
  j["cols"] = matrix.cols();
  j["converged"] = state.converged;
  j["iterations"] = state.iterations_run;
  j["reseeds"] = state.reseeds;
  j["objective"] = real(state.final_objective());
  if (cfg.clusters >= 2) {
    try {
      j["xie_beni"] = real(xie_beni(state, matrix, cfg.mode));
    } catch (const ClusteringError& e) {
      j["xie_beni"] = nullptr;
      j["xie_beni_error"] = e.what();
    }
  } else {
    j["xie_beni"] = nullptr;
  }
  j["url_indices"] = matrix.col_ids;

  Json centers = Json::array();
  for (std::size_t r = 0; r < state.centers.rows(); ++r) {
    Json row = Json::array();
    for (double v : state.centers.row(r)) row.push_back(real(v));
    centers.push_back(row);
  }
  j["centers"] = centers;

  const auto top = state.top_clusters();
  Json sessions = Json::array();
  for (std::size_t i = 0; i < state.memberships.rows(); ++i) {
    Json s;
    s["session_id"] = matrix.row_ids[i];
    s["top_cluster"] = top[i];
    Json mem = Json::array();
    for (std::size_t k = 0; k < state.memberships.cols(); ++k) {
      const double u = state.memberships(i, k);
      if (membership_floor > 0.0 && u < membership_floor) continue;
      mem.push_back(Json{{"cluster", k}, {"u", real(u)}});
    }
    s["memberships"] = mem;
    sessions.push_back(s);
  }
  j["sessions"] = sessions;
  return j.dump(2) + "\n";
}

std::string cmd_preprocess(const PipelineConfig& cfg) {
  cfg.validate();
  const PreprocessResult r = preprocess(cfg);
  write_preprocess_artifacts(r, cfg);
  return "dialect: " + std::string(to_string(r.dialect)) + "\n" +
         preprocess_summary(r.cleaning, r.data.vocab.size(), r.users, r.data.sessions.size());
}

std::string cmd_weigh(const PipelineConfig& cfg) {
  cfg.validate();
  const SessionSet data = obtain_sessions(cfg);
  const WeighResult w = obtain_weights(cfg, data);
  std::string out = reduction_summary(w.reduction.report);
  out += "URL weight histogram (weight: count)\n";
  for (const auto& b : weight_histogram(w.reduction.weights.url_weights))
    out += "  " + format_real(b.weight) + ": " + std::to_string(b.count) + "\n";
  out += "Session weight histogram (weight: count)\n";
  for (const auto& b : weight_histogram(w.reduction.weights.session_weights))
    out += "  " + format_real(b.weight) + ": " + std::to_string(b.count) + "\n";
  return out;
}

std::string cmd_cluster(const PipelineConfig& cfg) {
  if (!cfg.k) return cmd_sweep(cfg);
  cfg.validate();
  const SessionSet data = obtain_sessions(cfg);
  const WeighResult w = obtain_weights(cfg, data);

  std::string out;
  for (auto mode : {DistanceMode::kWeighted, DistanceMode::kUnweighted}) {
    const SessionMatrix& m =
        mode == DistanceMode::kWeighted ? w.reduction.matrix : w.raw;
    const FcmConfig fc = cfg.fcm_config(mode);
    FcmState st;
    try {
      st = run_fcm(m, fc);
    } catch (const ClusteringError& e) {
      throw ClusteringError(std::string(to_string(mode)) + " clustering at k=" +
                            std::to_string(fc.clusters) + ": " + e.what());
    }
    const std::string name = "clusters_k" + std::to_string(fc.clusters) + "_" +
                             std::string(to_string(mode)) + ".json";
    if (cfg.emit_clusters) {
      ensure_dir(cfg.output_dir);
      write_file(path_in(cfg, name), clusters_json(m, fc, st, cfg.membership_floor));
    }
    out += std::string(to_string(mode)) + ": k=" + std::to_string(fc.clusters) +
           " J=" + format_real(st.final_objective()) +
           " iterations=" + std::to_string(st.iterations_run) +
           (st.converged ? " converged" : " not converged") + " -> " + name + "\n";
  }
  return out;
}

std::string cmd_sweep(const PipelineConfig& cfg) {
  cfg.validate();
  const SessionSet data = obtain_sessions(cfg);
  const WeighResult w = obtain_weights(cfg, data);
  const SweepResult r = sweep(w.reduction.matrix, w.raw, cfg.fcm_config(DistanceMode::kWeighted),
                              cfg.sweep_options());
  ensure_dir(cfg.output_dir);
  write_file(path_in(cfg, "sweep.csv"), sweep_csv(r));
  const std::string summary = sweep_summary(r);
  write_file(path_in(cfg, "sweep_summary.txt"), summary);
  if (r.all_failed()) {
    std::string first;
    for (const auto& rec : r.records) {
      first = rec.error_tag();
      if (!first.empty()) break;
    }
    throw ClusteringError("every k in the sweep failed (first error: " + first + ")");
  }
  return summary;
}

std::string cmd_fixture(const PipelineConfig& cfg) {
  FixtureOptions opt;
  opt.profiles = cfg.fixture_profiles;
  opt.sessions = cfg.fixture_sessions;
  opt.seed = cfg.seed;
  opt.noise = cfg.fixture_noise;
  const FixtureLog log = generate_fixture(opt);
  const std::string path = cfg.fixture_path();
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) ensure_dir(parent.string());
  write_fixture(log, path);
  return "wrote " + std::to_string(log.lines.size()) + " log lines to " + path + " and " +
         std::to_string(log.truth.size()) + " truth rows to " + path + ".truth.csv\n";
}

std::vector<std::string> command_names() {
  return {"preprocess", "weigh", "cluster", "sweep", "fixture"};
}

std::string run_command(std::string_view name, const PipelineConfig& cfg) {
  if (name == "preprocess") return cmd_preprocess(cfg);
  if (name == "weigh") return cmd_weigh(cfg);
  if (name == "cluster") return cmd_cluster(cfg);
  if (name == "sweep") return cmd_sweep(cfg);
  if (name == "fixture") return cmd_fixture(cfg);
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

}  // namespace sessionlens
