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

#include "sessionlens/fixture.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <random>

#include "sessionlens/error.hpp"
#include "sessionlens/format.hpp"
#include "sessionlens/logparse.hpp"
#include "sessionlens/sessionize.hpp"

namespace sessionlens {
namespace {

constexpr int kOffset = 330;  // +0530
constexpr std::int64_t kDay = 86400;

constexpr std::array<const char*, 4> kBrowsers = {
    "Mozilla/5.0 (Windows NT 6.1; rv:2.0) Gecko/20100101 Firefox/4.0",
    "Mozilla/5.0 (X11; Linux i686) AppleWebKit/534.13 Chrome/9.0.597.84 Safari/534.13",
    "Opera/9.80 (Windows NT 5.1; U; en) Presto/2.7.62 Version/11.01",
    "Mozilla/4.0 (compatible; MSIE 8.0; Windows NT 6.1; Trident/4.0)",
};

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 rng_;
};

struct Hit {
  std::int64_t t;
  std::string line;
};

class LogBuilder {
 public:
  void add(std::int64_t t, const std::string& host, const std::string& method,
           const std::string& target, int status, std::int64_t bytes, const std::string& ua) {
    LogEntry e;
    e.client_host = host;
    e.timestamp = Timestamp{t, kOffset};
    e.method = method;
    const auto q = target.find('?');
    e.path = target.substr(0, q);
    if (q != std::string::npos) e.query = target.substr(q + 1);
    e.protocol = "HTTP/1.1";
    e.status = status;
    e.bytes = bytes;
    e.referrer = std::nullopt;
    e.user_agent = ua;
    hits_.push_back({t, format_line(e, LogDialect::kCombined)});
  }
  void raw(std::int64_t t, std::string line) { hits_.push_back({t, std::move(line)}); }

  std::vector<std::string> finish() {
    std::stable_sort(hits_.begin(), hits_.end(),
                     [](const Hit& a, const Hit& b) { return a.t < b.t; });
    std::vector<std::string> out;
    out.reserve(hits_.size());
    for (auto& h : hits_) out.push_back(std::move(h.line));
    return out;
  }

 private:
  std::vector<Hit> hits_;
};

constexpr double kSkipCore = 0.1;
constexpr double kDetour = 0.2;

std::string page(std::size_t profile, std::size_t j) {
  return "/dept" + std::to_string(profile) + "/page" + std::to_string(j) + ".html";
}

}  // namespace

FixtureLog generate_fixture(const FixtureOptions& opt) {
  if (opt.profiles < 1 || opt.pages_per_profile < 3 || opt.sessions_per_user < 1)
    throw ConfigError("fixture needs >= 1 profile, >= 3 pages per profile, >= 1 session per user");

  Draw draw(opt.seed);
  LogBuilder log;
  FixtureLog out;
  const std::int64_t base = make_timestamp(2011, 2, 1, 0, 0, 0, kOffset).utc_seconds;
  std::size_t rare = 0;

  const std::size_t users =
      (opt.sessions + opt.sessions_per_user - 1) / opt.sessions_per_user;
  std::size_t planted = 0;
  for (std::size_t u = 0; u < users && planted < opt.sessions; ++u) {
    const std::string host = "10.1." + std::to_string(u / 200) + "." + std::to_string(u % 200 + 1);
    const std::string ua = kBrowsers[u % kBrowsers.size()];
    const std::size_t profile = u % opt.profiles;
    std::int64_t t = base + draw.between(0, 2 * kDay);

    for (std::size_t s = 0; s < opt.sessions_per_user && planted < opt.sessions; ++s, ++planted) {
      // The first `core` pages form the profile's navigation path; the rest
      // are occasional detours.
      const std::size_t core = opt.pages_per_profile - opt.pages_per_profile / 3;
      std::vector<std::size_t> pages;
      for (std::size_t j = 0; j < opt.pages_per_profile; ++j) {
        const bool visit = j < core ? !draw.chance(kSkipCore) : draw.chance(kDetour);
        if (visit) pages.push_back(j);
      }
      if (pages.empty()) pages.push_back(0);

      out.truth.push_back({UserId{host, ua}.key(), format_clf_timestamp({t, kOffset}), profile,
                           "planted"});
      for (std::size_t j = 0; j < pages.size(); ++j) {
        if (j > 0) t += draw.between(15, 240);
        log.add(t, host, "GET", page(profile, pages[j]), 200, draw.between(2000, 40000), ua);
        if (opt.noise && draw.chance(0.5)) {
          log.add(t, host, "GET", "/images/dept" + std::to_string(profile) + "/banner.gif", 200,
                  5120, ua);
          log.add(t + 1, host, "GET", "/css/site.css", 304, 0, ua);
        }
        if (opt.noise && draw.chance(0.05)) {
          log.add(t + 2, host, "GET", "/dept" + std::to_string(profile) + "/old.html", 404, 210, ua);
        }
      }
      if (opt.noise && draw.chance(0.15)) {
        t += draw.between(15, 240);
        log.add(t, host, "GET", "/archive/item" + std::to_string(rare++) + ".html", 200, 900, ua);
      }
      t += draw.between(2 * 3600, 20 * 3600);
    }
  }

  if (opt.noise) {
    // Single-page visits by one-off users.
    const std::size_t shorts = std::max<std::size_t>(1, opt.sessions / 8);
    for (std::size_t s = 0; s < shorts; ++s) {
      const std::string host = "172.16.0." + std::to_string(s + 1);
      const std::string ua = kBrowsers[s % kBrowsers.size()];
      const std::size_t profile = s % opt.profiles;
      const std::int64_t t = base + draw.between(0, 7 * kDay);
      out.truth.push_back(
          {UserId{host, ua}.key(), format_clf_timestamp({t, kOffset}), profile, "short"});
      log.add(t, host, "GET", page(profile, draw.index(opt.pages_per_profile)), 200, 3000, ua);
    }

    // A crawler identified by its agent.
    const std::string bot_ua = "Mozilla/5.0 (compatible; Googlebot/2.1; +http://www.google.com/bot.html)";
    std::int64_t t = base + draw.between(0, 6 * kDay);
    for (std::size_t p = 0; p < opt.profiles; ++p) {
      for (std::size_t j = 0; j < opt.pages_per_profile; ++j) {
        log.add(t, "66.249.71.3", "GET", page(p, j), 200, 4000, bot_ua);
        t += 5;
      }
    }

    // A script that announces itself only by fetching robots.txt.
    t = base + draw.between(0, 6 * kDay);
    log.add(t, "192.0.2.7", "GET", "/robots.txt", 200, 120, "libwww-perl/5.805");
    for (std::size_t j = 0; j < opt.pages_per_profile; ++j)
      log.add(t + 1 + static_cast<std::int64_t>(j), "192.0.2.7", "GET", page(0, j), 200, 4000,
              "libwww-perl/5.805");

    // Form posts and junk.
    for (std::size_t s = 0; s < 3; ++s) {
      log.add(base + draw.between(0, 7 * kDay), "10.9.9." + std::to_string(s + 1), "POST",
              "/search.html?q=admission", 200, 800, kBrowsers[0]);
    }
    log.raw(base + draw.between(0, 7 * kDay), "this is not a log line");
    log.raw(base + draw.between(0, 7 * kDay),
            "10.0.0.1 - - [31/Feb/2011:10:00:00 +0530] \"GET / HTTP/1.1\" 200 1");
  }

  out.lines = log.finish();
  return out;
}

void write_fixture(const FixtureLog& log, const std::string& path) {
  std::string text;
  for (const auto& l : log.lines) {
    text += l;
    text += '\n';
  }

  const bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  if (gz) {
    // Level 9 with no name/mtime in the header keeps the bytes reproducible.
    gzFile f = gzopen(path.c_str(), "wb9");
    if (!f) throw InputError("cannot write fixture '" + path + "'");
    const int n = gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    gzclose(f);
    if (n != static_cast<int>(text.size())) throw InputError("short write to '" + path + "'");
  } else {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot write fixture '" + path + "'");
    os << text;
  }

  std::ofstream truth(path + ".truth.csv", std::ios::binary);
  if (!truth) throw InputError("cannot write fixture truth '" + path + ".truth.csv'");
  truth << "user_key,start,profile,kind\n";
  for (const auto& t : log.truth) {
    truth << csv_field(t.user_key) << ',' << t.start << ',' << t.profile << ',' << t.kind << '\n';
  }
}

}  // namespace sessionlens
