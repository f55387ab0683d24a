#pragma once

// OEIS cross-checks: a fixture store keyed by A-number, a matcher with
// three transforms, an opt-in online client and the catalogue of entries
// the digit languages are expected to hit.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "digitlang/core.hpp"
#include "digitlang/counting.hpp"
#include "digitlang/langspec.hpp"
#include "digitlang/numeration.hpp"

#ifndef DIGITLANG_FIXTURE_DIR
#define DIGITLANG_FIXTURE_DIR "fixtures/oeis"
#endif

namespace digitlang::oeis {

struct Entry {
  std::string id;
  std::string name;
  long offset = 0;
  std::vector<BigInt> data;
  std::string provenance;
};

inline std::string a_number(long n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "A%06ld", n);
  return buf;
}

inline bool valid_a_number(const std::string& id) {
  return id.size() == 7 && id[0] == 'A' &&
         std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; });
}

namespace detail {

inline std::vector<BigInt> split_terms(const std::string& s) {
  std::vector<BigInt> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return c == ' '; }), tok.end());
    if (!tok.empty()) out.emplace_back(tok);
  }
  return out;
}

inline std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

}  // namespace detail

// Accepts both the fixture layout and a record of the live search
// response, where data is one comma-joined string and offset reads "0,2".
inline Entry parse_entry(const nlohmann::json& j) {
  Entry e;
  try {
    if (j.contains("id") && j["id"].is_string() && valid_a_number(j["id"].get<std::string>()))
      e.id = j["id"].get<std::string>();
    else
      e.id = a_number(j.at("number").get<long>());
    e.name = j.value("name", "");
    if (j.contains("offset")) {
      const auto& o = j["offset"];
      e.offset = o.is_string() ? std::stol(o.get<std::string>()) : o.get<long>();
    }
    const auto& d = j.at("data");
    if (d.is_string()) {
      e.data = detail::split_terms(d.get<std::string>());
    } else {
      for (const auto& t : d) e.data.emplace_back(t.is_string() ? t.get<std::string>() : std::to_string(t.get<long long>()));
    }
    e.provenance = j.value("provenance", "");
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError("$", std::string("OEIS record: ") + ex.what());
  } catch (const std::exception& ex) {
    throw ParseError("$", std::string("OEIS record: ") + ex.what());
  }
  return e;
}

inline nlohmann::json to_json(const Entry& e) {
  nlohmann::json d = nlohmann::json::array();
  for (const auto& x : e.data) d.push_back(x.str());
  long number = valid_a_number(e.id) ? std::stol(e.id.substr(1)) : 0;
  return {{"number", number}, {"id", e.id}, {"name", e.name}, {"offset", e.offset},
          {"data", d}, {"provenance", e.provenance}};
}

class FixtureStore {
 public:
  explicit FixtureStore(std::filesystem::path dir = DIGITLANG_FIXTURE_DIR) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<Entry> load(const std::string& id) const {
    auto p = dir_ / (id + ".json");
    if (!std::filesystem::exists(p)) return std::nullopt;
    std::ifstream in(p);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(p.string(), ex.what());
    }
    Entry e = parse_entry(j);
    if (e.id != id) throw ParseError(p.string(), "file holds " + e.id);
    return e;
  }

  // Sorted by A-number so results never depend on directory order.
  std::vector<Entry> all() const {
    std::vector<std::string> ids;
    if (std::filesystem::is_directory(dir_))
      for (const auto& f : std::filesystem::directory_iterator(dir_)) {
        auto stem = f.path().stem().string();
        if (f.path().extension() == ".json" && valid_a_number(stem)) ids.push_back(stem);
      }
    std::sort(ids.begin(), ids.end());
    std::vector<Entry> out;
    for (const auto& id : ids) out.push_back(*load(id));
    return out;
  }

  void save(const Entry& e) const {
    std::filesystem::create_directories(dir_);
    std::ofstream out(dir_ / (e.id + ".json"));
    out << to_json(e).dump(1) << "\n";
  }

 private:
  std::filesystem::path dir_;
};

// ---------------------------------------------------------------------------
// Matching

enum class MatchKind { ExactPrefix, Shifted, FirstDifference };

inline std::string to_string(MatchKind k) {
  switch (k) {
    case MatchKind::ExactPrefix: return "exact-prefix";
    case MatchKind::Shifted: return "shifted";
    default: return "first-difference";
  }
}

// `window` is the common slice: the transformed query from query_start and
// the entry data from entry_start agree on it term by term.
struct OeisMatch {
  std::string anumber;
  std::string name;
  long offset = 0;
  MatchKind kind = MatchKind::ExactPrefix;
  std::size_t query_start = 0;
  std::size_t entry_start = 0;
  std::vector<BigInt> window;
};

inline constexpr std::size_t kMinTerms = 6;
inline constexpr std::size_t kMaxCrop = 4;

namespace detail {

inline std::optional<OeisMatch> align(const std::vector<BigInt>& q, const Entry& e, std::size_t qs,
                                      std::size_t es, MatchKind kind) {
  if (qs >= q.size() || es >= e.data.size()) return std::nullopt;
  std::size_t n = std::min(q.size() - qs, e.data.size() - es);
  if (n < kMinTerms) return std::nullopt;
  if (!std::equal(q.begin() + qs, q.begin() + qs + n, e.data.begin() + es)) return std::nullopt;
  OeisMatch m{e.id, e.name, e.offset, kind, qs, es, {}};
  m.window.assign(q.begin() + qs, q.begin() + qs + n);
  return m;
}

inline std::optional<OeisMatch> align_cropped(const std::vector<BigInt>& q, const Entry& e, MatchKind kind,
                                              std::size_t from) {
  for (std::size_t c = from; c <= kMaxCrop; ++c) {
    if (auto m = align(q, e, c, 0, kind)) return m;
    if (c > 0)
      if (auto m = align(q, e, 0, c, kind)) return m;
  }
  return std::nullopt;
}

}  // namespace detail

// Best single match of `terms` against one entry, trying the transforms in
// order: exact prefix, a crop of up to kMaxCrop leading terms on either
// side, then the first differences of the query (cropped or not).
inline std::optional<OeisMatch> match_entry(const std::vector<BigInt>& terms, const Entry& e) {
  if (auto m = detail::align(terms, e, 0, 0, MatchKind::ExactPrefix)) return m;
  if (auto m = detail::align_cropped(terms, e, MatchKind::Shifted, 1)) return m;
  if (terms.size() < 2) return std::nullopt;
  return detail::align_cropped(first_difference(terms), e, MatchKind::FirstDifference, 0);
}

namespace detail {

inline std::vector<OeisMatch> rank(const std::vector<BigInt>& terms, const std::vector<Entry>& entries,
                                   std::size_t limit) {
  std::vector<OeisMatch> out;
  for (const auto& e : entries)
    if (auto m = match_entry(terms, e)) out.push_back(*m);
  std::stable_sort(out.begin(), out.end(), [](const OeisMatch& a, const OeisMatch& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.anumber < b.anumber;
  });
  if (out.size() > limit) out.resize(limit);
  return out;
}

inline void require_terms(const std::vector<BigInt>& terms) {
  if (terms.size() < kMinTerms)
    throw DomainError("lookup needs at least " + std::to_string(kMinTerms) + " terms, got " +
                      std::to_string(terms.size()));
}

}  // namespace detail

inline std::vector<OeisMatch> lookup(const std::vector<BigInt>& terms, std::size_t limit = 10,
                                     const FixtureStore& store = FixtureStore{}) {
  detail::require_terms(terms);
  return detail::rank(terms, store.all(), limit);
}

inline nlohmann::json to_json(const OeisMatch& m) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : m.window) w.push_back(x.str());
  return {{"anumber", m.anumber}, {"name", m.name},         {"offset", m.offset},
          {"kind", to_string(m.kind)}, {"query_start", m.query_start}, {"entry_start", m.entry_start},
          {"window", w}};
}

// ---------------------------------------------------------------------------
// Online client

struct ClientOptions {
  bool online = false;
  std::string host = "https://oeis.org";
  std::chrono::milliseconds min_interval{1500};
  int timeout_seconds = 15;
  std::filesystem::path fixtures = DIGITLANG_FIXTURE_DIR;
};

struct LookupResult {
  std::vector<OeisMatch> matches;
  std::string source;  // "fixtures" or "online"
  bool degraded = false;
  std::string note;
};

inline nlohmann::json to_json(const LookupResult& r) {
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : r.matches) ms.push_back(to_json(m));
  nlohmann::json j{{"source", r.source}, {"degraded", r.degraded}, {"matches", ms}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// One client owns its cache; every request goes through one mutex, so at
// most one request is in flight and consecutive requests are spaced by
// min_interval.
class Client {
 public:
  explicit Client(ClientOptions opt = {}) : opt_(std::move(opt)), store_(opt_.fixtures) {}

  const FixtureStore& store() const { return store_; }

  LookupResult lookup(const std::vector<BigInt>& terms, std::size_t limit = 10) {
    detail::require_terms(terms);
    if (opt_.online) {
      try {
        std::vector<Entry> entries = search(detail::join(terms));
        if (terms.size() > kMinTerms) {
          auto more = search(detail::join(first_difference(terms)));
          for (auto& e : more)
            if (std::none_of(entries.begin(), entries.end(), [&](const Entry& x) { return x.id == e.id; }))
              entries.push_back(std::move(e));
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });
        return {detail::rank(terms, entries, limit), "online", false, ""};
      } catch (const std::exception& ex) {
        return {detail::rank(terms, store_.all(), limit), "fixtures", true, ex.what()};
      }
    }
    return {detail::rank(terms, store_.all(), limit), "fixtures", false, ""};
  }

  // Downloads one entry and writes it over the fixture of the same name.
  Entry fetch(const std::string& id) {
    if (!valid_a_number(id)) throw InvalidSpec("not an A-number: " + id);
    auto found = search("id:" + id);
    auto it = std::find_if(found.begin(), found.end(), [&](const Entry& e) { return e.id == id; });
    if (it == found.end()) throw Error("OEIS returned no record for " + id, 3);
    Entry e = *it;
    e.provenance = "fetched from " + opt_.host;
    store_.save(e);
    return e;
  }

 private:
  std::vector<Entry> search(const std::string& query) {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto c = cache_.find(query); c != cache_.end()) return c->second;
    auto now = std::chrono::steady_clock::now();
    if (last_ && now - *last_ < opt_.min_interval) std::this_thread::sleep_for(opt_.min_interval - (now - *last_));

    httplib::Client cli(opt_.host);
    cli.set_connection_timeout(opt_.timeout_seconds);
    cli.set_read_timeout(opt_.timeout_seconds);
    cli.set_follow_location(true);
    httplib::Params params{{"q", query}, {"fmt", "json"}};
    auto res = cli.Get("/search", params, httplib::Headers{});
    last_ = std::chrono::steady_clock::now();
    if (!res) throw Error("OEIS request failed: " + httplib::to_string(res.error()), 3);
    if (res->status != 200) throw Error("OEIS request failed: HTTP " + std::to_string(res->status), 3);

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError("$", std::string("OEIS response: ") + ex.what());
    }
    // older responses wrap the list in {"results": [...]}; no hits is null
    const nlohmann::json* list = &j;
    if (j.is_object()) list = j.contains("results") ? &j["results"] : nullptr;
    std::vector<Entry> out;
    if (list && list->is_array())
      for (const auto& r : *list) out.push_back(parse_entry(r));
    cache_[query] = out;
    return out;
  }

  ClientOptions opt_;
  FixtureStore store_;
  std::mutex mu_;
  std::optional<std::chrono::steady_clock::time_point> last_;
  std::map<std::string, std::vector<Entry>> cache_;
};

// ---------------------------------------------------------------------------
// Catalogue

// y_0 = 1 and y_n - y_{n-1} counts the length-n numbers avoiding 1^k, so
// y is the partial-sum sequence of the power-avoidance counts.
inline std::vector<BigInt> y_sequence(int b, int k, std::size_t N) {
  return partial_sum(count_series(PowerAvoidanceSpec{b, 1, k, LeadingZeros::Forbidden}, N).values);
}

enum class CheckStatus { Matched, Mismatch, Missing };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Matched: return "matched";
    case CheckStatus::Mismatch: return "mismatch";
    default: return "missing fixture";
  }
}

struct CatalogCheck {
  std::string anumber;
  CheckStatus status = CheckStatus::Missing;
  std::optional<OeisMatch> match;
};

struct CatalogRow {
  std::string label;
  std::vector<BigInt> query;
  bool require_all = false;  // otherwise any listed entry suffices
  std::vector<CatalogCheck> checks;

  bool ok() const {
    auto hit = [](const CatalogCheck& c) { return c.status == CheckStatus::Matched; };
    if (checks.empty()) return false;
    return require_all ? std::all_of(checks.begin(), checks.end(), hit)
                       : std::any_of(checks.begin(), checks.end(), hit);
  }
};

struct CatalogReport {
  std::vector<CatalogRow> rows;

  bool ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const CatalogRow& r) { return r.ok(); });
  }

  std::vector<std::string> gaps() const {
    std::vector<std::string> g;
    for (const auto& r : rows)
      for (const auto& c : r.checks)
        if (c.status == CheckStatus::Missing) g.push_back(c.anumber);
    return g;
  }
};

namespace detail {

inline CatalogRow check_row(const FixtureStore& store, std::string label, std::vector<BigInt> query,
                            const std::vector<std::string>& ids, bool require_all, bool allow_difference) {
  CatalogRow row{std::move(label), std::move(query), require_all, {}};
  for (const auto& id : ids) {
    CatalogCheck c{id, CheckStatus::Missing, std::nullopt};
    if (auto e = store.load(id)) {
      auto m = match_entry(row.query, *e);
      if (m && (allow_difference || m->kind != MatchKind::FirstDifference)) {
        c.status = CheckStatus::Matched;
        c.match = m;
      } else {
        c.status = CheckStatus::Mismatch;
      }
    }
    row.checks.push_back(std::move(c));
  }
  return row;
}

inline std::vector<BigInt> popcount_class(int parity, std::size_t n) {
  std::vector<BigInt> out;
  for (std::uint64_t k = 0; out.size() < n; ++k)
    if (thue_morse(k) == parity) out.push_back(k);
  return out;
}

}  // namespace detail

struct TableRow {
  int k, b;
  std::vector<std::string> ids;
};

inline std::vector<TableRow> table_rows() {
  return {{2, 3, {"A028859", "A155020"}}, {2, 4, {"A125145"}}, {2, 5, {"A086347"}},
          {2, 6, {"A180033"}},            {2, 7, {"A180167"}}, {2, 10, {"A322054"}},
          {3, 3, {"A119826"}},            {3, 4, {"A282310"}}};
}

// Computes every sequence locally and compares it with the fixtures. Table
// rows may match after cropping leading terms; a missing fixture is listed
// as a gap, never skipped.
inline CatalogReport crosscheck_catalog(const FixtureStore& store = FixtureStore{}) {
  constexpr std::size_t N = 16;
  CatalogReport rep;
  for (const auto& t : table_rows())
    rep.rows.push_back(detail::check_row(store,
                                         "y(k=" + std::to_string(t.k) + ", b=" + std::to_string(t.b) + ")",
                                         y_sequence(t.b, t.k, N), t.ids, false, false));
  rep.rows.push_back(detail::check_row(store, "L1 counts", count_series(preset("L1"), N).values,
                                       {"A072256", "A138288"}, true, false));
  rep.rows.push_back(detail::check_row(store, "L2 partial sums",
                                       partial_sum(count_series(preset("L2"), N).values), {"A322054"}, true,
                                       false));
  rep.rows.push_back(detail::check_row(store, "odious numbers", detail::popcount_class(1, 30), {"A000069"},
                                       true, false));
  rep.rows.push_back(detail::check_row(store, "evil numbers", detail::popcount_class(0, 30), {"A001969"},
                                       true, false));
  return rep;
}

inline nlohmann::json to_json(const CatalogReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : row.checks) {
      nlohmann::json cj{{"anumber", c.anumber}, {"status", to_string(c.status)}};
      if (c.match) cj["match"] = to_json(*c.match);
      checks.push_back(cj);
    }
    rows.push_back({{"label", row.label}, {"ok", row.ok()}, {"checks", checks}});
  }
  return {{"ok", r.ok()}, {"gaps", r.gaps()}, {"rows", rows}};
}

}  // namespace digitlang::oeis
