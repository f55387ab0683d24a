#pragma once

// Declarative digit-language specifications, membership testing, JSON
// round-tripping and compilation to position-aware counting automata.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "digitlang/core.hpp"
#include "digitlang/numeration.hpp"

namespace digitlang {

enum class LeadingZeros { Forbidden, Allowed };
enum class Reading { MsdFirst, LsdFirst };

// Position i allows prefix[i] if i < prefix.size(), otherwise
// period[(i - prefix.size()) % period.size()].
struct DigitRestrictionSpec {
  int base = 10;
  std::vector<std::vector<int>> prefix;
  std::vector<std::vector<int>> period;
  LeadingZeros leading_zeros = LeadingZeros::Forbidden;

  const std::vector<int>& allowed_at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return period[(i - prefix.size()) % period.size()];
  }
};

// forbidden[r] lists blocks (most significant digit first) that may not
// occur with their least significant letter at a position i = r (mod period).
struct PeriodicBlockSpec {
  int base = 10;
  int period = 1;
  std::vector<std::vector<std::vector<int>>> forbidden;
  LeadingZeros leading_zeros = LeadingZeros::Forbidden;
};

struct PowerAvoidanceSpec {
  int base = 10;
  int letter = 0;
  int exponent = 1;
  LeadingZeros leading_zeros = LeadingZeros::Forbidden;
};

struct DfaSpec {
  int base = 2;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> transitions;  // [state][digit]
  Reading reading = Reading::MsdFirst;
  LeadingZeros leading_zeros = LeadingZeros::Forbidden;

  int num_states() const { return static_cast<int>(transitions.size()); }
};

// Binary words with no factor 10 whose 0 sits at an evil position.
struct EvilFactorSpec {
  LeadingZeros leading_zeros = LeadingZeros::Allowed;
};

using LanguageSpec = std::variant<DigitRestrictionSpec, PeriodicBlockSpec,
                                  PowerAvoidanceSpec, DfaSpec, EvilFactorSpec>;

inline int base_of(const LanguageSpec& s) {
  return std::visit(
      [](const auto& v) -> int {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, EvilFactorSpec>)
          return 2;
        else
          return v.base;
      },
      s);
}

inline LeadingZeros leading_zeros_of(const LanguageSpec& s) {
  return std::visit([](const auto& v) { return v.leading_zeros; }, s);
}

inline LanguageSpec with_leading_zeros(LanguageSpec s, LeadingZeros lz) {
  std::visit([lz](auto& v) { v.leading_zeros = lz; }, s);
  return s;
}

inline bool is_regular(const LanguageSpec& s) {
  return !std::holds_alternative<EvilFactorSpec>(s);
}

inline std::string kind_name(const LanguageSpec& s) {
  switch (s.index()) {
    case 0: return "digit_restriction";
    case 1: return "periodic_blocks";
    case 2: return "power_avoidance";
    case 3: return "dfa";
    default: return "evil_factor";
  }
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void check_digit_set(const std::vector<int>& set, int b, const std::string& where) {
  if (set.empty()) throw InvalidSpec(where + ": empty allowed-digit set");
  for (int d : set)
    if (d < 0 || d >= b) throw InvalidSpec(where + ": digit " + std::to_string(d) + " out of range");
}

}  // namespace detail

inline void validate(const LanguageSpec& spec) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DigitRestrictionSpec>) {
          check_base(v.base);
          if (v.period.empty()) throw InvalidSpec("digit_restriction needs a non-empty period");
          for (std::size_t i = 0; i < v.prefix.size(); ++i)
            detail::check_digit_set(v.prefix[i], v.base, "prefix[" + std::to_string(i) + "]");
          for (std::size_t i = 0; i < v.period.size(); ++i)
            detail::check_digit_set(v.period[i], v.base, "period[" + std::to_string(i) + "]");
          if (v.prefix.empty() && v.period.size() == 1 && v.period[0] == std::vector<int>{0})
            throw InvalidSpec("allowed digit set D = {0} is excluded");
        } else if constexpr (std::is_same_v<T, PeriodicBlockSpec>) {
          check_base(v.base);
          if (v.period < 1) throw InvalidSpec("period must be >= 1");
          if (static_cast<int>(v.forbidden.size()) != v.period)
            throw InvalidSpec("forbidden table must have one entry per residue");
          for (const auto& blocks : v.forbidden)
            for (const auto& blk : blocks) {
              if (blk.empty()) throw InvalidSpec("empty forbidden block");
              for (int d : blk)
                if (d < 0 || d >= v.base) throw InvalidSpec("block digit out of range");
            }
        } else if constexpr (std::is_same_v<T, PowerAvoidanceSpec>) {
          check_base(v.base);
          if (v.letter < 0 || v.letter >= v.base) throw InvalidSpec("letter out of range");
          if (v.exponent < 1) throw InvalidSpec("exponent must be >= 1");
        } else if constexpr (std::is_same_v<T, DfaSpec>) {
          check_base(v.base);
          int n = v.num_states();
          if (n < 1) throw InvalidSpec("dfa needs at least one state");
          if (v.initial < 0 || v.initial >= n) throw InvalidSpec("initial state out of range");
          if (static_cast<int>(v.accepting.size()) != n) throw InvalidSpec("accepting flags size mismatch");
          for (const auto& row : v.transitions) {
            if (static_cast<int>(row.size()) != v.base) throw InvalidSpec("transition row must cover every digit");
            for (int t : row)
              if (t < 0 || t >= n) throw InvalidSpec("transition target out of range");
          }
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Membership

namespace detail {

inline bool block_at(const DigitWord& w, const std::vector<int>& blk, std::size_t i) {
  // blk[0] sits at position i + len - 1, blk[len-1] at position i.
  std::size_t len = blk.size();
  if (i + len > w.size()) return false;
  for (std::size_t j = 0; j < len; ++j)
    if (w.at_position(i + len - 1 - j) != blk[j]) return false;
  return true;
}

inline int run_dfa(const DfaSpec& dfa, const DigitWord& w) {
  int q = dfa.initial;
  if (dfa.reading == Reading::MsdFirst) {
    for (int d : w.digits) q = dfa.transitions[q][d];
  } else {
    for (auto it = w.digits.rbegin(); it != w.digits.rend(); ++it) q = dfa.transitions[q][*it];
  }
  return q;
}

}  // namespace detail

inline bool membership(const LanguageSpec& spec, const DigitWord& w) {
  int b = base_of(spec);
  if (w.base != b) throw InvalidDigit("word base " + std::to_string(w.base) + " differs from spec base");
  validate(w);
  if (leading_zeros_of(spec) == LeadingZeros::Forbidden && !w.empty() && w.digits.front() == 0)
    return false;
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DigitRestrictionSpec>) {
          for (std::size_t i = 0; i < w.size(); ++i) {
            const auto& allowed = v.allowed_at(i);
            if (std::find(allowed.begin(), allowed.end(), w.at_position(i)) == allowed.end()) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, PeriodicBlockSpec>) {
          for (std::size_t i = 0; i < w.size(); ++i)
            for (const auto& blk : v.forbidden[i % v.period])
              if (detail::block_at(w, blk, i)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, PowerAvoidanceSpec>) {
          int run = 0;
          for (int d : w.digits) {
            run = (d == v.letter) ? run + 1 : 0;
            if (run >= v.exponent) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, DfaSpec>) {
          return v.accepting[detail::run_dfa(v, w)];
        } else {
          for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w.at_position(i + 1) == 1 && w.at_position(i) == 0 && is_evil(i)) return false;
          return true;
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Counting automaton

// Reads digits most significant first. Transitions depend on the class of
// the position being read: positions below `prefix_len` have their own
// class, later positions cycle through `period` classes. Missing
// transitions (-1) lead to an implicit rejecting sink.
struct CountingAutomaton {
  int base = 10;
  int prefix_len = 0;
  int period = 1;
  int num_states = 0;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> delta;  // [class][state * base + digit]
  LeadingZeros leading_zeros = LeadingZeros::Forbidden;

  int num_classes() const { return prefix_len + period; }

  int class_of(std::size_t position) const {
    if (position < static_cast<std::size_t>(prefix_len)) return static_cast<int>(position);
    return prefix_len + static_cast<int>((position - prefix_len) % period);
  }

  int step(int q, int d, std::size_t position) const {
    return delta[class_of(position)][q * base + d];
  }

  bool accepts(int q) const { return accepting[q]; }

  // T[q][q'] = number of digits taking q to q' at the given class.
  std::vector<std::vector<BigInt>> transfer_matrix(int cls) const {
    std::vector<std::vector<BigInt>> t(num_states, std::vector<BigInt>(num_states, 0));
    for (int q = 0; q < num_states; ++q)
      for (int d = 0; d < base; ++d) {
        int r = delta[cls][q * base + d];
        if (r >= 0) t[q][r] += 1;
      }
    return t;
  }

  bool accepts_word(const DigitWord& w) const {
    if (leading_zeros == LeadingZeros::Forbidden && !w.empty() && w.digits.front() == 0) return false;
    int q = initial;
    for (std::size_t j = 0; j < w.size(); ++j) {
      q = step(q, w.digits[j], w.size() - 1 - j);
      if (q < 0) return false;
    }
    return accepting[q];
  }
};

namespace detail {

// Aho-Corasick factor automaton over MSD-first blocks. Each node carries,
// per position class, whether reaching it completes a forbidden block.
inline CountingAutomaton compile_blocks(const PeriodicBlockSpec& spec) {
  const int b = spec.base;
  std::vector<std::vector<int>> go(1, std::vector<int>(b, -1));
  std::vector<std::set<int>> ends(1);  // residues of blocks ending exactly here
  for (int r = 0; r < spec.period; ++r)
    for (const auto& blk : spec.forbidden[r]) {
      int node = 0;
      for (int d : blk) {
        if (go[node][d] < 0) {
          go[node][d] = static_cast<int>(go.size());
          go.emplace_back(b, -1);
          ends.emplace_back();
        }
        node = go[node][d];
      }
      ends[node].insert(r);
    }
  const int n = static_cast<int>(go.size());
  std::vector<int> link(n, 0);
  std::vector<std::set<int>> out = ends;
  std::queue<int> bfs;
  for (int d = 0; d < b; ++d) {
    if (go[0][d] < 0) {
      go[0][d] = 0;
    } else {
      link[go[0][d]] = 0;
      bfs.push(go[0][d]);
    }
  }
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int r : out[link[u]]) out[u].insert(r);
    for (int d = 0; d < b; ++d) {
      int v = go[u][d];
      if (v < 0) {
        go[u][d] = go[link[u]][d];
      } else {
        link[v] = go[link[u]][d];
        bfs.push(v);
      }
    }
  }
  CountingAutomaton a;
  a.base = b;
  a.period = spec.period;
  a.num_states = n;
  a.initial = 0;
  a.accepting.assign(n, true);
  a.leading_zeros = spec.leading_zeros;
  a.delta.assign(spec.period, std::vector<int>(static_cast<std::size_t>(n) * b, -1));
  for (int c = 0; c < spec.period; ++c)
    for (int q = 0; q < n; ++q)
      for (int d = 0; d < b; ++d) {
        int t = go[q][d];
        a.delta[c][q * b + d] = out[t].count(c) ? -1 : t;
      }
  return a;
}

// Subset construction over the reversal of an LSD-first DFA, giving an
// MSD-first DFA for the same language.
inline CountingAutomaton reverse_lsd_dfa(const DfaSpec& dfa) {
  const int b = dfa.base;
  const int n = dfa.num_states();
  using Subset = std::vector<bool>;
  std::map<Subset, int> index;
  std::vector<Subset> subsets;
  Subset start(n);
  for (int q = 0; q < n; ++q) start[q] = dfa.accepting[q];
  index[start] = 0;
  subsets.push_back(start);
  std::vector<std::vector<int>> trans;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<int> row(b);
    for (int d = 0; d < b; ++d) {
      Subset next(n);
      for (int q = 0; q < n; ++q) next[q] = subsets[i][dfa.transitions[q][d]];
      auto [it, fresh] = index.emplace(next, static_cast<int>(subsets.size()));
      if (fresh) subsets.push_back(next);
      row[d] = it->second;
    }
    trans.push_back(row);
  }
  CountingAutomaton a;
  a.base = b;
  a.num_states = static_cast<int>(subsets.size());
  a.initial = 0;
  a.leading_zeros = dfa.leading_zeros;
  a.accepting.resize(a.num_states);
  a.delta.assign(1, std::vector<int>(static_cast<std::size_t>(a.num_states) * b));
  for (int s = 0; s < a.num_states; ++s) {
    a.accepting[s] = subsets[s][dfa.initial];
    for (int d = 0; d < b; ++d) a.delta[0][s * b + d] = trans[s][d];
  }
  return a;
}

}  // namespace detail

inline CountingAutomaton compile(const LanguageSpec& spec) {
  validate(spec);
  return std::visit(
      [](const auto& v) -> CountingAutomaton {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DigitRestrictionSpec>) {
          CountingAutomaton a;
          a.base = v.base;
          a.prefix_len = static_cast<int>(v.prefix.size());
          a.period = static_cast<int>(v.period.size());
          a.num_states = 1;
          a.accepting = {true};
          a.leading_zeros = v.leading_zeros;
          a.delta.assign(a.num_classes(), std::vector<int>(v.base, -1));
          for (int c = 0; c < a.num_classes(); ++c) {
            const auto& allowed = c < a.prefix_len ? v.prefix[c] : v.period[c - a.prefix_len];
            for (int d : allowed) a.delta[c][d] = 0;
          }
          return a;
        } else if constexpr (std::is_same_v<T, PeriodicBlockSpec>) {
          return detail::compile_blocks(v);
        } else if constexpr (std::is_same_v<T, PowerAvoidanceSpec>) {
          CountingAutomaton a;
          a.base = v.base;
          a.num_states = v.exponent;
          a.accepting.assign(v.exponent, true);
          a.leading_zeros = v.leading_zeros;
          a.delta.assign(1, std::vector<int>(static_cast<std::size_t>(v.exponent) * v.base));
          for (int q = 0; q < v.exponent; ++q)
            for (int d = 0; d < v.base; ++d)
              a.delta[0][q * v.base + d] = d != v.letter ? 0 : (q + 1 < v.exponent ? q + 1 : -1);
          return a;
        } else if constexpr (std::is_same_v<T, DfaSpec>) {
          if (v.reading == Reading::LsdFirst) return detail::reverse_lsd_dfa(v);
          CountingAutomaton a;
          a.base = v.base;
          a.num_states = v.num_states();
          a.initial = v.initial;
          a.accepting = v.accepting;
          a.leading_zeros = v.leading_zeros;
          a.delta.assign(1, std::vector<int>(static_cast<std::size_t>(a.num_states) * v.base));
          for (int q = 0; q < a.num_states; ++q)
            for (int d = 0; d < v.base; ++d) a.delta[0][q * v.base + d] = v.transitions[q][d];
          return a;
        } else {
          throw NonRegular(
              "the evil-position factor language has a non-automatic characteristic sequence");
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

using nlohmann::json;

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "." + key, "missing field");
  return *it;
}

inline int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

inline std::vector<int> get_digit_set(const json& j, int b, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of digits");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    int d = get_int(j[i], path + "[" + std::to_string(i) + "]");
    if (d < 0 || d >= b) throw ParseError(path + "[" + std::to_string(i) + "]", "digit out of range for base");
    out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw ParseError(path, "allowed-digit set must be non-empty");
  return out;
}

inline std::vector<int> get_block(const json& j, int b, const std::string& path) {
  std::vector<int> blk;
  if (j.is_string()) {
    for (char c : j.get<std::string>()) {
      int d = digit_value(c);
      if (d < 0 || d >= b) throw ParseError(path, std::string("digit '") + c + "' out of range for base");
      blk.push_back(d);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      int d = get_int(j[i], path + "[" + std::to_string(i) + "]");
      if (d < 0 || d >= b) throw ParseError(path + "[" + std::to_string(i) + "]", "digit out of range for base");
      blk.push_back(d);
    }
  } else {
    throw ParseError(path, "block must be a digit string or digit array");
  }
  if (blk.empty()) throw ParseError(path, "block must be non-empty");
  return blk;
}

inline LeadingZeros get_policy(const json& j, LeadingZeros fallback) {
  auto it = j.find("leading_zeros");
  if (it == j.end()) return fallback;
  if (*it == "forbidden") return LeadingZeros::Forbidden;
  if (*it == "allowed") return LeadingZeros::Allowed;
  throw ParseError("$.leading_zeros", "expected \"forbidden\" or \"allowed\"");
}

inline std::string block_string(const std::vector<int>& blk, int b) {
  std::string s;
  for (int d : blk) s.push_back(digit_char(d));
  (void)b;
  return s;
}

}  // namespace detail

inline LanguageSpec parse_spec(const nlohmann::json& j) {
  using detail::get_int;
  using detail::require;
  if (!j.is_object()) throw ParseError("$", "expected an object");
  const auto& kind_j = require(j, "kind", "$");
  if (!kind_j.is_string()) throw ParseError("$.kind", "expected a string");
  std::string kind = kind_j.get<std::string>();
  if (kind == "evil_factor") {
    if (j.contains("base") && get_int(j["base"], "$.base") != 2)
      throw ParseError("$.base", "evil_factor is defined over base 2");
    return EvilFactorSpec{detail::get_policy(j, LeadingZeros::Allowed)};
  }
  int b = get_int(require(j, "base", "$"), "$.base");
  if (b < 2) throw ParseError("$.base", "base must be >= 2");
  LeadingZeros lz = detail::get_policy(j, LeadingZeros::Forbidden);
  LanguageSpec out;
  if (kind == "digit_restriction") {
    DigitRestrictionSpec s{b, {}, {}, lz};
    if (j.contains("prefix")) {
      const auto& p = j["prefix"];
      if (!p.is_array()) throw ParseError("$.prefix", "expected an array");
      for (std::size_t i = 0; i < p.size(); ++i)
        s.prefix.push_back(detail::get_digit_set(p[i], b, "$.prefix[" + std::to_string(i) + "]"));
    }
    const auto& per = require(j, "period", "$");
    if (!per.is_array() || per.empty()) throw ParseError("$.period", "expected a non-empty array");
    for (std::size_t i = 0; i < per.size(); ++i)
      s.period.push_back(detail::get_digit_set(per[i], b, "$.period[" + std::to_string(i) + "]"));
    out = s;
  } else if (kind == "periodic_blocks") {
    PeriodicBlockSpec s;
    s.base = b;
    s.leading_zeros = lz;
    s.period = get_int(require(j, "period_length", "$"), "$.period_length");
    if (s.period < 1) throw ParseError("$.period_length", "must be >= 1");
    s.forbidden.assign(s.period, {});
    const auto& f = require(j, "forbidden", "$");
    if (!f.is_array()) throw ParseError("$.forbidden", "expected an array");
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::string path = "$.forbidden[" + std::to_string(i) + "]";
      int r = get_int(require(f[i], "residue", path), path + ".residue");
      if (r < 0 || r >= s.period) throw ParseError(path + ".residue", "residue out of range");
      const auto& blocks = require(f[i], "blocks", path);
      if (!blocks.is_array()) throw ParseError(path + ".blocks", "expected an array");
      for (std::size_t k = 0; k < blocks.size(); ++k)
        s.forbidden[r].push_back(detail::get_block(blocks[k], b, path + ".blocks[" + std::to_string(k) + "]"));
    }
    out = s;
  } else if (kind == "power_avoidance") {
    PowerAvoidanceSpec s;
    s.base = b;
    s.leading_zeros = lz;
    s.letter = get_int(require(j, "letter", "$"), "$.letter");
    if (s.letter < 0 || s.letter >= b) throw ParseError("$.letter", "letter out of range for base");
    s.exponent = get_int(require(j, "exponent", "$"), "$.exponent");
    if (s.exponent < 1) throw ParseError("$.exponent", "must be >= 1");
    out = s;
  } else if (kind == "dfa") {
    DfaSpec s;
    s.base = b;
    s.leading_zeros = lz;
    const auto& tr = require(j, "transitions", "$");
    if (!tr.is_array() || tr.empty()) throw ParseError("$.transitions", "expected a non-empty array");
    int n = static_cast<int>(tr.size());
    for (int q = 0; q < n; ++q) {
      std::string path = "$.transitions[" + std::to_string(q) + "]";
      if (!tr[q].is_array() || static_cast<int>(tr[q].size()) != b)
        throw ParseError(path, "expected one target per digit");
      std::vector<int> row;
      for (int d = 0; d < b; ++d) {
        int t = get_int(tr[q][d], path + "[" + std::to_string(d) + "]");
        if (t < 0 || t >= n) throw ParseError(path + "[" + std::to_string(d) + "]", "state out of range");
        row.push_back(t);
      }
      s.transitions.push_back(row);
    }
    s.initial = j.contains("initial") ? get_int(j["initial"], "$.initial") : 0;
    if (s.initial < 0 || s.initial >= n) throw ParseError("$.initial", "state out of range");
    s.accepting.assign(n, false);
    const auto& acc = require(j, "accepting", "$");
    if (!acc.is_array()) throw ParseError("$.accepting", "expected an array of states");
    for (std::size_t i = 0; i < acc.size(); ++i) {
      int q = get_int(acc[i], "$.accepting[" + std::to_string(i) + "]");
      if (q < 0 || q >= n) throw ParseError("$.accepting[" + std::to_string(i) + "]", "state out of range");
      s.accepting[q] = true;
    }
    if (j.contains("reading")) {
      if (j["reading"] == "msd_first") s.reading = Reading::MsdFirst;
      else if (j["reading"] == "lsd_first") s.reading = Reading::LsdFirst;
      else throw ParseError("$.reading", "expected \"msd_first\" or \"lsd_first\"");
    }
    out = s;
  } else {
    throw ParseError("$.kind", "unknown kind '" + kind + "'");
  }
  validate(out);
  return out;
}

inline LanguageSpec parse_spec_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("$", e.what());
  }
  return parse_spec(j);
}

inline nlohmann::json to_json(const LanguageSpec& spec) {
  nlohmann::json j;
  j["kind"] = kind_name(spec);
  j["base"] = base_of(spec);
  j["leading_zeros"] = leading_zeros_of(spec) == LeadingZeros::Forbidden ? "forbidden" : "allowed";
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DigitRestrictionSpec>) {
          j["prefix"] = v.prefix;
          j["period"] = v.period;
        } else if constexpr (std::is_same_v<T, PeriodicBlockSpec>) {
          j["period_length"] = v.period;
          j["forbidden"] = nlohmann::json::array();
          for (int r = 0; r < v.period; ++r) {
            nlohmann::json blocks = nlohmann::json::array();
            for (const auto& blk : v.forbidden[r]) blocks.push_back(detail::block_string(blk, v.base));
            j["forbidden"].push_back({{"residue", r}, {"blocks", blocks}});
          }
        } else if constexpr (std::is_same_v<T, PowerAvoidanceSpec>) {
          j["letter"] = v.letter;
          j["exponent"] = v.exponent;
        } else if constexpr (std::is_same_v<T, DfaSpec>) {
          j["initial"] = v.initial;
          std::vector<int> acc;
          for (int q = 0; q < v.num_states(); ++q)
            if (v.accepting[q]) acc.push_back(q);
          j["accepting"] = acc;
          j["transitions"] = v.transitions;
          j["reading"] = v.reading == Reading::MsdFirst ? "msd_first" : "lsd_first";
        }
      },
      spec);
  return j;
}

// ---------------------------------------------------------------------------
// Built-in languages

namespace detail {

inline std::vector<int> digits_except(int b, std::initializer_list<int> skip) {
  std::vector<int> out;
  for (int d = 0; d < b; ++d)
    if (std::find(skip.begin(), skip.end(), d) == skip.end()) out.push_back(d);
  return out;
}

inline PeriodicBlockSpec two_residue(const std::vector<std::string>& even,
                                     const std::vector<std::string>& odd, LeadingZeros lz) {
  PeriodicBlockSpec s;
  s.base = 10;
  s.period = 2;
  s.leading_zeros = lz;
  s.forbidden.assign(2, {});
  for (const auto& e : even) s.forbidden[0].push_back(parse_word(e, 10).digits);
  for (const auto& o : odd) s.forbidden[1].push_back(parse_word(o, 10).digits);
  return s;
}

}  // namespace detail

inline std::vector<std::string> preset_names() {
  return {"L1", "L2", "L2prime", "L5", "kempner", "full10", "LJ", "LJprime", "powers2",
          "L3_2_2", "L3_2_3", "L3_3_2", "L3_10_2", "aa10", "L4_3_1", "alt9"};
}

// Named languages; `L3_<b>_<k>` avoids 1^k in base b, `L4_<b>_<a>` avoids the
// single letter a, `aa10` is the leading-zero-tolerant 11-avoiding decimal
// language and `alt9` forbids 9 at every odd position.
inline LanguageSpec preset(const std::string& name) {
  using LZ = LeadingZeros;
  if (name == "L1") return detail::two_residue({"12"}, {"89"}, LZ::Forbidden);
  if (name == "L2") return detail::two_residue({"12"}, {"21"}, LZ::Forbidden);
  if (name == "L2prime") return detail::two_residue({"12"}, {"21"}, LZ::Allowed);
  if (name == "L5") return detail::two_residue({"12", "89"}, {"89"}, LZ::Forbidden);
  if (name == "kempner") return DigitRestrictionSpec{10, {}, {detail::digits_except(10, {9})}, LZ::Forbidden};
  if (name == "full10") return DigitRestrictionSpec{10, {}, {detail::digits_except(10, {})}, LZ::Forbidden};
  if (name == "alt9")
    return DigitRestrictionSpec{10, {}, {detail::digits_except(10, {}), detail::digits_except(10, {9})}, LZ::Forbidden};
  if (name == "LJ") return EvilFactorSpec{LZ::Allowed};
  if (name == "LJprime") return EvilFactorSpec{LZ::Forbidden};
  if (name == "powers2") {
    DfaSpec d;
    d.base = 2;
    d.initial = 0;
    d.transitions = {{2, 1}, {1, 2}, {2, 2}};
    d.accepting = {false, true, false};
    d.leading_zeros = LZ::Forbidden;
    return d;
  }
  if (name == "aa10") return PowerAvoidanceSpec{10, 1, 2, LZ::Allowed};
  if (name.rfind("L3_", 0) == 0 || name.rfind("L4_", 0) == 0) {
    auto sep = name.find('_', 3);
    if (sep != std::string::npos) {
      try {
        int b = std::stoi(name.substr(3, sep - 3));
        int x = std::stoi(name.substr(sep + 1));
        if (name[1] == '3') return PowerAvoidanceSpec{b, 1, x, LZ::Forbidden};
        auto allowed = detail::digits_except(b, {x});
        LanguageSpec s = DigitRestrictionSpec{b, {}, {allowed}, LZ::Forbidden};
        validate(s);
        return s;
      } catch (const std::invalid_argument&) {
      } catch (const std::out_of_range&) {
      }
    }
  }
  throw InvalidSpec("unknown preset '" + name + "'");
}

}  // namespace digitlang
