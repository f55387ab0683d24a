#pragma once

// Characteristic sequences as automatic / regular sequences: LSD-first
// DFAOs built exactly from the compiled automaton, kernel exploration,
// linear representations, sum matrices and base lifting.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "digitlang/core.hpp"
#include "digitlang/counting.hpp"
#include "digitlang/langspec.hpp"
#include "digitlang/matrix.hpp"
#include "digitlang/numeration.hpp"

namespace digitlang {

// Reads base-b digits least significant first. With `zero_robust` set,
// appending zeros (i.e. padding the number with leading zeros) never
// changes the output.
struct Dfao {
  int base = 2;
  int num_states = 0;
  int initial = 0;
  std::vector<std::vector<int>> delta;  // [state][digit]
  std::vector<int> output;
  bool zero_robust = true;

  int run(const std::vector<int>& lsd_digits) const {
    int q = initial;
    for (int d : lsd_digits) q = delta[q][d];
    return q;
  }

  int value_digits(const std::vector<int>& lsd_digits) const { return output[run(lsd_digits)]; }

  int value(std::uint64_t n) const {
    int q = initial;
    while (n) {
      q = delta[q][n % base];
      n /= base;
    }
    return output[q];
  }
};

// s_n = [rep_b(n) in L] by direct membership; rep_b(0) is the empty word.
inline int characteristic(const LanguageSpec& spec, std::uint64_t n) {
  return membership(spec, to_digits(n, base_of(spec))) ? 1 : 0;
}

// Moore minimisation restricted to reachable states.
inline Dfao minimize(const Dfao& in) {
  std::vector<int> order{in.initial};
  std::vector<int> seen(in.num_states, -1);
  seen[in.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int d = 0; d < in.base; ++d) {
      int r = in.delta[order[i]][d];
      if (seen[r] < 0) {
        seen[r] = static_cast<int>(order.size());
        order.push_back(r);
      }
    }
  std::size_t n = order.size();
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = in.output[order[i]];
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<int>, int> sig_id;
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> sig{cls[i]};
      for (int d = 0; d < in.base; ++d) sig.push_back(cls[seen[in.delta[order[i]][d]]]);
      auto [it, fresh] = sig_id.try_emplace(sig, static_cast<int>(sig_id.size()));
      next[i] = it->second;
    }
    bool stable = sig_id.size() == count;
    count = sig_id.size();
    cls = std::move(next);
    if (stable) break;
  }
  // renumber by first appearance in BFS order so the initial state is 0
  std::vector<int> rename(count, -1);
  int k = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (rename[cls[i]] < 0) rename[cls[i]] = k++;
  Dfao out;
  out.base = in.base;
  out.num_states = k;
  out.initial = 0;
  out.zero_robust = in.zero_robust;
  out.delta.assign(k, std::vector<int>(in.base, 0));
  out.output.assign(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int s = rename[cls[i]];
    out.output[s] = in.output[order[i]];
    for (int d = 0; d < in.base; ++d) out.delta[s][d] = rename[cls[seen[in.delta[order[i]][d]]]];
  }
  return out;
}

// Reverse-determinise the MSD-first automaton, close under zero padding,
// then minimise.
inline Dfao dfao_from_automaton(const CountingAutomaton& a) {
  const int b = a.base;
  const int n = a.num_states;
  auto next_counter = [&](int c) { return c + 1 < a.num_classes() ? c + 1 : a.prefix_len; };

  // subset states: (position class counter, set of MSD states whose
  // continuation over the digits read so far is accepting)
  using Key = std::pair<int, std::vector<bool>>;
  std::map<Key, int> ids;
  std::vector<Key> keys;
  std::vector<std::vector<int>> sdelta;
  auto intern = [&](Key k) {
    auto [it, fresh] = ids.try_emplace(k, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(std::move(k));
    return it->second;
  };
  intern({0, a.accepting});
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::vector<int> row(b);
    for (int d = 0; d < b; ++d) {
      const auto [c, set] = keys[i];
      std::vector<bool> s(n, false);
      for (int q = 0; q < n; ++q) {
        int r = a.delta[c][q * b + d];
        s[q] = r >= 0 && set[r];
      }
      row[d] = intern({next_counter(c), std::move(s)});
    }
    sdelta.push_back(std::move(row));
  }
  auto accepts = [&](int sid) { return static_cast<bool>(keys[sid].second[a.initial]); };

  // zero-padding closure: remember the verdict at the last nonzero digit
  std::map<std::pair<int, int>, int> pid;
  std::vector<std::pair<int, int>> pkeys;
  auto pintern = [&](std::pair<int, int> k) {
    auto [it, fresh] = pid.try_emplace(k, static_cast<int>(pkeys.size()));
    if (fresh) pkeys.push_back(k);
    return it->second;
  };
  Dfao raw;
  raw.base = b;
  pintern({accepts(0) ? 1 : 0, 0});
  for (std::size_t i = 0; i < pkeys.size(); ++i) {
    std::vector<int> row(b);
    for (int d = 0; d < b; ++d) {
      auto [bit, sid] = pkeys[i];
      int s2 = sdelta[sid][d];
      row[d] = pintern({d == 0 ? bit : (accepts(s2) ? 1 : 0), s2});
    }
    raw.delta.push_back(std::move(row));
  }
  raw.num_states = static_cast<int>(pkeys.size());
  for (const auto& k : pkeys) raw.output.push_back(k.first);
  raw.initial = 0;
  return minimize(raw);
}

inline Dfao dfao_from_spec(const LanguageSpec& spec) {
  if (!is_regular(spec)) throw NonRegular("no DFAO exists for " + kind_name(spec));
  return dfao_from_automaton(compile(spec));
}

// Same sequence read in base b^l: one big digit is l small digits, least
// significant first.
inline Dfao lift_dfao(const Dfao& d, int l) {
  if (l < 1) throw DomainError("lift exponent must be >= 1");
  if (!d.zero_robust) throw DomainError("lifting needs a zero-robust DFAO");
  long big = 1;
  for (int i = 0; i < l; ++i) big *= d.base;
  if (big > 1 << 20) throw ResourceError("lifted base too large");
  Dfao out;
  out.base = static_cast<int>(big);
  out.num_states = d.num_states;
  out.initial = d.initial;
  out.output = d.output;
  out.zero_robust = true;
  out.delta.assign(d.num_states, std::vector<int>(out.base));
  for (int q = 0; q < d.num_states; ++q)
    for (long D = 0; D < big; ++D) {
      int s = q;
      long x = D;
      for (int i = 0; i < l; ++i) {
        s = d.delta[s][x % d.base];
        x /= d.base;
      }
      out.delta[q][D] = s;
    }
  return minimize(out);
}

// ---------------------------------------------------------------------------
// Kernel

struct KernelElement {
  int e = 0;
  std::uint64_t r = 0;  // the subsequence n -> s(b^e n + r)
  std::vector<int> terms;
};

// Heuristic: two subsequences are identified when their first `terms`
// values agree, so a short prefix can merge distinct elements.
inline std::vector<KernelElement> kernel_sequences(const Dfao& d, int depth, int terms = 48) {
  std::vector<KernelElement> out;
  std::set<std::vector<int>> seen;
  auto make = [&](int e, std::uint64_t r) {
    KernelElement k{e, r, {}};
    std::uint64_t scale = 1;
    for (int i = 0; i < e; ++i) scale *= d.base;
    for (int n = 0; n < terms; ++n) k.terms.push_back(d.value(scale * n + r));
    return k;
  };
  std::vector<KernelElement> frontier{make(0, 0)};
  seen.insert(frontier[0].terms);
  out.push_back(frontier[0]);
  for (int e = 0; e < depth && !frontier.empty(); ++e) {
    std::vector<KernelElement> next;
    for (const auto& k : frontier) {
      std::uint64_t scale = 1;
      for (int i = 0; i < k.e; ++i) scale *= d.base;
      for (int digit = 0; digit < d.base; ++digit) {
        auto child = make(k.e + 1, k.r + digit * scale);
        if (seen.insert(child.terms).second) {
          out.push_back(child);
          next.push_back(child);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear representations

// s_n = V * M_{w_k} ... M_{w_0} * W for rep_b(n) = w_k ... w_0.
struct LinearRepresentation {
  int base = 2;
  RatMatrix V;               // 1 x dim
  std::vector<RatMatrix> M;  // base matrices, dim x dim
  RatMatrix W;               // dim x 1

  std::size_t dim() const { return W.rows; }

  Rational value_digits(const std::vector<int>& lsd_digits) const {
    RatMatrix x = W;
    for (int d : lsd_digits) x = M[d] * x;
    return (V * x)(0, 0);
  }

  Rational value(std::uint64_t n) const {
    RatMatrix x = W;
    while (n) {
      x = M[n % base] * x;
      n /= base;
    }
    return (V * x)(0, 0);
  }
};

inline LinearRepresentation linear_representation(const Dfao& d) {
  std::size_t n = d.num_states;
  LinearRepresentation rep;
  rep.base = d.base;
  rep.V = RatMatrix(1, n);
  rep.W = RatMatrix(n, 1);
  for (std::size_t i = 0; i < n; ++i) rep.V(0, i) = d.output[i];
  rep.W(d.initial, 0) = 1;
  for (int digit = 0; digit < d.base; ++digit) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(d.delta[i][digit], i) = 1;
    rep.M.push_back(std::move(m));
  }
  return rep;
}

inline RatMatrix sum_matrix(const LinearRepresentation& rep) {
  RatMatrix s(rep.dim(), rep.dim());
  for (const auto& m : rep.M) s = s + m;
  return s;
}

namespace detail {

inline LinearRepresentation restrict(const LinearRepresentation& rep, const std::vector<std::size_t>& keep) {
  LinearRepresentation out;
  out.base = rep.base;
  std::size_t k = keep.size();
  out.V = RatMatrix(1, k);
  out.W = RatMatrix(k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    out.V(0, i) = rep.V(0, keep[i]);
    out.W(i, 0) = rep.W(keep[i], 0);
  }
  for (const auto& m : rep.M) {
    RatMatrix r(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) r(i, j) = m(keep[i], keep[j]);
    out.M.push_back(std::move(r));
  }
  return out;
}

// Basis (as columns) of span{ M_w W } together with the representation
// expressed in that basis.
inline LinearRepresentation reachable_part(const LinearRepresentation& rep) {
  std::size_t n = rep.dim();
  std::vector<std::vector<Rational>> basis;   // original coordinates
  std::vector<std::vector<Rational>> echelon; // reduced copies for independence tests
  std::vector<std::size_t> pivots;
  auto reduce = [&](std::vector<Rational> v) {
    for (std::size_t i = 0; i < echelon.size(); ++i) {
      const Rational& f = v[pivots[i]];
      if (f == 0) continue;
      Rational g = f / echelon[i][pivots[i]];
      for (std::size_t j = 0; j < n; ++j) v[j] -= g * echelon[i][j];
    }
    return v;
  };
  auto try_add = [&](const std::vector<Rational>& v) {
    auto r = reduce(v);
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] != 0) {
        echelon.push_back(r);
        pivots.push_back(j);
        basis.push_back(v);
        return true;
      }
    return false;
  };
  std::vector<Rational> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = rep.W(i, 0);
  try_add(w);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& m : rep.M) {
      std::vector<Rational> v(n, 0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) v[r] += m(r, c) * basis[i][c];
      try_add(v);
    }
  std::size_t k = basis.size();
  if (k == 0) {
    LinearRepresentation z;
    z.base = rep.base;
    z.V = RatMatrix(1, 0);
    z.W = RatMatrix(0, 1);
    z.M.assign(rep.base, RatMatrix(0, 0));
    return z;
  }
  // coordinates of a vector in the basis: solve B x = v
  std::vector<std::vector<Rational>> brows(n, std::vector<Rational>(k));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < k; ++c) brows[r][c] = basis[c][r];
  auto coords = [&](const std::vector<Rational>& v) {
    auto x = solve_exact(brows, v, k);
    if (!x) throw DomainError("vector outside the reachable space");
    return *x;
  };
  LinearRepresentation out;
  out.base = rep.base;
  out.W = RatMatrix(k, 1);
  out.W(0, 0) = 1;  // W is the first basis vector
  out.V = RatMatrix(1, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r) out.V(0, c) += rep.V(0, r) * basis[c][r];
  for (const auto& m : rep.M) {
    RatMatrix nm(k, k);
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<Rational> v(n, 0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) v[r] += m(r, j) * basis[c][j];
      auto x = coords(v);
      for (std::size_t r = 0; r < k; ++r) nm(r, c) = x[r];
    }
    out.M.push_back(std::move(nm));
  }
  return out;
}

inline LinearRepresentation transpose(const LinearRepresentation& rep) {
  LinearRepresentation t;
  t.base = rep.base;
  t.V = rep.W.transpose();
  t.W = rep.V.transpose();
  for (const auto& m : rep.M) t.M.push_back(m.transpose());
  return t;
}

}  // namespace detail

// Drops states that are unreachable from W or cannot reach the support of
// V; the sequence is unchanged and entries stay 0/1 for DFAO input.
inline LinearRepresentation trim(const LinearRepresentation& rep) {
  std::size_t n = rep.dim();
  std::vector<char> fwd(n, 0), bwd(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (rep.W(i, 0) != 0) fwd[i] = 1, stack.push_back(i);
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (const auto& m : rep.M)
      for (std::size_t j = 0; j < n; ++j)
        if (m(j, i) != 0 && !fwd[j]) fwd[j] = 1, stack.push_back(j);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (rep.V(0, i) != 0) bwd[i] = 1, stack.push_back(i);
  while (!stack.empty()) {
    std::size_t j = stack.back();
    stack.pop_back();
    for (const auto& m : rep.M)
      for (std::size_t i = 0; i < n; ++i)
        if (m(j, i) != 0 && !bwd[i]) bwd[i] = 1, stack.push_back(i);
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (fwd[i] && bwd[i]) keep.push_back(i);
  return detail::restrict(rep, keep);
}

// Exact reduction to the minimal dimension (rank of the Hankel matrix):
// reachable part, then the reachable part of the transpose.
inline LinearRepresentation minimize(const LinearRepresentation& rep) {
  auto a = detail::reachable_part(rep);
  auto b = detail::reachable_part(detail::transpose(a));
  return detail::transpose(b);
}

// Base b^l representation: M'_w = M_{d_1} ... M_{d_l}, d_1 the most
// significant base-b digit of w.
inline LinearRepresentation lift_base(const LinearRepresentation& rep, int l) {
  if (l < 1) throw DomainError("lift exponent must be >= 1");
  long big = 1;
  for (int i = 0; i < l; ++i) big *= rep.base;
  if (big > 1 << 16) throw ResourceError("lifted base too large");
  LinearRepresentation out;
  out.base = static_cast<int>(big);
  out.V = rep.V;
  out.W = rep.W;
  for (long w = 0; w < big; ++w) {
    std::vector<int> ds;
    long x = w;
    for (int i = 0; i < l; ++i) {
      ds.push_back(static_cast<int>(x % rep.base));
      x /= rep.base;
    }
    RatMatrix m = RatMatrix::identity(rep.dim());
    for (int i = l - 1; i >= 0; --i) m = m * rep.M[ds[i]];
    out.M.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Export

inline std::string to_dot(const Dfao& d, const std::string& name = "dfao") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  start [shape=point];\n";
  for (int q = 0; q < d.num_states; ++q)
    os << "  q" << q << " [shape=circle,label=\"" << q << "/" << d.output[q] << "\"];\n";
  os << "  start -> q" << d.initial << ";\n";
  for (int q = 0; q < d.num_states; ++q) {
    std::map<int, std::vector<int>> by_target;
    for (int digit = 0; digit < d.base; ++digit) by_target[d.delta[q][digit]].push_back(digit);
    for (const auto& [t, ds] : by_target) {
      os << "  q" << q << " -> q" << t << " [label=\"";
      for (std::size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << ds[i];
      os << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

inline nlohmann::json to_json(const Dfao& d) {
  return {{"base", d.base},       {"states", d.num_states}, {"initial", d.initial},
          {"reading", "lsd_first"}, {"zero_robust", d.zero_robust},
          {"output", d.output},   {"transitions", d.delta}};
}

inline nlohmann::json to_json(const LinearRepresentation& rep) {
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : rep.M) ms.push_back(to_json(m));
  return {{"base", rep.base}, {"dim", rep.dim()}, {"V", to_json(rep.V)}, {"M", ms}, {"W", to_json(rep.W)}};
}

}  // namespace digitlang
