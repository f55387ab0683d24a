#pragma once

// Per-length word counts by exhaustive enumeration, by transfer matrices
// and by fitted linear recurrences, plus simple sequence transforms.

#include <cmath>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "digitlang/core.hpp"
#include "digitlang/evilwords.hpp"
#include "digitlang/langspec.hpp"

namespace digitlang {

// Anything that reads digits most significant first with transitions that
// may depend on the (least-significant-anchored) position being read.
template <class A>
concept PositionalAutomaton = requires(const A& a, int q, int d, std::size_t pos) {
  { a.base } -> std::convertible_to<int>;
  { a.num_states } -> std::convertible_to<int>;
  { a.initial } -> std::convertible_to<int>;
  { a.leading_zeros } -> std::convertible_to<LeadingZeros>;
  { a.accepts(q) } -> std::convertible_to<bool>;
  { a.step(q, d, pos) } -> std::convertible_to<int>;
};

struct CountSequence {
  std::string label;
  std::vector<BigInt> values;
};

struct LinearRecurrence {
  // u_{n+k} = coeffs[k-1] u_{n+k-1} + ... + coeffs[0] u_n
  std::vector<Rational> coeffs;
  std::vector<BigInt> initial;

  std::size_t order() const { return coeffs.size(); }

  // Primitive integer characteristic polynomial, ascending powers:
  // x^k - c_{k-1} x^{k-1} - ... - c_0 with denominators cleared.
  std::vector<BigInt> characteristic_polynomial() const {
    BigInt l = 1;
    for (const auto& c : coeffs) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
    std::vector<BigInt> p(order() + 1);
    p[order()] = l;
    for (std::size_t i = 0; i < order(); ++i) {
      Rational v = -coeffs[i] * l;
      p[i] = boost::multiprecision::numerator(v);
    }
    return p;
  }

  bool integer_coefficients() const {
    for (const auto& c : coeffs)
      if (boost::multiprecision::denominator(c) != 1) return false;
    return true;
  }

  std::vector<BigInt> extend(std::size_t count) const {
    std::vector<Rational> v(initial.begin(), initial.end());
    while (v.size() < count) {
      Rational next = 0;
      std::size_t n = v.size() - order();
      for (std::size_t i = 0; i < order(); ++i) next += coeffs[i] * v[n + i];
      v.push_back(next);
    }
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < count; ++i) {
      if (boost::multiprecision::denominator(v[i]) != 1) throw DomainError("recurrence left the integers");
      out.push_back(boost::multiprecision::numerator(v[i]));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration

inline BigInt brute_count(const LanguageSpec& spec, int n) {
  const int b = base_of(spec);
  double total = std::pow(static_cast<double>(b), n);
  if (total > 1e8) throw ResourceError("b^n = " + std::to_string(total) + " exceeds 10^8");
  DigitWord w{b, std::vector<int>(n, 0)};
  BigInt count = 0;
  while (true) {
    if (membership(spec, w)) ++count;
    int j = n - 1;
    while (j >= 0 && w.digits[j] == b - 1) w.digits[j--] = 0;
    if (j < 0) break;
    ++w.digits[j];
  }
  return count;
}

// ---------------------------------------------------------------------------
// Transfer-matrix counting

// completions[m][q] = number of ways to fill positions m-1..0 from state q
// so that the run ends accepting. One sweep yields every length up to N.
template <PositionalAutomaton A>
std::vector<std::vector<BigInt>> completion_vectors(const A& a, std::size_t N) {
  std::vector<std::vector<BigInt>> y;
  y.reserve(N + 1);
  std::vector<BigInt> cur(a.num_states);
  for (int q = 0; q < a.num_states; ++q) cur[q] = a.accepts(q) ? 1 : 0;
  y.push_back(cur);
  for (std::size_t m = 0; m < N; ++m) {
    std::vector<BigInt> next(a.num_states);
    for (int q = 0; q < a.num_states; ++q)
      for (int d = 0; d < a.base; ++d) {
        int r = a.step(q, d, m);
        if (r >= 0) next[q] += y.back()[r];
      }
    y.push_back(std::move(next));
  }
  return y;
}

// Length-n words accepted, with the leading digit restricted to 1..b-1
// when `nonzero_leading` is set.
template <PositionalAutomaton A>
BigInt count_from_completions(const A& a, const std::vector<std::vector<BigInt>>& y, std::size_t n,
                              bool nonzero_leading) {
  if (n == 0) return a.accepts(a.initial) ? 1 : 0;
  BigInt total = 0;
  for (int d = nonzero_leading ? 1 : 0; d < a.base; ++d) {
    int r = a.step(a.initial, d, n - 1);
    if (r >= 0) total += y[n - 1][r];
  }
  return total;
}

template <PositionalAutomaton A>
std::vector<BigInt> automaton_counts(const A& a, std::size_t N, bool nonzero_leading) {
  auto y = completion_vectors(a, N);
  std::vector<BigInt> out;
  for (std::size_t n = 0; n <= N; ++n) out.push_back(count_from_completions(a, y, n, nonzero_leading));
  return out;
}

// Counts by cycling the per-class transfer matrices, most significant
// position first.
inline BigInt auto_count(const CountingAutomaton& a, std::size_t n) {
  if (n == 0) return a.accepting[a.initial] ? 1 : 0;
  std::vector<BigInt> cur(a.num_states);
  cur[a.initial] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pos = n - 1 - k;
    std::vector<BigInt> next(a.num_states);
    for (int q = 0; q < a.num_states; ++q) {
      if (cur[q] == 0) continue;
      for (int d = 0; d < a.base; ++d) {
        if (k == 0 && d == 0 && a.leading_zeros == LeadingZeros::Forbidden) continue;
        int r = a.step(q, d, pos);
        if (r >= 0) next[r] += cur[q];
      }
    }
    cur = std::move(next);
  }
  BigInt total = 0;
  for (int q = 0; q < a.num_states; ++q)
    if (a.accepting[q]) total += cur[q];
  return total;
}

inline CountSequence count_series(const LanguageSpec& spec, std::size_t N) {
  CountSequence out;
  out.label = kind_name(spec);
  if (std::holds_alternative<EvilFactorSpec>(spec)) {
    auto u = evil::count_series(N);
    if (leading_zeros_of(spec) == LeadingZeros::Allowed) {
      out.values = u;
    } else {
      out.values.push_back(1);
      for (std::size_t n = 1; n <= N; ++n) out.values.push_back(u[n] - u[n - 1]);
    }
    return out;
  }
  CountingAutomaton a = compile(spec);
  out.values = automaton_counts(a, N, a.leading_zeros == LeadingZeros::Forbidden);
  return out;
}

// ---------------------------------------------------------------------------
// Recurrence fitting

namespace detail {

// Solves the (possibly overdetermined) system rows * c = rhs exactly.
// Returns nullopt when inconsistent; free variables are set to zero.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> rows,
                                                        std::vector<Rational> rhs, std::size_t cols) {
  std::size_t m = rows.size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    std::size_t p = r;
    while (p < m && rows[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i] / rows[i][pivot_col[i]];
  return x;
}

}  // namespace detail

// Minimal-order recurrence reproducing every supplied term; orders are
// tried in increasing order and each is checked against the full window.
inline std::optional<LinearRecurrence> fit_recurrence(const std::vector<BigInt>& values,
                                                      std::size_t max_order) {
  if (values.size() < 2 * max_order + 2)
    throw DomainError("fit_recurrence needs at least 2*max_order+2 terms");
  for (std::size_t k = 1; k <= max_order; ++k) {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (std::size_t n = 0; n + k < values.size(); ++n) {
      std::vector<Rational> row;
      for (std::size_t i = 0; i < k; ++i) row.emplace_back(values[n + i]);
      rows.push_back(std::move(row));
      rhs.emplace_back(values[n + k]);
    }
    auto sol = detail::solve_exact(rows, rhs, k);
    if (!sol) continue;
    LinearRecurrence rec;
    rec.coeffs = *sol;
    rec.initial.assign(values.begin(), values.begin() + k);
    return rec;
  }
  return std::nullopt;
}

inline std::vector<BigInt> first_difference(const std::vector<BigInt>& v) {
  if (v.empty()) throw DomainError("first_difference of an empty sequence");
  std::vector<BigInt> out;
  for (std::size_t i = 1; i < v.size(); ++i) out.push_back(v[i] - v[i - 1]);
  return out;
}

inline std::vector<BigInt> partial_sum(const std::vector<BigInt>& v) {
  if (v.empty()) throw DomainError("partial_sum of an empty sequence");
  std::vector<BigInt> out;
  BigInt acc = 0;
  for (const auto& x : v) out.push_back(acc += x);
  return out;
}

// ---------------------------------------------------------------------------
// Emission

inline void write_csv(std::ostream& os, const CountSequence& seq) {
  os << "n,count\n";
  for (std::size_t n = 0; n < seq.values.size(); ++n) os << n << ',' << seq.values[n] << '\n';
}

inline nlohmann::json to_json(const CountSequence& seq) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t n = 0; n < seq.values.size(); ++n)
    rows.push_back({{"n", n}, {"count", seq.values[n].str()}});
  return {{"label", seq.label}, {"rows", rows}};
}

inline nlohmann::json to_json(const LinearRecurrence& rec) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : rec.coeffs) c.push_back(to_string(x));
  nlohmann::json init = nlohmann::json::array();
  for (const auto& x : rec.initial) init.push_back(x.str());
  nlohmann::json chi = nlohmann::json::array();
  for (const auto& x : rec.characteristic_polynomial()) chi.push_back(x.str());
  return {{"order", rec.order()}, {"coefficients", c}, {"initial", init}, {"characteristic_polynomial", chi}};
}

}  // namespace digitlang
