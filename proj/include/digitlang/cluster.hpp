#pragma once

// Goulden-Jackson cluster method for words avoiding a finite set of
// factors, and the primed-alphabet encoding of parity-dependent blocks.

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "digitlang/core.hpp"
#include "digitlang/polynomial.hpp"

namespace digitlang {

struct RationalGF {
  IntPolynomial num;
  IntPolynomial den;

  bool operator==(const RationalGF& o) const { return num == o.num && den == o.den; }
};

// Cancels common factors, removes the common integer content and makes
// den(0) positive.
inline RationalGF normalize(RationalGF f) {
  if (f.den.is_zero() || f.den[0] == 0) throw DomainError("denominator vanishes at 0");
  if (f.num.is_zero()) return {IntPolynomial{}, IntPolynomial{1}};
  IntPolynomial g = gcd(f.num, f.den);
  if (g.degree() > 0) {
    f.num = exact_divide(f.num, g);
    f.den = exact_divide(f.den, g);
  }
  BigInt c = boost::multiprecision::gcd(content(f.num), content(f.den));
  if (f.den[0] < 0) c = -c;
  for (auto& x : f.num.coeffs) x /= c;
  for (auto& x : f.den.coeffs) x /= c;
  return f;
}

// First N+1 series coefficients via the denominator recurrence.
inline std::vector<BigInt> gf_coefficients(const RationalGF& f, std::size_t N) {
  const BigInt d0 = f.den[0];
  if (d0 == 0) throw DomainError("denominator vanishes at 0");
  std::vector<BigInt> c;
  for (std::size_t n = 0; n <= N; ++n) {
    BigInt acc = f.num[n];
    for (std::size_t k = 1; k <= n && k < f.den.coeffs.size(); ++k) acc -= f.den.coeffs[k] * c[n - k];
    if (acc % d0 != 0) throw DomainError("series coefficient is not an integer");
    c.push_back(acc / d0);
  }
  return c;
}

inline std::string to_string(const RationalGF& f) { return coeff_list(f.num) + " / " + coeff_list(f.den); }

inline nlohmann::json to_json(const RationalGF& f) {
  nlohmann::json n = nlohmann::json::array(), d = nlohmann::json::array();
  for (const auto& x : f.num.coeffs) n.push_back(x.str());
  for (const auto& x : f.den.coeffs) d.push_back(x.str());
  return {{"num", n}, {"den", d}};
}

using Word = std::vector<int>;

struct PatternSet {
  int m = 0;
  std::vector<Word> patterns;
};

namespace detail {

inline bool is_factor(const Word& small, const Word& big) {
  return std::search(big.begin(), big.end(), small.begin(), small.end()) != big.end();
}

}  // namespace detail

// Drops duplicates and every pattern that contains another as a factor.
inline PatternSet reduce(const PatternSet& in) {
  if (in.m < 1) throw InvalidSpec("alphabet must be non-empty");
  std::set<Word> uniq;
  for (const auto& p : in.patterns) {
    if (p.empty()) throw InvalidSpec("empty pattern");
    for (int a : p)
      if (a < 0 || a >= in.m) throw InvalidSpec("pattern letter out of range");
    uniq.insert(p);
  }
  PatternSet out{in.m, {}};
  for (const auto& p : uniq) {
    bool redundant = false;
    for (const auto& q : uniq)
      if (q != p && q.size() <= p.size() && detail::is_factor(q, p)) redundant = true;
    if (!redundant) out.patterns.push_back(p);
  }
  return out;
}

// Cluster generating function. Unknowns are grouped by overlap word u:
// T_u sums the cluster weights of clusters whose last pattern ends in u,
// giving a |U| x |U| linear system over Z[x] solved fraction-free.
inline RationalGF gj_generating_function(const PatternSet& input) {
  PatternSet ps = reduce(input);
  const auto& P = ps.patterns;
  auto x_pow = [](std::size_t k) { return IntPolynomial::monomial(1, k); };

  std::set<Word> prefixes, suffixes;
  for (const auto& p : P)
    for (std::size_t k = 1; k < p.size(); ++k) {
      prefixes.insert(Word(p.begin(), p.begin() + k));
      suffixes.insert(Word(p.end() - k, p.end()));
    }
  std::vector<Word> U;
  for (const auto& u : prefixes)
    if (suffixes.count(u)) U.push_back(u);
  const std::size_t n = U.size();
  auto is_prefix = [](const Word& u, const Word& p) {
    return u.size() < p.size() && std::equal(u.begin(), u.end(), p.begin());
  };
  auto is_suffix = [](const Word& u, const Word& p) {
    return u.size() < p.size() && std::equal(u.begin(), u.end(), p.end() - u.size());
  };

  // augmented system [I + A | b]
  std::vector<std::vector<IntPolynomial>> a(n, std::vector<IntPolynomial>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = IntPolynomial{1};
    for (const auto& q : P) {
      if (!is_suffix(U[i], q)) continue;
      a[i][n] = a[i][n] - x_pow(q.size());
      for (std::size_t j = 0; j < n; ++j)
        if (is_prefix(U[j], q)) a[i][j] = a[i][j] + x_pow(q.size() - U[j].size());
    }
  }
  // fraction-free Gauss-Jordan; the matrix is I at x = 0 so pivots never vanish
  IntPolynomial prev{1};
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k].is_zero()) throw DomainError("singular cluster system");
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == k) continue;
        a[i][j] = exact_divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      }
      a[i][k] = IntPolynomial{};
    }
    prev = a[k][k];
  }
  // T_u = a[u][n] / D
  IntPolynomial D = prev;
  IntPolynomial Cnum;
  for (const auto& p : P) {
    Cnum = Cnum - x_pow(p.size()) * D;
    for (std::size_t j = 0; j < n; ++j)
      if (is_prefix(U[j], p)) Cnum = Cnum - x_pow(p.size() - U[j].size()) * a[j][n];
  }
  // F = 1 / (1 - m x - C) = D / (D (1 - m x) - Cnum)
  IntPolynomial one_mx{1, -BigInt(ps.m)};
  return normalize({D, D * one_mx - Cnum});
}

// Primed encoding over 2b letters: digit a is letter a, a' is letter b+a.
// Same-parity adjacency (ab, a'b') is forbidden so primes alternate; an
// even block uv becomes u'v and an odd block becomes uv'.
inline PatternSet primed_alphabet_patterns(int b, const std::vector<Word>& even_blocks,
                                           const std::vector<Word>& odd_blocks) {
  if (b < 2) throw InvalidBase(std::to_string(b));
  PatternSet ps{2 * b, {}};
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) {
      ps.patterns.push_back({x, y});
      ps.patterns.push_back({b + x, b + y});
    }
  auto check = [b](const Word& w) {
    if (w.size() != 2) throw Error("unsupported: the primed encoding handles blocks of length 2 only", 3);
    for (int d : w)
      if (d < 0 || d >= b) throw InvalidDigit(std::to_string(d));
  };
  for (const auto& w : even_blocks) {
    check(w);
    ps.patterns.push_back({b + w[0], w[1]});
  }
  for (const auto& w : odd_blocks) {
    check(w);
    ps.patterns.push_back({w[0], b + w[1]});
  }
  return ps;
}

}  // namespace digitlang
