#pragma once

// Summatory functions of characteristic sequences, abscissae of
// convergence (spectral, Nathanson's Theta, DFAO sum matrix, empirical and
// the closed form for the evil-position language) and certified brackets
// for F_L(z) at real z.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "digitlang/core.hpp"
#include "digitlang/counting.hpp"
#include "digitlang/evilwords.hpp"
#include "digitlang/langspec.hpp"
#include "digitlang/matrix.hpp"
#include "digitlang/numeration.hpp"
#include "digitlang/regular.hpp"
#include "digitlang/spectral.hpp"

namespace digitlang {

// ---------------------------------------------------------------------------
// Summatory function

template <PositionalAutomaton A>
bool accepts_msd(const A& a, const std::vector<int>& msd) {
  int q = a.initial;
  for (std::size_t j = 0; j < msd.size(); ++j) {
    q = a.step(q, msd[j], msd.size() - 1 - j);
    if (q < 0) return false;
  }
  return a.accepts(q);
}

// #{1 <= m <= n : rep_b(m) accepted}: all shorter lengths from the
// completion vectors, then a tight/free walk along the digits of n.
template <PositionalAutomaton A>
BigInt summatory_automaton(const A& a, const BigInt& n) {
  if (n <= 0) return 0;
  DigitWord w = to_digits(n, a.base);
  const std::size_t K = w.size();
  auto y = completion_vectors(a, K);
  BigInt total = 0;
  for (std::size_t len = 1; len < K; ++len) total += count_from_completions(a, y, len, true);
  int q = a.initial;
  for (std::size_t i = 0; i < K; ++i) {
    std::size_t pos = K - 1 - i;
    for (int d = (i == 0 ? 1 : 0); d < w.digits[i]; ++d) {
      int r = a.step(q, d, pos);
      if (r >= 0) total += y[pos][r];
    }
    q = a.step(q, w.digits[i], pos);
    if (q < 0) return total;
  }
  if (a.accepts(q)) total += 1;
  return total;
}

inline BigInt summatory(const LanguageSpec& spec, const BigInt& n) {
  if (std::holds_alternative<EvilFactorSpec>(spec)) return summatory_automaton(evil::FixedLengthAutomaton{}, n);
  return summatory_automaton(compile(spec), n);
}

struct TraceRow {
  int k = 0;
  BigInt A;
  std::optional<double> ratio;  // log A(b^k) / (k log b)
};

struct SummatoryTrace {
  int base = 10;
  std::vector<TraceRow> rows;
  double estimate = 0;
  double richardson = 0;  // k r_k - (k-1) r_{k-1}: removes a c/k drift
};

template <PositionalAutomaton A>
SummatoryTrace summatory_trace(const A& a, int K) {
  if (K < 2) throw DomainError("empirical abscissa needs K >= 2");
  SummatoryTrace t;
  t.base = a.base;
  auto c = automaton_counts(a, K, true);
  BigInt acc = 0;
  const double lb = std::log2(static_cast<double>(a.base));
  bool any = false;
  for (int k = 1; k <= K; ++k) {
    acc += c[k];
    std::vector<int> power(k + 1, 0);
    power[0] = 1;
    BigInt total = acc + (accepts_msd(a, power) ? 1 : 0);
    TraceRow row{k, total, std::nullopt};
    if (total > 0) {
      row.ratio = log2_big(total) / (k * lb);
      any = true;
    }
    t.rows.push_back(row);
  }
  if (!any) throw EmptyLanguage("A(b^k) = 0 for every k <= " + std::to_string(K));
  const auto& last = t.rows.back();
  const auto& prev = t.rows[t.rows.size() - 2];
  t.estimate = last.ratio.value_or(0);
  if (last.ratio && prev.ratio) t.richardson = K * *last.ratio - (K - 1) * *prev.ratio;
  else t.richardson = t.estimate;
  return t;
}

inline SummatoryTrace empirical_abscissa(const LanguageSpec& spec, int K) {
  if (std::holds_alternative<EvilFactorSpec>(spec)) return summatory_trace(evil::FixedLengthAutomaton{}, K);
  return summatory_trace(compile(spec), K);
}

// ---------------------------------------------------------------------------
// Growth structure of a compiled automaton

namespace detail {

// States worth keeping per position class: reachable from a canonical
// start (nonzero first digit) and able to finish in an accepting state.
struct GrowthStructure {
  const CountingAutomaton* a = nullptr;
  std::vector<std::vector<char>> useful;  // [class][state]
  IntMatrix period_product;               // one full period, classes pl+p-1 .. pl
};

inline std::vector<int> next_classes(const CountingAutomaton& a, int c) {
  const int pl = a.prefix_len, p = a.period;
  if (c < pl) return {c - 1};  // -1 means end of word
  if (c > pl) return {c - 1};
  std::vector<int> out{pl + p - 1};
  out.push_back(pl > 0 ? pl - 1 : -1);
  return out;
}

inline GrowthStructure growth_structure(const CountingAutomaton& a) {
  GrowthStructure g;
  g.a = &a;
  const int C = a.num_classes(), n = a.num_states, b = a.base;
  std::vector<std::vector<char>> reach(C, std::vector<char>(n, 0)), co(C, std::vector<char>(n, 0));
  std::vector<std::pair<int, int>> stack;
  auto visit = [&](int c, int q) {
    if (c >= 0 && !reach[c][q]) reach[c][q] = 1, stack.push_back({c, q});
  };
  for (int c = 0; c < C; ++c)
    for (int d = 1; d < b; ++d) {
      int r = a.delta[c][a.initial * b + d];
      if (r >= 0)
        for (int c2 : next_classes(a, c)) visit(c2, r);
    }
  while (!stack.empty()) {
    auto [c, q] = stack.back();
    stack.pop_back();
    for (int d = 0; d < b; ++d) {
      int r = a.delta[c][q * b + d];
      if (r >= 0)
        for (int c2 : next_classes(a, c)) visit(c2, r);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 0; c < C; ++c)
      for (int q = 0; q < n; ++q) {
        if (co[c][q]) continue;
        for (int d = 0; d < b && !co[c][q]; ++d) {
          int r = a.delta[c][q * b + d];
          if (r < 0) continue;
          for (int c2 : next_classes(a, c))
            if ((c2 < 0 && a.accepting[r]) || (c2 >= 0 && co[c2][r])) co[c][q] = 1;
        }
        changed |= co[c][q] != 0;
      }
  }
  g.useful.assign(C, std::vector<char>(n, 0));
  for (int c = 0; c < C; ++c)
    for (int q = 0; q < n; ++q) g.useful[c][q] = reach[c][q] && co[c][q];

  const int pl = a.prefix_len, p = a.period;
  IntMatrix P = IntMatrix::identity(n);
  for (int c = pl + p - 1; c >= pl; --c) {
    int c2 = c > pl ? c - 1 : pl + p - 1;
    IntMatrix T(n, n);
    for (int q = 0; q < n; ++q) {
      if (!g.useful[c][q]) continue;
      for (int d = 0; d < b; ++d) {
        int r = a.delta[c][q * b + d];
        if (r >= 0 && g.useful[c2][r]) T(q, r) += 1;
      }
    }
    P = P * T;
  }
  g.period_product = std::move(P);
  return g;
}

// Longest chain of cyclic strongly connected components in the support
// graph of a non-negative matrix.
inline int cyclic_chain_length(const IntMatrix& M) {
  const std::size_t n = M.rows;
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = M(i, j) != 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  // component representative = smallest mutually reachable index
  std::vector<int> comp(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!reach[i][i]) continue;
    for (std::size_t j = 0; j <= i; ++j)
      if (reach[i][j] && reach[j][i]) {
        comp[i] = static_cast<int>(j);
        break;
      }
  }
  std::vector<int> reps;
  for (std::size_t i = 0; i < n; ++i)
    if (comp[i] == static_cast<int>(i)) reps.push_back(static_cast<int>(i));
  // longest path in the DAG of cyclic components; memoised DFS
  std::map<int, int> memo;
  std::function<int(int)> longest = [&](int r) {
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    int best = 1;
    for (int s : reps)
      if (s != r && reach[r][s] && !reach[s][r]) best = std::max(best, 1 + longest(s));
    memo[r] = best;
    return best;
  };
  int out = 0;
  for (int r : reps) out = std::max(out, longest(r));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Abscissa reports

struct AbscissaReport {
  std::string classification;  // zero | one | log-ratio
  std::string method;          // spectral | theta_D | cobham | empirical | evil-closed-form
  int base = 10;
  int period = 1;              // sigma = log(mu) / (period * log b)
  IntPolynomial mu_polynomial;  // square-free, mu among its roots
  std::optional<RootInterval> mu;
  long double sigma_lo = 0, sigma_hi = 0;
  long double lambda_lo = 0, lambda_hi = 0;  // lambda = mu^(1/period)
  int polylog_degree = -1;     // zero class: A(n) ~ (log n)^degree
  std::string symbolic;
  std::vector<std::string> notes;
  std::optional<SummatoryTrace> trace;

  long double sigma() const { return (sigma_lo + sigma_hi) / 2; }
  bool sigma_contains(long double s, long double slack = 0) const {
    return sigma_lo - slack <= s && s <= sigma_hi + slack;
  }
};

namespace detail {

inline std::string fmt(long double v, int digits = 15) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return os.str();
}

// Fills sigma / lambda from mu (an interval, possibly exact).
inline void finish(AbscissaReport& r) {
  const long double lb = std::log(static_cast<long double>(r.base));
  const long double pad = 64 * std::numeric_limits<long double>::epsilon();
  if (!r.mu) return;
  long double lo = to_ld(r.mu->lo), hi = to_ld(r.mu->hi);
  BigInt bp = boost::multiprecision::pow(BigInt(r.base), static_cast<unsigned>(r.period));
  if (r.mu->hi <= 1) {
    r.classification = "zero";
    r.sigma_lo = r.sigma_hi = 0;
  } else if (r.mu->exact() && r.mu->lo == Rational(bp)) {
    r.classification = "one";
    r.sigma_lo = r.sigma_hi = 1;
  } else {
    r.classification = "log-ratio";
    r.sigma_lo = std::log(lo) / (r.period * lb) * (1 - pad);
    r.sigma_hi = std::log(hi) / (r.period * lb) * (1 + pad);
  }
  r.lambda_lo = std::pow(lo, 1.0L / r.period) * (1 - pad);
  r.lambda_hi = std::pow(hi, 1.0L / r.period) * (1 + pad);
  std::string mu_text = r.mu->exact() ? to_string(r.mu->lo) : "mu";
  if (r.classification == "log-ratio") {
    r.symbolic = "log(" + mu_text + ")/(" + (r.period == 1 ? "" : std::to_string(r.period) + "*") + "log(" +
                 std::to_string(r.base) + "))";
    if (!r.mu->exact()) r.symbolic += ", mu the largest real root of " + pretty(r.mu_polynomial);
  } else {
    r.symbolic = r.classification == "one" ? "1" : "0";
  }
}

// Spectral radius of a non-negative integer matrix as an interval.
inline std::optional<RootInterval> perron_root(const IntMatrix& M, IntPolynomial& poly, double tol) {
  IntPolynomial chi = char_poly(M);
  poly = strip_zero_roots(squarefree_part(chi));
  if (poly.degree() < 1) return RootInterval{0, 0, true};
  try {
    return dominant_root(poly, tol);
  } catch (const NoDominantRealRoot&) {
    // non-negative matrices always have their spectral radius as an eigenvalue
    return RootInterval{0, 0, true};
  }
}

}  // namespace detail

inline AbscissaReport spectral_abscissa(const LanguageSpec& spec, double tol = 1e-12) {
  CountingAutomaton a = compile(spec);
  auto g = detail::growth_structure(a);
  AbscissaReport r;
  r.method = "spectral";
  r.base = a.base;
  r.period = a.period;
  r.mu = detail::perron_root(g.period_product, r.mu_polynomial, tol);
  detail::finish(r);
  if (r.classification == "zero") {
    r.polylog_degree = r.mu->hi == 0 ? 0 : detail::cyclic_chain_length(g.period_product);
    r.notes.push_back(r.polylog_degree == 0 ? "finite language"
                                           : "A(n) grows like (log n)^" + std::to_string(r.polylog_degree));
  }
  return r;
}

struct ThetaReport {
  int base = 10;
  int period = 1;
  std::map<int, Rational> alpha;  // l -> frequency of |D_i| = l over the period
  BigInt product = 1;             // prod over one period of (b - |D_i|)
  long double theta = 0;
};

inline ThetaReport nathanson_theta(const DigitRestrictionSpec& spec) {
  validate(LanguageSpec(spec));
  ThetaReport t;
  t.base = spec.base;
  t.period = static_cast<int>(spec.period.size());
  bool all_zero_only = true, some_empty = false;
  for (const auto& allowed : spec.period) {
    int forbidden = spec.base - static_cast<int>(allowed.size());
    t.alpha[forbidden] += Rational(1, t.period);
    t.product *= spec.base - forbidden;
    if (allowed.empty()) some_empty = true;
    for (int d : allowed)
      if (d != 0) all_zero_only = false;
  }
  for (const auto& allowed : spec.prefix)
    if (allowed.empty()) some_empty = true;
  if (some_empty || all_zero_only) {
    auto s = spectral_abscissa(spec);
    throw HypothesisViolated("the constrained set of integers is finite (spectral abscissa " +
                             detail::fmt(s.sigma(), 12) + ", " + s.classification + " class)");
  }
  long double acc = 0;
  for (const auto& [l, a] : t.alpha) acc += to_ld(a) * std::log(static_cast<long double>(spec.base - l));
  t.theta = acc / std::log(static_cast<long double>(spec.base));
  return t;
}

inline AbscissaReport theta_abscissa(const LanguageSpec& spec) {
  const auto* d = std::get_if<DigitRestrictionSpec>(&spec);
  if (!d) throw InvalidSpec("Theta_D needs a digit-restriction spec");
  auto t = nathanson_theta(*d);
  AbscissaReport r;
  r.method = "theta_D";
  r.base = t.base;
  r.period = t.period;
  r.mu = RootInterval{Rational(t.product), Rational(t.product), true};
  r.mu_polynomial = IntPolynomial{-t.product, 1};
  detail::finish(r);
  for (const auto& [l, a] : t.alpha) r.notes.push_back("alpha_" + std::to_string(l) + " = " + to_string(a));
  return r;
}

// Spectral radius of the sum matrix of the trimmed DFAO representation.
// The top digit must be nonzero, else padded copies of one integer would
// be counted as distinct words: fold a nonzero digit into V before trimming.
inline AbscissaReport cobham_abscissa(const LanguageSpec& spec, double tol = 1e-12) {
  auto rep = linear_representation(dfao_from_spec(spec));
  RatMatrix top(rep.dim(), rep.dim());
  for (std::size_t d = 1; d < rep.M.size(); ++d) top = top + rep.M[d];
  rep.V = rep.V * top;
  rep = trim(rep);
  AbscissaReport r;
  r.method = "cobham";
  r.base = base_of(spec);
  r.period = 1;
  if (rep.dim() == 0) {
    r.mu = RootInterval{0, 0, true};
    r.mu_polynomial = IntPolynomial{0, 1};
  } else {
    r.mu = detail::perron_root(to_integer(sum_matrix(rep)), r.mu_polynomial, tol);
  }
  detail::finish(r);
  if (r.classification == "zero") {
    r.polylog_degree = rep.dim() == 0 || r.mu->hi == 0 ? 0 : detail::cyclic_chain_length(to_integer(sum_matrix(rep)));
  }
  return r;
}

namespace evil {

// sigma = log(24^(1/6)) / log 2: mu = 24 over a period of 6 binary digits.
inline AbscissaReport abscissa_LJ() {
  AbscissaReport r;
  r.method = "evil-closed-form";
  r.base = 2;
  r.period = 6;
  r.mu = RootInterval{24, 24, true};
  r.mu_polynomial = IntPolynomial{-24, 1};
  detail::finish(r);
  r.symbolic = "log2(24)/6";
  r.notes.push_back("lambda = 24^(1/6), a root of x^6 - 24");
  return r;
}

}  // namespace evil

inline AbscissaReport exact_abscissa(const LanguageSpec& spec, const std::string& method = "spectral",
                                     double tol = 1e-12) {
  if (std::holds_alternative<EvilFactorSpec>(spec)) return evil::abscissa_LJ();
  if (method == "spectral") return spectral_abscissa(spec, tol);
  if (method == "theta") return theta_abscissa(spec);
  if (method == "cobham") return cobham_abscissa(spec, tol);
  throw InvalidSpec("unknown abscissa method '" + method + "'");
}

// Exact when both growth constants are exact rationals: mu1^p2 == mu2^p1.
inline bool same_abscissa(const AbscissaReport& x, const AbscissaReport& y, long double slack = 1e-12L) {
  if (x.base == y.base && x.mu && y.mu && x.mu->exact() && y.mu->exact()) {
    using boost::multiprecision::pow;
    return pow(boost::multiprecision::numerator(x.mu->lo), y.period) *
               pow(boost::multiprecision::denominator(y.mu->lo), x.period) ==
           pow(boost::multiprecision::numerator(y.mu->lo), x.period) *
               pow(boost::multiprecision::denominator(x.mu->lo), y.period);
  }
  return x.sigma_lo - slack <= y.sigma_hi && y.sigma_lo - slack <= x.sigma_hi;
}

inline nlohmann::json interval_json(long double lo, long double hi) {
  return nlohmann::json::array({detail::fmt(lo), detail::fmt(hi)});
}

inline nlohmann::json to_json(const SummatoryTrace& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"k", r.k},
                    {"A", r.A.str()},
                    {"ratio", r.ratio ? nlohmann::json(detail::fmt(*r.ratio, 12)) : nlohmann::json(nullptr)}});
  return {{"base", t.base}, {"rows", rows}, {"estimate", detail::fmt(t.estimate, 12)},
          {"richardson", detail::fmt(t.richardson, 12)}};
}

inline nlohmann::json to_json(const AbscissaReport& r) {
  nlohmann::json poly = nlohmann::json::array();
  for (const auto& c : r.mu_polynomial.coeffs) poly.push_back(c.str());
  nlohmann::json j = {{"classification", r.classification},
                      {"method", r.method},
                      {"base", r.base},
                      {"period", r.period},
                      {"mu_polynomial", poly},
                      {"sigma", interval_json(r.sigma_lo, r.sigma_hi)},
                      {"lambda", interval_json(r.lambda_lo, r.lambda_hi)},
                      {"symbolic", r.symbolic},
                      {"notes", r.notes}};
  j["mu"] = r.mu ? to_json(*r.mu) : nlohmann::json(nullptr);
  if (r.polylog_degree >= 0) j["polylog_degree"] = r.polylog_degree;
  if (r.trace) j["empirical"] = to_json(*r.trace);
  return j;
}

// ---------------------------------------------------------------------------
// Bracketed evaluation of F_L(z)

struct SeriesBracket {
  double z = 0;
  long double lower = 0, upper = 0;
  int L0 = 0, L = 0;
  std::vector<BigInt> counts;  // c_1 .. c_L, canonical members per length
  long double growth_bound = 0;  // certified gamma with c_{l+p} <~ gamma c_l
  long double tail_upper = 0;
  std::vector<std::string> warnings;
  long double width() const { return upper - lower; }
};

namespace detail {

constexpr long double kEps = std::numeric_limits<long double>::epsilon();

template <PositionalAutomaton A>
void enumerate_members(const A& a, const std::vector<std::vector<BigInt>>& y, int len, long double z,
                       long double& sum, std::uint64_t& terms) {
  struct Frame {
    int q;
    int pos;
    long double value;
  };
  // explicit DFS, digits ascending, so the summation order is fixed
  std::vector<Frame> stack{{a.initial, len - 1, 0.0L}};
  std::vector<Frame> next;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    for (int d = a.base - 1; d >= (f.pos == len - 1 ? 1 : 0); --d) {
      int r = a.step(f.q, d, f.pos);
      if (r < 0 || y[f.pos][r] == 0) continue;
      long double v = f.value * a.base + d;
      if (f.pos == 0) {
        sum += std::pow(v, -z);
        ++terms;
      } else {
        stack.push_back({r, f.pos - 1, v});
      }
    }
  }
}

inline long double to_ld_up(const BigInt& v) { return to_ld(v) * (1 + 4 * kEps); }

// Collatz-Wielandt tail bound for sum_{l > L} c_l b^{-(l-1) z}.
inline long double regular_tail(const CountingAutomaton& a, const std::vector<std::vector<BigInt>>& y, int L,
                                long double z, long double& gamma_out) {
  const int n = a.num_states, b = a.base, p = a.period;
  const long double lb = std::log(static_cast<long double>(b));
  long double tail = 0;
  gamma_out = 0;
  for (int m0 = L; m0 < L + p; ++m0) {
    // Q maps y_m0 to y_{m0+p}
    std::vector<std::vector<long double>> Q(n, std::vector<long double>(n, 0));
    for (int i = 0; i < n; ++i) Q[i][i] = 1;
    for (int m = m0; m < m0 + p; ++m) {
      int c = a.class_of(m);
      std::vector<std::vector<long double>> T(n, std::vector<long double>(n, 0)), R(n, std::vector<long double>(n, 0));
      for (int q = 0; q < n; ++q)
        for (int d = 0; d < b; ++d) {
          int r = a.delta[c][q * b + d];
          if (r >= 0) T[q][r] += 1;
        }
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          if (T[i][k] != 0)
            for (int j = 0; j < n; ++j) R[i][j] += T[i][k] * Q[k][j];
      Q = std::move(R);
    }
    long double qmax = 1;
    for (const auto& row : Q)
      for (long double v : row) qmax = std::max(qmax, v);
    std::vector<long double> x(n, 1);
    for (int it = 0; it < 3000; ++it) {
      std::vector<long double> nx(n, 0);
      long double norm = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) nx[i] += Q[i][j] * x[j];
        nx[i] += 1e-9L * qmax;
        norm = std::max(norm, nx[i]);
      }
      for (auto& v : nx) v /= norm;
      x = std::move(nx);
    }
    long double gamma = 0, K = 0;
    for (int i = 0; i < n; ++i) {
      long double qx = 0;
      for (int j = 0; j < n; ++j) qx += Q[i][j] * x[j];
      gamma = std::max(gamma, qx / x[i]);
      K = std::max(K, to_ld_up(y[m0][i]) / x[i]);
    }
    gamma *= 1 + 64 * n * kEps;
    gamma_out = std::max(gamma_out, gamma);
    int c = a.class_of(m0);
    long double gx = 0;
    for (int d = 1; d < b; ++d) {
      int r = a.delta[c][a.initial * b + d];
      if (r >= 0) gx += x[r];
    }
    long double ratio = gamma * std::exp(-p * z * lb);
    if (K == 0 || gx == 0) continue;
    if (ratio >= 1) return std::numeric_limits<long double>::infinity();
    tail += K * gx * std::exp(-m0 * z * lb) / (1 - ratio) * (1 + 64 * kEps);
  }
  return tail;
}

}  // namespace detail

inline SeriesBracket evaluate(const LanguageSpec& spec, double z, int L0, int L) {
  if (L0 < 1 || L < L0) throw DomainError("need 1 <= L0 <= L");
  if (L0 > 19) throw ResourceError("enumeration depth above 19 digits");
  AbscissaReport ab = exact_abscissa(spec);
  if (z <= ab.sigma_hi) throw Divergent("z = " + detail::fmt(z, 6) + " is not above the abscissa " + detail::fmt(ab.sigma_hi, 12));

  SeriesBracket br;
  br.z = z;
  br.L0 = L0;
  const long double zz = z;
  const bool evil = std::holds_alternative<EvilFactorSpec>(spec);
  const int b = base_of(spec);
  const long double lb = std::log(static_cast<long double>(b));

  std::optional<CountingAutomaton> ca;
  if (!evil) {
    ca = compile(spec);
    L = std::max(L, ca->prefix_len);
  }
  br.L = L;
  const int period = evil ? 1 : ca->period;
  std::vector<std::vector<BigInt>> y = evil ? completion_vectors(evil::FixedLengthAutomaton{}, L + period)
                                            : completion_vectors(*ca, L + period);
  for (int l = 1; l <= L; ++l)
    br.counts.push_back(evil ? count_from_completions(evil::FixedLengthAutomaton{}, y, l, true)
                             : count_from_completions(*ca, y, l, true));

  BigInt enumerated = 0;
  for (int l = 1; l <= L0; ++l) enumerated += br.counts[l - 1];
  if (enumerated > 50'000'000) throw ResourceError("more than 5e7 members below the enumeration depth");

  long double exact_sum = 0;
  std::uint64_t terms = 0;
  for (int l = 1; l <= L0; ++l) {
    if (evil)
      detail::enumerate_members(evil::FixedLengthAutomaton{}, y, l, zz, exact_sum, terms);
    else
      detail::enumerate_members(*ca, y, l, zz, exact_sum, terms);
  }
  const long double rounding = (terms + 8) * 4 * detail::kEps * exact_sum;
  br.lower = exact_sum - rounding;
  br.upper = exact_sum + rounding;
  for (int l = L0 + 1; l <= L; ++l) {
    long double c = to_ld(br.counts[l - 1]);
    br.lower += c * std::exp(-l * zz * lb) * (1 - 8 * detail::kEps);
    br.upper += c * std::exp(-(l - 1) * zz * lb) * (1 + 8 * detail::kEps);
  }

  if (evil) {
    // c_l <= u_l <= 2^(l-L) u_L, and y[L][0] = u_L
    long double cL = 2 * detail::to_ld_up(y[L][0]);
    long double ratio = 2 * std::exp(-zz * lb);
    br.growth_bound = 2;
    br.tail_upper = ratio >= 1 ? std::numeric_limits<long double>::infinity()
                               : cL * std::exp(-L * zz * lb) / (1 - ratio);
  } else {
    br.tail_upper = detail::regular_tail(*ca, y, L, zz, br.growth_bound);
  }
  br.upper += br.tail_upper;
  if (!std::isfinite(br.upper))
    br.warnings.push_back("tail bound diverges at this z; only the lower bound is informative");
  else if (br.growth_bound * std::exp(-period * zz * lb) > 0.99L)
    br.warnings.push_back("z is close to the abscissa; the bracket shrinks slowly");
  return br;
}

inline nlohmann::json to_json(const SeriesBracket& b) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& c : b.counts) counts.push_back(c.str());
  return {{"z", b.z},
          {"bracket", interval_json(b.lower, b.upper)},
          {"width", detail::fmt(b.width(), 18)},
          {"L0", b.L0},
          {"L", b.L},
          {"counts", counts},
          {"growth_bound", detail::fmt(b.growth_bound, 12)},
          {"tail_upper", detail::fmt(b.tail_upper, 18)},
          {"warnings", b.warnings}};
}

}  // namespace digitlang
