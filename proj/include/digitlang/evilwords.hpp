#pragma once

// Binary words avoiding the factor 10 with the 0 at an evil position:
// exact counts by recurrence and by the 2^x 3^y closed form, Thue-Morse
// factor counters, growth diagnostics and the non-automaticity witness.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "digitlang/core.hpp"
#include "digitlang/langspec.hpp"
#include "digitlang/numeration.hpp"

namespace digitlang::evil {

// Occurrence counts of 1, 00, 10 (and the two remaining length-2 patterns)
// in the Thue-Morse prefix t[0..n-1]; overlapping occurrences count.
struct OccurrenceCounters {
  std::uint64_t n = 0;
  std::uint64_t e1 = 0;
  std::uint64_t e0 = 0;
  std::uint64_t e00 = 0;
  std::uint64_t e01 = 0;
  std::uint64_t e10 = 0;
  std::uint64_t e11 = 0;

  // Extends the counted prefix by one letter.
  void push() {
    int t = thue_morse(n);
    (t ? e1 : e0) += 1;
    if (n > 0) {
      int prev = thue_morse(n - 1);
      if (prev == 0 && t == 0) ++e00;
      if (prev == 0 && t == 1) ++e01;
      if (prev == 1 && t == 0) ++e10;
      if (prev == 1 && t == 1) ++e11;
    }
    ++n;
  }
};

inline OccurrenceCounters occurrence_counters(std::uint64_t n) {
  OccurrenceCounters c;
  while (c.n < n) c.push();
  return c;
}

// u_n, u_{n-1}, u_{n-2} for a forward sweep of the three-case recurrence.
struct EvilCountState {
  std::uint64_t n = 2;
  BigInt u = 3, u1 = 2, u2 = 1;

  void advance() {
    std::uint64_t m = n + 1;  // computing u_m
    BigInt next;
    if (thue_morse(m - 2) == 1)
      next = 2 * u;
    else if (thue_morse(m - 3) == 0)
      next = u + u2;
    else
      next = u + u1;
    u2 = u1;
    u1 = u;
    u = next;
    n = m;
  }
};

// u_0..u_N in one sweep.
inline std::vector<BigInt> count_series(std::uint64_t N) {
  std::vector<BigInt> out{1, 2, 3};
  out.resize(std::min<std::uint64_t>(N + 1, 3));
  if (N < 3) return out;
  out.reserve(N + 1);
  EvilCountState s;
  while (s.n < N) {
    s.advance();
    out.push_back(s.u);
  }
  return out;
}

inline BigInt count_LJ(std::uint64_t n) {
  if (n <= 2) return BigInt(n + 1);
  EvilCountState s;
  while (s.n < n) s.advance();
  return s.u;
}

// Exponents (of 2 and 3) in the closed form, read off t[0..n-2].
struct ClosedFormExponents {
  std::int64_t two = 0;
  std::int64_t three = 0;
};

inline ClosedFormExponents closed_form_exponents(const OccurrenceCounters& c) {
  ClosedFormExponents e;
  e.two = static_cast<std::int64_t>(c.e1) + 2 * static_cast<std::int64_t>(c.e00) -
          static_cast<std::int64_t>(c.e10);
  e.three = 1 + static_cast<std::int64_t>(c.e10) - static_cast<std::int64_t>(c.e00);
  return e;
}

inline BigInt closed_form_value(const ClosedFormExponents& e) {
  if (e.two < 0 || e.three < 0) throw DomainError("negative exponent in closed form");
  return boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(e.two)) *
         boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(e.three));
}

inline BigInt count_LJ_closed(std::uint64_t n) {
  if (n < 2) throw DomainError("closed form holds for n >= 2");
  return closed_form_value(closed_form_exponents(occurrence_counters(n - 1)));
}

// Words of length n in L'_J (no leading zero): a leading 0 can never start a
// forbidden factor, so those words are 0 followed by any member of length n-1.
inline BigInt count_LJ_prime(std::uint64_t n) {
  if (n == 0) return 1;
  return count_LJ(n) - count_LJ(n - 1);
}

inline bool in_LJ(const DigitWord& w) { return membership(EvilFactorSpec{LeadingZeros::Allowed}, w); }

// log2 u_n - n log2(24)/6.
inline double growth_deviation(std::uint64_t n) {
  if (n < 2) throw DomainError("growth deviation needs n >= 2");
  return log2_big(count_LJ(n)) - static_cast<double>(n) * std::log2(24.0) / 6.0;
}

struct GrowthEnvelope {
  std::uint64_t n_max = 0;
  double c1 = 0;  // min deviation / log2 n
  double c2 = 0;  // max deviation / log2 n
  double max_abs_deviation = 0;
};

// Empirical envelope constants: deviation(n) / log2(n) over 4 <= n <= n_max.
inline GrowthEnvelope growth_envelope(std::uint64_t n_max) {
  GrowthEnvelope g;
  g.n_max = n_max;
  g.c1 = 1e300;
  g.c2 = -1e300;
  EvilCountState s;
  const double slope = std::log2(24.0) / 6.0;
  while (s.n < n_max) {
    s.advance();
    if (s.n < 4) continue;
    double dev = log2_big(s.u) - static_cast<double>(s.n) * slope;
    double r = dev / std::log2(static_cast<double>(s.n));
    g.c1 = std::min(g.c1, r);
    g.c2 = std::max(g.c2, r);
    g.max_abs_deviation = std::max(g.max_abs_deviation, std::fabs(dev));
  }
  return g;
}

struct WitnessRow {
  int i = 0;
  std::string representation;  // rep_2(3*2^i - 1) = 1 0 1^i
  int member = 0;              // characteristic value of L'_J
  int thue_morse_i = 0;
  bool match() const { return member == thue_morse_i; }
};

struct WitnessReport {
  std::vector<WitnessRow> rows;
  bool all_match() const {
    for (const auto& r : rows)
      if (!r.match()) return false;
    return true;
  }
};

inline WitnessReport nonregularity_witness(int i_max) {
  WitnessReport rep;
  const LanguageSpec lj_prime = EvilFactorSpec{LeadingZeros::Forbidden};
  for (int i = 0; i <= i_max; ++i) {
    BigInt n = 3 * (BigInt(1) << i) - 1;
    DigitWord w = to_digits(n, 2);
    WitnessRow row;
    row.i = i;
    row.representation = to_string(w);
    row.member = membership(lj_prime, w) ? 1 : 0;
    row.thue_morse_i = thue_morse(static_cast<std::uint64_t>(i));
    rep.rows.push_back(row);
  }
  return rep;
}

// Two-state positional automaton for fixed-length words of L_J: state 1
// means the previously read (more significant) digit was 1. Used by the
// summatory digit DP; not a finite automaton for the whole language.
struct FixedLengthAutomaton {
  LeadingZeros leading_zeros = LeadingZeros::Forbidden;
  int base = 2;
  int num_states = 2;
  int initial = 0;
  bool accepts(int) const { return true; }
  int step(int q, int d, std::size_t position) const {
    if (q == 1 && d == 0 && is_evil(position)) return -1;
    return d == 1 ? 1 : 0;
  }
};

}  // namespace digitlang::evil
