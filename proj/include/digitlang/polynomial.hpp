#pragma once

// Dense univariate polynomials, ascending coefficients, over exact
// integer or rational scalars.

#include <algorithm>
#include <complex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "digitlang/core.hpp"

namespace digitlang {

template <class T>
struct Polynomial {
  std::vector<T> coeffs;  // coeffs[i] multiplies x^i; no trailing zeros

  Polynomial() = default;
  Polynomial(std::initializer_list<T> init) : coeffs(init) { normalize(); }
  explicit Polynomial(std::vector<T> c) : coeffs(std::move(c)) { normalize(); }

  static Polynomial monomial(const T& a, std::size_t k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = a;
    return Polynomial(std::move(c));
  }

  void normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const T& leading() const { return coeffs.back(); }
  T operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : T(0); }

  bool operator==(const Polynomial& o) const { return coeffs == o.coeffs; }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<T> c(std::max(coeffs.size(), o.coeffs.size()), T(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (std::size_t i = 0; i < o.coeffs.size(); ++i) c[i] += o.coeffs[i];
    return Polynomial(std::move(c));
  }

  Polynomial operator-() const {
    std::vector<T> c = coeffs;
    for (auto& x : c) x = -x;
    return Polynomial(std::move(c));
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<T> c(coeffs.size() + o.coeffs.size() - 1, T(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < o.coeffs.size(); ++j) c[i + j] += coeffs[i] * o.coeffs[j];
    }
    return Polynomial(std::move(c));
  }

  Polynomial scaled(const T& s) const {
    std::vector<T> c = coeffs;
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }

  Polynomial derivative() const {
    std::vector<T> c;
    for (std::size_t i = 1; i < coeffs.size(); ++i) c.push_back(coeffs[i] * T(static_cast<int>(i)));
    return Polynomial(std::move(c));
  }

  template <class U>
  U eval(const U& x) const {
    U acc = U(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }
};

using IntPolynomial = Polynomial<BigInt>;
using RatPolynomial = Polynomial<Rational>;

inline long double to_ld(const BigInt& v) { return v.convert_to<long double>(); }
inline long double to_ld(const Rational& v) { return v.convert_to<long double>(); }

template <class T>
std::complex<long double> eval_complex(const Polynomial<T>& p, std::complex<long double> z) {
  std::complex<long double> acc = 0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * z + to_ld(*it);
  return acc;
}

inline RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  for (const auto& x : p.coeffs) c.emplace_back(x);
  return RatPolynomial(std::move(c));
}

inline BigInt content(const IntPolynomial& p) {
  BigInt g = 0;
  for (const auto& x : p.coeffs) g = boost::multiprecision::gcd(g, x);
  return g;
}

// Divides out the integer content and makes the leading coefficient positive.
inline IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<BigInt> c;
  for (const auto& x : p.coeffs) c.push_back(x / g);
  return IntPolynomial(std::move(c));
}

// Clears denominators and returns the primitive integer multiple.
inline IntPolynomial to_integer_primitive(const RatPolynomial& p) {
  BigInt l = 1;
  for (const auto& x : p.coeffs) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
  std::vector<BigInt> c;
  for (const auto& x : p.coeffs) c.push_back(boost::multiprecision::numerator(Rational(x * l)));
  return primitive_part(IntPolynomial(std::move(c)));
}

// Quotient and remainder over the rationals.
inline std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs;
  int db = b.degree();
  std::vector<Rational> q(std::max(0, a.degree() - db + 1), Rational(0));
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rational f = r[i] / b.leading();
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs[j];
  }
  return {RatPolynomial(std::move(q)), RatPolynomial(std::move(r))};
}

inline RatPolynomial make_monic(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rational(1) / p.leading());
}

inline RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = make_monic(r);
  }
  return make_monic(a);
}

inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  return to_integer_primitive(gcd(to_rational(a), to_rational(b)));
}

// Exact division a / b over the integers; throws when b does not divide a.
inline IntPolynomial exact_divide(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = divmod(to_rational(a), to_rational(b));
  if (!r.is_zero()) throw DomainError("polynomial division is not exact");
  std::vector<BigInt> c;
  for (const auto& x : q.coeffs) {
    if (boost::multiprecision::denominator(x) != 1) throw DomainError("quotient is not integral");
    c.push_back(boost::multiprecision::numerator(x));
  }
  return IntPolynomial(std::move(c));
}

inline IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() < 1) return p;
  IntPolynomial g = gcd(p, p.derivative());
  return primitive_part(exact_divide(p, g));
}

// Removes factors of x.
inline IntPolynomial strip_zero_roots(const IntPolynomial& p) {
  std::size_t k = 0;
  while (k < p.coeffs.size() && p.coeffs[k] == 0) ++k;
  return IntPolynomial(std::vector<BigInt>(p.coeffs.begin() + static_cast<long>(k), p.coeffs.end()));
}

template <class T>
std::string coeff_list(const Polynomial<T>& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (i) os << ", ";
    os << to_string(p.coeffs[i]);
  }
  os << ']';
  return os.str();
}

// Human-readable form in ascending powers, e.g. "1 + 10x - x^2".
template <class T>
std::string pretty(const Polynomial<T>& p, char var = 'x') {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    T c = p.coeffs[i];
    if (c == 0) continue;
    bool neg = c < 0;
    T a = neg ? T(-c) : c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || a != 1) os << to_string(a);
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

}  // namespace digitlang
