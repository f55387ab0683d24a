#pragma once

// Characteristic polynomials, Sturm isolation of real roots, certified
// root moduli, Pisot verdicts, the dominant-eigenvalue conditions for
// summatory asymptotics, and the candidate pole grid.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "digitlang/core.hpp"
#include "digitlang/matrix.hpp"
#include "digitlang/polynomial.hpp"
#include "digitlang/regular.hpp"

namespace digitlang {

// Berkowitz: det(xI - A), division free, ascending coefficients.
template <class T>
Polynomial<T> char_poly(const Matrix<T>& A) {
  if (!A.square()) throw DomainError("char_poly of a non-square matrix");
  std::size_t n = A.rows;
  if (n == 0) return Polynomial<T>{T(1)};
  std::vector<T> vect{T(1), T(-A(0, 0))};  // descending
  for (std::size_t r = 1; r < n; ++r) {
    // Q = [1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C]
    std::vector<T> q{T(1), T(-A(r, r))};
    std::vector<T> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = A(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot += A(r, i) * col[i];
      q.push_back(-dot);
      std::vector<T> nxt(r, T(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) nxt[i] += A(i, j) * col[j];
      col = std::move(nxt);
    }
    std::vector<T> nv(r + 2, T(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) nv[i] += q[i - j] * vect[j];
    vect = std::move(nv);
  }
  std::reverse(vect.begin(), vect.end());
  return Polynomial<T>(std::move(vect));
}

// Monic integer characteristic polynomial of a rational matrix whose
// polynomial happens to be integral (true for anything similar to a
// sub-block of an integer matrix); throws otherwise.
inline IntPolynomial integer_char_poly(const RatMatrix& A) {
  auto p = char_poly(A);
  std::vector<BigInt> c;
  for (const auto& x : p.coeffs) {
    if (boost::multiprecision::denominator(x) != 1) throw DomainError("characteristic polynomial is not integral");
    c.push_back(boost::multiprecision::numerator(x));
  }
  return IntPolynomial(std::move(c));
}

template <class T>
Matrix<T> eval_matrix(const Polynomial<T>& p, const Matrix<T>& A) {
  Matrix<T> acc(A.rows, A.cols);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
    acc = acc * A + Matrix<T>::identity(A.rows).scaled(*it);
  return acc;
}

// ---------------------------------------------------------------------------
// Real roots

struct RootInterval {
  Rational lo, hi;
  bool isolating = true;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  long double mid() const { return to_ld(Rational((lo + hi) / 2)); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

inline Rational tolerance(double tol) {
  // exact dyadic not exceeding tol
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  Rational t = 1;
  while (t > Rational(tol)) t /= 2;
  return t;
}

class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& p) {
    RatPolynomial a = to_rational(squarefree_part(p));
    seq_.push_back(a);
    if (a.degree() < 1) return;
    seq_.push_back(a.derivative());
    while (seq_.back().degree() > 0) {
      auto r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
      if (r.is_zero()) break;
      seq_.push_back(-r);
    }
  }

  const RatPolynomial& base() const { return seq_[0]; }

  int sign_changes(const Rational& x) const {
    int changes = 0, last = 0;
    for (const auto& p : seq_) {
      Rational v = p.eval(x);
      int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  // distinct real roots in (a, b]
  int count(const Rational& a, const Rational& b) const { return sign_changes(a) - sign_changes(b); }

 private:
  std::vector<RatPolynomial> seq_;
};

// Cauchy bound: every root has modulus < 1 + max |a_i / a_n|.
inline Rational cauchy_bound(const IntPolynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeffs[i])) / abs(p.leading()));
  return m + 1;
}

namespace detail {

inline void isolate(const SturmSequence& s, Rational lo, Rational hi, const Rational& tol,
                    std::vector<RootInterval>& out) {
  int n = s.count(lo, hi);
  if (n == 0) return;
  if (n == 1) {
    while (hi - lo > tol) {
      Rational mid = (lo + hi) / 2;
      if (s.base().eval(mid) == 0) {
        out.push_back({mid, mid, true});
        return;
      }
      if (s.count(lo, mid) == 1)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back({lo, hi, true});
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate(s, lo, mid, tol, out);
  isolate(s, mid, hi, tol, out);
}

}  // namespace detail

// All distinct real roots, ascending, each in an isolating interval
// (lo, hi] of width <= tol (degenerate when the root was hit exactly).
inline std::vector<RootInterval> real_roots(const IntPolynomial& p, double tol = 1e-12) {
  if (p.is_zero()) throw DomainError("zero polynomial has no isolated roots");
  std::vector<RootInterval> out;
  if (p.degree() < 1) return out;
  SturmSequence s(p);
  Rational B = cauchy_bound(p);
  detail::isolate(s, -B, B, tolerance(tol), out);
  // a monic integer polynomial's rational roots are integers: report them exactly
  for (auto& r : out) {
    if (r.exact()) continue;
    BigInt k = boost::multiprecision::numerator(r.hi) / boost::multiprecision::denominator(r.hi);
    for (BigInt c : {BigInt(k - 1), k, BigInt(k + 1)})
      if (r.lo <= Rational(c) && Rational(c) <= r.hi && p.eval(c) == 0) r.lo = r.hi = Rational(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complex roots with a-posteriori inclusion disks

struct RootModulus {
  std::complex<long double> approx;
  long double lo = 0, hi = 0;  // certified bounds on |root|
  int multiplicity = 1;
  bool certified = false;
};

namespace detail {

// Aberth iteration on a square-free integer polynomial.
inline std::vector<std::complex<long double>> aberth(const IntPolynomial& p) {
  using C = std::complex<long double>;
  int n = p.degree();
  std::vector<C> z(n);
  if (n == 0) return z;
  IntPolynomial dp = p.derivative();
  long double R = to_ld(cauchy_bound(p));
  for (int i = 0; i < n; ++i) {
    long double ang = 2 * M_PIl * (i + 0.25L) / n + 0.4L;
    z[i] = std::polar(R * 0.5L + 0.1L, ang);
  }
  for (int it = 0; it < 500; ++it) {
    long double move = 0;
    for (int i = 0; i < n; ++i) {
      C f = eval_complex(p, z[i]);
      C fd = eval_complex(dp, z[i]);
      if (f == C(0)) continue;
      C ratio = f / fd;
      C s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += C(1) / (z[i] - z[j]);
      C w = ratio / (C(1) - ratio * s);
      z[i] -= w;
      move = std::max(move, std::abs(w) / std::max<long double>(1, std::abs(z[i])));
    }
    if (move < 1e-19L) break;
  }
  return z;
}

// Disks D(z_i, n |W_i|) from the Weierstrass corrections; when pairwise
// disjoint each holds exactly one root. The evaluation error of p(z_i) is
// folded into the radius.
inline std::vector<long double> inclusion_radii(const IntPolynomial& p, const std::vector<std::complex<long double>>& z) {
  using C = std::complex<long double>;
  int n = p.degree();
  const long double eps = std::numeric_limits<long double>::epsilon();
  std::vector<long double> rad(n);
  long double lead = std::fabs(to_ld(p.leading()));
  for (int i = 0; i < n; ++i) {
    C f = eval_complex(p, z[i]);
    long double bound = 0, zi = std::abs(z[i]), pw = 1;
    for (const auto& c : p.coeffs) {
      bound += std::fabs(to_ld(c)) * pw;
      pw *= zi;
    }
    long double denom = lead;
    for (int j = 0; j < n; ++j)
      if (j != i) denom *= std::abs(z[i] - z[j]);
    if (denom == 0) {
      rad[i] = std::numeric_limits<long double>::infinity();
      continue;
    }
    long double err = 4 * n * eps * bound;
    rad[i] = n * (std::abs(f) + err) / denom + 8 * eps * zi;
  }
  return rad;
}

// Yun square-free factorisation: p = prod f_i^i.
inline std::vector<std::pair<IntPolynomial, int>> squarefree_factors(const IntPolynomial& p) {
  std::vector<std::pair<IntPolynomial, int>> out;
  RatPolynomial a = to_rational(p);
  RatPolynomial b = gcd(a, a.derivative());
  RatPolynomial c = divmod(a, b).first;
  RatPolynomial d = divmod(a.derivative(), b).first - c.derivative();
  int i = 1;
  while (c.degree() >= 1) {
    RatPolynomial g = gcd(c, d);
    if (g.degree() >= 1) out.push_back({to_integer_primitive(g), i});
    c = divmod(c, g).first;
    d = divmod(d, g).first - c.derivative();
    ++i;
  }
  return out;
}

}  // namespace detail

// Moduli of every complex root with multiplicity; `certified` is set when
// the inclusion disks of its square-free factor are pairwise disjoint.
inline std::vector<RootModulus> roots_moduli(const IntPolynomial& p) {
  std::vector<RootModulus> out;
  if (p.degree() < 1) return out;
  int zeros = 0;
  while (p.coeffs[zeros] == 0) ++zeros;
  IntPolynomial q = strip_zero_roots(p);
  if (zeros > 0) out.push_back({{0, 0}, 0, 0, zeros, true});
  for (const auto& [f, mult] : detail::squarefree_factors(q)) {
    auto z = detail::aberth(f);
    auto rad = detail::inclusion_radii(f, z);
    bool disjoint = true;
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = i + 1; j < z.size(); ++j)
        if (std::abs(z[i] - z[j]) <= rad[i] + rad[j]) disjoint = false;
    for (std::size_t i = 0; i < z.size(); ++i) {
      RootModulus m;
      m.approx = z[i];
      m.lo = std::max<long double>(0, std::abs(z[i]) - rad[i]);
      m.hi = std::abs(z[i]) + rad[i];
      m.multiplicity = mult;
      m.certified = disjoint && std::isfinite(rad[i]);
      out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end(), [](const RootModulus& a, const RootModulus& b) {
    return std::abs(a.approx) > std::abs(b.approx);
  });
  return out;
}

// Largest real root, required positive and of maximal modulus among all
// roots (ties in modulus allowed).
inline RootInterval dominant_root(const IntPolynomial& p, double tol = 1e-12) {
  auto roots = real_roots(p, tol);
  if (roots.empty() || roots.back().hi <= 0) throw NoDominantRealRoot("no positive real root");
  RootInterval top = roots.back();
  long double lam = to_ld(top.hi);
  for (const auto& m : roots_moduli(p))
    if (m.certified && m.lo > lam * (1 + 1e-15L))
      throw NoDominantRealRoot("a complex root has larger modulus than the largest real root");
  return top;
}

enum class Verdict { Yes, No, Undetermined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "undetermined";
  }
}

namespace detail {

inline IntPolynomial cyclotomic(int k) {
  static std::map<int, IntPolynomial> cache;
  if (auto it = cache.find(k); it != cache.end()) return it->second;
  IntPolynomial p = IntPolynomial::monomial(1, k) - IntPolynomial{1};
  for (int d = 1; d < k; ++d)
    if (k % d == 0) p = exact_divide(p, cyclotomic(d));
  cache[k] = p;
  return p;
}

inline int euler_phi(int k) {
  int r = k;
  for (int q = 2; q * q <= k; ++q)
    if (k % q == 0) {
      while (k % q == 0) k /= q;
      r -= r / q;
    }
  if (k > 1) r -= r / k;
  return r;
}

}  // namespace detail

// True when some root of unity is a root (exact).
inline bool has_root_of_unity(const IntPolynomial& p) {
  int n = p.degree();
  for (int k = 1; k <= 2 * n * n + 2; ++k) {
    if (detail::euler_phi(k) > n) continue;
    if (divmod(to_rational(p), to_rational(detail::cyclotomic(k))).second.is_zero()) return true;
  }
  return false;
}

// Whole-polynomial reading: yes when exactly one root lies outside the
// closed unit disk, it is real and > 1, and every other root is certified
// strictly inside. Roots of unity are detected exactly.
inline Verdict is_pisot(const IntPolynomial& p) {
  if (p.degree() < 1 || abs(p.leading()) != 1) return Verdict::No;
  if (has_root_of_unity(p)) return Verdict::No;
  auto ms = roots_moduli(p);
  int outside = 0;
  bool unsure = false;
  const RootModulus* top = nullptr;
  for (const auto& m : ms) {
    if (m.certified && m.lo > 1) {
      outside += m.multiplicity;
      top = &m;
    } else if (!(m.certified && m.hi < 1)) {
      unsure = true;
    }
  }
  if (outside > 1) return Verdict::No;
  if (outside == 0) return unsure ? Verdict::Undetermined : Verdict::No;
  // a lone root outside the disk is real by conjugate symmetry
  if (top->approx.real() < 0) return Verdict::No;
  return unsure ? Verdict::Undetermined : Verdict::Yes;
}

// ---------------------------------------------------------------------------
// Reports

struct SpectralReport {
  IntPolynomial polynomial;
  std::optional<RootInterval> dominant;
  std::string gap = "unverified";  // "certified" or "unverified"
  long double second_modulus = 0;
  Verdict pisot = Verdict::Undetermined;
  bool annihilates = false;
};

inline SpectralReport spectral_report(const IntPolynomial& p, double tol = 1e-12) {
  SpectralReport r;
  r.polynomial = p;
  r.annihilates = true;
  try {
    r.dominant = dominant_root(p, tol);
  } catch (const NoDominantRealRoot&) {
  }
  auto ms = roots_moduli(p);
  if (r.dominant) {
    long double lam = to_ld(r.dominant->lo);
    long double margin = tol * lam;
    bool ok = true;
    bool skipped = false;
    for (const auto& m : ms) {
      if (!skipped && m.multiplicity == 1 && std::fabs(std::abs(m.approx) - r.dominant->mid()) <= 1e-9L * lam &&
          std::fabs(m.approx.imag()) <= 1e-9L * lam && m.approx.real() > 0) {
        skipped = true;
        continue;
      }
      r.second_modulus = std::max(r.second_modulus, std::abs(m.approx));
      if (!m.certified || m.hi >= lam - margin) ok = false;
    }
    r.gap = ok && skipped ? "certified" : "unverified";
  }
  r.pisot = is_pisot(p);
  return r;
}

inline SpectralReport spectral_report(const IntMatrix& M, double tol = 1e-12) {
  auto p = char_poly(M);
  auto r = spectral_report(p, tol);
  r.annihilates = eval_matrix(p, M).is_zero();
  return r;
}

inline std::string decimal(const Rational& x, int digits = 15) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << to_ld(x);
  return os.str();
}

inline nlohmann::json to_json(const RootInterval& r) {
  return {{"lo", to_string(r.lo)}, {"hi", to_string(r.hi)}, {"lo_decimal", decimal(r.lo)},
          {"hi_decimal", decimal(r.hi)}, {"isolating", r.isolating}};
}

inline nlohmann::json to_json(const SpectralReport& r) {
  nlohmann::json poly = nlohmann::json::array();
  for (const auto& c : r.polynomial.coeffs) poly.push_back(c.str());
  nlohmann::json j = {{"polynomial", poly},
                      {"gap", r.gap},
                      {"second_modulus", static_cast<double>(r.second_modulus)},
                      {"pisot", to_string(r.pisot)},
                      {"annihilates", r.annihilates}};
  j["dominant"] = r.dominant ? to_json(*r.dominant) : nlohmann::json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Applicability of the dominant-eigenvalue asymptotics

struct DgReport {
  IntPolynomial polynomial;  // of the sum matrix of the trimmed representation
  std::optional<RootInterval> lambda;
  bool unique_dominant = false;  // condition (a)
  std::string norm_condition = "not established";  // "holds" or "not established"
  std::string norm_used;
  Rational norm_value = 0;
  std::string failure;
  bool applicable() const { return unique_dominant && norm_condition == "holds"; }
};

// (a) a unique positive eigenvalue of maximal modulus, simple, with ties
// judged within tol*lambda; (b) lambda above max_i ||M_i|| for the row-sum
// or column-sum norm. Dead and unreachable states are trimmed first: they
// contribute nothing to the sequence but carry the eigenvalue b.
inline DgReport dg_applicable(const LinearRepresentation& rep_in, double tol = 1e-12) {
  DgReport r;
  LinearRepresentation rep = trim(rep_in);
  if (rep.dim() == 0) {
    r.failure = "zero sequence";
    return r;
  }
  r.polynomial = integer_char_poly(sum_matrix(rep));
  try {
    r.lambda = dominant_root(r.polynomial, tol);
  } catch (const NoDominantRealRoot& e) {
    r.failure = e.what();
    return r;
  }
  long double lam = to_ld(r.lambda->lo);
  long double margin = tol * lam;
  int at_top = 0;
  bool unsure = false;
  for (const auto& m : roots_moduli(r.polynomial)) {
    if (m.lo > lam - margin || std::fabs(std::abs(m.approx) - lam) <= margin) at_top += m.multiplicity;
    else if (!m.certified || m.hi >= lam - margin) unsure = true;
  }
  r.unique_dominant = at_top == 1 && !unsure;
  if (!r.unique_dominant)
    r.failure = at_top > 1 ? "several eigenvalues of maximal modulus" : "dominance gap not certified";

  Rational row = 0, col = 0;
  for (const auto& m : rep.M) {
    row = std::max(row, m.row_sum_norm());
    col = std::max(col, m.col_sum_norm());
  }
  if (r.lambda->lo > row) {
    r.norm_condition = "holds";
    r.norm_used = "row-sum";
    r.norm_value = row;
  } else if (r.lambda->lo > col) {
    r.norm_condition = "holds";
    r.norm_used = "column-sum";
    r.norm_value = col;
  } else {
    r.norm_value = std::min(row, col);
    if (r.failure.empty()) r.failure = "norm condition not established";
  }
  return r;
}

inline nlohmann::json to_json(const DgReport& r) {
  nlohmann::json poly = nlohmann::json::array();
  for (const auto& c : r.polynomial.coeffs) poly.push_back(c.str());
  return {{"polynomial", poly},
          {"lambda", r.lambda ? to_json(*r.lambda) : nlohmann::json(nullptr)},
          {"unique_dominant", r.unique_dominant},
          {"norm_condition", r.norm_condition},
          {"norm_used", r.norm_used},
          {"norm_value", to_string(r.norm_value)},
          {"applicable", r.applicable()},
          {"failure", r.failure}};
}

// ---------------------------------------------------------------------------
// Candidate poles

struct CandidatePole {
  std::complex<long double> gamma;
  int n = 0, l = 0;
  std::complex<long double> z;
};

inline std::vector<CandidatePole> candidate_poles(const std::vector<std::complex<long double>>& eigs, int b,
                                                  const std::vector<int>& n_range,
                                                  const std::vector<int>& l_range,
                                                  std::vector<std::string>* notes = nullptr) {
  std::vector<CandidatePole> out;
  const long double lb = std::log(static_cast<long double>(b));
  for (const auto& g : eigs) {
    if (std::abs(g) == 0) {
      if (notes) notes->push_back("zero eigenvalue skipped");
      continue;
    }
    std::complex<long double> lg = std::log(g);
    for (int n : n_range)
      for (int l : l_range) {
        std::complex<long double> z = lg / lb - static_cast<long double>(l) +
                                      std::complex<long double>(0, 2 * M_PIl * n / lb);
        out.push_back({g, n, l, z});
      }
  }
  return out;
}

// Numeric eigenvalues (with multiplicity) of a matrix with integral
// characteristic polynomial.
inline std::vector<std::complex<long double>> eigenvalues(const RatMatrix& M) {
  std::vector<std::complex<long double>> out;
  for (const auto& m : roots_moduli(integer_char_poly(M)))
    for (int i = 0; i < m.multiplicity; ++i) out.push_back(m.approx);
  return out;
}

struct MarkedPole {
  bool marked = false;
  RootInterval rho;
  long double value = 0;  // log rho / log b
  std::string reason;
};

// log(rho)/log(b) is a simple pole when the (trimmed) sum matrix is a
// primitive non-negative integer matrix and the sequence is non-negative.
inline MarkedPole marked_simple_pole(const LinearRepresentation& rep_in, double tol = 1e-12) {
  MarkedPole p;
  LinearRepresentation rep = trim(rep_in);
  RatMatrix S = sum_matrix(rep);
  if (rep.dim() == 0) {
    p.reason = "zero sequence";
    return p;
  }
  if (!is_integral(S)) {
    p.reason = "sum matrix is not integral";
    return p;
  }
  for (const auto& x : S.a)
    if (x < 0) {
      p.reason = "sum matrix has a negative entry";
      return p;
    }
  if (!is_primitive(S)) {
    p.reason = "sum matrix is not primitive";
    return p;
  }
  p.rho = dominant_root(integer_char_poly(S), tol);
  p.value = std::log(p.rho.mid()) / std::log(static_cast<long double>(rep.base));
  p.marked = true;
  return p;
}

}  // namespace digitlang
