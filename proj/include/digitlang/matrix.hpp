#pragma once

// Small dense matrices over exact scalars.

#include <algorithm>
#include <vector>

#include <json.hpp>

#include "digitlang/core.hpp"

namespace digitlang {

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols) throw DomainError("ragged matrix literal");
      a.insert(a.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& r) {
    Matrix m(r.size(), r.empty() ? 0 : r[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = r[i][j];
    return m;
  }

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  bool square() const { return rows == cols; }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  bool is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const T& x) { return x == 0; });
  }

  Matrix operator+(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) throw DomainError("matrix shape mismatch");
    Matrix m = *this;
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] += o.a[i];
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols != o.rows) throw DomainError("matrix shape mismatch");
    Matrix m(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols; ++j) m(i, j) += x * o(k, j);
      }
    return m;
  }

  Matrix scaled(const T& s) const {
    Matrix m = *this;
    for (auto& x : m.a) x *= s;
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix pow(unsigned e) const {
    Matrix r = identity(rows), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // Max absolute row sum (the operator infinity-norm).
  T row_sum_norm() const {
    T best = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      T s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += abs((*this)(i, j));
      best = std::max(best, s);
    }
    return best;
  }

  T col_sum_norm() const { return transpose().row_sum_norm(); }
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i];
  return r;
}

// Converts back when every entry is integral; throws otherwise.
inline IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    if (boost::multiprecision::denominator(m.a[i]) != 1) throw DomainError("matrix entry is not an integer");
    r.a[i] = boost::multiprecision::numerator(m.a[i]);
  }
  return r;
}

inline bool is_integral(const RatMatrix& m) {
  return std::all_of(m.a.begin(), m.a.end(),
                     [](const Rational& x) { return boost::multiprecision::denominator(x) == 1; });
}

// Primitive = irreducible and aperiodic; tested by positivity of M^k with
// k = (n-1)^2 + 1 (Wielandt), via repeated boolean squaring.
template <class T>
bool is_primitive(const Matrix<T>& m) {
  std::size_t n = m.rows;
  if (n == 0) return false;
  std::vector<char> p(n * n), cur;
  for (std::size_t i = 0; i < n * n; ++i) {
    if (m.a[i] < 0) return false;
    p[i] = m.a[i] != 0;
  }
  auto mul = [n](const std::vector<char>& x, const std::vector<char>& y) {
    std::vector<char> z(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (x[i * n + k])
          for (std::size_t j = 0; j < n; ++j) z[i * n + j] |= y[k * n + j];
    return z;
  };
  std::size_t target = (n - 1) * (n - 1) + 1;
  cur = p;
  std::size_t have = 1;
  // powers beyond the Wielandt bound stay positive, so overshooting is fine
  while (have < target) {
    cur = mul(cur, cur);
    have *= 2;
  }
  return std::all_of(cur.begin(), cur.end(), [](char c) { return c != 0; });
}

template <class T>
nlohmann::json to_json(const Matrix<T>& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(to_string(m(i, j)));
    out.push_back(row);
  }
  return out;
}

}  // namespace digitlang
