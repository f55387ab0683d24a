#pragma once

// Shared scalar types and the error hierarchy used by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace digitlang {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Base class for all library errors. `code()` picks the CLI exit status:
// 2 for bad input, 3 for requests the library cannot honour.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, int code = 2)
      : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

struct InvalidBase : Error {
  explicit InvalidBase(const std::string& w) : Error("invalid base: " + w) {}
};

struct InvalidDigit : Error {
  explicit InvalidDigit(const std::string& w) : Error("invalid digit: " + w) {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& w) : Error("invalid spec: " + w) {}
};

// Schema violation while reading a JSON document; `path` is a JSON path
// such as `$.forbidden[1].blocks[0]`.
struct ParseError : Error {
  ParseError(const std::string& path, const std::string& w)
      : Error("parse error at " + path + ": " + w), path(path) {}
  std::string path;
};

struct NonRegular : Error {
  explicit NonRegular(const std::string& w) : Error("non-regular: " + w, 3) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& w) : Error("resource limit: " + w, 3) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain error: " + w) {}
};

struct Divergent : Error {
  explicit Divergent(const std::string& w) : Error("divergent: " + w, 3) {}
};

struct EmptyLanguage : Error {
  explicit EmptyLanguage(const std::string& w) : Error("empty language: " + w, 3) {}
};

struct HypothesisViolated : Error {
  explicit HypothesisViolated(const std::string& w)
      : Error("hypothesis violated: " + w, 3) {}
};

struct NoDominantRealRoot : Error {
  explicit NoDominantRealRoot(const std::string& w)
      : Error("no dominant real root: " + w, 3) {}
};

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

// Floor of log2 for a positive integer plus the fractional part from the
// top 60 bits; accurate to ~1e-15 relative.
inline double log2_big(const BigInt& v) {
  if (v <= 0) throw DomainError("log2 of non-positive integer");
  std::size_t msb = boost::multiprecision::msb(v);
  if (msb < 60) return std::log2(v.convert_to<double>());
  BigInt top = v >> (msb - 60);
  return static_cast<double>(msb - 60) + std::log2(top.convert_to<double>());
}

inline long double to_long_double(const BigInt& v) { return v.convert_to<long double>(); }

}  // namespace digitlang
