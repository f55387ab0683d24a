#pragma once

// Base-b digit words, the Thue-Morse sequence and evil/odious numbers.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "digitlang/core.hpp"

namespace digitlang {

// Digits are stored most-significant first. Positions used by language
// constraints count from the least significant end (position 0 is the
// last element of `digits`).
struct DigitWord {
  int base = 10;
  std::vector<int> digits;

  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }

  // Digit at position i counted from the least significant end.
  int at_position(std::size_t i) const { return digits[digits.size() - 1 - i]; }

  bool operator==(const DigitWord&) const = default;
};

inline void check_base(int b) {
  if (b < 2) throw InvalidBase(std::to_string(b));
}

inline char digit_char(int d) {
  return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}

inline int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

inline void validate(const DigitWord& w) {
  check_base(w.base);
  for (int d : w.digits)
    if (d < 0 || d >= w.base)
      throw InvalidDigit(std::to_string(d) + " in base " + std::to_string(w.base));
}

// Parses a display string such as "881" (bases up to 36).
inline DigitWord parse_word(const std::string& text, int base) {
  check_base(base);
  DigitWord w{base, {}};
  for (char c : text) {
    int d = digit_value(c);
    if (d < 0 || d >= base)
      throw InvalidDigit(std::string("'") + c + "' in base " + std::to_string(base));
    w.digits.push_back(d);
  }
  return w;
}

inline std::string to_string(const DigitWord& w) {
  std::string s;
  for (int d : w.digits) {
    if (w.base <= 36) {
      s.push_back(digit_char(d));
    } else {
      if (!s.empty()) s.push_back('.');
      s += std::to_string(d);
    }
  }
  return s;
}

template <class Int>
DigitWord to_digits(Int n, int b) {
  check_base(b);
  if (n < 0) throw DomainError("negative integer has no base-b representation");
  DigitWord w{b, {}};
  Int base = b;
  while (n > 0) {
    w.digits.push_back(static_cast<int>(n % base));
    n /= base;
  }
  std::reverse(w.digits.begin(), w.digits.end());
  return w;
}

inline BigInt from_digits(const DigitWord& w) {
  validate(w);
  BigInt v = 0;
  for (int d : w.digits) v = v * w.base + d;
  return v;
}

inline std::uint64_t from_digits_u64(const DigitWord& w) {
  validate(w);
  std::uint64_t v = 0;
  for (int d : w.digits) v = v * static_cast<std::uint64_t>(w.base) + static_cast<std::uint64_t>(d);
  return v;
}

inline int thue_morse(std::uint64_t n) { return std::popcount(n) & 1; }

inline bool is_evil(std::uint64_t n) { return thue_morse(n) == 0; }

inline bool is_odious(std::uint64_t n) { return thue_morse(n) == 1; }

}  // namespace digitlang
