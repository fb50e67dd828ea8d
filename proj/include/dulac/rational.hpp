#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dulac {

// Exact rational with int64 parts, always reduced, den > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return double(num_) / double(den_); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  bool operator==(const Rational& o) const = default;
  std::strong_ordering operator<=>(const Rational& o) const;

  // "p/q", "p", or a finite decimal such as "0.25".
  static Rational parse(std::string_view s);
  std::string str() const;  // always "p/q"

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace dulac
