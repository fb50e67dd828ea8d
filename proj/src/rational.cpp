#include "dulac/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

#include "dulac/error.hpp"

namespace dulac {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::InvalidArgument, "rational overflow");
  return std::int64_t(v);
}

Rational reduce(i128 n, i128 d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (d < 0) n = -n, d = -d;
  i128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) n /= a, d /= a;
  return Rational(narrow(n), narrow(d));
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e)
    throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (d < 0) n = -n, d = -d;
  std::int64_t g = std::gcd(n, d);
  if (g > 1) n /= g, d /= g;
  num_ = n;
  den_ = d;
}

Rational Rational::operator+(const Rational& o) const {
  return reduce(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}
Rational Rational::operator-(const Rational& o) const {
  return reduce(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}
Rational Rational::operator*(const Rational& o) const {
  return reduce(i128(num_) * o.num_, i128(den_) * o.den_);
}
Rational Rational::operator/(const Rational& o) const {
  return reduce(i128(num_) * o.den_, i128(den_) * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  i128 l = i128(num_) * o.den_, r = i128(o.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::parse(std::string_view s) {
  while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
  while (!s.empty() && std::isspace((unsigned char)s.back())) s.remove_suffix(1);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t d = parse_int(s.substr(slash + 1), s);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
    return Rational(parse_int(s.substr(0, slash), s), d);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip.front() == '-';
    if (neg || (!ip.empty() && ip.front() == '+')) ip.remove_prefix(1);
    if (fp.size() > 18 || (ip.empty() && fp.empty()))
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'");
    std::int64_t whole = ip.empty() ? 0 : parse_int(ip, s);
    std::int64_t frac = fp.empty() ? 0 : parse_int(fp, s);
    if (!fp.empty() && (fp.front() == '+' || fp.front() == '-'))
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'");
    i128 scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rational r = reduce(i128(whole) * scale + frac, scale);
    return neg ? -r : r;
  }
  return Rational(parse_int(s, s), 1);
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace dulac
