#include "dulac/cpoly.hpp"

#include <algorithm>
#include <cmath>

namespace dulac {

CPoly::CPoly(std::vector<cplx> c) : c_(std::move(c)) { strip(); }

CPoly::CPoly(cplx c0) {
  if (c0 != cplx{}) c_.push_back(c0);
}

void CPoly::strip() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

cplx CPoly::operator()(cplx x) const {
  cplx r{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

CPoly CPoly::derivative() const {
  if (c_.size() < 2) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * double(i);
  return CPoly(std::move(d));
}

CPoly CPoly::shifted(cplx c) const {
  if (c == cplx{} || c_.size() < 2) return *this;
  // Horner in the ring: r <- r*(x+c) + a_d
  std::vector<cplx> r;
  r.reserve(c_.size());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r.push_back(cplx{});
    for (std::size_t j = r.size() - 1; j > 0; --j) r[j] = r[j - 1] + r[j] * c;
    r[0] = r[0] * c + *it;
  }
  return CPoly(std::move(r));
}

double CPoly::max_abs() const {
  double m = 0;
  for (auto& z : c_) m = std::max(m, std::abs(z));
  return m;
}

bool CPoly::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](cplx z) { return z.imag() == 0.0; });
}

CPoly CPoly::operator+(const CPoly& o) const {
  std::vector<cplx> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return CPoly(std::move(r));
}

CPoly CPoly::operator-(const CPoly& o) const {
  std::vector<cplx> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return CPoly(std::move(r));
}

CPoly CPoly::operator*(const CPoly& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<cplx> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return CPoly(std::move(r));
}

CPoly CPoly::operator*(cplx s) const {
  std::vector<cplx> r(c_);
  for (auto& z : r) z *= s;
  return CPoly(std::move(r));
}

double max_abs_diff(const CPoly& a, const CPoly& b) {
  double m = 0;
  int n = std::max(a.degree(), b.degree());
  for (int d = 0; d <= n; ++d) m = std::max(m, std::abs(a.coeff(d) - b.coeff(d)));
  return m;
}

}  // namespace dulac
