#pragma once

#include <complex>
#include <vector>

namespace dulac {

using cplx = std::complex<double>;

// Dense polynomial, ascending coefficients, no trailing zeros.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<cplx> c);
  CPoly(cplx c0);  // NOLINT: constants convert implicitly

  static CPoly x() { return CPoly(std::vector<cplx>{0.0, 1.0}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }  // -1 for zero
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int d) const { return d >= 0 && d < int(c_.size()) ? c_[d] : cplx{}; }

  cplx operator()(cplx x) const;
  CPoly derivative() const;
  // p(x + c)
  CPoly shifted(cplx c) const;
  double max_abs() const;
  bool is_real() const;

  CPoly operator+(const CPoly& o) const;
  CPoly operator-(const CPoly& o) const;
  CPoly operator*(const CPoly& o) const;
  CPoly operator*(cplx s) const;
  CPoly operator-() const { return *this * cplx(-1.0); }
  CPoly& operator+=(const CPoly& o) { return *this = *this + o; }
  CPoly& operator-=(const CPoly& o) { return *this = *this - o; }

  bool operator==(const CPoly& o) const { return c_ == o.c_; }

 private:
  void strip();
  std::vector<cplx> c_;
};

double max_abs_diff(const CPoly& a, const CPoly& b);

}  // namespace dulac
