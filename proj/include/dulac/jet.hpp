#pragma once

#include <vector>

namespace dulac {

// Truncated Taylor expansion c_0 + c_1 t + ... + c_n t^n of a real
// function around a point; derivatives are i! c_i.
class Jet {
 public:
  Jet(int order, double value);
  static Jet variable(int order, double x);

  int order() const { return int(c_.size()) - 1; }
  double operator[](int i) const { return c_[std::size_t(i)]; }
  double value() const { return c_[0]; }
  double derivative(int i) const;

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator/(const Jet& o) const;
  Jet operator*(double s) const;
  Jet operator+(double s) const;
  Jet operator-() const { return *this * -1.0; }

  friend Jet exp(const Jet& f);
  friend Jet log(const Jet& f);
  friend Jet pow(const Jet& f, double a);
  friend Jet sqrt(const Jet& f);

 private:
  std::vector<double> c_;
};

}  // namespace dulac
