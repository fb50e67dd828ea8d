#include "dulac/jet.hpp"

#include <cmath>

namespace dulac {

Jet::Jet(int order, double value) : c_(std::size_t(order) + 1, 0.0) { c_[0] = value; }

Jet Jet::variable(int order, double x) {
  Jet j(order, x);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

double Jet::derivative(int i) const {
  double f = 1;
  for (int k = 2; k <= i; ++k) f *= k;
  return c_[std::size_t(i)] * f;
}

Jet Jet::operator+(const Jet& o) const {
  Jet r(*this);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Jet Jet::operator-(const Jet& o) const {
  Jet r(*this);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

Jet Jet::operator*(const Jet& o) const {
  Jet r(order(), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; i + j < c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  return r;
}

Jet Jet::operator/(const Jet& o) const {
  Jet q(order(), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    double acc = c_[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= o.c_[j] * q.c_[k - j];
    q.c_[k] = acc / o.c_[0];
  }
  return q;
}

Jet Jet::operator*(double s) const {
  Jet r(*this);
  for (auto& v : r.c_) v *= s;
  return r;
}

Jet Jet::operator+(double s) const {
  Jet r(*this);
  r.c_[0] += s;
  return r;
}

Jet exp(const Jet& f) {
  Jet g(f.order(), std::exp(f.c_[0]));
  for (std::size_t k = 1; k < f.c_.size(); ++k) {
    double acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += double(j) * f.c_[j] * g.c_[k - j];
    g.c_[k] = acc / double(k);
  }
  return g;
}

Jet log(const Jet& f) {
  Jet g(f.order(), std::log(f.c_[0]));
  for (std::size_t k = 1; k < f.c_.size(); ++k) {
    double acc = 0;
    for (std::size_t j = 1; j < k; ++j) acc += double(j) * g.c_[j] * f.c_[k - j];
    g.c_[k] = (f.c_[k] - acc / double(k)) / f.c_[0];
  }
  return g;
}

Jet pow(const Jet& f, double a) {
  Jet g(f.order(), std::pow(f.c_[0], a));
  for (std::size_t k = 1; k < f.c_.size(); ++k) {
    double acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += (a * double(j) - double(k - j)) * f.c_[j] * g.c_[k - j];
    g.c_[k] = acc / (double(k) * f.c_[0]);
  }
  return g;
}

Jet sqrt(const Jet& f) { return pow(f, 0.5); }

}  // namespace dulac
