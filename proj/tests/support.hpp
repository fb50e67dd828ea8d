#pragma once

#include <random>
#include <vector>

#include "dulac/series.hpp"

namespace dulac::test {

inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

inline CPoly P(std::initializer_list<cplx> c) { return CPoly(std::vector<cplx>(c)); }

inline ExpPolySeries S(Rational trunc, std::vector<Rational> gens, const ExpPolySeries::Terms& t) {
  return ExpPolySeries::make(trunc, std::move(gens), t);
}

// zeta + beta + sum e^{-mu zeta} B_mu
inline ExpPolySeries germ(cplx beta, Rational trunc, std::vector<Rational> gens,
                          const ExpPolySeries::Terms& tail = {}) {
  ExpPolySeries s = ExpPolySeries::translation(beta, trunc, gens);
  for (auto& [mu, p] : tail) s.set(mu, p);
  return s;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  cplx unit_complex() { return {uniform(-1, 1), uniform(-1, 1)}; }

  CPoly poly(int max_deg, bool real = false) {
    std::vector<cplx> c(std::size_t(integer(0, max_deg)) + 1);
    for (auto& z : c) z = real ? cplx(uniform(-1, 1)) : unit_complex();
    return CPoly(std::move(c));
  }

  // Small integer coefficients, so ring identities hold exactly in double.
  CPoly int_poly(int max_deg) {
    std::vector<cplx> c(std::size_t(integer(0, max_deg)) + 1);
    for (auto& z : c) z = cplx(integer(-4, 4), integer(-4, 4));
    return CPoly(std::move(c));
  }

  std::vector<Rational> gens() {
    static const Rational pool[] = {Rational(1), Rational(1, 2), Rational(2, 3)};
    std::vector<Rational> g;
    while (g.empty())
      for (auto& r : pool)
        if (coin()) g.push_back(r);
    return g;
  }

  // The randomized hyperbolic corpus: generators from {1, 1/2, 2/3},
  // N <= 4, Re beta in [0.3, 3], |Im beta| <= 10, blocks of degree <= 3.
  ExpPolySeries hyperbolic(double im_beta_max = 10.0, bool real = false, int max_n = 4) {
    auto g = gens();
    Rational n(integer(1, max_n));
    cplx beta(uniform(0.3, 3.0), real ? 0.0 : uniform(-im_beta_max, im_beta_max));
    ExpPolySeries f = ExpPolySeries::translation(beta, n, g);
    auto support = semigroup_elements(g, n);
    bool any = false;
    while (!any)
      for (auto& mu : support)
        if (coin()) f.set(mu, poly(3, real)), any = true;
    return f;
  }

  // Tail-only series with integer coefficients and head block h0.
  ExpPolySeries int_series(Rational n, const std::vector<Rational>& g, bool with_head = true) {
    ExpPolySeries s(n, g);
    if (with_head && coin()) s.set(Rational(0), int_poly(2));
    for (auto& mu : semigroup_elements(g, n))
      if (coin()) s.set(mu, int_poly(2));
    return s;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_scale(const ExpPolySeries& a) { return std::max(1.0, max_abs_coeff(a)); }

}  // namespace dulac::test
