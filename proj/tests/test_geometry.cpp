#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dulac/analytic_map.hpp"
#include "dulac/error.hpp"
#include "dulac/geometry.hpp"
#include "dulac/invariance.hpp"
#include "dulac/region.hpp"

using namespace dulac;

namespace {
constexpr double e = std::numbers::e;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("M and rho") {
  CHECK(std::abs(M_eps_k(e * e, 1.0, 1) - 1.0 / (4 * e * e)) < 1e-16);
  CHECK(std::abs(M_eps_k(e * e, 1.0, 1) - 0.033834) < 1e-6);
  CHECK(M_eps_k(2.0, 1.0, 0) == 0.25);
  AsymptoticProfile p({2.0, 3 * std::numbers::pi}, 1.0, 1, 3.0);
  CHECK(std::abs(rho_minus(e * e, p) - (2.0 - 1.0 / (4 * e * e))) < 1e-15);
  CHECK(std::abs(rho_plus(e * e, p) - (2.0 + 1.0 / (4 * e * e))) < 1e-15);
  CHECK(code_of([] { M_eps_k(1.0, 1.0, 1); }) == ErrorCode::DomainError);
  CHECK(code_of([] { M_eps_k(e, 1.0, 2); }) == ErrorCode::DomainError);
  CHECK(code_of([] { AsymptoticProfile(-1.0, 1.0, 0, 2.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { AsymptoticProfile(1.0, 1.0, 2, 2.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: monotonicity of M and rho") {
  for (int k = 0; k <= 2; ++k) {
    AsymptoticProfile p(1.5, 0.5, k, exp_iter_zero(k) + 1.0);
    double prev_m = INFINITY, prev_lo = -INFINITY, prev_hi = INFINITY;
    for (double x = p.R; x < 1e8; x *= 1.3) {
      double m = M_eps_k(x, p);
      CHECK(m > 0);
      CHECK(m < prev_m);
      CHECK(rho_minus(x, p) > prev_lo);
      CHECK(rho_plus(x, p) < prev_hi);
      prev_m = m;
      prev_lo = rho_minus(x, p);
      prev_hi = rho_plus(x, p);
    }
    CHECK(std::abs(rho_minus(1e300, p) - 1.5) < 1e-3);
  }
}

TEST_CASE("property: sum of M along arithmetic progressions") {
  for (int k = 0; k <= 1; ++k)
    for (double eps : {0.5, 1.0, 2.0}) {
      AsymptoticProfile p(1.0, eps, k, 3.0);
      for (double y : {0.5, 1.0, 3.0}) {
        double x = 3.0, s = 0, bound = M_series_bound(x, y, p);
        double last_gap = INFINITY;
        for (long n = 0; n < 200000; ++n) {
          double t = M_eps_k(x + double(n) * y, p);
          s += t;
          last_gap = t;
        }
        CHECK(s <= bound);
        CHECK(last_gap < 1e-4);
      }
    }
}

TEST_CASE("iterated logs") {
  CHECK(std::abs(iterated_log_real(e, 1) - 1.0) < 1e-15);
  CHECK(std::abs(iterated_log({std::exp(e), 0.0}, 2) - 1.0) < 1e-15);
  cplx z(10.0, 100.0);
  CHECK(std::abs(iterated_log(z, 1)) >= std::log(10.0));
  CHECK(code_of([] { iterated_log({0.5, 0.0}, 1); }) == ErrorCode::DomainError);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    for (int m = 1; m <= 2; ++m) {
      cplx w(exp_iter_zero(m) + 0.01 + 1e3 * u(rng), -1e3 + 2e3 * u(rng));
      CHECK(std::abs(iterated_log(w, m)) >= iterated_log_real(w.real(), m) - 1e-12);
    }
  }
}

TEST_CASE("kappa") {
  CHECK(std::abs(kappa(1.0, 2.0) - (1.0 + 2.0 * std::sqrt(2.0))) < 1e-15);
  cplx w(1.0, 1.0);
  CHECK(std::abs(kappa_inv(kappa(w, 2.0), 2.0).w - w) < 1e-12);
  CHECK_FALSE(kappa_inv(-1.0, 2.0).inside);
  auto k100 = kappa_inv(100.0, 2.0);
  CHECK(k100.inside);
  double s = (-2.0 + std::sqrt(4.0 + 4.0 * 101.0)) / 2.0;
  CHECK(std::abs(k100.w - (s * s - 1.0)) < 1e-12);
  CHECK(std::abs(k100.w.real() - 81.8) < 0.01);
}

TEST_CASE("property: kappa round trip") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (double C : {0.5, 2.0, 10.0})
    for (int i = 0; i < 1000; ++i) {
      cplx w(1e-3 + 50 * u(rng), -50 + 100 * u(rng));
      auto inv = kappa_inv(kappa(w, C), C);
      CHECK(inv.inside);
      CHECK(std::abs(inv.w - w) <= 1e-12 * std::max(1.0, std::abs(w)));
      cplx z(-20 + 80 * u(rng), -80 + 160 * u(rng));
      auto zi = kappa_inv(z, C);
      if (zi.inside) CHECK(std::abs(kappa(zi.w, C) - z) <= 1e-12 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("quad boundary") {
  CHECK(std::abs(quad_boundary_param(0.0, 2.0) - cplx(2.0, 0.0)) < 1e-15);
  cplx b1 = quad_boundary_param(1.0, 2.0);
  double m = 2.0 * std::pow(2.0, 0.25), th = std::numbers::pi / 8;
  CHECK(std::abs(b1 - cplx(m * std::cos(th), 1.0 + m * std::sin(th))) < 1e-14);
  CHECK(std::abs(b1 - kappa({0.0, 1.0}, 2.0)) < 1e-14);
  double prev = -1;
  for (double r = 0; r <= 10; r += 0.01) {
    double y = quad_boundary_param(r, 2.0).imag();
    CHECK(y > prev);
    prev = y;
  }
  for (double r = 0; r <= 100; r += 0.25) {
    cplx q = quad_boundary_param(r, 2.0);
    CHECK(std::abs(q - kappa({0.0, r}, 2.0)) <= 1e-12 * std::max(1.0, std::abs(q)));
    if (r > 0) CHECK(std::abs(quad_upper_height(q.real(), 2.0) - q.imag()) <= 1e-9 * q.imag());
  }
}

TEST_CASE("regions") {
  auto strip = Region::band(1.0, BoundaryMap::linear(0.0, -1.0), BoundaryMap::logarithmic(1.0));
  CHECK(strip.contains({10.0, 0.5}));
  CHECK_FALSE(strip.contains({10.0, 2.4}));
  CHECK_FALSE(strip.contains({10.0, -1.5}));
  auto q = Region::quad(2.0);
  CHECK(q.contains(100.0));
  CHECK_FALSE(q.contains(-1.0));
  CHECK_FALSE(q.with_cut(200.0).contains(100.0));
  CHECK_FALSE(strip.with_cut(20.0).contains({10.0, 0.5}));
  // points just inside and outside the boundary curve
  for (double r : {0.5, 3.0, 40.0}) {
    cplx b = quad_boundary_param(r, 2.0);
    CHECK(q.contains(b + cplx(1e-6 * std::max(1.0, r), 0)));
    CHECK_FALSE(q.contains(b - cplx(1e-6 * std::max(1.0, r), 0)));
  }
  auto u = Region::union_of({strip, Region::quad(2.0)});
  CHECK(u.contains({10.0, 0.5}));
  CHECK(u.contains({100.0, 50.0}));
  CHECK_FALSE(u.contains({0.5, 0.0}));
  CHECK(code_of([] { Region::band(2.0, BoundaryMap::linear(1.0), BoundaryMap::linear(0.0)); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("region json") {
  auto r = parse_region(R"({"band":{"t":1,"hl":{"linear":{"a":0,"b":-1}},"hu":{"log":{"delta":1}}}})");
  CHECK(r.contains({10.0, 0.5}));
  auto q = parse_region(R"({"quad":{"C":"2","R":10}})");
  CHECK(q.cut() == 10.0);
  CHECK(q.C() == 2.0);
  auto un = parse_region(R"({"union":[{"quad":{"C":2}},{"band":{"t":3,"hl":{"neg":{"power":{"a":1,"r":2}}},"hu":{"power":{"a":1,"r":2}}}}],"R":5})");
  CHECK(un.cut() == 5.0);
  CHECK(un.contains({6.0, 30.0}));
  CHECK(parse_region(q.to_json()).to_json() == q.to_json());
  CHECK(code_of([] { parse_region(R"({"disk":{}})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_region(R"({"quad":)"); }) == ErrorCode::ParseError);
  auto b = parse_boundary(R"({"neg":{"quad":{"C":2,"sign":1}}})");
  CHECK(b.monotonicity() == -1);
  CHECK(std::abs(b(10.0) + quad_upper_height(10.0, 2.0)) < 1e-12);
}

TEST_CASE("boundary jets") {
  auto h = BoundaryMap::logarithmic(0.5);
  double x = 30, d = 1e-4;
  CHECK(std::abs(h.derivative(x, 1) - (h(x + d) - h(x - d)) / (2 * d)) < 1e-8);
  CHECK(std::abs(h.derivative(x, 2) - (h(x + d) - 2 * h(x) + h(x - d)) / (d * d)) < 1e-6);
  // (log x)^{1/2}: h' = 1/(2 x sqrt(log x))
  CHECK(std::abs(h.derivative(x, 1) - 1.0 / (2 * x * std::sqrt(std::log(x)))) < 1e-15);
  auto qb = BoundaryMap::quad(2.0);
  CHECK(std::abs(qb.derivative(x, 1) - (qb(x + d) - qb(x - d)) / (2 * d)) < 1e-6);
  auto pw = BoundaryMap::power(3.0, 1.5);
  CHECK(std::abs(pw.derivative(4.0, 2) - 3.0 * 1.5 * 0.5 / 2.0) < 1e-14);
}

TEST_CASE("upper and lower maps") {
  AsymptoticProfile real(1.0, 1.0, 1, 20.0);
  CHECK(check_upper_map(BoundaryMap::logarithmic(0.5), real).ok);
  CHECK(check_upper_map(BoundaryMap::logarithmic(1.0), real).ok);
  AsymptoticProfile down({1.0, -0.5}, 1.0, 0, 10.0);
  auto lin = check_upper_map(BoundaryMap::linear(0.001), down);
  CHECK(lin.ok);
  CHECK(lin.condition == "increasing");
  auto flat = check_upper_map(BoundaryMap::linear(0.0, 3.0), AsymptoticProfile(1.0, 1.0, 0, 10.0));
  CHECK_FALSE(flat.ok);
  CHECK_FALSE(flat.violations.empty());
  CHECK(flat.worst_margin < 0);
  CHECK(check_lower_map(BoundaryMap::negated(BoundaryMap::logarithmic(0.5)), real).ok);
  auto lower_neg = check_lower_map(BoundaryMap::linear(-2.0), down);
  CHECK(lower_neg.ok);
  CHECK_FALSE(lower_neg.note.empty());
  // quad boundary of R_2 from a moderate t
  AsymptoticProfile up({1.0, 0.5}, 1.0, 0, 10.0);
  CHECK(check_upper_map(BoundaryMap::quad(2.0), up).ok);
  CHECK(check_lower_map(BoundaryMap::quad(2.0, -1), up).ok);
}

TEST_CASE("property: negated upper maps are lower maps for the mirrored case") {
  std::vector<BoundaryMap> maps{BoundaryMap::logarithmic(0.5), BoundaryMap::logarithmic(2.0),
                                BoundaryMap::power(1.0, 2.0), BoundaryMap::power(0.5, 1.5),
                                BoundaryMap::linear(3.0), BoundaryMap::quad(2.0), BoundaryMap::linear(0.2, 1.0)};
  for (double ib : {-2.0, -0.3, 0.0, 0.3, 2.0})
    for (int k = 0; k <= 1; ++k) {
      AsymptoticProfile p({1.0, ib}, 1.0, k, 30.0), mirror({1.0, -ib}, 1.0, k, 30.0);
      for (auto& h : maps) {
        auto up = check_upper_map(h, p, 128);
        auto lo = check_lower_map(BoundaryMap::negated(h), mirror, 128);
        CHECK(up.ok == lo.ok);
      }
    }
}

TEST_CASE("taylor sufficient conditions") {
  AsymptoticProfile real(1.0, 1.0, 1, 20.0);
  CHECK(check_taylor_sufficient(BoundaryMap::logarithmic(0.5), 2, 0.5, real, MapRole::upper));
  CHECK(check_taylor_sufficient(BoundaryMap::linear(0.5), 1, 0.5, real, MapRole::upper));
  CHECK_FALSE(check_taylor_sufficient(BoundaryMap::linear(1e-9), 1, 0.5, real, MapRole::upper));
  CHECK(code_of([&] {
          check_taylor_sufficient(BoundaryMap::linear(0.5), 1, rho_minus(real.R, real), real, MapRole::upper);
        }) == ErrorCode::InvalidRho);
  CHECK(check_taylor_sufficient(BoundaryMap::negated(BoundaryMap::logarithmic(0.5)), 2, 0.5, real, MapRole::lower));
  AsymptoticProfile up({1.0, 0.5}, 1.0, 0, 10.0);
  CHECK(check_taylor_sufficient(BoundaryMap::negated(BoundaryMap::linear(1.0)), 1, 2.0, up, MapRole::lower));
  CHECK(code_of([&] {
          check_taylor_sufficient(BoundaryMap::linear(1.0), 1, 0.5, up, MapRole::lower);
        }) == ErrorCode::InvalidRho);
  AsymptoticProfile down({1.0, -0.5}, 1.0, 0, 10.0);
  CHECK(check_taylor_sufficient(BoundaryMap::linear(1.0), 1, 2.0, down, MapRole::upper));
  // decreasing upper map for Im beta < 0 through the Taylor sum
  CHECK(check_taylor_sufficient(BoundaryMap::linear(-0.1), 1, 2.0, down, MapRole::upper));
  CHECK_FALSE(check_taylor_sufficient(BoundaryMap::linear(-0.4), 1, 2.0, down, MapRole::upper));
}

TEST_CASE("safety rectangle") {
  AsymptoticProfile p(1.0, 1.0, 0, 5.0);
  Rect r = safety_rect(10.0, p);
  CHECK(std::abs(r.x0 - 10.99) < 1e-14);
  CHECK(std::abs(r.x1 - 11.01) < 1e-14);
  CHECK(std::abs(r.y0 + 0.01) < 1e-15);
  CHECK(std::abs(r.y1 - 0.01) < 1e-15);
  CHECK(r.contains(10.0 + 1.0 + std::exp(-10.0)));
  CHECK(code_of([&] { safety_rect(1.0, p); }) == ErrorCode::DomainError);
}

TEST_CASE("germ containment") {
  double cp = germ_containment_search(2.0, 50.0);
  CHECK(cp >= 50.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  auto target = Region::quad(2.0, 50.0);
  for (int i = 0; i < 2000; ++i) CHECK(target.contains(kappa({1e-6 + 100 * u(rng), -500 + 1000 * u(rng)}, cp)));
}

TEST_CASE("invariance") {
  AsymptoticProfile p(1.0, 1.0, 0, 10.0);
  auto q = Region::quad(2.0, 10.0);
  auto exact = check_invariance(parse_germ("zeta + 1", p), q, 2000, 5);
  CHECK(exact.violations == 0);
  auto rep = check_invariance(parse_germ("zeta + 1 + exp(-zeta)", p), q, 10000, 7);
  CHECK(rep.violations == 0);
  CHECK(rep.rows.size() == 10000);
  for (auto& row : rep.rows) {
    CHECK(row.zeta.real() >= 10.0);
    CHECK(row.zeta.real() <= 60.0);
  }
  auto bad = check_invariance(parse_germ("zeta + 1 + 1/zeta", p), q, 500, 7);
  CHECK(bad.violations > 0);
  CHECK(bad.worst_margin < 0);
  // same seed, same report
  CHECK(check_invariance(parse_germ("zeta + 1 + exp(-zeta)", p), q, 300, 11).csv() ==
        check_invariance(parse_germ("zeta + 1 + exp(-zeta)", p), q, 300, 11).csv());
  auto found = search_invariant_cut(parse_germ("zeta + 1 + exp(-zeta)", p.with_cut(2.0)), Region::quad(2.0), 2000);
  CHECK(found.violations == 0);
  CHECK(found.cut >= 2.0);
  auto band = Region::band(5.0, BoundaryMap::negated(BoundaryMap::logarithmic(1.0)), BoundaryMap::logarithmic(1.0));
  CHECK(check_invariance(parse_germ("zeta + 1 + exp(-zeta)", AsymptoticProfile(1.0, 1.0, 1, 20.0)), band, 1000).violations ==
        0);
}

}
