#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "dulac/analytic_map.hpp"
#include "dulac/dynamics.hpp"
#include "dulac/error.hpp"
#include "dulac/expr.hpp"
#include "dulac/formal.hpp"
#include "dulac/region.hpp"
#include "support.hpp"

using namespace dulac;
using dulac::test::germ;
using dulac::test::Gen;
using dulac::test::P;
using dulac::test::R;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  return ErrorCode::InvalidArgument;
}

// Plain long double iteration of f^n(zeta) - n beta, no certification.
std::complex<long double> naive_koenigs(cplx zeta, cplx beta, int n, auto&& p) {
  std::complex<long double> w(zeta.real(), zeta.imag()), d = 0;
  std::complex<long double> b(beta.real(), beta.imag());
  for (int i = 0; i < n; ++i) {
    auto step = p(w);
    w += b + step;
    d += step;
  }
  return std::complex<long double>(zeta.real(), zeta.imag()) + d;
}

const AsymptoticProfile kProfile(1.0, 2.0, 0, 8.0);
}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("expression parser") {
  auto f = parse_germ("zeta + 1 + exp(-zeta)", AsymptoticProfile(1.0, 1.0, 0, 2.0));
  CHECK(std::abs(f(5.0) - 6.0067379) < 1e-7);
  CHECK(std::abs(f(5.0) - (6.0 + std::exp(-5.0))) < 1e-15);
  CHECK(std::abs(eval_constant("2+3*pi*i") - cplx(2.0, 3 * std::numbers::pi)) < 1e-15);
  CHECK(std::abs(eval_constant("1/3") - 1.0 / 3) < 1e-16);
  CHECK(std::abs(eval_constant("2.5i") - cplx(0, 2.5)) == 0);
  try {
    Expr::parse("zeta + + 1");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.offset() == 7);
  }
  CHECK(code_of([] { Expr::parse("zeta^1.5"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { Expr::parse("sin(zeta)"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { Expr::parse("(zeta"); }) == ErrorCode::ParseError);
  auto e = Expr::parse("zeta^-2 + L1 - 3*L2");
  cplx z(30.0, 4.0);
  CHECK(std::abs(e(z) - (1.0 / (z * z) + std::log(z) - 3.0 * std::log(std::log(z)))) < 1e-14);
  CHECK(code_of([] { Expr::parse("log(zeta)")(-1.0); }) == ErrorCode::EvalDomainError);
  CHECK(code_of([] { Expr::parse("1/(zeta-2)")(2.0); }) == ErrorCode::EvalDomainError);
  CHECK(code_of([] { Expr::parse("L2")(2.0); }) == ErrorCode::EvalDomainError);
}

TEST_CASE("germ split") {
  AsymptoticProfile p(1.0, 1.0, 0, 2.0);
  CHECK(parse_germ("zeta + 1", p).is_translation());
  CHECK(parse_germ("1 + zeta", p).is_translation());
  CHECK_FALSE(parse_germ("zeta + 1 + exp(-zeta)", p).is_translation());
  auto off = parse_germ("zeta + 2", p);
  CHECK_FALSE(off.is_translation());
  CHECK(std::abs(off.perturbation(10.0) - 1.0) == 0);
  auto tiny = parse_germ("zeta + 1 + exp(-2*zeta)", p);
  CHECK(tiny.perturbation(30.0) == std::exp(-60.0));
  auto s = germ_from_series(germ(1.0, R(2), {R(1)}, {{R(1), P({1.0})}}), p);
  CHECK(std::abs(s(5.0) - (6.0 + std::exp(-5.0))) < 1e-15);
  CHECK(code_of([&] { germ_from_series(germ(2.0, R(2), {R(1)}), p); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("grid spec") {
  auto g = parse_grid("8:20:4,-2:2:5");
  auto pts = g.points();
  REQUIRE(pts.size() == 20);
  CHECK(pts[0] == cplx(8.0, -2.0));
  CHECK(pts[1] == cplx(8.0, -1.0));
  CHECK(pts[5] == cplx(12.0, -2.0));
  CHECK(pts.back() == cplx(20.0, 2.0));
  auto one = parse_grid("1/2:1/2:1,0:0:1").points();
  REQUIRE(one.size() == 1);
  CHECK(one[0] == cplx(0.5, 0.0));
  CHECK(code_of([] { parse_grid("8:20"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_grid("8:20:0,0:0:1"); }) == ErrorCode::ParseError);
}

TEST_CASE("orbits") {
  AsymptoticProfile p({1.0, 2.0}, 1.0, 0, 4.0);
  auto t = parse_germ("zeta + 1 + 2i", p);
  auto o = orbit(t, {5.0, 1.0}, 10);
  REQUIRE(o.size() == 11);
  for (int n = 0; n <= 10; ++n) CHECK(std::abs(o[n] - (cplx(5.0, 1.0) + double(n) * cplx(1.0, 2.0))) < 1e-13);
  auto back = parse_germ("zeta - 1", AsymptoticProfile(1.0, 1.0, 0, 4.0));
  CHECK(code_of([&] { orbit(back, 5.0, 3); }) == ErrorCode::GrowthBoundViolated);
  CHECK(code_of([&] { orbit(t, 2.0, 3); }) == ErrorCode::DomainError);
}

TEST_CASE("koenigs on translations") {
  auto t = parse_germ("zeta + 1", kProfile);
  auto r = koenigs_limit(t, {9.0, 1.0}, 1e-12);
  CHECK(r.value == cplx(9.0, 1.0));
  CHECK(r.converged);
}

TEST_CASE("koenigs against direct iteration") {
  auto pert = [](auto w) { return std::exp(-w); };
  auto f = parse_germ("zeta + 1 + exp(-zeta)", kProfile);
  for (cplx z : {cplx(8.0, 0.0), cplx(10.0, -2.0), cplx(15.0, 1.5)}) {
    auto r = koenigs_limit(f, z, 1e-12);
    auto truth = naive_koenigs(z, 1.0, 200, pert);
    CHECK(std::abs(std::complex<long double>(r.value.real(), r.value.imag()) - truth) < 1e-12L);
    CHECK(r.step_bound_ok);
    CHECK(r.hypothesis_ok);
    CHECK(r.growth_ok);
    CHECK(r.tangency_ok);
    CHECK(r.tail_bound < 1e-12);
  }
}

TEST_CASE("koenigs against the formal linearization") {
  auto fs = germ(1.0, R(8), {R(1)}, {{R(1), P({1.0})}});
  auto phi = linearize_level_by_level(fs).phi;
  auto f = parse_germ("zeta + 1 + exp(-zeta)", kProfile);
  for (cplx z : {cplx(12.0, 0.0), cplx(15.0, 3.0)}) {
    auto r = koenigs_limit(f, z, 1e-12);
    CHECK(std::abs(r.value - evaluate(phi, z)) < 1e-12);
  }
}

TEST_CASE("property: linearization, tangency and real preservation") {
  Gen g(21);
  auto f = parse_germ("zeta + 1 + exp(-zeta)/2 - 1i*exp(-2*zeta)", kProfile);
  std::vector<cplx> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({g.uniform(8, 30), g.uniform(-5, 5)});
  for (auto& row : koenigs_grid(f, pts, 1e-12)) {
    REQUIRE_FALSE(row.error);
    CHECK(row.residual < 1e-10);
    CHECK(row.phi.tangency_ok);
  }
  auto real = parse_germ("zeta + 1 + exp(-zeta) + zeta*exp(-2*zeta)", kProfile);
  for (int i = 0; i < 8; ++i) {
    auto r = koenigs_limit(real, g.uniform(8, 40), 1e-12);
    CHECK(r.value.imag() == 0.0);
  }
}

TEST_CASE("property: uniqueness of the limit under orbit shift") {
  Gen g(22);
  auto f = parse_germ("zeta + 1 + exp(-zeta)", kProfile);
  for (int i = 0; i < 6; ++i) {
    cplx z(g.uniform(8, 20), g.uniform(-3, 3));
    auto a = koenigs_limit(f, z, 1e-12).value;
    auto b = koenigs_limit(f, f(f(z)), 1e-12).value;
    CHECK(std::abs(b - a - 2.0) < 1e-10);
  }
}

TEST_CASE("grid with a region and failures") {
  auto f = parse_germ("zeta + 1 + exp(-zeta)", kProfile);
  auto q = Region::quad(2.0, 8.0);
  auto rows = koenigs_grid(f, {cplx(9.0, 0.0), cplx(9.0, 60.0), cplx(2.0, 0.0)}, 1e-12, &q);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].in_region);
  CHECK_FALSE(rows[0].error);
  CHECK_FALSE(rows[1].in_region);
  CHECK(rows[2].error);
}

TEST_CASE("non convergence") {
  auto f = parse_germ("zeta + 1 + 1/zeta", AsymptoticProfile(1.0, 1.0, 0, 8.0));
  auto r = koenigs_run(f, 10.0, 1e-12, 20000);
  CHECK_FALSE(r.converged);
  CHECK(r.n_used == 20000);
  CHECK(code_of([&] { koenigs_limit(f, 10.0, 1e-12, 20000); }) == ErrorCode::NotConverged);
}

TEST_CASE("homological equation") {
  AsymptoticProfile p(1.0, 1.0, 0, 2.0);
  auto t = parse_germ("zeta + 1", p);
  auto h = [](cplx w) { return std::exp(-w); };
  for (cplx z : {cplx(3.0, 0.0), cplx(5.0, 2.0)}) {
    auto r = solve_homological_numeric(t, h, 1.0, z, 1e-14);
    cplx exact = -std::exp(-z) / (1.0 - std::exp(-1.0));
    CHECK(std::abs(r.value - exact) < 1e-14);
    CHECK(r.residual_ok);
  }
  auto f = parse_germ("zeta + 1 + exp(-2*zeta)", p);
  auto h2 = [](cplx w) { return std::exp(-2.0 * w) / 3.0; };
  auto r = solve_homological_numeric(f, h2, 2.0, 4.0, 1e-14);
  CHECK(r.residual < 1e-13);
  auto slow = [](cplx w) { return 1.0 / w; };
  CHECK(code_of([&] { solve_homological_numeric(t, slow, 1.0, 4.0, 1e-10); }) == ErrorCode::DecayHypothesisViolated);
}

TEST_CASE("log slope fit") {
  std::vector<double> x, r;
  for (int i = 0; i < 10; ++i) x.push_back(1.0 + i), r.push_back(5.0 * std::exp(-2.0 * (1.0 + i)));
  auto fit = fit_log_slope(x, r);
  CHECK(std::abs(fit.slope + 2.0) < 1e-12);
  CHECK(std::abs(fit.intercept - std::log(5.0)) < 1e-12);
  CHECK(fit.usable == 10);
  CHECK(fit_log_slope(x, std::vector<double>(10, 0.0)).exact);
  CHECK(code_of([&] { fit_log_slope({1, 2, 3}, {1, 1, 1}); }) == ErrorCode::InsufficientData);
}

TEST_CASE("expansion residual check") {
  auto f = parse_germ("zeta + 1 + exp(-zeta) + exp(-3*zeta)", AsymptoticProfile(1.0, 1.0, 0, 1.5));
  std::vector<cplx> pts;
  for (int i = 2; i <= 11; ++i) pts.push_back(double(i));
  auto good = expansion_residual_check(f, germ(1.0, R(3), {R(1)}, {{R(1), P({1.0})}}), 2.0, pts);
  CHECK(std::abs(good.fit.slope + 3.0) < 0.01);
  CHECK(good.pass);
  auto bad = expansion_residual_check(f, germ(1.0, R(3), {R(1)}), 2.0, pts);
  CHECK(std::abs(bad.fit.slope + 1.0) < 0.05);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("decay of partial linearizations") {
  auto fs = germ(1.0, R(4), {R(1)}, {{R(1), P({1.0})}});
  auto phi = linearize_level_by_level(fs).phi;
  auto f = parse_germ("zeta + 1 + exp(-zeta)", kProfile);
  auto pts = parse_grid("8:20:13,0:0:1").points();
  auto d0 = decay_slope(f, partial_sums(phi, 0), level_exponent(phi, 0).to_double(), pts, 1e-12);
  CHECK(d0.pass);
  CHECK(std::abs(d0.fit.slope + 1.0) < 0.05);
  auto d1 = decay_slope(f, partial_sums(phi, 1), level_exponent(phi, 1).to_double(), pts, 1e-12);
  CHECK(d1.pass);
  CHECK(std::abs(d1.fit.slope + 2.0) < 0.05);
}

TEST_CASE("parallel_for") {
  std::vector<int> hits(1000, 0);
  std::atomic<int> total = 0;
  parallel_for(hits.size(), [&](std::size_t i) {
    hits[i] += 1;
    total += 1;
  });
  CHECK(total == 1000);
  for (int h : hits) CHECK(h == 1);
}

}
