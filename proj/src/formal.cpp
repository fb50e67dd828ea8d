#include "dulac/formal.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dulac/error.hpp"
#include "json_detail.hpp"

namespace dulac {

namespace {

constexpr double kResidualRel = 1e-10;

ExpPolySeries unit_like(const ExpPolySeries& s) {
  ExpPolySeries one(s.trunc(), s.gens());
  one.accumulate(Rational(0), CPoly(1.0));
  return one;
}

// delta^i / i! while i * ord(delta) <= N
std::vector<ExpPolySeries> taylor_powers(const ExpPolySeries& delta) {
  std::vector<ExpPolySeries> d{unit_like(delta)};
  auto od = ord(delta);
  for (int i = 1; od && Rational(i) * *od <= delta.trunc(); ++i) {
    ExpPolySeries next = scale(mul(d.back(), delta), 1.0 / double(i));
    if (next.is_zero()) break;
    d.push_back(std::move(next));
  }
  return d;
}

// g(zeta + beta + delta) from precomputed powers of delta.
ExpPolySeries compose_powers(const ExpPolySeries& g, cplx beta, const std::vector<ExpPolySeries>& d) {
  ExpPolySeries out(g.trunc(), merge_gens(g.gens(), d.front().gens()));
  ExpPolySeries gi = g;
  for (std::size_t i = 0; i < d.size() && !gi.is_zero(); ++i) {
    out = add(out, mul(translate(gi, beta), d[i]));
    gi = derivative(gi);
  }
  return out;
}

double residual_scale(const ExpPolySeries& f, const ExpPolySeries& phi) {
  return std::max({1.0, max_abs_coeff(f), max_abs_coeff(phi)});
}

void finish(LinearizationResult& r, const ExpPolySeries& residual, double scale) {
  r.residual_max = max_abs_coeff(residual);
  r.residual_ord = effective_ord(residual, kResidualRel * scale);
  r.levels_solved.clear();
  for (auto& [mu, p] : r.phi.terms())
    if (!mu.is_zero()) r.levels_solved.push_back(mu);
}

struct ZSplit {
  cplx lambda;
  cplx beta;
  ExpPolySeries g1;
  ExpPolySeries G;  // g1 / z, truncation kept at N_z
  std::vector<Rational> shifted;  // exponents of G
};

ZSplit split_z(const ExpPolySeries& f1, std::optional<cplx> beta) {
  const Rational one(1);
  if (f1.is_zero() || f1.terms().begin()->first != one || f1.terms().begin()->second.degree() != 0)
    throw Error(ErrorCode::NotNormalized, "z-chart germ must start with lambda*z");
  ZSplit z;
  z.lambda = f1.terms().begin()->second.coeff(0);
  if (!(std::abs(z.lambda) < 1.0)) throw Error(ErrorCode::NotHyperbolic, "|lambda| must be < 1");
  z.beta = beta ? *beta : -std::log(z.lambda);
  if (std::abs(std::exp(-z.beta) - z.lambda) > 1e-12 * std::abs(z.lambda))
    throw Error(ErrorCode::InvalidArgument, "beta is not a logarithm of lambda");
  z.g1 = ExpPolySeries(f1.trunc(), f1.gens());
  for (auto& [mu, p] : f1.terms())
    if (mu > one) {
      z.g1.accumulate(mu, p);
      z.shifted.push_back(mu - one);
    }
  z.G = ExpPolySeries(f1.trunc(), merge_gens(f1.gens(), z.shifted));
  for (auto& [mu, p] : z.g1.terms()) z.G.accumulate(mu - one, p);
  return z;
}

// sum_{i >= first} lambda^{-i}/i! [prod_{j<i} (E - j) h](lambda z) * G^i,  E = z d/dz
ExpPolySeries z_taylor(const ExpPolySeries& h, const ZSplit& z, int first) {
  ExpPolySeries out(std::min(h.trunc(), z.G.trunc()), merge_gens(h.gens(), z.G.gens()));
  ExpPolySeries eh = h;
  ExpPolySeries gi = unit_like(z.G);
  auto og = ord(z.G);
  for (int i = 0;; ++i) {
    if (i >= first) out = add(out, scale(mul(translate(eh, z.beta), gi), std::exp(double(i) * z.beta)));
    if (!og || Rational(i + 1) * *og > out.trunc()) break;
    eh = sub(scale(derivative(eh), -1.0), scale(eh, double(i)));
    gi = scale(mul(gi, z.G), 1.0 / double(i + 1));
    if (eh.is_zero() || gi.is_zero()) break;
  }
  return out;
}

void require_order_above_one(const ExpPolySeries& h) {
  auto o = ord(h);
  if (o && *o <= Rational(1)) throw Error(ErrorCode::OrderTooLow, "ord_z(h) must exceed 1, got " + o->str());
}

}  // namespace

const char* algorithm_name(Algorithm a) { return a == Algorithm::picard ? "picard" : "level_solver"; }

CPoly solve_difference_eq(const CPoly& P, cplx c, cplx beta) {
  if (std::abs(c - 1.0) < 1e-14) throw Error(ErrorCode::ResonantCoefficient, "difference equation with c = 1");
  int n = P.degree();
  if (n < 0) return {};
  // binomial table C(j, d)
  std::vector<std::vector<double>> binom(std::size_t(n) + 1);
  for (int j = 0; j <= n; ++j) {
    binom[j].assign(std::size_t(j) + 1, 1.0);
    for (int d = 1; d < j; ++d) binom[j][d] = binom[j - 1][d - 1] + binom[j - 1][d];
  }
  std::vector<cplx> bpow(std::size_t(n) + 1, 1.0);
  for (int j = 1; j <= n; ++j) bpow[j] = bpow[j - 1] * beta;
  std::vector<cplx> q(std::size_t(n) + 1);
  for (int d = n; d >= 0; --d) {
    cplx acc = P.coeff(d);
    for (int j = d + 1; j <= n; ++j) acc += c * q[j] * binom[j][d] * bpow[j - d];
    q[d] = acc / (1.0 - c);
  }
  CPoly Q(q);
  // Substitution check, scaled by the size of the terms being cancelled.
  double mag = P.max_abs(), grow = 1.0 + std::abs(beta);
  double qsum = 0, g = 1;
  for (int j = 0; j <= n; ++j, g *= grow) qsum += std::abs(q[j]) * g;
  mag = std::max(mag, std::abs(c) * qsum + Q.max_abs());
  CPoly check = Q - Q.shifted(beta) * c - P;
  if (check.max_abs() > 1e-10 * mag)
    throw Error(ErrorCode::ResonantCoefficient, "difference equation is numerically singular");
  return Q;
}

LinearizationResult linearize_level_by_level(const ExpPolySeries& f) {
  DulacForm form = classify(f);
  if (form.kind != DulacKind::hyperbolic)
    throw Error(ErrorCode::NotHyperbolic, "expected head zeta + beta with Re(beta) > 0");
  const cplx beta = form.beta;
  const Rational n = f.trunc();
  auto d = taylor_powers(perturbation(f));

  LinearizationResult res;
  res.beta = beta;
  res.algorithm = Algorithm::level_solver;
  res.phi = ExpPolySeries::translation(0.0, n, f.gens());
  ExpPolySeries r = perturbation(f);  // residual of phi = zeta
  std::size_t budget = semigroup_elements(f.gens(), n).size() + 1, steps = 0;
  std::optional<Rational> last;
  for (;;) {
    auto it = last ? r.terms().upper_bound(*last) : r.terms().begin();
    if (it == r.terms().end()) break;
    if (++steps > budget) throw Error(ErrorCode::IterationBudgetExceeded, "residual order did not increase");
    const Rational nu = it->first;
    cplx c = std::exp(-nu.to_double() * beta);
    if (!(std::abs(c) < 1.0)) throw Error(ErrorCode::ResonantCoefficient, "|e^{-nu beta}| >= 1");
    // Adding e^{-nu zeta} Q changes the nu block of the residual by c Q(.+beta) - Q.
    CPoly q = solve_difference_eq(it->second, c, beta);
    ExpPolySeries term(n, f.gens());
    term.accumulate(nu, q);
    res.phi.accumulate(nu, q);
    r = add(r, sub(compose_powers(term, beta, d), term));
    last = nu;
  }
  finish(res, conjugacy_residual(res.phi, f, beta), residual_scale(f, res.phi));
  return res;
}

ExpPolySeries z_compose(const ExpPolySeries& h, const ExpPolySeries& f1, std::optional<cplx> beta) {
  auto o = ord(h);
  if (o && *o < Rational(1)) throw Error(ErrorCode::OrderTooLow, "z_compose needs ord_z(h) >= 1");
  return z_taylor(h, split_z(f1, beta), 0);
}

ExpPolySeries S_f(const ExpPolySeries& h, const ExpPolySeries& f1, std::optional<cplx> beta) {
  require_order_above_one(h);
  ZSplit z = split_z(f1, beta);
  return scale(add(z.g1, z_taylor(h, z, 1)), std::exp(z.beta));
}

ExpPolySeries T_f(const ExpPolySeries& h, const ExpPolySeries& f1, std::optional<cplx> beta) {
  require_order_above_one(h);
  ZSplit z = split_z(f1, beta);
  return sub(h, scale(translate(h, z.beta), std::exp(z.beta)));
}

ExpPolySeries T_f_inv(const ExpPolySeries& h, const ExpPolySeries& f1, std::optional<cplx> beta) {
  require_order_above_one(h);
  ZSplit z = split_z(f1, beta);
  ExpPolySeries out(h.trunc(), h.gens());
  for (auto& [nu, p] : h.terms()) {
    cplx c = std::exp(-(nu - Rational(1)).to_double() * z.beta);
    out.accumulate(nu, solve_difference_eq(p, c, z.beta));
  }
  return out;
}

LinearizationResult picard_linearize(const ExpPolySeries& f1, std::optional<cplx> beta) {
  ZSplit z = split_z(f1, beta);
  const Rational nz = f1.trunc();
  // Exponents of psi lie in 1 + <exponents of g1 minus 1>.
  auto shifted_sg = semigroup_elements(z.shifted.empty() ? std::vector<Rational>{Rational(1)} : z.shifted, nz);
  std::set<Rational> allowed;
  for (auto& s : shifted_sg)
    if (s + Rational(1) <= nz) allowed.insert(s + Rational(1));
  std::size_t budget = std::max<std::size_t>(4, 4 * semigroup_elements(z.G.gens(), nz).size());

  ExpPolySeries psi(nz, z.G.gens());
  bool done = false;
  for (std::size_t it = 0; it < budget; ++it) {
    ExpPolySeries s = scale(add(z.g1, z_taylor(psi, z, 1)), std::exp(z.beta));
    ExpPolySeries next(nz, z.G.gens());
    for (auto& [nu, p] : s.terms()) {
      if (!allowed.count(nu))
        throw Error(ErrorCode::ExponentNotInSemigroup, "Picard iterate left the exponent semigroup at " + nu.str());
      next.accumulate(nu, solve_difference_eq(p, std::exp(-(nu - Rational(1)).to_double() * z.beta), z.beta));
    }
    if (next == psi) {
      done = true;
      break;
    }
    psi = std::move(next);
  }
  if (!done) throw Error(ErrorCode::IterationBudgetExceeded, "Picard iteration did not stabilize");

  ExpPolySeries phi1 = psi;
  phi1.accumulate(Rational(1), CPoly(1.0));
  ExpPolySeries schroeder = sub(z_taylor(phi1, z, 0), scale(phi1, z.lambda));

  LinearizationResult res;
  res.algorithm = Algorithm::picard;
  res.beta = z.beta;
  res.phi = from_z_chart(phi1);
  res.phi_z = phi1;
  finish(res, schroeder, std::max({1.0, max_abs_coeff(f1), max_abs_coeff(phi1)}));
  return res;
}

LinearizationResult picard_linearize_zeta(const ExpPolySeries& f) {
  DulacForm form = classify(f);
  if (form.kind != DulacKind::hyperbolic)
    throw Error(ErrorCode::NotHyperbolic, "expected head zeta + beta with Re(beta) > 0");
  return picard_linearize(to_z_chart(f), form.beta);
}

ExpPolySeries partial_sums(const ExpPolySeries& phi, int n) {
  ExpPolySeries out = ExpPolySeries::translation(0.0, phi.trunc(), phi.gens());
  int taken = 0;
  for (auto& [mu, p] : phi.terms()) {
    if (mu.is_zero()) continue;
    if (taken++ >= n) break;
    out.accumulate(mu, p);
  }
  return out;
}

Rational level_exponent(const ExpPolySeries& phi, int n) {
  Rational e(0);
  int seen = 0;
  for (auto& [mu, p] : phi.terms()) {
    if (mu.is_zero()) continue;
    if (seen++ >= n) break;
    e = mu;
  }
  return e;
}

ExpPolySeries partial_linearization_residual(const ExpPolySeries& f, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  auto lin = linearize_level_by_level(f);
  ExpPolySeries phin = partial_sums(lin.phi, n);
  ExpPolySeries r = conjugacy_residual(phin, f, lin.beta);
  auto o = effective_ord(r, kResidualRel * residual_scale(f, lin.phi));
  Rational bn = level_exponent(lin.phi, n);
  if (o && *o <= bn)
    throw Error(ErrorCode::PreconditionViolated,
                "partial residual order " + o->str() + " does not exceed " + bn.str());
  return r;
}

bool check_real_preservation(const ExpPolySeries& f) {
  if (!is_real(f)) throw Error(ErrorCode::PreconditionViolated, "input has non-real coefficients");
  return is_real(linearize_level_by_level(f).phi, 1e-12);
}

std::string linearization_json(const LinearizationResult& r) {
  using detail::ojson;
  ojson j;
  j["algorithm"] = algorithm_name(r.algorithm);
  j["beta"] = detail::complex_json(r.beta);
  ojson lv = ojson::array();
  for (auto& l : r.levels_solved) lv.push_back(l.str());
  j["levels"] = lv;
  j["residual_ord"] = r.residual_ord ? r.residual_ord->str() : "inf";
  j["residual_max"] = detail::number_json(r.residual_max);
  j["phi"] = detail::series_json(r.phi);
  return j.dump();
}

}  // namespace dulac
