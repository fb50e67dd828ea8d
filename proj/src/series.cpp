#include "dulac/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dulac/error.hpp"

namespace dulac {

namespace {

constexpr std::int64_t kMaxSemigroupTable = 10'000'000;

std::int64_t common_den(const std::vector<Rational>& gens, const Rational& extra) {
  std::int64_t l = extra.den();
  for (auto& g : gens) {
    l = std::lcm(l, g.den());
    if (l > kMaxSemigroupTable) throw Error(ErrorCode::InvalidArgument, "generator denominators too large");
  }
  return l;
}

// reach[k] is true when k/L is a sum of generators.
std::vector<char> reachable(const std::vector<Rational>& gens, std::int64_t L, std::int64_t top) {
  if (top > kMaxSemigroupTable) throw Error(ErrorCode::InvalidArgument, "semigroup table too large");
  std::vector<char> reach(std::size_t(top) + 1, 0);
  reach[0] = 1;
  for (auto& g : gens) {
    std::int64_t step = g.num() * (L / g.den());
    for (std::int64_t k = step; k <= top; ++k)
      if (reach[std::size_t(k - step)]) reach[std::size_t(k)] = 1;
  }
  return reach;
}

ExpPolySeries shell(const ExpPolySeries& a, const ExpPolySeries& b) {
  return ExpPolySeries(std::min(a.trunc(), b.trunc()), merge_gens(a.gens(), b.gens()));
}

}  // namespace

std::vector<Rational> normalize_gens(std::vector<Rational> gens) {
  for (auto& g : gens)
    if (g <= Rational(0)) throw Error(ErrorCode::InvalidArgument, "generators must be positive");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  // keep a minimal generating set
  std::vector<Rational> kept;
  for (auto& g : gens)
    if (kept.empty() || !in_semigroup(g, kept)) kept.push_back(g);
  return kept;
}

std::vector<Rational> merge_gens(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a == b) return a;
  std::vector<Rational> r(a);
  r.insert(r.end(), b.begin(), b.end());
  return normalize_gens(std::move(r));
}

bool in_semigroup(const Rational& mu, const std::vector<Rational>& gens) {
  if (mu.is_zero()) return true;
  if (mu < Rational(0)) return false;
  std::int64_t L = common_den(gens, mu);
  std::int64_t top = mu.num() * (L / mu.den());
  return reachable(gens, L, top)[std::size_t(top)] != 0;
}

std::vector<Rational> semigroup_elements(const std::vector<Rational>& gens, const Rational& n) {
  std::vector<Rational> out;
  if (n <= Rational(0) || gens.empty()) return out;
  std::int64_t L = common_den(gens, n);
  std::int64_t top = n.num() * (L / n.den());
  auto reach = reachable(gens, L, top);
  for (std::int64_t k = 1; k <= top; ++k)
    if (reach[std::size_t(k)]) out.emplace_back(k, L);
  return out;
}

ExpPolySeries::ExpPolySeries(Rational trunc, std::vector<Rational> gens)
    : trunc_(trunc), gens_(normalize_gens(std::move(gens))) {
  if (trunc_ < Rational(0)) throw Error(ErrorCode::InvalidArgument, "negative truncation order");
}

ExpPolySeries ExpPolySeries::make(Rational trunc, std::vector<Rational> gens, const Terms& terms) {
  ExpPolySeries s(trunc, std::move(gens));
  for (auto& [mu, p] : terms) s.set(mu, p);
  return s;
}

ExpPolySeries ExpPolySeries::translation(cplx beta, Rational trunc, std::vector<Rational> gens) {
  ExpPolySeries s(trunc, std::move(gens));
  s.accumulate(Rational(0), CPoly(std::vector<cplx>{beta, 1.0}));
  return s;
}

CPoly ExpPolySeries::block(const Rational& mu) const {
  auto it = terms_.find(mu);
  return it == terms_.end() ? CPoly{} : it->second;
}

void ExpPolySeries::set(const Rational& mu, const CPoly& p) {
  if (mu < Rational(0)) throw Error(ErrorCode::InvalidArgument, "negative exponent " + mu.str());
  if (mu > trunc_)
    throw Error(ErrorCode::InvalidArgument, "exponent " + mu.str() + " beyond truncation " + trunc_.str());
  if (!in_semigroup(mu, gens_))
    throw Error(ErrorCode::ExponentNotInSemigroup, "exponent " + mu.str() + " is not a generator combination");
  if (p.is_zero())
    terms_.erase(mu);
  else
    terms_[mu] = p;
}

void ExpPolySeries::accumulate(const Rational& mu, const CPoly& p) {
  if (mu > trunc_ || p.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(mu, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpPolySeries add(const ExpPolySeries& a, const ExpPolySeries& b) {
  ExpPolySeries r = shell(a, b);
  for (auto& [mu, p] : a.terms()) r.accumulate(mu, p);
  for (auto& [mu, p] : b.terms()) r.accumulate(mu, p);
  return r;
}

ExpPolySeries sub(const ExpPolySeries& a, const ExpPolySeries& b) {
  ExpPolySeries r = shell(a, b);
  for (auto& [mu, p] : a.terms()) r.accumulate(mu, p);
  for (auto& [mu, p] : b.terms()) r.accumulate(mu, -p);
  return r;
}

ExpPolySeries mul(const ExpPolySeries& a, const ExpPolySeries& b) {
  ExpPolySeries r = shell(a, b);
  for (auto& [ma, pa] : a.terms()) {
    if (ma > r.trunc()) break;
    for (auto& [mb, pb] : b.terms()) {
      Rational mu = ma + mb;
      if (mu > r.trunc()) break;
      r.accumulate(mu, pa * pb);
    }
  }
  return r;
}

ExpPolySeries scale(const ExpPolySeries& a, cplx s) {
  ExpPolySeries r(a.trunc(), a.gens());
  for (auto& [mu, p] : a.terms()) r.accumulate(mu, p * s);
  return r;
}

ExpPolySeries add_constant(const ExpPolySeries& a, cplx c) {
  ExpPolySeries r(a);
  r.accumulate(Rational(0), CPoly(c));
  return r;
}

ExpPolySeries derivative(const ExpPolySeries& a) {
  ExpPolySeries r(a.trunc(), a.gens());
  for (auto& [mu, p] : a.terms()) {
    CPoly d = p.derivative();
    if (!mu.is_zero()) d -= p * cplx(mu.to_double());
    r.accumulate(mu, d);
  }
  return r;
}

ExpPolySeries translate(const ExpPolySeries& a, cplx c) {
  ExpPolySeries r(a.trunc(), a.gens());
  for (auto& [mu, p] : a.terms()) {
    CPoly q = p.shifted(c);
    if (!mu.is_zero()) q = q * std::exp(-mu.to_double() * c);
    r.accumulate(mu, q);
  }
  return r;
}

ExpPolySeries truncate(const ExpPolySeries& a, const Rational& n) {
  ExpPolySeries r(std::min(a.trunc(), n), a.gens());
  for (auto& [mu, p] : a.terms()) r.accumulate(mu, p);
  return r;
}

cplx head_beta(const ExpPolySeries& f) {
  CPoly b0 = f.block(Rational(0));
  if (b0.degree() != 1 || std::abs(b0.coeff(1) - 1.0) > 1e-14)
    throw Error(ErrorCode::NonUnitSlope, "head block is not zeta + beta");
  return b0.coeff(0);
}

ExpPolySeries perturbation(const ExpPolySeries& f) {
  ExpPolySeries d(f.trunc(), f.gens());
  for (auto& [mu, p] : f.terms())
    if (!mu.is_zero()) d.accumulate(mu, p);
  return d;
}

ExpPolySeries compose(const ExpPolySeries& g, const ExpPolySeries& f) {
  cplx beta = head_beta(f);
  ExpPolySeries delta = perturbation(f);
  Rational n = std::min(g.trunc(), f.trunc());
  ExpPolySeries out(n, merge_gens(g.gens(), f.gens()));
  auto od = ord(delta);
  ExpPolySeries gi = truncate(g, n);
  // delta^i / i!
  ExpPolySeries pw = ExpPolySeries::make(n, delta.gens(), {{Rational(0), CPoly(1.0)}});
  for (int i = 0;; ++i) {
    out = add(out, mul(translate(gi, beta), pw));
    if (!od || Rational(i + 1) * *od > n) break;
    gi = derivative(gi);
    pw = scale(mul(pw, delta), 1.0 / double(i + 1));
    if (gi.is_zero() || pw.is_zero()) break;
  }
  return out;
}

std::optional<Rational> ord(const ExpPolySeries& a) {
  if (a.terms().empty()) return std::nullopt;
  return a.terms().begin()->first;
}

std::optional<Rational> effective_ord(const ExpPolySeries& a, double tol) {
  for (auto& [mu, p] : a.terms())
    if (p.max_abs() > tol) return mu;
  return std::nullopt;
}

double max_abs_coeff(const ExpPolySeries& a) {
  double m = 0;
  for (auto& [mu, p] : a.terms()) m = std::max(m, p.max_abs());
  return m;
}

bool is_real(const ExpPolySeries& a, double tol) {
  for (auto& [mu, p] : a.terms())
    for (auto& z : p.coeffs())
      if (std::abs(z.imag()) > tol) return false;
  return true;
}

double max_abs_diff(const ExpPolySeries& a, const ExpPolySeries& b) {
  double m = 0;
  for (auto& [mu, p] : a.terms()) m = std::max(m, max_abs_diff(p, b.block(mu)));
  for (auto& [mu, p] : b.terms())
    if (!a.terms().count(mu)) m = std::max(m, p.max_abs());
  return m;
}

cplx evaluate(const ExpPolySeries& a, cplx zeta) {
  cplx s{};
  for (auto& [mu, p] : a.terms()) {
    cplx v = p(zeta);
    if (!mu.is_zero()) v *= std::exp(-mu.to_double() * zeta);
    s += v;
  }
  return s;
}

ExpPolySeries conjugacy_residual(const ExpPolySeries& phi, const ExpPolySeries& f, cplx beta) {
  ExpPolySeries r = sub(compose(phi, f), phi);
  return add_constant(r, -beta);
}

DulacForm classify(const ExpPolySeries& f) {
  DulacForm d;
  CPoly b0 = f.block(Rational(0));
  if (b0.degree() != 1 || std::abs(b0.coeff(1) - 1.0) > 1e-14) return d;
  d.unit_slope = true;
  d.beta = b0.coeff(0);
  if (d.beta == cplx{})
    d.kind = DulacKind::parabolic;
  else if (d.beta.real() > 0)
    d.kind = DulacKind::hyperbolic;
  return d;
}

ExpPolySeries to_z_chart(const ExpPolySeries& f) {
  DulacForm form = classify(f);
  if (!form.unit_slope) throw Error(ErrorCode::NotNormalized, "head slope is not 1");
  cplx lambda = std::exp(-form.beta);
  ExpPolySeries mdelta = scale(perturbation(f), -1.0);
  Rational n = f.trunc();
  auto od = ord(mdelta);
  // exp(-delta)
  ExpPolySeries e = ExpPolySeries::make(n, f.gens(), {{Rational(0), CPoly(1.0)}});
  ExpPolySeries pw = e;
  for (int k = 1; od && Rational(k) * *od <= n; ++k) {
    pw = scale(mul(pw, mdelta), 1.0 / double(k));
    if (pw.is_zero()) break;
    e = add(e, pw);
  }
  ExpPolySeries F(n + Rational(1), merge_gens(f.gens(), {Rational(1)}));
  for (auto& [mu, p] : e.terms()) F.accumulate(mu + Rational(1), p * lambda);
  return F;
}

ExpPolySeries from_z_chart(const ExpPolySeries& F, std::optional<cplx> beta) {
  const Rational one(1);
  if (F.is_zero() || F.terms().begin()->first != one)
    throw Error(ErrorCode::NotNormalized, "z-chart series must start with lambda*z");
  CPoly head = F.terms().begin()->second;
  if (head.degree() != 0) throw Error(ErrorCode::NotNormalized, "linear coefficient must be a constant");
  cplx lambda = head.coeff(0);
  if (F.trunc() < one) throw Error(ErrorCode::NotNormalized, "truncation below 1");
  cplx b = beta ? *beta : -std::log(lambda);
  if (beta && std::abs(std::exp(-b) - lambda) > 1e-12 * std::abs(lambda))
    throw Error(ErrorCode::InvalidArgument, "beta is not a logarithm of the linear coefficient");

  Rational n = F.trunc() - one;
  std::vector<Rational> gens = F.gens();
  for (auto& [mu, p] : F.terms())
    if (mu > one) gens.push_back(mu - one);
  ExpPolySeries u(n, gens);
  for (auto& [mu, p] : F.terms())
    if (mu > one) u.accumulate(mu - one, p * (1.0 / lambda));

  // log(1+u)
  ExpPolySeries lg(n, u.gens());
  auto ou = ord(u);
  ExpPolySeries pw = ExpPolySeries::make(n, u.gens(), {{Rational(0), CPoly(1.0)}});
  for (int k = 1; ou && Rational(k) * *ou <= n; ++k) {
    pw = mul(pw, u);
    if (pw.is_zero()) break;
    lg = add(lg, scale(pw, (k % 2 ? 1.0 : -1.0) / double(k)));
  }
  ExpPolySeries f = ExpPolySeries::translation(b, n, u.gens());
  return sub(f, lg);
}

}  // namespace dulac
