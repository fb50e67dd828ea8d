#include "dulac/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "dulac/error.hpp"
#include "dulac/expr.hpp"

namespace dulac {

namespace {

// M_{eps,k} with a multiplication fast path for small integral exponents.
class MEval {
 public:
  explicit MEval(const AsymptoticProfile& p) : p_(p) {
    double e = 1.0 + p.eps;
    if (p.k == 0 && e == std::floor(e) && e <= 8) ipow_ = int(e);
  }
  double operator()(double x) const {
    if (ipow_ > 0 && x > 0) {
      double r = x;
      for (int i = 1; i < ipow_; ++i) r *= x;
      return 1.0 / r;
    }
    return M_eps_k(x, p_);
  }

 private:
  const AsymptoticProfile& p_;
  int ipow_ = 0;
};

cplx shifted_point(cplx zeta, long n, cplx beta, cplx acc) { return zeta + double(n) * beta + acc; }

}  // namespace

std::vector<cplx> orbit(const AnalyticMap& f, cplx zeta0, int n) {
  const auto& p = f.profile();
  double x0 = zeta0.real();
  if (!(x0 >= p.R)) throw Error(ErrorCode::DomainError, "orbit start below the cut");
  double rm = rho_minus(x0, p);
  std::vector<cplx> out{zeta0};
  cplx acc{};
  for (int m = 1; m <= n; ++m) {
    acc += f.perturbation(out.back());
    cplx w = shifted_point(zeta0, m, p.beta, acc);
    if (w.real() < x0 + m * rm - 1e-12 * std::abs(w))
      throw Error(ErrorCode::GrowthBoundViolated, "Re f^m(zeta) fell below Re zeta + m rho_minus");
    out.push_back(w);
  }
  return out;
}

KoenigsResult koenigs_run(const AnalyticMap& f, cplx zeta, double tol, long max_n) {
  const auto& p = f.profile();
  double x0 = zeta.real();
  if (!(x0 >= p.R)) throw Error(ErrorCode::DomainError, "Koenigs start below the cut");
  MEval M(p);
  KoenigsResult r;
  double rm0 = rho_minus(x0, p);
  r.tangency_bound = M(x0) + M_tail_integral(x0, p) / rm0;
  if (f.is_translation()) {
    r.value = zeta;
    r.n_used = 1;
    r.converged = true;
    return r;
  }
  cplx acc{}, w = zeta;
  double tail = std::numeric_limits<double>::infinity();
  for (long n = 0; n < max_n; ++n) {
    cplx step = f.perturbation(w);
    double sa = std::abs(step);
    double mj = M(x0 + double(n) * rm0);
    r.worst_step_ratio = std::max(r.worst_step_ratio, sa / mj);
    if (sa > mj) r.step_bound_ok = false;
    if (!(w.real() >= p.R) || sa > M(w.real())) r.hypothesis_ok = false;
    acc += step;
    w = shifted_point(zeta, n + 1, p.beta, acc);
    if (w.real() < x0 + double(n + 1) * rm0 - 1e-12 * std::abs(w)) r.growth_ok = false;
    bool certified = r.step_bound_ok && r.hypothesis_ok && r.growth_ok;
    if (certified && sa < tol) {
      double X = w.real();
      tail = M(X) + M_tail_integral(X, p) / rho_minus(X, p);
      if (tail < tol) {
        r.converged = true;
        r.n_used = n + 1;
        break;
      }
    }
    r.n_used = n + 1;
  }
  r.displacement = acc;
  r.value = zeta + acc;
  r.tail_bound = tail;
  r.tangency_ok = std::abs(acc) <= r.tangency_bound;
  r.tangency_C = std::abs(acc) * std::pow(iterated_log_real(x0, p.k), p.eps / 2);
  return r;
}

KoenigsResult koenigs_limit(const AnalyticMap& f, cplx zeta, double tol, long max_n) {
  KoenigsResult r = koenigs_run(f, zeta, tol, max_n);
  if (!r.converged)
    throw Error(ErrorCode::NotConverged, "Koenigs sequence not certified after " + std::to_string(max_n) + " steps");
  return r;
}

std::vector<cplx> GridSpec::points() const {
  std::vector<cplx> pts;
  auto at = [](double a, double b, int n, int i) { return n <= 1 ? a : a + (b - a) * double(i) / double(n - 1); };
  for (int i = 0; i < re_steps; ++i)
    for (int j = 0; j < im_steps; ++j) pts.emplace_back(at(re0, re1, re_steps, i), at(im0, im1, im_steps, j));
  return pts;
}

GridSpec parse_grid(std::string_view spec) {
  auto fail = [&] { throw Error(ErrorCode::ParseError, "grid must look like re0:re1:steps,im0:im1:steps", 0); };
  auto comma = spec.find(',');
  if (comma == std::string_view::npos) fail();
  auto axis = [&](std::string_view a, double& lo, double& hi, int& steps) {
    auto c1 = a.find(':');
    auto c2 = c1 == std::string_view::npos ? c1 : a.find(':', c1 + 1);
    if (c2 == std::string_view::npos) fail();
    lo = eval_constant(a.substr(0, c1)).real();
    hi = eval_constant(a.substr(c1 + 1, c2 - c1 - 1)).real();
    double s = eval_constant(a.substr(c2 + 1)).real();
    if (!(s >= 1) || s != std::floor(s)) fail();
    steps = int(s);
  };
  GridSpec g{};
  axis(spec.substr(0, comma), g.re0, g.re1, g.re_steps);
  axis(spec.substr(comma + 1), g.im0, g.im1, g.im_steps);
  return g;
}

std::vector<GridRow> koenigs_grid(const AnalyticMap& f, const std::vector<cplx>& points, double tol,
                                  const Region* region, long max_n) {
  std::vector<GridRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    GridRow& row = rows[i];
    row.zeta = points[i];
    row.in_region = region ? region->contains(row.zeta) : row.zeta.real() >= f.profile().R;
    try {
      row.phi = koenigs_run(f, row.zeta, tol, max_n);
      if (row.phi.converged) {
        cplx fz = f(row.zeta);
        KoenigsResult next = koenigs_run(f, fz, tol, max_n);
        // phi(f(z)) - phi(z) - beta = p(z) + disp(f(z)) - disp(z)
        row.residual = std::abs(f.perturbation(row.zeta) + next.displacement - row.phi.displacement);
        if (!next.converged) row.phi.converged = false;
      }
    } catch (const Error& e) {
      row.error = e.what();
      row.error_code = int(e.code());
    }
  });
  return rows;
}

namespace {

cplx homological_sum(const AnalyticMap& f, const std::function<cplx(cplx)>& h, double alpha, cplx zeta, double tol,
                     long max_n, long& n_used, double& tail) {
  const auto& p = f.profile();
  if (!(zeta.real() >= p.R)) throw Error(ErrorCode::DomainError, "homological solve below the cut");
  double q = 1.0 / (1.0 - std::exp(-alpha * rho_minus(p.R, p)));
  cplx sum{}, acc{}, w = zeta;
  for (long n = 0; n < max_n; ++n) {
    cplx hv = h(w);
    double bound = std::exp(-alpha * w.real());
    if (std::abs(hv) > bound * (1.0 + 1e-12))
      throw Error(ErrorCode::DecayHypothesisViolated, "|h| exceeds e^{-alpha Re w} on the orbit");
    sum += hv;
    acc += f.perturbation(w);
    w = shifted_point(zeta, n + 1, p.beta, acc);
    tail = std::exp(-alpha * w.real()) * q;
    if (tail < tol) {
      n_used = n + 1;
      return -sum;
    }
  }
  throw Error(ErrorCode::NotConverged, "homological series tail still above tolerance");
}

}  // namespace

HomologicalResult solve_homological_numeric(const AnalyticMap& f, const std::function<cplx(cplx)>& h, double alpha,
                                            cplx zeta, double tol, long max_n) {
  if (!(alpha > 0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  HomologicalResult r;
  r.value = homological_sum(f, h, alpha, zeta, tol, max_n, r.n_used, r.tail_bound);
  long n2;
  double t2;
  cplx next = homological_sum(f, h, alpha, f(zeta), tol, max_n, n2, t2);
  r.residual = std::abs(next - r.value - h(zeta));
  r.residual_ok = r.residual <= 10 * tol;
  return r;
}

SlopeFit fit_log_slope(const std::vector<double>& x, const std::vector<double>& r) {
  SlopeFit fit;
  fit.re = x;
  fit.residual = r;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(r[i] >= kNoiseFloor) || !std::isfinite(r[i])) continue;
    double y = std::log(r[i]);
    ++fit.usable;
    sx += x[i];
    sy += y;
    sxx += x[i] * x[i];
    sxy += x[i] * y;
  }
  if (fit.usable == 0) {
    fit.exact = true;
    return fit;
  }
  if (fit.usable < 8)
    throw Error(ErrorCode::InsufficientData, std::to_string(fit.usable) + " usable points, need 8");
  double n = fit.usable, den = n * sxx - sx * sx;
  if (den == 0) throw Error(ErrorCode::InsufficientData, "degenerate abscissae");
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

ExpansionReport expansion_residual_check(const AnalyticMap& f, const ExpPolySeries& partial, double nu,
                                         const std::vector<cplx>& points) {
  cplx shift = f.profile().beta - head_beta(partial);
  ExpPolySeries tail = perturbation(partial);
  std::vector<double> x, r;
  for (cplx z : points) {
    x.push_back(z.real());
    r.push_back(std::abs(f.perturbation(z) + shift - evaluate(tail, z)));
  }
  ExpansionReport rep;
  rep.nu = nu;
  rep.fit = fit_log_slope(x, r);
  rep.pass = rep.fit.exact || rep.fit.slope <= -nu + 0.05;
  return rep;
}

DecayReport decay_slope(const AnalyticMap& f, const ExpPolySeries& phi_n, double beta_n,
                        const std::vector<cplx>& points, double tol, long max_n) {
  if (head_beta(phi_n) != cplx{}) throw Error(ErrorCode::InvalidArgument, "phi_n must have head zeta");
  ExpPolySeries tail = perturbation(phi_n);
  DecayReport rep;
  rep.beta_n = beta_n;
  rep.runs.resize(points.size());
  std::vector<std::exception_ptr> errs(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    try {
      rep.runs[i] = koenigs_limit(f, points[i], tol, max_n);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  });
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<double> x, r;
  for (std::size_t i = 0; i < points.size(); ++i) {
    x.push_back(points[i].real());
    r.push_back(std::abs(rep.runs[i].displacement - evaluate(tail, points[i])));
  }
  rep.fit = fit_log_slope(x, r);
  rep.pass = rep.fit.exact || rep.fit.slope <= -beta_n + 0.1;
  return rep;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t threads = std::min<std::size_t>({hw, n, 16});
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace dulac
