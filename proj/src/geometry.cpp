#include "dulac/geometry.hpp"

#include <cmath>
#include <limits>

#include "dulac/error.hpp"

namespace dulac {

double exp_iter_zero(int k) {
  double v = 0;
  for (int i = 0; i < k; ++i) v = std::exp(v);
  return v;
}

AsymptoticProfile::AsymptoticProfile(cplx b, double e, int kk, double r) : beta(b), eps(e), k(kk), R(r) {
  if (!(beta.real() > 0)) throw Error(ErrorCode::InvalidArgument, "profile needs Re(beta) > 0");
  if (!(eps > 0)) throw Error(ErrorCode::InvalidArgument, "profile needs eps > 0");
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "profile needs k >= 0");
  if (!(R > exp_iter_zero(k)))
    throw Error(ErrorCode::InvalidArgument, "profile needs R > exp^k(0) = " + std::to_string(exp_iter_zero(k)));
  if (!(rho_minus(R, *this) > 0)) throw Error(ErrorCode::InvalidArgument, "profile needs rho_minus(R) > 0");
}

double iterated_log_real(double x, int m) {
  if (!(x > exp_iter_zero(m))) throw Error(ErrorCode::DomainError, "iterated log outside its domain");
  for (int i = 0; i < m; ++i) x = std::log(x);
  return x;
}

cplx iterated_log(cplx zeta, int m) {
  if (!(zeta.real() > exp_iter_zero(m))) throw Error(ErrorCode::DomainError, "iterated log outside its domain");
  for (int i = 0; i < m; ++i) zeta = std::log(zeta);
  return zeta;
}

double M_eps_k(double x, double eps, int k) {
  if (!(x > exp_iter_zero(k))) throw Error(ErrorCode::DomainError, "M evaluated at or below exp^k(0)");
  if (k == 0) return std::pow(x, -(1.0 + eps));
  double prod = 1.0, l = x;
  for (int i = 0; i < k; ++i) {
    prod *= l;
    l = std::log(l);
  }
  return 1.0 / (prod * std::pow(l, 1.0 + eps));
}

double M_eps_k(double x, const AsymptoticProfile& p) { return M_eps_k(x, p.eps, p.k); }
double rho_minus(double x, const AsymptoticProfile& p) { return p.beta.real() - M_eps_k(x, p); }
double rho_plus(double x, const AsymptoticProfile& p) { return p.beta.real() + M_eps_k(x, p); }

double M_tail_integral(double x, const AsymptoticProfile& p) {
  return std::pow(iterated_log_real(x, p.k), -p.eps) / p.eps;
}

double M_series_bound(double x, double y, const AsymptoticProfile& p) {
  return M_eps_k(x, p) + M_tail_integral(x, p) / y;
}

double complex_bound(cplx zeta, const AsymptoticProfile& p) {
  if (!(zeta.real() > exp_iter_zero(p.k))) throw Error(ErrorCode::DomainError, "bound outside its domain");
  if (p.k == 0) return std::pow(std::abs(zeta), -(1.0 + p.eps));
  double prod = 1.0;
  cplx l = zeta;
  for (int i = 0; i < p.k; ++i) {
    prod *= std::abs(l);
    l = std::log(l);
  }
  return 1.0 / (prod * std::pow(std::abs(l), 1.0 + p.eps));
}

cplx kappa(cplx w, double C) { return w + C * std::sqrt(w + 1.0); }

KappaInverse kappa_inv(cplx zeta, double C) {
  // s = sqrt(w + 1) solves s^2 + C s - (zeta + 1) = 0
  cplx s = (-C + std::sqrt(C * C + 4.0 * (zeta + 1.0))) / 2.0;
  cplx w = s * s - 1.0;
  return {w, s.real() > 0 && w.real() > 0};
}

cplx quad_boundary_param(double r, double C) {
  double m = C * std::pow(r * r + 1.0, 0.25), th = 0.5 * std::atan(r);
  return {m * std::cos(th), r + m * std::sin(th)};
}

double quad_upper_height(double x, double C) {
  if (x < C) return std::numeric_limits<double>::quiet_NaN();
  double a = x / C;
  return std::sqrt(a * a - 1.0) * (2.0 * a + C);
}

Rect safety_rect(cplx zeta, const AsymptoticProfile& p) {
  double x = zeta.real();
  if (x < p.R) throw Error(ErrorCode::DomainError, "safety rectangle below the cut");
  double m = M_eps_k(x, p);
  return {x + rho_minus(x, p), x + rho_plus(x, p), zeta.imag() + p.beta.imag() - m, zeta.imag() + p.beta.imag() + m};
}

}  // namespace dulac
