#pragma once

#include "dulac/cpoly.hpp"

namespace dulac {

// exp^{k}(0): 0, 1, e, e^e, ...
double exp_iter_zero(int k);

// (beta, eps, k) together with the cut R (Re zeta >= R), which also
// plays the role of the start point t of boundary maps.
struct AsymptoticProfile {
  cplx beta{1.0};
  double eps = 1.0;
  int k = 0;
  double R = 1.0;

  AsymptoticProfile() = default;
  // Throws InvalidArgument unless Re beta > 0, eps > 0, k >= 0,
  // R > exp^{k}(0) and rho_minus(R) > 0.
  AsymptoticProfile(cplx beta, double eps, int k, double R);
  AsymptoticProfile with_cut(double r) const { return AsymptoticProfile(beta, eps, k, r); }
};

double iterated_log_real(double x, int m);
cplx iterated_log(cplx zeta, int m);

// 1/(x log x ... (log^{k} x)^{1+eps}); x^{-(1+eps)} when k = 0.
double M_eps_k(double x, double eps, int k);
double M_eps_k(double x, const AsymptoticProfile& p);
double rho_minus(double x, const AsymptoticProfile& p);
double rho_plus(double x, const AsymptoticProfile& p);
// Integral of M over [x, inf): (log^{k} x)^{-eps} / eps.
double M_tail_integral(double x, const AsymptoticProfile& p);
// Upper bound for sum_{n >= 0} M(x + n y) by the integral test.
double M_series_bound(double x, double y, const AsymptoticProfile& p);
// 1/|zeta L_1 ... L_k^{1+eps}| with principal iterated logs.
double complex_bound(cplx zeta, const AsymptoticProfile& p);

cplx kappa(cplx w, double C);

struct KappaInverse {
  cplx w;
  bool inside;  // Re w > 0, so zeta lies in kappa(C^+)
};

KappaInverse kappa_inv(cplx zeta, double C);
// kappa(i r) written in polar form.
cplx quad_boundary_param(double r, double C);
// Height of the upper boundary of kappa(C^+) over Re zeta = x, x >= C.
double quad_upper_height(double x, double C);

struct Rect {
  double x0, x1, y0, y1;
  bool contains(cplx z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
};

Rect safety_rect(cplx zeta, const AsymptoticProfile& p);

}  // namespace dulac
