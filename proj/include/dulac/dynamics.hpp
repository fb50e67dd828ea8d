#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dulac/analytic_map.hpp"
#include "dulac/region.hpp"

namespace dulac {

// Orbit [zeta0, f(zeta0), ..., f^n(zeta0)]; throws GrowthBoundViolated when
// Re f^m(zeta0) < Re zeta0 + m rho_minus(Re zeta0).
std::vector<cplx> orbit(const AnalyticMap& f, cplx zeta0, int n);

struct KoenigsResult {
  cplx value{};
  cplx displacement{};  // value - zeta, accumulated without cancellation
  long n_used = 0;
  double tail_bound = 0;
  bool converged = false;
  // |phi_{n+1} - phi_n| <= M(Re zeta + n rho_minus(Re zeta)) at every step.
  bool step_bound_ok = true;
  double worst_step_ratio = 0;  // max |step| / M(...)
  // |f(w) - w - beta| <= M(Re w) along the orbit.
  bool hypothesis_ok = true;
  bool growth_ok = true;
  // |phi - zeta| against M(x) + (log^k x)^{-eps}/(eps rho_minus(x)) at x = Re zeta.
  double tangency_bound = 0;
  bool tangency_ok = true;
  // |phi - zeta| (log^k x)^{eps/2}, the constant of the tangency estimate with nu = eps/2.
  double tangency_C = 0;
};

constexpr long kDefaultMaxIterations = 1'000'000;

// Runs the Koenigs sequence until certified; returns converged = false on
// budget exhaustion instead of throwing.
KoenigsResult koenigs_run(const AnalyticMap& f, cplx zeta, double tol, long max_n = kDefaultMaxIterations);
// As koenigs_run but throws NotConverged.
KoenigsResult koenigs_limit(const AnalyticMap& f, cplx zeta, double tol, long max_n = kDefaultMaxIterations);

struct GridSpec {
  double re0, re1;
  int re_steps;
  double im0, im1;
  int im_steps;
  std::vector<cplx> points() const;  // Re outer, Im inner
};

// "re0:re1:steps,im0:im1:steps"; numbers may be decimals or p/q.
GridSpec parse_grid(std::string_view spec);

struct GridRow {
  cplx zeta{};
  KoenigsResult phi;
  std::optional<std::string> error;  // evaluation or domain failure
  int error_code = 0;                 // ErrorCode value when error is set
  double residual = 0;  // |phi(f(zeta)) - phi(zeta) - beta|
  bool in_region = true;
};

std::vector<GridRow> koenigs_grid(const AnalyticMap& f, const std::vector<cplx>& points, double tol,
                                  const Region* region = nullptr, long max_n = kDefaultMaxIterations);

struct HomologicalResult {
  cplx value{};
  long n_used = 0;
  double tail_bound = 0;
  double residual = 0;  // |psi(f(zeta)) - psi(zeta) - h(zeta)|
  bool residual_ok = true;
};

// psi = -sum h(f^n(zeta)) under |h(w)| <= e^{-alpha Re w}.
HomologicalResult solve_homological_numeric(const AnalyticMap& f, const std::function<cplx(cplx)>& h, double alpha,
                                            cplx zeta, double tol, long max_n = kDefaultMaxIterations);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  bool exact = false;  // every residual below the noise floor
  std::vector<double> re;
  std::vector<double> residual;  // all points, including excluded ones
  int usable = 0;
};

constexpr double kNoiseFloor = 1e-14;

// Least squares fit of log r against x over points with r >= kNoiseFloor.
// Throws InsufficientData for 1..7 usable points.
SlopeFit fit_log_slope(const std::vector<double>& x, const std::vector<double>& r);

struct ExpansionReport {
  SlopeFit fit;
  double nu = 0;
  bool pass = false;
};

// |f(zeta) - partial(zeta)| = o(e^{-nu zeta}): slope <= -nu + 0.05.
ExpansionReport expansion_residual_check(const AnalyticMap& f, const ExpPolySeries& partial, double nu,
                                         const std::vector<cplx>& points);

struct DecayReport {
  SlopeFit fit;
  double beta_n = 0;       // exponent of the last level in phi_n
  double beta_next = 0;    // next level of the full formal phi, 0 if none
  bool pass = false;       // slope <= -beta_n + 0.1
  std::vector<KoenigsResult> runs;
};

DecayReport decay_slope(const AnalyticMap& f, const ExpPolySeries& phi_n, double beta_n,
                        const std::vector<cplx>& points, double tol, long max_n = kDefaultMaxIterations);

// Calls fn(i) for i in [0, n) on a few threads; results must be written by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dulac
