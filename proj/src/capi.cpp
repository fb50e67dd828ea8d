#include "dulac/dulac.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "dulac/analytic_map.hpp"
#include "dulac/dynamics.hpp"
#include "dulac/error.hpp"
#include "dulac/expr.hpp"
#include "dulac/formal.hpp"
#include "dulac/invariance.hpp"
#include "dulac/region.hpp"
#include "dulac/series_json.hpp"

struct dulac_series {
  dulac::ExpPolySeries s;
};
struct dulac_linearization {
  dulac::LinearizationResult r;
};
struct dulac_germ {
  dulac::AnalyticMap f;
};
struct dulac_region {
  dulac::Region r;
};

namespace {

thread_local std::string g_error;
thread_local long g_offset = -1;

int fail(int code, const char* msg, long offset = -1) {
  g_error = msg;
  g_offset = offset;
  return code;
}

template <class F>
int guard(F&& body) {
  g_error.clear();
  g_offset = -1;
  try {
    body();
    return DULAC_OK;
  } catch (const dulac::Error& e) {
    return fail(int(e.code()), e.what(), long(e.offset()));
  } catch (const std::bad_alloc&) {
    return fail(DULAC_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(DULAC_INTERNAL_ERROR, e.what());
  }
}

#define DULAC_REQUIRE(cond)                                                                   \
  do {                                                                                        \
    if (!(cond)) return fail(DULAC_INVALID_ARGUMENT, "InvalidArgument: null or bad argument"); \
  } while (0)

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dulac::AsymptoticProfile to_profile(const dulac_profile& p) {
  return dulac::AsymptoticProfile({p.beta_re, p.beta_im}, p.eps, p.k, p.R);
}

}  // namespace

extern "C" {

const char* dulac_version(void) { return DULAC_VERSION; }

const char* dulac_status_name(int status) {
  if (status == DULAC_OK) return "Ok";
  if (status == DULAC_INTERNAL_ERROR) return "InternalError";
  if (status < DULAC_PARSE_ERROR || status > DULAC_INVALID_ARGUMENT) return "Unknown";
  return dulac::error_name(dulac::ErrorCode(status));
}

const char* dulac_last_error(void) { return g_error.c_str(); }
long dulac_last_error_offset(void) { return g_offset; }
void dulac_string_free(char* s) { std::free(s); }

int dulac_series_parse(const char* json, dulac_series** out) {
  DULAC_REQUIRE(json && out);
  return guard([&] { *out = new dulac_series{dulac::parse_series(json)}; });
}

int dulac_series_truncate(const dulac_series* s, const char* order, dulac_series** out) {
  DULAC_REQUIRE(s && order && out);
  return guard([&] {
    auto n = dulac::Rational::parse(order);
    if (n > s->s.trunc())
      throw dulac::Error(dulac::ErrorCode::OrderTooLow, "requested order exceeds the input truncation");
    *out = new dulac_series{dulac::truncate(s->s, n)};
  });
}

int dulac_series_to_json(const dulac_series* s, int rounded, char** out) {
  DULAC_REQUIRE(s && out);
  return guard([&] { *out = dup(rounded ? dulac::serialize_series_rounded(s->s) : dulac::serialize_series(s->s)); });
}

int dulac_series_evaluate(const dulac_series* s, double re, double im, double* out_re, double* out_im) {
  DULAC_REQUIRE(s && out_re && out_im);
  return guard([&] {
    auto v = dulac::evaluate(s->s, {re, im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

int dulac_series_is_real(const dulac_series* s, double tol, int* out) {
  DULAC_REQUIRE(s && out);
  return guard([&] { *out = dulac::is_real(s->s, tol) ? 1 : 0; });
}

void dulac_series_free(dulac_series* s) { delete s; }

int dulac_linearize(const dulac_series* f, dulac_algorithm algorithm, dulac_linearization** out) {
  DULAC_REQUIRE(f && out);
  DULAC_REQUIRE(algorithm == DULAC_LEVEL_SOLVER || algorithm == DULAC_PICARD);
  return guard([&] {
    auto r = algorithm == DULAC_PICARD ? dulac::picard_linearize_zeta(f->s) : dulac::linearize_level_by_level(f->s);
    *out = new dulac_linearization{std::move(r)};
  });
}

int dulac_linearization_json(const dulac_linearization* r, char** out) {
  DULAC_REQUIRE(r && out);
  return guard([&] { *out = dup(dulac::linearization_json(r->r)); });
}

int dulac_linearization_phi(const dulac_linearization* r, dulac_series** out) {
  DULAC_REQUIRE(r && out);
  return guard([&] { *out = new dulac_series{r->r.phi}; });
}

int dulac_linearization_info(const dulac_linearization* r, double* beta_re, double* beta_im, int* levels,
                             double* residual_max, int* residual_zero) {
  DULAC_REQUIRE(r);
  if (beta_re) *beta_re = r->r.beta.real();
  if (beta_im) *beta_im = r->r.beta.imag();
  if (levels) *levels = int(r->r.levels_solved.size());
  if (residual_max) *residual_max = r->r.residual_max;
  if (residual_zero) *residual_zero = r->r.residual_ord ? 0 : 1;
  return DULAC_OK;
}

void dulac_linearization_free(dulac_linearization* r) { delete r; }

int dulac_partial_sum(const dulac_series* phi, int n, dulac_series** out) {
  DULAC_REQUIRE(phi && out && n >= 0);
  return guard([&] { *out = new dulac_series{dulac::partial_sums(phi->s, n)}; });
}

int dulac_level_exponent(const dulac_series* phi, int n, double* out) {
  DULAC_REQUIRE(phi && out && n >= 0);
  return guard([&] { *out = dulac::level_exponent(phi->s, n).to_double(); });
}

int dulac_germ_parse(const char* expr, const dulac_profile* profile, dulac_germ** out) {
  DULAC_REQUIRE(expr && profile && out);
  return guard([&] { *out = new dulac_germ{dulac::parse_germ(expr, to_profile(*profile))}; });
}

int dulac_germ_from_series(const dulac_series* f, const dulac_profile* profile, dulac_germ** out) {
  DULAC_REQUIRE(f && profile && out);
  return guard([&] { *out = new dulac_germ{dulac::germ_from_series(f->s, to_profile(*profile))}; });
}

int dulac_germ_eval(const dulac_germ* f, double re, double im, double* out_re, double* out_im) {
  DULAC_REQUIRE(f && out_re && out_im);
  return guard([&] {
    auto v = f->f({re, im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

int dulac_germ_is_translation(const dulac_germ* f, int* out) {
  DULAC_REQUIRE(f && out);
  *out = f->f.is_translation() ? 1 : 0;
  return DULAC_OK;
}

void dulac_germ_free(dulac_germ* f) { delete f; }

int dulac_region_parse(const char* json, dulac_region** out) {
  DULAC_REQUIRE(json && out);
  return guard([&] { *out = new dulac_region{dulac::parse_region(json)}; });
}

int dulac_region_quad(double C, double R, dulac_region** out) {
  DULAC_REQUIRE(out);
  return guard([&] { *out = new dulac_region{dulac::Region::quad(C, R)}; });
}

int dulac_region_contains(const dulac_region* r, double re, double im, int* out) {
  DULAC_REQUIRE(r && out);
  return guard([&] { *out = r->r.contains({re, im}) ? 1 : 0; });
}

int dulac_region_to_json(const dulac_region* r, char** out) {
  DULAC_REQUIRE(r && out);
  return guard([&] { *out = dup(r->r.to_json()); });
}

void dulac_region_free(dulac_region* r) { delete r; }

int dulac_koenigs_grid(const dulac_germ* f, const char* grid, double tol, const dulac_region* region, long max_n,
                       dulac_grid_row** rows, size_t* count) {
  DULAC_REQUIRE(f && grid && rows && count && tol > 0 && max_n > 0);
  return guard([&] {
    auto pts = dulac::parse_grid(grid).points();
    auto res = dulac::koenigs_grid(f->f, pts, tol, region ? &region->r : nullptr, max_n);
    auto* out = static_cast<dulac_grid_row*>(std::calloc(res.size() ? res.size() : 1, sizeof(dulac_grid_row)));
    if (!out) throw std::bad_alloc();
    for (std::size_t i = 0; i < res.size(); ++i) {
      const auto& g = res[i];
      dulac_grid_row& o = out[i];
      o.re = g.zeta.real();
      o.im = g.zeta.imag();
      o.phi_re = g.phi.value.real();
      o.phi_im = g.phi.value.imag();
      o.n_used = g.phi.n_used;
      o.tail_bound = g.phi.tail_bound;
      o.residual = g.residual;
      o.in_region = g.in_region;
      o.converged = !g.error && g.phi.converged;
      o.step_bound_ok = g.phi.step_bound_ok;
      o.status = g.error ? g.error_code : (g.phi.converged ? DULAC_OK : DULAC_NOT_CONVERGED);
    }
    *rows = out;
    *count = res.size();
  });
}

void dulac_grid_rows_free(dulac_grid_row* rows) { std::free(rows); }

int dulac_check_invariance(const dulac_germ* f, const dulac_region* region, int samples, unsigned long long seed,
                           int search, dulac_invariance* out) {
  DULAC_REQUIRE(f && region && out && samples > 0);
  return guard([&] {
    auto rep = search ? dulac::search_invariant_cut(f->f, region->r, samples, seed)
                      : dulac::check_invariance(f->f, region->r, samples, seed);
    out->violations = rep.violations;
    out->worst_margin = rep.worst_margin;
    out->cut = rep.cut;
    out->csv = dup(rep.csv());
  });
}

int dulac_decay(const dulac_germ* f, const dulac_series* phi, int n, const char* grid, double tol, long max_n,
                dulac_decay_report* out) {
  DULAC_REQUIRE(f && phi && grid && out && n >= 0 && tol > 0 && max_n > 0);
  return guard([&] {
    auto pts = dulac::parse_grid(grid).points();
    double beta_n = dulac::level_exponent(phi->s, n).to_double();
    auto rep = dulac::decay_slope(f->f, dulac::partial_sums(phi->s, n), beta_n, pts, tol, max_n);
    int levels = 0;
    for (auto& [mu, p] : phi->s.terms())
      if (!mu.is_zero()) ++levels;
    out->slope = rep.fit.slope;
    out->intercept = rep.fit.intercept;
    out->beta_n = beta_n;
    out->beta_next = n < levels ? dulac::level_exponent(phi->s, n + 1).to_double() : 0.0;
    out->usable = rep.fit.usable;
    out->exact = rep.fit.exact;
    out->pass = rep.pass;
  });
}

int dulac_solve_homological(const dulac_germ* f, const char* h_expr, double alpha, const char* grid, double tol,
                            long max_n, dulac_homological** rows, size_t* count) {
  DULAC_REQUIRE(f && h_expr && grid && rows && count && alpha > 0 && tol > 0 && max_n > 0);
  return guard([&] {
    auto h = dulac::Expr::parse(h_expr);
    auto pts = dulac::parse_grid(grid).points();
    std::vector<dulac_homological> res(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto r = dulac::solve_homological_numeric(f->f, h, alpha, pts[i], tol, max_n);
      res[i] = {pts[i].real(), pts[i].imag(), r.value.real(), r.value.imag(), r.n_used, r.tail_bound, r.residual,
                r.residual_ok};
    }
    auto* out = static_cast<dulac_homological*>(std::calloc(res.size() ? res.size() : 1, sizeof(dulac_homological)));
    if (!out) throw std::bad_alloc();
    std::copy(res.begin(), res.end(), out);
    *rows = out;
    *count = res.size();
  });
}

void dulac_homological_free(dulac_homological* rows) { std::free(rows); }

int dulac_parse_number(const char* text, double* out) {
  DULAC_REQUIRE(text && out);
  return guard([&] {
    std::string s(text);
    if (s.find('/') != std::string::npos) {
      *out = dulac::Rational::parse(s).to_double();
      return;
    }
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
      throw dulac::Error(dulac::ErrorCode::ParseError, "not a number: '" + s + "'",
                         end ? end - s.c_str() : 0);
    *out = v;
  });
}

int dulac_parse_complex(const char* text, double* re, double* im) {
  DULAC_REQUIRE(text && re && im);
  return guard([&] {
    auto v = dulac::eval_constant(text);
    *re = v.real();
    *im = v.imag();
  });
}

}  // extern "C"
