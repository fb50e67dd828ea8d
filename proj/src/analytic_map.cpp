#include "dulac/analytic_map.hpp"

#include <cmath>

#include "dulac/error.hpp"
#include "dulac/expr.hpp"

namespace dulac {

AnalyticMap::AnalyticMap(Fn perturbation, AsymptoticProfile profile, std::string description, bool translation)
    : p_(std::move(perturbation)),
      profile_(profile),
      description_(std::move(description)),
      translation_(translation) {}

AnalyticMap AnalyticMap::with_profile(const AsymptoticProfile& p) const {
  AnalyticMap m(*this);
  m.profile_ = p;
  return m;
}

AnalyticMap parse_germ(std::string_view text, const AsymptoticProfile& profile) {
  Expr e = Expr::parse(text);
  const cplx beta = profile.beta;
  cplx c0;
  Expr rest;
  bool empty = false;
  if (!e.split_identity(c0, rest, empty)) {
    auto fn = [e, beta](cplx z) { return e(z) - z - beta; };
    return AnalyticMap(fn, profile, std::string(text));
  }
  cplx shift = c0 - beta;
  bool translation = empty && std::abs(shift) <= 1e-14 * std::max(1.0, std::abs(beta));
  if (empty) {
    auto fn = [shift](cplx) { return shift; };
    return AnalyticMap(fn, profile, std::string(text), translation);
  }
  auto fn = [rest, shift](cplx z) { return rest(z) + shift; };
  return AnalyticMap(fn, profile, std::string(text));
}

AnalyticMap germ_from_series(const ExpPolySeries& f, const AsymptoticProfile& profile) {
  cplx b = head_beta(f);
  if (std::abs(b - profile.beta) > 1e-12 * std::max(1.0, std::abs(b)))
    throw Error(ErrorCode::InvalidArgument, "profile beta does not match the series head");
  ExpPolySeries d = perturbation(f);
  cplx shift = b - profile.beta;
  auto fn = [d, shift](cplx z) { return evaluate(d, z) + shift; };
  return AnalyticMap(fn, profile, "series", d.is_zero() && shift == cplx{});
}

}  // namespace dulac
