#pragma once

#include <functional>
#include <string>

#include "dulac/geometry.hpp"
#include "dulac/series.hpp"

namespace dulac {

// Evaluatable germ f with f(zeta) = zeta + beta + p(zeta); p is evaluated
// directly where possible so small perturbations keep full precision.
class AnalyticMap {
 public:
  using Fn = std::function<cplx(cplx)>;

  AnalyticMap(Fn perturbation, AsymptoticProfile profile, std::string description, bool translation = false);

  cplx operator()(cplx zeta) const { return zeta + profile_.beta + p_(zeta); }
  cplx perturbation(cplx zeta) const { return translation_ ? cplx{} : p_(zeta); }
  const AsymptoticProfile& profile() const { return profile_; }
  bool is_translation() const { return translation_; }
  const std::string& description() const { return description_; }

  AnalyticMap with_profile(const AsymptoticProfile& p) const;

 private:
  Fn p_;
  AsymptoticProfile profile_;
  std::string description_;
  bool translation_;
};

// beta is metadata taken from the profile, never inferred.
AnalyticMap parse_germ(std::string_view expr, const AsymptoticProfile& profile);
// The profile's beta must match the series head.
AnalyticMap germ_from_series(const ExpPolySeries& f, const AsymptoticProfile& profile);

}  // namespace dulac
