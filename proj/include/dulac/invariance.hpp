#pragma once

#include <string>
#include <vector>

#include "dulac/analytic_map.hpp"
#include "dulac/region.hpp"

namespace dulac {

struct InvarianceRow {
  cplx zeta{};
  double bound_margin = 0;  // bound - |f(zeta) - zeta - beta|
  bool rect_ok = true;
  bool region_ok = true;
};

struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  int violations = 0;
  double worst_margin = 0;
  double cut = 0;
  unsigned long long seed = 0;
  std::string csv() const;  // re,im,bound_margin,rect_ok,region_ok
};

// Stratified seeded samples over Re in [L, L+50], L the region's left edge
// after applying the profile cut; Im drawn inside the region's bounds.
InvarianceReport check_invariance(const AnalyticMap& f, const Region& region, int n_samples,
                                  unsigned long long seed = 1);

// Doubles the cut, starting from max(R0, profile cut), until check_invariance passes.
InvarianceReport search_invariant_cut(const AnalyticMap& f, const Region& region, int n_samples,
                                      unsigned long long seed = 1, double R0 = 0.0, int max_doublings = 30);

}  // namespace dulac
