#include "dulac/invariance.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "dulac/error.hpp"

namespace dulac {

namespace {

const Region& leaf_for(const Region& r, std::size_t i) {
  if (r.kind() != Region::Kind::union_) return r;
  return leaf_for(r.parts()[i % r.parts().size()], i / r.parts().size());
}

}  // namespace

InvarianceReport check_invariance(const AnalyticMap& f, const Region& region, int n_samples,
                                  unsigned long long seed) {
  const auto& p = f.profile();
  Region cut = region.cut() < p.R ? region.with_cut(p.R) : region;
  InvarianceReport rep;
  rep.seed = seed;
  rep.cut = p.R;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int strata = std::max(1, int(std::lround(std::sqrt(double(n_samples)))));
  for (int i = 0; i < n_samples; ++i) {
    const Region& leaf = leaf_for(cut, std::size_t(i));
    double L = std::max(leaf.left(), cut.cut());
    int s = i % strata;
    cplx z;
    bool found = false;
    for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
      double x = L + 50.0 * (double(s) + u(rng)) / double(strata);
      auto [lo, hi] = leaf.im_bounds(x);
      double v = u(rng);
      if (!(hi > lo) || v == 0.0) continue;
      z = {x, lo + (hi - lo) * v};
      found = cut.contains(z);
    }
    if (!found) throw Error(ErrorCode::DomainError, "could not sample the region");
    InvarianceRow row;
    row.zeta = z;
    cplx pert = f.perturbation(z);
    cplx fz = z + p.beta + pert;
    row.bound_margin = complex_bound(z, p) - std::abs(pert);
    row.rect_ok = safety_rect(z, p).contains(fz);
    row.region_ok = cut.contains(fz);
    rep.worst_margin = std::min(rep.worst_margin, row.bound_margin);
    if (row.bound_margin < 0 || !row.rect_ok || !row.region_ok) ++rep.violations;
    rep.rows.push_back(row);
  }
  return rep;
}

InvarianceReport search_invariant_cut(const AnalyticMap& f, const Region& region, int n_samples,
                                      unsigned long long seed, double R0, int max_doublings) {
  double R = std::max(R0, f.profile().R);
  for (int d = 0; d <= max_doublings; ++d, R *= 2) {
    AnalyticMap g = f.with_profile(f.profile().with_cut(R));
    InvarianceReport rep = check_invariance(g, region.with_cut(std::max(region.cut(), R)), n_samples, seed);
    if (rep.violations == 0) return rep;
  }
  throw Error(ErrorCode::NotConverged, "no invariant cut found");
}

std::string InvarianceReport::csv() const {
  std::string out = "re,im,bound_margin,rect_ok,region_ok\n";
  char buf[160];
  for (auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%d\n", r.zeta.real(), r.zeta.imag(), r.bound_margin,
                  int(r.rect_ok), int(r.region_ok));
    out += buf;
  }
  return out;
}

}  // namespace dulac
