#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dulac/geometry.hpp"
#include "dulac/jet.hpp"

namespace dulac {

class BoundaryMap {
 public:
  enum class Kind { power, linear, logarithmic, quad, negated };

  static BoundaryMap power(double a, double r);          // a x^r
  static BoundaryMap linear(double a, double b = 0.0);   // a x + b
  static BoundaryMap logarithmic(double delta);          // (log x)^delta
  static BoundaryMap quad(double C, int sign = 1);       // +- upper boundary of R_C
  static BoundaryMap negated(const BoundaryMap& inner);

  Kind kind() const { return kind_; }
  // Declared monotonicity on its domain: +1 increasing, -1 decreasing, 0 constant.
  int monotonicity() const;
  // Smallest x where the map is defined (log needs x > 1, quad x >= C).
  double domain_start() const;

  double operator()(double x) const;
  Jet jet(double x, int order) const;
  double derivative(double x, int i) const { return jet(x, i).derivative(i); }

  std::string to_json() const;

 private:
  Kind kind_ = Kind::linear;
  double a_ = 0, b_ = 0;
  std::shared_ptr<const BoundaryMap> inner_;
};

class Region {
 public:
  enum class Kind { quad, band, union_ };

  static Region quad(double C, double R = 0.0);
  static Region band(double t, BoundaryMap hl, BoundaryMap hu, double R = 0.0);
  static Region union_of(std::vector<Region> parts, double R = 0.0);

  Kind kind() const { return kind_; }
  double cut() const { return R_; }
  // Effective left edge: max of cut and t (and C for quad domains).
  double left() const;
  double C() const { return C_; }
  const std::vector<Region>& parts() const { return parts_; }
  const BoundaryMap& lower() const { return hl_; }
  const BoundaryMap& upper() const { return hu_; }

  Region with_cut(double R) const;
  bool contains(cplx zeta) const;
  // Open Im-interval over Re zeta = x; empty (lo >= hi) when the vertical
  // line misses the region. Not meaningful for unions.
  std::pair<double, double> im_bounds(double x) const;

  std::string to_json() const;

 private:
  Kind kind_ = Kind::quad;
  double C_ = 0, t_ = 0, R_ = 0;
  BoundaryMap hl_, hu_;
  std::vector<Region> parts_;
};

BoundaryMap parse_boundary(std::string_view json);
Region parse_region(std::string_view json);
bool in_region(cplx zeta, const Region& region);

enum class MapRole { upper, lower };

struct MapViolation {
  double x;
  double lhs;
  double rhs;
};

struct MapCheckReport {
  bool ok = true;
  std::string condition;  // the inequality that was sampled
  std::string note;
  std::vector<MapViolation> violations;
  double worst_margin = 0;  // min over samples of the signed slack
  int samples = 0;
};

// Geometric grid on [t, max(1e6, 10 t)].
std::vector<double> sample_grid(double t, int samples = 512);

MapCheckReport check_upper_map(const BoundaryMap& h, const AsymptoticProfile& p, int samples = 512);
MapCheckReport check_lower_map(const BoundaryMap& h, const AsymptoticProfile& p, int samples = 512);

// Sufficient Taylor condition with step rho and n derivatives; throws
// InvalidRho when rho lies outside the range allowed by the case.
bool check_taylor_sufficient(const BoundaryMap& h, int n, double rho, const AsymptoticProfile& p, MapRole role,
                             int samples = 512);

// Smallest C' >= max(C, R) (found by doubling) whose sampled points of
// R_{C'} all lie in (R_C)_R.
double germ_containment_search(double C, double R, int samples = 4000, unsigned long long seed = 1);

}  // namespace dulac
