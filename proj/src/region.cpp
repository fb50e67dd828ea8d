#include "dulac/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include <json.hpp>

#include "dulac/error.hpp"
#include "dulac/rational.hpp"

namespace dulac {

namespace {

using nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();

double num(const json& j, const char* key, std::optional<double> dflt = std::nullopt) {
  if (!j.contains(key)) {
    if (dflt) return *dflt;
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  }
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return Rational::parse(v.get<std::string>()).to_double();
  throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a number");
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what(), std::ptrdiff_t(e.byte) - 1);
  }
}

const json& single_tag(const json& j, std::string& tag) {
  if (!j.is_object() || j.empty()) throw Error(ErrorCode::ParseError, "expected a tagged object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "R") {
      tag = it.key();
      return it.value();
    }
  throw Error(ErrorCode::ParseError, "missing tag");
}

BoundaryMap boundary_from(const json& j) {
  std::string tag;
  const json& b = single_tag(j, tag);
  if (tag == "power") return BoundaryMap::power(num(b, "a"), num(b, "r"));
  if (tag == "linear") return BoundaryMap::linear(num(b, "a"), num(b, "b", 0.0));
  if (tag == "log") return BoundaryMap::logarithmic(num(b, "delta"));
  if (tag == "quad") return BoundaryMap::quad(num(b, "C"), int(num(b, "sign", 1.0)));
  if (tag == "neg") return BoundaryMap::negated(boundary_from(b));
  throw Error(ErrorCode::ParseError, "unknown boundary map '" + tag + "'");
}

Region region_from(const json& j) {
  std::string tag;
  const json& b = single_tag(j, tag);
  double outer = num(j, "R", 0.0);
  Region r;
  if (tag == "quad") {
    r = Region::quad(num(b, "C"), num(b, "R", 0.0));
  } else if (tag == "band") {
    if (!b.contains("hl") || !b.contains("hu")) throw Error(ErrorCode::ParseError, "band needs hl and hu");
    r = Region::band(num(b, "t"), boundary_from(b["hl"]), boundary_from(b["hu"]), num(b, "R", 0.0));
  } else if (tag == "union") {
    if (!b.is_array() || b.empty()) throw Error(ErrorCode::ParseError, "union needs a nonempty array");
    std::vector<Region> parts;
    for (auto& p : b) parts.push_back(region_from(p));
    r = Region::union_of(std::move(parts));
  } else {
    throw Error(ErrorCode::ParseError, "unknown region '" + tag + "'");
  }
  return outer > r.cut() ? r.with_cut(outer) : r;
}

bool monotone(const std::vector<double>& v, int dir) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    double slack = 1e-12 * std::max(std::abs(v[i]), std::abs(v[i - 1]));
    if (dir > 0 && v[i] < v[i - 1] - slack) return false;
    if (dir < 0 && v[i] > v[i - 1] + slack) return false;
  }
  return true;
}

}  // namespace

BoundaryMap BoundaryMap::power(double a, double r) {
  BoundaryMap m;
  m.kind_ = Kind::power;
  m.a_ = a;
  m.b_ = r;
  return m;
}

BoundaryMap BoundaryMap::linear(double a, double b) {
  BoundaryMap m;
  m.kind_ = Kind::linear;
  m.a_ = a;
  m.b_ = b;
  return m;
}

BoundaryMap BoundaryMap::logarithmic(double delta) {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "log map needs delta > 0");
  BoundaryMap m;
  m.kind_ = Kind::logarithmic;
  m.a_ = delta;
  return m;
}

BoundaryMap BoundaryMap::quad(double C, int sign) {
  if (!(C > 0)) throw Error(ErrorCode::InvalidArgument, "quad boundary needs C > 0");
  BoundaryMap m;
  m.kind_ = Kind::quad;
  m.a_ = C;
  m.b_ = sign < 0 ? -1.0 : 1.0;
  return m;
}

BoundaryMap BoundaryMap::negated(const BoundaryMap& inner) {
  BoundaryMap m;
  m.kind_ = Kind::negated;
  m.inner_ = std::make_shared<const BoundaryMap>(inner);
  return m;
}

int BoundaryMap::monotonicity() const {
  auto sgn = [](double v) { return (v > 0) - (v < 0); };
  switch (kind_) {
    case Kind::power: return sgn(a_ * b_);
    case Kind::linear: return sgn(a_);
    case Kind::logarithmic: return 1;
    case Kind::quad: return int(b_);
    case Kind::negated: return -inner_->monotonicity();
  }
  return 0;
}

double BoundaryMap::domain_start() const {
  switch (kind_) {
    case Kind::power: return 0.0;
    case Kind::linear: return -kInf;
    case Kind::logarithmic: return 1.0;
    case Kind::quad: return a_;
    case Kind::negated: return inner_->domain_start();
  }
  return 0.0;
}

double BoundaryMap::operator()(double x) const {
  switch (kind_) {
    case Kind::power:
      if (!(x > 0)) break;
      return a_ * std::pow(x, b_);
    case Kind::linear: return a_ * x + b_;
    case Kind::logarithmic:
      if (!(x > 1)) break;
      return std::pow(std::log(x), a_);
    case Kind::quad:
      if (!(x >= a_)) break;
      return b_ * quad_upper_height(x, a_);
    case Kind::negated: return -(*inner_)(x);
  }
  throw Error(ErrorCode::DomainError, "boundary map evaluated outside its domain");
}

Jet BoundaryMap::jet(double x, int order) const {
  Jet X = Jet::variable(order, x);
  switch (kind_) {
    case Kind::power:
      if (!(x > 0)) break;
      return pow(X, b_) * a_;
    case Kind::linear: return X * a_ + b_;
    case Kind::logarithmic:
      if (!(x > 1)) break;
      return pow(log(X), a_);
    case Kind::quad: {
      if (!(x > a_)) break;
      Jet A = X * (1.0 / a_);
      return sqrt(A * A + (-1.0)) * (A * 2.0 + a_) * b_;
    }
    case Kind::negated: return -inner_->jet(x, order);
  }
  throw Error(ErrorCode::DomainError, "boundary map evaluated outside its domain");
}

std::string BoundaryMap::to_json() const {
  json j;
  switch (kind_) {
    case Kind::power: j["power"] = {{"a", a_}, {"r", b_}}; break;
    case Kind::linear: j["linear"] = {{"a", a_}, {"b", b_}}; break;
    case Kind::logarithmic: j["log"] = {{"delta", a_}}; break;
    case Kind::quad: j["quad"] = {{"C", a_}, {"sign", int(b_)}}; break;
    case Kind::negated: j["neg"] = json::parse(inner_->to_json()); break;
  }
  return j.dump();
}

Region Region::quad(double C, double R) {
  if (!(C > 0)) throw Error(ErrorCode::InvalidArgument, "quad domain needs C > 0");
  Region r;
  r.kind_ = Kind::quad;
  r.C_ = C;
  r.R_ = R;
  return r;
}

Region Region::band(double t, BoundaryMap hl, BoundaryMap hu, double R) {
  Region r;
  r.kind_ = Kind::band;
  r.t_ = t;
  r.R_ = R;
  r.hl_ = std::move(hl);
  r.hu_ = std::move(hu);
  double ds = std::max(r.hl_.domain_start(), r.hu_.domain_start());
  double x0 = std::max({t, R, ds, 1e-9});
  for (double x : sample_grid(x0, 64))
    if (x > ds && !(r.hl_(x) < r.hu_(x)))
      throw Error(ErrorCode::InvalidArgument, "band needs hl < hu, fails at x = " + std::to_string(x));
  return r;
}

Region Region::union_of(std::vector<Region> parts, double R) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "empty union");
  Region r;
  r.kind_ = Kind::union_;
  r.parts_ = std::move(parts);
  r.R_ = R;
  return r;
}

double Region::left() const {
  switch (kind_) {
    case Kind::quad: return std::max(R_, C_);
    case Kind::band: return std::max({R_, t_, hl_.domain_start(), hu_.domain_start()});
    case Kind::union_: {
      double l = kInf;
      for (auto& p : parts_) l = std::min(l, p.left());
      return std::max(l, R_);
    }
  }
  return R_;
}

Region Region::with_cut(double R) const {
  Region r(*this);
  r.R_ = R;
  return r;
}

bool Region::contains(cplx zeta) const {
  double x = zeta.real(), y = zeta.imag();
  if (!(x >= R_)) return false;
  switch (kind_) {
    case Kind::quad: return kappa_inv(zeta, C_).inside;
    case Kind::band: {
      if (!(x >= left()) || !(x > 0)) return false;
      if (x <= hl_.domain_start() || x <= hu_.domain_start()) return false;
      return hl_(x) < y && y < hu_(x);
    }
    case Kind::union_:
      return std::any_of(parts_.begin(), parts_.end(), [&](const Region& p) { return p.contains(zeta); });
  }
  return false;
}

std::pair<double, double> Region::im_bounds(double x) const {
  if (!(x >= left())) return {0.0, 0.0};
  switch (kind_) {
    case Kind::quad: {
      double h = quad_upper_height(x, C_);
      return {-h, h};
    }
    case Kind::band:
      if (x <= hl_.domain_start() || x <= hu_.domain_start()) return {0.0, 0.0};
      return {hl_(x), hu_(x)};
    case Kind::union_: break;
  }
  throw Error(ErrorCode::InvalidArgument, "im_bounds is not defined for unions");
}

std::string Region::to_json() const {
  json j;
  switch (kind_) {
    case Kind::quad: j["quad"] = {{"C", C_}, {"R", R_}}; break;
    case Kind::band:
      j["band"] = {{"t", t_}, {"R", R_}, {"hl", json::parse(hl_.to_json())}, {"hu", json::parse(hu_.to_json())}};
      break;
    case Kind::union_: {
      json a = json::array();
      for (auto& p : parts_) a.push_back(json::parse(p.to_json()));
      j["union"] = a;
      j["R"] = R_;
      break;
    }
  }
  return j.dump();
}

BoundaryMap parse_boundary(std::string_view text) { return boundary_from(parse_text(text)); }
Region parse_region(std::string_view text) { return region_from(parse_text(text)); }
bool in_region(cplx zeta, const Region& region) { return region.contains(zeta); }

std::vector<double> sample_grid(double t, int samples) {
  double hi = std::max(1e6, 10.0 * t);
  std::vector<double> g(std::size_t(std::max(samples, 2)));
  double l0 = std::log(t), l1 = std::log(hi);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::exp(l0 + (l1 - l0) * double(i) / double(g.size() - 1));
  g.front() = t;
  return g;
}

namespace {

enum class Step { minus, plus };

// Samples h(x + rho(x)) - h(x) against rhs(x) in the direction dir (+1: >=, -1: <=).
void sample_difference(const BoundaryMap& h, const AsymptoticProfile& p, Step step, double im_shift, int dir,
                       int samples, MapCheckReport& rep) {
  rep.worst_margin = kInf;
  for (double x : sample_grid(p.R, samples)) {
    double rho = step == Step::minus ? rho_minus(x, p) : rho_plus(x, p);
    double lhs = h(x + rho) - h(x);
    double rhs = im_shift + double(dir) * M_eps_k(x, p);
    double margin = double(dir) * (lhs - rhs);
    rep.worst_margin = std::min(rep.worst_margin, margin);
    ++rep.samples;
    if (margin < 0) {
      rep.ok = false;
      rep.violations.push_back({x, lhs, rhs});
    }
  }
}

bool case_precondition(const AsymptoticProfile& p, MapCheckReport& rep) {
  double ib = p.beta.imag(), m = M_eps_k(p.R, p);
  if ((ib > 0 && !(ib - m > 0)) || (ib < 0 && !(-ib - m > 0))) {
    rep.ok = false;
    rep.note = "case precondition |Im(beta)| - M(t) > 0 fails at t";
    return false;
  }
  return true;
}

}  // namespace

MapCheckReport check_upper_map(const BoundaryMap& h, const AsymptoticProfile& p, int samples) {
  MapCheckReport rep;
  if (!case_precondition(p, rep)) return rep;
  double ib = p.beta.imag();
  int mono = h.monotonicity();
  if (ib < 0 && mono >= 0) {
    rep.condition = "increasing";
    return rep;
  }
  if (ib >= 0 && mono < 0) {
    rep.ok = false;
    rep.condition = "increasing";
    rep.note = "map is not increasing";
    return rep;
  }
  Step step = ib < 0 ? Step::plus : Step::minus;
  rep.condition = ib < 0 ? "h(x+rho+(x)) - h(x) >= Im(beta) + M(x)" : "h(x+rho-(x)) - h(x) >= Im(beta) + M(x)";
  sample_difference(h, p, step, ib, +1, samples, rep);
  return rep;
}

MapCheckReport check_lower_map(const BoundaryMap& h, const AsymptoticProfile& p, int samples) {
  MapCheckReport rep;
  if (!case_precondition(p, rep)) return rep;
  double ib = p.beta.imag();
  int mono = h.monotonicity();
  if (ib > 0 && mono <= 0) {
    rep.condition = "decreasing";
    return rep;
  }
  if (ib <= 0 && mono > 0) {
    rep.ok = false;
    rep.condition = "decreasing";
    rep.note = "map is not decreasing";
    return rep;
  }
  Step step = ib > 0 ? Step::plus : Step::minus;
  rep.condition = ib > 0 ? "h(x+rho+(x)) - h(x) <= Im(beta) - M(x)" : "h(x+rho-(x)) - h(x) <= Im(beta) - M(x)";
  if (ib < 0)
    rep.note = "Im(beta) < 0: the displayed inequality is required of every decreasing lower map";
  sample_difference(h, p, step, ib, -1, samples, rep);
  return rep;
}

bool check_taylor_sufficient(const BoundaryMap& h, int n, double rho, const AsymptoticProfile& p, MapRole role,
                             int samples) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 1 derivatives");
  double ib = p.beta.imag(), rm = rho_minus(p.R, p), rp = rho_plus(p.R, p);
  bool small_rho = role == MapRole::upper ? ib >= 0 : ib <= 0;
  if (small_rho && !(rho > 0 && rho < rm))
    throw Error(ErrorCode::InvalidRho, "need 0 < rho < rho_minus(t) = " + std::to_string(rm));
  if (!small_rho && !(rho > rp)) throw Error(ErrorCode::InvalidRho, "need rho > rho_plus(t) = " + std::to_string(rp));

  int mono = h.monotonicity();
  // Cases where monotonicity alone suffices.
  if (role == MapRole::upper && ib < 0 && mono > 0) return true;
  if (role == MapRole::lower && ib > 0 && mono < 0) return true;
  if (role == MapRole::upper && ib >= 0 && mono <= 0) return false;
  if (role == MapRole::lower && ib <= 0 && mono >= 0) return false;

  int dir = role == MapRole::upper ? 1 : -1;
  std::vector<double> dn;
  for (double x : sample_grid(p.R, samples)) {
    Jet j = h.jet(x, n);
    double sum = 0, rp_i = 1;
    for (int i = 1; i <= n; ++i) {
      rp_i *= rho;
      sum += j[i] * rp_i;  // j[i] = h^{(i)}(x) / i!
    }
    double rhs = ib + double(dir) * M_eps_k(x, p);
    if (double(dir) * (sum - rhs) < 0) return false;
    dn.push_back(j.derivative(n));
  }
  return monotone(dn, dir);
}

double germ_containment_search(double C, double R, int samples, unsigned long long seed) {
  Region target = Region::quad(C, R);
  double cp = std::max(C, R);
  for (int d = 0; d < 40; ++d, cp *= 2) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = true;
    for (int i = 0; i < samples && ok; ++i) {
      cplx w;
      if (i % 2 == 0) {
        double a = std::exp(std::log(1e-6) + u(rng) * std::log(1e10));
        double b = (u(rng) < 0.5 ? -1.0 : 1.0) * std::exp(std::log(1e-3) + u(rng) * std::log(1e8));
        w = {a, b};
      } else {
        double r = (u(rng) < 0.5 ? -1.0 : 1.0) * std::exp(std::log(1e-3) + u(rng) * std::log(1e8));
        w = {1e-9, r};
      }
      ok = target.contains(kappa(w, cp));
    }
    if (ok) return cp;
  }
  throw Error(ErrorCode::NotConverged, "no contained standard quadratic domain found");
}

}  // namespace dulac
