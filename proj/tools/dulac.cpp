// dulac: batch front-end over the C API.
//
// Exit codes: 0 ok, 1 usage or other failure, 2 NotHyperbolic, 3 parse error,
// 4 NotConverged, 5 verification failure.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dulac/dulac.h"

namespace {

using ojson = nlohmann::ordered_json;

enum Exit { kOk = 0, kOther = 1, kNotHyperbolic = 2, kParse = 3, kNotConverged = 4, kVerify = 5 };

struct Failure {
  int exit;
  std::string message;
};

int exit_for(int status) {
  switch (status) {
    case DULAC_NOT_HYPERBOLIC: return kNotHyperbolic;
    case DULAC_PARSE_ERROR: return kParse;
    case DULAC_NOT_CONVERGED: return kNotConverged;
    default: return kOther;
  }
}

void check(int status, const std::string& what) {
  if (status == DULAC_OK) return;
  std::string msg = what + ": " + dulac_last_error();
  if (long off = dulac_last_error_offset(); off >= 0) msg += " (at byte " + std::to_string(off) + ")";
  throw Failure{exit_for(status), msg};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kOther, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kOther, "cannot write " + path};
  out << text;
}

std::string take_string(char* s) {
  std::string out(s);
  dulac_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};
using Series = Handle<dulac_series, dulac_series_free>;
using Linearization = Handle<dulac_linearization, dulac_linearization_free>;
using Germ = Handle<dulac_germ, dulac_germ_free>;
using Region = Handle<dulac_region, dulac_region_free>;

double number(const std::string& flag, const std::string& text) {
  double v;
  if (dulac_parse_number(text.c_str(), &v) != DULAC_OK) throw Failure{kParse, flag + ": " + dulac_last_error()};
  return v;
}

struct Config {
  std::string input, expr, beta, eps = "1", k = "0", cut = "10", order, tol = "1e-10";
  std::string grid = "8:20:20,-2:2:5", region, h_expr = "exp(-zeta)", alpha = "1";
  std::string output, max_iter = "1000000";
  int samples = 10000, levels = 1;
  unsigned long long seed = 1;
  bool cross_check = false, allow_partial = false, search_cut = false;
};

// FNV-1a over the canonical key=value list; the output path is excluded so
// identical runs written to different places share a hash.
std::string config_hash(const std::string& sub, const Config& c) {
  std::map<std::string, std::string> kv{
      {"subcommand", sub},     {"input", c.input.empty() ? "" : read_file(c.input)},
      {"expr", c.expr},        {"beta", c.beta},
      {"eps", c.eps},          {"k", c.k},
      {"cut", c.cut},          {"order", c.order},
      {"tol", c.tol},          {"grid", c.grid},
      {"region", c.region},    {"h_expr", c.h_expr},
      {"alpha", c.alpha},      {"max_iter", c.max_iter},
      {"samples", std::to_string(c.samples)},
      {"levels", std::to_string(c.levels)},
      {"seed", std::to_string(c.seed)},
      {"cross_check", c.cross_check ? "1" : "0"},
      {"allow_partial", c.allow_partial ? "1" : "0"},
      {"search_cut", c.search_cut ? "1" : "0"}};
  std::uint64_t h = 14695981039346656037ull;
  for (auto& [key, value] : kv)
    for (char ch : key + "=" + value + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ull;
    }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

ojson header(const std::string& sub, const Config& c) {
  ojson j;
  j["tool"] = "dulac";
  j["version"] = dulac_version();
  j["subcommand"] = sub;
  j["config_hash"] = config_hash(sub, c);
  j["seed"] = c.seed;
  return j;
}

std::string csv_header(const std::string& sub, const Config& c) {
  return "# dulac " + std::string(dulac_version()) + " " + sub + " config_hash=" + config_hash(sub, c) +
         " seed=" + std::to_string(c.seed) + "\n";
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty())
    std::cout << text;
  else
    write_file(c.output, text);
}

void load_series(const Config& c, Series& s) {
  if (c.input.empty()) throw Failure{kOther, "--input is required"};
  check(dulac_series_parse(read_file(c.input).c_str(), s.out()), c.input);
  if (!c.order.empty()) {
    Series t;
    check(dulac_series_truncate(s.get(), c.order.c_str(), t.out()), "--order");
    std::swap(s.p, t.p);
  }
}

dulac_profile profile(const Config& c, std::optional<std::pair<double, double>> default_beta) {
  dulac_profile p{};
  if (!c.beta.empty()) {
    if (dulac_parse_complex(c.beta.c_str(), &p.beta_re, &p.beta_im) != DULAC_OK)
      throw Failure{kParse, "--beta: " + std::string(dulac_last_error())};
  } else if (default_beta) {
    p.beta_re = default_beta->first;
    p.beta_im = default_beta->second;
  } else {
    throw Failure{kOther, "--beta is required with --expr"};
  }
  p.eps = number("--eps", c.eps);
  double k = number("--k", c.k);
  if (k != double(int(k))) throw Failure{kOther, "--k must be an integer"};
  p.k = int(k);
  p.R = number("--cut", c.cut);
  return p;
}

// Germ from --expr, or else from the --input series with beta read off its head.
void load_germ(const Config& c, Germ& g) {
  Series s;
  if (!c.input.empty()) load_series(c, s);
  if (!c.expr.empty()) {
    auto p = profile(c, std::nullopt);
    check(dulac_germ_parse(c.expr.c_str(), &p, g.out()), "--expr");
    return;
  }
  if (!s.get()) throw Failure{kOther, "--expr or --input is required"};
  Linearization lin;
  check(dulac_linearize(s.get(), DULAC_LEVEL_SOLVER, lin.out()), "input series");
  double br, bi;
  check(dulac_linearization_info(lin.get(), &br, &bi, nullptr, nullptr, nullptr), "input series");
  auto p = profile(c, std::make_pair(br, bi));
  check(dulac_germ_from_series(s.get(), &p, g.out()), "input series");
}

void load_region(const Config& c, Region& r) {
  std::string text = c.region;
  if (!text.empty() && text.front() != '{') text = read_file(text);
  if (text.empty()) {
    check(dulac_region_quad(2.0, 0.0, r.out()), "region");
    return;
  }
  check(dulac_region_parse(text.c_str(), r.out()), "--region");
}

long max_iter(const Config& c) {
  double v = number("--max-iter", c.max_iter);
  if (!(v >= 1) || v != double(long(v))) throw Failure{kOther, "--max-iter must be a positive integer"};
  return long(v);
}

int cmd_linearize(const Config& c) {
  Series f;
  load_series(c, f);
  Linearization level;
  check(dulac_linearize(f.get(), DULAC_LEVEL_SOLVER, level.out()), "linearize");
  ojson report = header("linearize", c);
  report["result"] = ojson::parse(take_string([&] {
    char* s = nullptr;
    check(dulac_linearization_json(level.get(), &s), "linearize");
    return s;
  }()));
  int zero = 0;
  check(dulac_linearization_info(level.get(), nullptr, nullptr, nullptr, nullptr, &zero), "linearize");
  bool ok = zero == 1;
  report["residual_zero"] = zero == 1;
  if (c.cross_check) {
    if (c.output.empty()) throw Failure{kOther, "--cross-check needs --output"};
    Linearization picard;
    check(dulac_linearize(f.get(), DULAC_PICARD, picard.out()), "picard");
    int pzero = 0;
    check(dulac_linearization_info(picard.get(), nullptr, nullptr, nullptr, nullptr, &pzero), "picard");
    auto rounded = [](const Linearization& l) {
      Series phi;
      check(dulac_linearization_phi(l.get(), phi.out()), "phi");
      char* s = nullptr;
      check(dulac_series_to_json(phi.get(), 1, &s), "phi");
      return take_string(s) + "\n";
    };
    std::string a = rounded(level), b = rounded(picard);
    write_file(c.output + ".level.json", a);
    write_file(c.output + ".picard.json", b);
    ojson cc;
    cc["level"] = c.output + ".level.json";
    cc["picard"] = c.output + ".picard.json";
    cc["rounding"] = "1e-9";
    cc["picard_residual_zero"] = pzero == 1;
    cc["identical"] = a == b;
    report["cross_check"] = cc;
    ok = ok && pzero == 1 && a == b;
  }
  emit(c, report.dump() + "\n");
  return ok ? kOk : kVerify;
}

int cmd_koenigs(const Config& c) {
  Germ g;
  load_germ(c, g);
  Region r;
  bool with_region = !c.region.empty();
  if (with_region) load_region(c, r);
  dulac_grid_row* rows = nullptr;
  size_t n = 0;
  check(dulac_koenigs_grid(g.get(), c.grid.c_str(), number("--tol", c.tol), with_region ? r.get() : nullptr,
                           max_iter(c), &rows, &n),
        "koenigs");
  std::string out = csv_header("koenigs", c);
  out += "re_zeta,im_zeta,re_phi,im_phi,n_used,tail_bound,residual,in_region,status\n";
  double worst = 0;
  int not_converged = 0, failed = 0;
  for (size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    bool good = row.status == DULAC_OK;
    if (row.status == DULAC_NOT_CONVERGED) ++not_converged;
    else if (!good) ++failed;
    if (good) worst = std::max(worst, row.residual);
    out += fmt(row.re) + "," + fmt(row.im) + "," + (good ? fmt(row.phi_re) : "nan") + "," +
           (good ? fmt(row.phi_im) : "nan") + "," + std::to_string(row.n_used) + "," + fmt(row.tail_bound) + "," +
           (good ? fmt(row.residual) : "nan") + "," + (row.in_region ? "1" : "0") + "," +
           dulac_status_name(row.status) + "\n";
  }
  dulac_grid_rows_free(rows);
  out += "# summary points=" + std::to_string(n) + " max_residual=" + fmt(worst) +
         " not_converged=" + std::to_string(not_converged) + " failed=" + std::to_string(failed) + "\n";
  emit(c, out);
  if (c.allow_partial) return kOk;
  if (not_converged) {
    std::cerr << "dulac: NotConverged at " << not_converged << " grid point(s)\n";
    return kNotConverged;
  }
  if (failed) {
    std::cerr << "dulac: " << failed << " grid point(s) failed\n";
    return kVerify;
  }
  return kOk;
}

int cmd_verify_domain(const Config& c) {
  Germ g;
  load_germ(c, g);
  Region r;
  load_region(c, r);
  dulac_invariance inv{};
  check(dulac_check_invariance(g.get(), r.get(), c.samples, c.seed, c.search_cut ? 1 : 0, &inv), "verify-domain");
  std::string out = csv_header("verify-domain", c) + take_string(inv.csv);
  out += "# summary samples=" + std::to_string(c.samples) + " violations=" + std::to_string(inv.violations) +
         " worst_margin=" + fmt(inv.worst_margin) + " cut=" + fmt(inv.cut) + "\n";
  emit(c, out);
  return inv.violations == 0 ? kOk : kVerify;
}

int cmd_compare(const Config& c) {
  Series f;
  load_series(c, f);
  Linearization lin;
  check(dulac_linearize(f.get(), DULAC_LEVEL_SOLVER, lin.out()), "linearize");
  Series phi;
  check(dulac_linearization_phi(lin.get(), phi.out()), "phi");
  int levels = 0;
  double br, bi;
  check(dulac_linearization_info(lin.get(), &br, &bi, &levels, nullptr, nullptr), "linearize");
  Germ g;
  if (!c.expr.empty()) {
    auto p = profile(c, std::nullopt);
    check(dulac_germ_parse(c.expr.c_str(), &p, g.out()), "--expr");
  } else {
    auto p = profile(c, std::make_pair(br, bi));
    check(dulac_germ_from_series(f.get(), &p, g.out()), "input series");
  }
  if (c.levels < 0 || c.levels > levels)
    throw Failure{kOther, "--levels must lie in [0, " + std::to_string(levels) + "]"};
  ojson report = header("compare", c);
  report["grid"] = c.grid;
  report["tol"] = c.tol;
  ojson rows = ojson::array();
  bool ok = true;
  for (int n = 0; n <= c.levels; ++n) {
    dulac_decay_report d{};
    ojson row;
    row["n"] = n;
    int st = dulac_decay(g.get(), phi.get(), n, c.grid.c_str(), number("--tol", c.tol), max_iter(c), &d);
    if (st == DULAC_INSUFFICIENT_DATA) {
      row["error"] = dulac_last_error();
      ok = false;
      rows.push_back(row);
      continue;
    }
    check(st, "compare");
    row["beta_n"] = d.beta_n;
    row["beta_next"] = d.beta_next;
    row["slope"] = d.exact ? ojson(nullptr) : ojson(d.slope);
    row["intercept"] = d.exact ? ojson(nullptr) : ojson(d.intercept);
    row["usable"] = d.usable;
    row["exact"] = bool(d.exact);
    row["pass"] = bool(d.pass);
    if (d.beta_next > 0 && !d.exact) row["pass_next"] = d.slope <= -d.beta_next + 0.1;
    ok = ok && d.pass;
    rows.push_back(row);
  }
  report["levels"] = rows;
  emit(c, report.dump() + "\n");
  return ok ? kOk : kVerify;
}

int cmd_solve_homological(const Config& c) {
  Germ g;
  load_germ(c, g);
  dulac_homological* rows = nullptr;
  size_t n = 0;
  check(dulac_solve_homological(g.get(), c.h_expr.c_str(), number("--alpha", c.alpha), c.grid.c_str(),
                                number("--tol", c.tol), max_iter(c), &rows, &n),
        "solve-homological");
  std::string out = csv_header("solve-homological", c);
  out += "re_zeta,im_zeta,re_psi,im_psi,n_used,tail_bound,residual,residual_ok\n";
  bool ok = true;
  double worst = 0;
  for (size_t i = 0; i < n; ++i) {
    const auto& r = rows[i];
    ok = ok && r.residual_ok;
    worst = std::max(worst, r.residual);
    out += fmt(r.re) + "," + fmt(r.im) + "," + fmt(r.psi_re) + "," + fmt(r.psi_im) + "," + std::to_string(r.n_used) +
           "," + fmt(r.tail_bound) + "," + fmt(r.residual) + "," + (r.residual_ok ? "1" : "0") + "\n";
  }
  dulac_homological_free(rows);
  out += "# summary points=" + std::to_string(n) + " max_residual=" + fmt(worst) + "\n";
  emit(c, out);
  return ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearization of hyperbolic Dulac germs"};
  app.set_version_flag("--version", std::string(dulac_version()));
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* s) {
    s->add_option("--output", c.output, "Output file (default stdout)");
    s->add_option("--seed", c.seed, "Seed embedded in the report");
  };
  auto germ_opts = [&](CLI::App* s) {
    s->add_option("--expr", c.expr, "Germ expression in zeta");
    s->add_option("--input", c.input, "Series JSON file")->check(CLI::ExistingFile);
    s->add_option("--beta", c.beta, "beta, e.g. 1 or 2+3*pi*i");
    s->add_option("--eps", c.eps, "Profile eps");
    s->add_option("--k", c.k, "Profile k");
    s->add_option("--cut", c.cut, "Cut R");
    s->add_option("--order", c.order, "Truncate the input series at N");
    s->add_option("--tol", c.tol, "Tolerance");
    s->add_option("--max-iter", c.max_iter, "Iteration budget per point");
    common(s);
  };

  auto* lin = app.add_subcommand("linearize", "Formal linearization of a series");
  lin->add_option("--input", c.input, "Series JSON file")->required()->check(CLI::ExistingFile);
  lin->add_option("--order", c.order, "Truncate the input series at N");
  lin->add_flag("--cross-check", c.cross_check, "Also run the z-chart solver and compare");
  common(lin);

  auto* koe = app.add_subcommand("koenigs", "Koenigs limit over a grid");
  germ_opts(koe);
  koe->add_option("--grid", c.grid, "re0:re1:steps,im0:im1:steps");
  koe->add_option("--region", c.region, "Region JSON or file");
  koe->add_flag("--allow-partial", c.allow_partial, "Exit 0 despite failed points");

  auto* ver = app.add_subcommand("verify-domain", "Sampled invariance of a region");
  germ_opts(ver);
  ver->add_option("--region", c.region, "Region JSON or file (default quad C=2)");
  ver->add_option("--samples", c.samples, "Number of samples")->check(CLI::PositiveNumber);
  ver->add_flag("--search-cut", c.search_cut, "Double the cut until invariant");

  auto* cmp = app.add_subcommand("compare", "Decay of phi - phi_n along a grid");
  germ_opts(cmp);
  cmp->get_option("--input")->required();
  cmp->add_option("--grid", c.grid, "re0:re1:steps,im0:im1:steps");
  cmp->add_option("--levels", c.levels, "Largest n");

  auto* hom = app.add_subcommand("solve-homological", "psi(f) - psi = h over a grid");
  germ_opts(hom);
  hom->add_option("--grid", c.grid, "re0:re1:steps,im0:im1:steps");
  hom->add_option("--h-expr", c.h_expr, "h as an expression in zeta");
  hom->add_option("--alpha", c.alpha, "Decay rate: |h(w)| <= e^{-alpha Re w}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kOther;
  }

  try {
    if (*lin) return cmd_linearize(c);
    if (*koe) return cmd_koenigs(c);
    if (*ver) return cmd_verify_domain(c);
    if (*cmp) return cmd_compare(c);
    return cmd_solve_homological(c);
  } catch (const Failure& f) {
    std::cerr << "dulac: " << f.message << "\n";
    return f.exit;
  } catch (const std::exception& e) {
    std::cerr << "dulac: " << e.what() << "\n";
    return kOther;
  }
}
