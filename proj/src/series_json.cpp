#include "dulac/series_json.hpp"

#include <cmath>
#include <cstdio>

#include "dulac/error.hpp"
#include "json_detail.hpp"

namespace dulac {

namespace detail {

ojson number_json(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  if (v == 0.0) return 0;
  if (std::trunc(v) == v && std::abs(v) < 9007199254740992.0) return std::int64_t(v);
  return v;
}

ojson complex_json(cplx z) { return ojson::array({number_json(z.real()), number_json(z.imag())}); }

ojson series_json(const ExpPolySeries& s) {
  ojson j;
  j["trunc"] = s.trunc().str();
  ojson gens = ojson::array();
  for (auto& g : s.gens()) gens.push_back(g.str());
  j["gens"] = gens;
  ojson terms = ojson::array();
  for (auto& [mu, p] : s.terms()) {
    ojson poly = ojson::array();
    for (auto& c : p.coeffs()) poly.push_back(complex_json(c));
    terms.push_back(ojson{{"exp", mu.str()}, {"poly", poly}});
  }
  j["terms"] = terms;
  return j;
}

namespace {

Rational rational_field(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a \"p/q\" string");
  return Rational::parse(j.get<std::string>());
}

double real_field(const nlohmann::json& j) {
  if (!j.is_number()) throw Error(ErrorCode::ParseError, "coefficient parts must be numbers");
  return j.get<double>();
}

}  // namespace

ExpPolySeries series_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "series must be a JSON object");
  if (!j.contains("trunc") || !j.contains("gens") || !j.contains("terms"))
    throw Error(ErrorCode::ParseError, "series needs trunc, gens and terms");
  Rational trunc = rational_field(j["trunc"], "trunc");
  if (!j["gens"].is_array() || !j["terms"].is_array())
    throw Error(ErrorCode::ParseError, "gens and terms must be arrays");
  std::vector<Rational> gens;
  for (auto& g : j["gens"]) gens.push_back(rational_field(g, "generator"));
  ExpPolySeries s(trunc, gens);
  for (auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("poly") || !t["poly"].is_array())
      throw Error(ErrorCode::ParseError, "term needs exp and poly");
    Rational mu = rational_field(t["exp"], "exp");
    std::vector<cplx> c;
    for (auto& pair : t["poly"]) {
      if (!pair.is_array() || pair.size() != 2) throw Error(ErrorCode::ParseError, "coefficient must be [re, im]");
      c.emplace_back(real_field(pair[0]), real_field(pair[1]));
    }
    CPoly p(std::move(c));
    if (s.terms().count(mu)) throw Error(ErrorCode::ParseError, "duplicate exponent " + mu.str());
    s.set(mu, p);
  }
  return s;
}

}  // namespace detail

ExpPolySeries parse_series(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what(), std::ptrdiff_t(e.byte) - 1);
  }
  return detail::series_from_json(j);
}

std::string serialize_series(const ExpPolySeries& s) { return detail::series_json(s).dump(); }

std::string serialize_series_rounded(const ExpPolySeries& s) {
  auto fmt = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", std::round(v * 1e9) / 1e9);
    std::string r(buf);
    if (r.find_first_not_of("-0.") == std::string::npos) r = "0.000000000";
    return r;
  };
  std::string out = "{\"trunc\":\"" + s.trunc().str() + "\",\"gens\":[";
  for (std::size_t i = 0; i < s.gens().size(); ++i) out += (i ? ",\"" : "\"") + s.gens()[i].str() + "\"";
  out += "],\"terms\":[";
  bool first = true;
  for (auto& [mu, p] : s.terms()) {
    std::string poly;
    bool nonzero = false;
    std::vector<std::string> parts;
    for (auto& c : p.coeffs()) parts.push_back("[" + fmt(c.real()) + "," + fmt(c.imag()) + "]");
    // drop coefficients that round to zero at the top
    while (!parts.empty() && parts.back() == "[0.000000000,0.000000000]") parts.pop_back();
    for (std::size_t i = 0; i < parts.size(); ++i) poly += (i ? "," : "") + parts[i], nonzero = true;
    if (!nonzero) continue;
    out += (first ? "" : ",") + std::string("{\"exp\":\"") + mu.str() + "\",\"poly\":[" + poly + "]}";
    first = false;
  }
  out += "],\"rounding\":\"1e-9\"}";
  return out;
}

}  // namespace dulac
