#include "turanspan/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "turanspan/error.hpp"

namespace turanspan::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::vector<double> reals(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(real_from_json(v));
  return out;
}

json reals_to_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(real_to_json(x));
  return out;
}

std::string certification_name(Certification c) {
  return c == Certification::exact ? "exact" : "lower_bound_with_tolerance";
}

Certification parse_certification(const std::string& s) {
  if (s == "exact") return Certification::exact;
  if (s == "lower_bound_with_tolerance") return Certification::lower_bound_with_tolerance;
  throw InputError("unknown certification '" + s + "'");
}

Monomial parse_monomial(const std::string& key, std::size_t n) {
  Monomial m;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      m.push_back(static_cast<unsigned>(v));
    } catch (const std::logic_error&) {
      throw InputError("bad monomial key '" + key + "'");
    }
  }
  if (m.size() != n) throw InputError("monomial key '" + key + "' has wrong arity");
  return m;
}

}  // namespace

json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InputError("expected a number, got " + j.dump());
}

ExpPolynomial1D poly_from_json(const json& j) {
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw InputError("'terms' must be an array");
  std::vector<ExpTerm> out;
  for (const auto& t : terms) {
    auto get = [&](const char* k) { return t.contains(k) ? real_from_json(t.at(k)) : 0.0; };
    if (!t.is_object()) throw InputError("each term must be an object");
    out.push_back({Complex(get("c_re"), get("c_im")), Complex(get("l_re"), get("l_im"))});
  }
  return ExpPolynomial1D(std::move(out));
}

json to_json(const ExpPolynomial1D& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    terms.push_back({{"c_re", t.coeff.real()},
                     {"c_im", t.coeff.imag()},
                     {"l_re", t.exponent.real()},
                     {"l_im", t.exponent.imag()}});
  }
  return {{"terms", terms}};
}

RealSet1D set_from_json(const json& j) {
  if (!j.is_object()) throw InputError("set must be a JSON object");
  std::vector<double> pts;
  std::vector<Interval> ivs;
  if (j.contains("points")) pts = reals(j.at("points"), "points");
  if (j.contains("intervals")) {
    const json& arr = j.at("intervals");
    if (!arr.is_array()) throw InputError("intervals must be an array");
    for (const auto& iv : arr) {
      if (!iv.is_array() || iv.size() != 2) throw InputError("interval must be [a, b]");
      ivs.push_back({real_from_json(iv[0]), real_from_json(iv[1])});
    }
  }
  return RealSet1D(std::move(pts), std::move(ivs));
}

json to_json(const RealSet1D& s) {
  json ivs = json::array();
  for (const auto& iv : s.intervals()) ivs.push_back({iv.lo, iv.hi});
  return {{"points", reals_to_json(s.points())}, {"intervals", ivs}};
}

Quasipolynomial quasi_from_json(const json& j) {
  const json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long>() < 1) throw InputError("'n' must be a positive integer");
  const auto n = nj.get<std::size_t>();
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw InputError("'terms' must be an array");
  std::vector<QuasiTerm> out;
  for (const auto& t : terms) {
    std::map<Monomial, std::complex<double>> coeffs;
    const json& poly = field(t, "poly");
    if (!poly.is_object()) throw InputError("'poly' must be an object");
    for (const auto& [key, value] : poly.items()) {
      std::complex<double> c;
      if (value.is_array()) {
        if (value.size() != 2) throw InputError("complex coefficient must be [re, im]");
        c = {real_from_json(value[0]), real_from_json(value[1])};
      } else {
        c = real_from_json(value);
      }
      coeffs[parse_monomial(key, n)] += c;
    }
    out.push_back({MultiPoly(n, std::move(coeffs)), reals(field(t, "a"), "a"),
                   reals(field(t, "b"), "b")});
  }
  return Quasipolynomial(n, std::move(out));
}

json to_json(const Quasipolynomial& q) {
  json terms = json::array();
  for (const auto& t : q.terms()) {
    json poly = json::object();
    for (const auto& [mono, c] : t.poly.coefficients()) {
      std::string key;
      for (std::size_t l = 0; l < mono.size(); ++l) {
        if (l) key += ',';
        key += std::to_string(mono[l]);
      }
      poly[key] = json::array({c.real(), c.imag()});
    }
    terms.push_back({{"poly", poly}, {"a", t.a}, {"b", t.b}});
  }
  return {{"n", q.dimension()}, {"terms", terms}};
}

NDPointSet ndset_from_json(const json& j) {
  const json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long>() < 1) throw InputError("'n' must be a positive integer");
  std::vector<std::vector<double>> pts;
  const json& arr = field(j, "points");
  if (!arr.is_array()) throw InputError("'points' must be an array");
  for (const auto& p : arr) pts.push_back(reals(p, "point"));
  return NDPointSet(nj.get<std::size_t>(), std::move(pts));
}

json to_json(const NDPointSet& s) {
  return {{"n", s.dimension()}, {"points", s.points()}};
}

json to_json(const SpanResult& r) {
  json out = {{"value", real_to_json(r.value)},
              {"upper_bound", real_to_json(r.upper_bound)},
              {"certified", certification_name(r.certified)}};
  out["attained_epsilon"] = r.attained_epsilon ? json(*r.attained_epsilon) : json(nullptr);
  return out;
}

SpanResult span_from_json(const json& j) {
  SpanResult r;
  r.value = real_from_json(field(j, "value"));
  r.upper_bound = j.contains("upper_bound") ? real_from_json(j.at("upper_bound")) : r.value;
  r.certified = parse_certification(field(j, "certified").get<std::string>());
  if (j.contains("attained_epsilon") && !j.at("attained_epsilon").is_null()) {
    r.attained_epsilon = real_from_json(j.at("attained_epsilon"));
  }
  return r;
}

json to_json(const Bracket& b) {
  return {{"lo", real_to_json(b.lo)}, {"hi", real_to_json(b.hi)}, {"certified", b.certified}};
}

Bracket bracket_from_json(const json& j) {
  return {real_from_json(field(j, "lo")), real_from_json(field(j, "hi")),
          field(j, "certified").get<bool>()};
}

json to_json(const VerifyReport& r) {
  json out = {{"sup_B", to_json(r.sup_b)},
              {"sup_Omega", to_json(r.sup_omega)},
              {"variant", to_string(r.variant)},
              {"M_D", real_to_json(r.md)},
              {"M_D_exact", r.md_exact},
              {"span", to_json(r.span)},
              {"exp_factor", real_to_json(r.exp_factor)},
              {"status", to_string(r.status)},
              {"warnings", r.warnings}};
  out["c_required"] = r.c_required ? real_to_json(*r.c_required) : json(nullptr);
  out["c_required_bracket"] =
      r.c_required_bracket ? to_json(*r.c_required_bracket) : json(nullptr);
  return out;
}

VerifyReport report_from_json(const json& j) {
  VerifyReport r;
  r.sup_b = bracket_from_json(field(j, "sup_B"));
  r.sup_omega = bracket_from_json(field(j, "sup_Omega"));
  r.variant = parse_variant(field(j, "variant").get<std::string>());
  r.md = real_from_json(field(j, "M_D"));
  r.md_exact = field(j, "M_D_exact").get<std::string>();
  r.span = span_from_json(field(j, "span"));
  r.exp_factor = real_from_json(field(j, "exp_factor"));
  r.status = parse_status(field(j, "status").get<std::string>());
  if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("c_required") && !j.at("c_required").is_null()) {
    r.c_required = real_from_json(j.at("c_required"));
  }
  if (j.contains("c_required_bracket") && !j.at("c_required_bracket").is_null()) {
    r.c_required_bracket = bracket_from_json(j.at("c_required_bracket"));
  }
  return r;
}

std::string to_string(OmegaKind k) {
  switch (k) {
    case OmegaKind::points:
      return "points";
    case OmegaKind::intervals:
      return "intervals";
    case OmegaKind::whole:
      return "whole";
  }
  return "points";
}

OmegaKind parse_omega_kind(const std::string& s) {
  if (s == "points") return OmegaKind::points;
  if (s == "intervals") return OmegaKind::intervals;
  if (s == "whole") return OmegaKind::whole;
  throw InputError("unknown omega generator '" + s + "'");
}

json to_json(const EnsembleConfig& c) {
  return {{"seed", c.seed},
          {"count", c.count},
          {"m_max", c.m_max},
          {"re_range", {c.re_lo, c.re_hi}},
          {"im_range", {c.im_lo, c.im_hi}},
          {"B", {c.B.lo, c.B.hi}},
          {"omega", to_string(c.omega)},
          {"extra_points", c.extra_points},
          {"variant", to_string(c.variant)},
          {"tolerance", c.tolerance}};
}

EnsembleConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("ensemble config must be an object");
  EnsembleConfig c;
  try {
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("count")) c.count = j.at("count").get<std::size_t>();
    if (j.contains("m_max")) c.m_max = j.at("m_max").get<std::size_t>();
    if (j.contains("re_range")) {
      c.re_lo = real_from_json(j.at("re_range").at(0));
      c.re_hi = real_from_json(j.at("re_range").at(1));
    }
    if (j.contains("im_range")) {
      c.im_lo = real_from_json(j.at("im_range").at(0));
      c.im_hi = real_from_json(j.at("im_range").at(1));
    }
    if (j.contains("B")) {
      c.B = {real_from_json(j.at("B").at(0)), real_from_json(j.at("B").at(1))};
    }
    if (j.contains("omega")) c.omega = parse_omega_kind(j.at("omega").get<std::string>());
    if (j.contains("extra_points")) c.extra_points = j.at("extra_points").get<std::size_t>();
    if (j.contains("variant")) c.variant = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("tolerance")) c.tolerance = real_from_json(j.at("tolerance"));
  } catch (const json::exception& e) {
    throw InputError(std::string("bad ensemble config: ") + e.what());
  }
  return c;
}

json to_json(const EnsembleSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? real_to_json(*v) : json(nullptr); };
  return {{"count", s.count},
          {"ok", s.ok},
          {"vacuous_zero_sup", s.vacuous_zero_sup},
          {"vacuous_zero_span", s.vacuous_zero_span},
          {"khovanskii_refused", s.khovanskii_refused},
          {"c_max", opt(s.c_max)},
          {"c_median", opt(s.c_median)},
          {"c_q90", opt(s.c_q90)},
          {"c_q99", opt(s.c_q99)}};
}

json to_json(const FrequencyBound& b) {
  return {{"exact", b.exact.str()},
          {"value", real_to_json(b.value)},
          {"saturated", b.saturated},
          {"warnings", b.warnings}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace turanspan::io
