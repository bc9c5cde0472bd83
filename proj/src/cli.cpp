#include "turanspan/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "turanspan/bounds.hpp"
#include "turanspan/error.hpp"
#include "turanspan/io.hpp"
#include "turanspan/multidim.hpp"
#include "turanspan/sets.hpp"
#include "turanspan/verify.hpp"

namespace turanspan::cli {
namespace {

using io::json;

struct Options {
  std::string set_path;
  std::string poly_path;
  std::string quasi_path;
  std::string config_path;
  std::string input_path;
  std::string summary_path;
  std::vector<double> b;
  std::string variant = "nazarov";
  std::optional<double> md;
  double tol = 1e-9;
  double resolution = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::optional<std::size_t> m_max;
  std::optional<std::string> omega;
  std::optional<double> radius;
  std::string out_path;
  std::string format = "json";
  std::vector<double> points;
  std::vector<double> exponents;
  std::vector<double> eps_grid;
  double rho = 1.0;
};

Interval interval_of(const std::vector<double>& b) {
  if (b.size() != 2) throw InputError("--B needs exactly two numbers");
  if (!(b[0] <= b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1])) {
    throw InputError("--B must satisfy a <= b");
  }
  return {b[0], b[1]};
}

void require(bool cond, const std::string& message) {
  if (!cond) throw InputError(message);
}

json bounds_json(const ExpPolynomial1D& p, const Interval& B, std::optional<double> radius) {
  const std::size_t m = p.degree();
  json out;
  out["m"] = m;
  out["len_B"] = B.length();
  out["lambda_im"] = p.max_frequency();
  out["lambda_abs"] = p.max_abs_exponent();
  out["max_abs_re"] = p.max_abs_real_exponent();
  out["khovanskii_C"] = khovanskii_C(m).str();

  const auto kh = frequency_bound(Diagram::of(p, B, Variant::khovanskii_complex));
  out["khovanskii"] = io::to_json(kh);
  out["khovanskii_MD"] = io::real_to_json(kh.value);

  const auto nz = frequency_bound(Diagram::of(p, B, Variant::nazarov_complex));
  out["nazarov"] = io::to_json(nz);
  out["nazarov_d1"] = 4.0 * static_cast<double>(m * m) + 14.0 * p.max_abs_exponent() * B.length();
  out["nazarov_MD"] = io::real_to_json(nz.value);

  if (p.is_real()) {
    const auto re = frequency_bound(Diagram::of(p, B, Variant::real_chebyshev));
    out["real"] = io::to_json(re);
    out["real_MD"] = io::real_to_json(re.value);
  } else {
    out["real"] = nullptr;
    out["real_MD"] = nullptr;
  }
  const double r = radius.value_or(B.length() / 2.0);
  out["disk_radius"] = r;
  out["disk_zero_bound"] = disk_zero_bound(m, p.max_abs_exponent(), r);
  const auto params = nazarov_product_params(p);
  out["product_degree_bound"] = params.degree_bound;
  out["product_exponent_bound"] = params.exponent_bound;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric spans, frequency bounds and Turan-Nazarov checks for exponential polynomials",
               "turan-span"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Output file (default stdout)");
    sub->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* span = app.add_subcommand("span", "Metric span of a 1-D set");
  span->add_option("--set", o.set_path, "Set JSON")->required();
  span->add_option("--md", o.md, "Frequency bound M_D");
  span->add_option("--poly", o.poly_path, "Polynomial JSON (derives M_D with --B/--variant)");
  span->add_option("--B", o.b, "Interval endpoints a b")->expected(2);
  span->add_option("--variant", o.variant)->check(CLI::IsMember({"khovanskii", "nazarov", "real"}));
  span->add_option("--tol", o.tol, "Tolerance")->check(CLI::PositiveNumber);
  add_out(span);

  auto* bounds = app.add_subcommand("bounds", "All frequency bounds of a polynomial on B");
  bounds->add_option("--poly", o.poly_path, "Polynomial JSON")->required();
  bounds->add_option("--B", o.b, "Interval endpoints a b")->expected(2)->required();
  bounds->add_option("--radius", o.radius, "Disk radius for the zero bound (default |B|/2)");
  add_out(bounds);

  auto* verify = app.add_subcommand("verify", "Check the span inequality on one instance");
  verify->add_option("--poly", o.poly_path, "Polynomial JSON")->required();
  verify->add_option("--B", o.b, "Interval endpoints a b")->expected(2)->required();
  verify->add_option("--set", o.set_path, "Set JSON")->required();
  verify->add_option("--variant", o.variant)->check(CLI::IsMember({"khovanskii", "nazarov", "real"}));
  verify->add_option("--tol", o.tol, "Tolerance")->check(CLI::PositiveNumber);
  add_out(verify);

  auto* sharp = app.add_subcommand("sharpness", "Real exponential polynomial vanishing at given points");
  sharp->add_option("--points", o.points, "m distinct points");
  sharp->add_option("--exponents", o.exponents, "m+1 distinct real exponents");
  sharp->add_option("--input", o.input_path, "JSON {\"points\":[...],\"exponents\":[...]}");
  add_out(sharp);

  auto* ens = app.add_subcommand("ensemble", "Seeded random study of the required constant");
  ens->add_option("--config", o.config_path, "Ensemble config JSON");
  ens->add_option("--seed", o.seed, "64-bit seed");
  ens->add_option("--count", o.count, "Number of instances");
  ens->add_option("--m-max", o.m_max, "Largest degree");
  ens->add_option("--B", o.b, "Interval endpoints a b")->expected(2);
  ens->add_option("--variant", o.variant)->check(CLI::IsMember({"khovanskii", "nazarov", "real"}));
  ens->add_option("--omega", o.omega)->check(CLI::IsMember({"points", "intervals", "whole"}));
  ens->add_option("--tol", o.tol, "Tolerance")->check(CLI::PositiveNumber);
  ens->add_option("--summary", o.summary_path, "Write aggregate statistics JSON here");
  add_out(ens);

  auto* md = app.add_subcommand("mdspan", "Certified lower bound for the n-dimensional span");
  md->add_option("--set", o.set_path, "N-D point set JSON")->required();
  md->add_option("--quasi", o.quasi_path, "Quasipolynomial JSON (derives the profile)");
  md->add_option("--md", o.md, "Constant profile M_D(eps) = value");
  md->add_option("--eps", o.eps_grid, "Scales in (0, 1]");
  md->add_option("--rho", o.rho, "Cube size in the critical-point constant")->check(CLI::PositiveNumber);
  add_out(md);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << '\n';
    return kInputError;
  }

  bool ens_flag = app.got_subcommand(ens);
  if (o.format == "csv" && !ens_flag) {
    err << json{{"error", "input"}, {"message", "csv output is only available for ensemble"}}.dump()
        << '\n';
    return kInputError;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    if (app.got_subcommand(span)) {
      const RealSet1D set = io::set_from_json(io::read_file(o.set_path));
      double value = 0.0;
      json extra;
      if (o.md) {
        require(!(*o.md < 0.0), "--md must be nonnegative");
        value = *o.md;
      } else {
        require(!o.poly_path.empty() && !o.b.empty(), "span needs --md or --poly with --B");
        const auto p = io::poly_from_json(io::read_file(o.poly_path));
        const auto fb = frequency_bound(Diagram::of(p, interval_of(o.b), parse_variant(o.variant)));
        value = fb.value;
        extra = io::to_json(fb);
      }
      json result = io::to_json(metric_span(set, value, o.tol));
      result["M_D"] = io::real_to_json(value);
      if (!extra.is_null()) result["frequency_bound"] = extra;
      buffer << result.dump(2) << '\n';
    } else if (app.got_subcommand(bounds)) {
      const auto p = io::poly_from_json(io::read_file(o.poly_path));
      buffer << bounds_json(p, interval_of(o.b), o.radius).dump(2) << '\n';
    } else if (app.got_subcommand(verify)) {
      const auto p = io::poly_from_json(io::read_file(o.poly_path));
      const RealSet1D set = io::set_from_json(io::read_file(o.set_path));
      const auto report = verify_inequality(p, interval_of(o.b), set, parse_variant(o.variant), o.tol);
      buffer << io::to_json(report).dump(2) << '\n';
      if (!report.sup_b.certified || !report.sup_omega.certified) code = kCertificationFailure;
    } else if (app.got_subcommand(sharp)) {
      if (!o.input_path.empty()) {
        const json in = io::read_file(o.input_path);
        require(in.contains("points") && in.contains("exponents"),
                "sharpness input needs 'points' and 'exponents'");
        o.points.clear();
        o.exponents.clear();
        for (const auto& v : in.at("points")) o.points.push_back(io::real_from_json(v));
        for (const auto& v : in.at("exponents")) o.exponents.push_back(io::real_from_json(v));
      }
      require(!o.exponents.empty(), "sharpness needs --exponents (or --input)");
      const Vanishing v = construct_vanishing(o.points, o.exponents);
      const auto m = static_cast<double>(o.points.size());
      const auto s = metric_span(RealSet1D::from_points(o.points), m);
      json result = {{"coeffs", v.coeffs},
                     {"exponents", o.exponents},
                     {"points", o.points},
                     {"residual", v.residual},
                     {"condition", v.condition},
                     {"span_at_degree", io::to_json(s)}};
      buffer << result.dump(2) << '\n';
    } else if (ens_flag) {
      EnsembleConfig cfg;
      if (!o.config_path.empty()) cfg = io::config_from_json(io::read_file(o.config_path));
      if (o.seed) cfg.seed = *o.seed;
      if (o.count) cfg.count = *o.count;
      if (o.m_max) cfg.m_max = *o.m_max;
      if (!o.b.empty()) cfg.B = interval_of(o.b);
      if (ens->count("--variant")) cfg.variant = parse_variant(o.variant);
      if (o.omega) cfg.omega = io::parse_omega_kind(*o.omega);
      if (ens->count("--tol")) cfg.tolerance = o.tol;
      if (!ens->count("--format")) o.format = "csv";
      const EnsembleResult result = ensemble(cfg);
      if (o.format == "csv") {
        write_csv(buffer, result);
      } else {
        json rows = json::array();
        for (const auto& row : result.rows) {
          json r = io::to_json(row.report);
          r["instance_id"] = row.instance_id;
          r["m"] = row.m;
          rows.push_back(r);
        }
        buffer << json{{"config", io::to_json(cfg)},
                       {"rows", rows},
                       {"summary", io::to_json(result.summary)}}
                      .dump(2)
               << '\n';
      }
      if (!o.summary_path.empty()) {
        std::ofstream s(o.summary_path);
        require(static_cast<bool>(s), "cannot write '" + o.summary_path + "'");
        s << io::to_json(result.summary).dump(2) << '\n';
      }
    } else if (app.got_subcommand(md)) {
      const NDPointSet set = io::ndset_from_json(io::read_file(o.set_path));
      if (o.eps_grid.empty()) {
        for (int j = 1; j <= 6; ++j) o.eps_grid.push_back(std::ldexp(1.0, -j));
      }
      json result;
      double lower = 0.0;
      if (!o.quasi_path.empty()) {
        const auto q = io::quasi_from_json(io::read_file(o.quasi_path));
        require(q.dimension() == set.dimension(), "quasipolynomial and set dimensions differ");
        const FrequencyProfile profile = frequency_profile(q, o.rho);
        lower = metric_span_nd_lower(set, profile, o.eps_grid);
        json coeffs = json::array();
        for (const auto& c : profile.coefficients()) coeffs.push_back(io::real_to_json(to_double_up(c)));
        result["profile_coefficients"] = coeffs;
        result["kappa"] = q.kappa();
        result["lambda"] = q.max_frequency();
        result["exp_type"] = exp_type(q);
        json warnings = json::array();
        if (q.max_frequency() == 0.0) {
          warnings.push_back(
              "frequency 0 makes every profile coefficient vanish; the lower bound is then "
              "driven by the packing count alone");
        }
        result["warnings"] = warnings;
      } else {
        require(o.md.has_value(), "mdspan needs --quasi or --md");
        const double c = *o.md;
        lower = metric_span_nd_lower(set, [c](double) { return c; }, o.eps_grid);
        result["md"] = c;
      }
      json bounds = json::array();
      for (double e : o.eps_grid) {
        const auto cb = cover_bounds_nd(set, e);
        bounds.push_back({{"eps", e}, {"lower", cb.lower}, {"upper", cb.upper}});
      }
      result["n"] = set.dimension();
      result["cover_bounds"] = bounds;
      result["lower_bound"] = io::real_to_json(lower);
      buffer << result.dump(2) << '\n';
    }
  } catch (const InputError& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << '\n';
    return kInputError;
  } catch (const io::json::exception& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << '\n';
    return kInputError;
  } catch (const OverflowError& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << '\n';
    return kInputError;
  } catch (const CertificationError& e) {
    err << json{{"error", "certification"}, {"message", e.what()}}.dump() << '\n';
    return kCertificationFailure;
  }

  if (o.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      err << json{{"error", "input"}, {"message", "cannot write '" + o.out_path + "'"}}.dump() << '\n';
      return kInputError;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace turanspan::cli
