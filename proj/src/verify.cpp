#include "turanspan/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <random>

#include "turanspan/error.hpp"

namespace turanspan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Grid {
  std::vector<double> t;
  std::vector<double> g;
};

// Steps of |g| / lipschitz (no root can hide closer than that), clamped to
// [resolution / 64, resolution].
Grid scan(const std::function<double(double)>& g, double lipschitz,
          const Interval& B, double resolution) {
  Grid grid;
  double t = B.lo;
  double v = g(t);
  grid.t.push_back(t);
  grid.g.push_back(v);
  while (t < B.hi) {
    double h = resolution;
    if (lipschitz > 0.0) {
      h = std::clamp(std::abs(v) / lipschitz, resolution / 64.0, resolution);
    }
    t = std::min(t + h, B.hi);
    v = g(t);
    grid.t.push_back(t);
    grid.g.push_back(v);
  }
  return grid;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

// Minimises f over [a, b] by golden-section search; returns the argmin.
double golden_min(const std::function<double(double)>& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// Every interior grid extremum without a sign change is refined by a local
// search between its neighbours. An extremum that reaches the other sign is
// inserted into the grid (exposing two crossings); one whose value is within
// `near` of zero marks a possible tangency, as does an exact zero touched
// from one side.
bool refine_extrema(Grid& grid, const std::function<double(double)>& g, double near) {
  bool degenerate = false;
  Grid out;
  out.t.push_back(grid.t.front());
  out.g.push_back(grid.g.front());
  const std::size_t n = grid.t.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double gi = grid.g[i];
    const double left = gi - grid.g[i - 1];
    const double right = grid.g[i + 1] - gi;
    const bool extremum = left * right < 0.0;
    if (gi == 0.0 && sign(grid.g[i - 1]) == sign(grid.g[i + 1])) degenerate = true;
    if (extremum && gi != 0.0 && sign(grid.g[i - 1]) == sign(gi) &&
        sign(grid.g[i + 1]) == sign(gi)) {
      const double dir = gi > 0.0 ? 1.0 : -1.0;
      const double ts = golden_min([&](double t) { return dir * g(t); }, grid.t[i - 1], grid.t[i + 1]);
      const double gs = g(ts);
      if (std::abs(gs) < near) degenerate = true;
      if (sign(gs) != sign(gi)) {
        if (ts < grid.t[i]) {
          out.t.push_back(ts);
          out.g.push_back(gs);
          out.t.push_back(grid.t[i]);
          out.g.push_back(gi);
        } else {
          out.t.push_back(grid.t[i]);
          out.g.push_back(gi);
          out.t.push_back(ts);
          out.g.push_back(gs);
        }
        continue;
      }
    }
    out.t.push_back(grid.t[i]);
    out.g.push_back(gi);
  }
  if (n > 1) {
    out.t.push_back(grid.t.back());
    out.g.push_back(grid.g.back());
  }
  grid = std::move(out);
  return degenerate;
}

std::size_t count_sign_changes(const Grid& grid) {
  std::size_t count = 0;
  int last = 0;
  for (double v : grid.g) {
    const int s = sign(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Shrinks [a, b] with pred(a) != pred(b) to width <= tolerance; returns the
// endpoint where pred holds.
double bisect(const std::function<bool(double)>& pred, double a, double b,
              double tolerance) {
  const bool pa = pred(a);
  for (int it = 0; it < 200 && b - a > tolerance; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (pred(mid) == pa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return pa ? a : b;
}

struct Node {
  double ub;
  double u;
  double v;
  bool operator<(const Node& o) const { return ub < o.ub; }
};

}  // namespace

Bracket sup_abs(const ExpPolynomial1D& p, const Interval& B, double tolerance,
                std::size_t max_evaluations) {
  if (!(tolerance > 0.0)) throw InputError("sup_abs needs tolerance > 0");
  if (!std::isfinite(B.lo) || !std::isfinite(B.hi) || B.lo > B.hi) {
    throw InputError("sup_abs needs a bounded interval");
  }

  double lo = 0.0;
  // Rounding allowance for one evaluation on [u, v].
  auto slack = [&](double u, double v) {
    return 1e-15 * derivative_bound(p, {u, v}, 0) + 1e-300;
  };
  auto observe = [&](double t, double s) { lo = std::max(lo, std::abs(eval(p, t)) - s); };

  std::size_t evaluations = 0;
  auto make = [&](double u, double v) {
    const double mid = 0.5 * (u + v);
    const double r = 0.5 * (v - u);
    const double s = slack(u, v);
    const Complex pv = eval(p, mid);
    const Complex dv = eval_derivative(p, mid);
    const double pm = std::abs(pv);
    const Interval sub{u, v};
    const double d0 = derivative_bound(p, sub, 0);
    const double d1 = derivative_bound(p, sub, 1);
    const double d2 = derivative_bound(p, sub, 2);
    const double first = pm + d1 * r;
    // Taylor bound on q = |p|^2, whose derivative vanishes at interior
    // maxima: q' = 2 Re(conj(p) p'), |q''| <= 2 |p'|^2 + 2 |p| |p''|.
    const double q1 = 2.0 * std::abs(std::real(std::conj(pv) * dv));
    const double q2 = 2.0 * d1 * d1 + 2.0 * d0 * d2;
    const double second = std::sqrt(pm * pm + q1 * r + 0.5 * q2 * r * r);
    lo = std::max(lo, pm - s);
    ++evaluations;
    return Node{std::min(first, second) + 2.0 * s, u, v};
  };

  observe(B.lo, slack(B.lo, B.lo));
  observe(B.hi, slack(B.hi, B.hi));
  if (B.lo == B.hi) {
    const double v = std::abs(eval(p, B.lo));
    const double s = slack(B.lo, B.lo);
    return {std::max(0.0, v - s), v + s, true};
  }

  std::priority_queue<Node> heap;
  heap.push(make(B.lo, B.hi));
  while (true) {
    const Node top = heap.top();
    const double hi = std::max(top.ub, lo);
    if (hi - lo <= tolerance * (1.0 + hi)) return {lo, hi, true};
    if (evaluations >= max_evaluations) return {lo, hi, false};
    const double mid = 0.5 * (top.u + top.v);
    if (mid <= top.u || mid >= top.v) return {lo, hi, false};
    heap.pop();
    heap.push(make(top.u, mid));
    heap.push(make(mid, top.v));
  }
}

double auto_resolution(const ExpPolynomial1D& p, const Interval& B) {
  const double freq = abs_sq_expand(p).max_frequency();
  double res = B.length() / 256.0;
  if (freq > 0.0) res = std::min(res, std::numbers::pi / (4.0 * freq));
  if (!(res > 0.0)) res = 1e-3;
  return res;
}

CrossingCount level_crossings(const ExpPolynomial1D& p, double eta,
                              const Interval& B, double resolution) {
  if (!(eta >= 0.0)) throw InputError("level must be nonnegative");
  if (B.lo > B.hi) throw InputError("interval with lo > hi");
  if (resolution <= 0.0) resolution = auto_resolution(p, B);
  CrossingCount out;
  if (B.lo == B.hi) return out;

  if (eta == 0.0 && p.is_real()) {
    auto f = [&](double t) { return eval(p, t).real(); };
    Grid grid = scan(f, derivative_sup_bound(p, B), B, resolution);
    out.degenerate = refine_extrema(grid, f, std::sqrt(1e-9));
    out.count = count_sign_changes(grid);
    return out;
  }
  const RealExpTrigPolynomial q = abs_sq_expand(p);
  auto g = [&](double t) { return q(t) - eta; };
  Grid grid = scan(g, q.derivative_bound(B), B, resolution);
  out.degenerate = refine_extrema(grid, g, 1e-9 * (1.0 + eta));
  out.count = count_sign_changes(grid);
  return out;
}

Sublevel sublevel_set(const ExpPolynomial1D& p, double rho, const Interval& B,
                      double tolerance, double resolution) {
  if (!(rho >= 0.0)) throw InputError("sublevel height must be nonnegative");
  if (B.lo > B.hi) throw InputError("interval with lo > hi");
  if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (resolution <= 0.0) resolution = auto_resolution(p, B);
  Sublevel out;

  if (rho == 0.0 && p.is_real()) {
    auto f = [&](double t) { return eval(p, t).real(); };
    Grid grid = scan(f, derivative_sup_bound(p, B), B, resolution);
    out.degenerate = refine_extrema(grid, f, std::sqrt(1e-9));
    std::vector<double> zeros;
    for (std::size_t i = 0; i < grid.t.size(); ++i) {
      if (grid.g[i] == 0.0) zeros.push_back(grid.t[i]);
      if (i > 0 && sign(grid.g[i]) * sign(grid.g[i - 1]) < 0) {
        const bool left_positive = grid.g[i - 1] > 0.0;
        const double a = bisect([&](double t) { return (f(t) > 0.0) == left_positive; },
                                grid.t[i - 1], grid.t[i], tolerance);
        zeros.push_back(a);
      }
    }
    out.set = RealSet1D::from_points(std::move(zeros));
    return out;
  }

  const RealExpTrigPolynomial q = abs_sq_expand(p);
  const double level = rho * rho;
  auto g = [&](double t) { return q(t) - level; };
  auto inside = [&](double t) { return q(t) <= level; };
  Grid grid = scan(g, q.derivative_bound(B), B, resolution);
  out.degenerate = refine_extrema(grid, g, 1e-9 * (1.0 + level));

  std::vector<Interval> parts;
  std::vector<double> isolated;
  auto close = [&](double start, double end) {
    if (end > start) {
      parts.push_back({start, end});
    } else {
      isolated.push_back(start);
    }
  };
  bool in = grid.g[0] <= 0.0;
  double start = B.lo;
  for (std::size_t i = 1; i < grid.t.size(); ++i) {
    const bool now = grid.g[i] <= 0.0;
    if (now == in) continue;
    const double edge = bisect(inside, grid.t[i - 1], grid.t[i], tolerance);
    if (in) {
      close(start, edge);
    } else {
      start = edge;
    }
    in = now;
  }
  if (in) close(start, B.hi);
  out.set = RealSet1D(std::move(isolated), std::move(parts));
  return out;
}

Vanishing construct_vanishing(std::span<const double> points,
                              std::span<const double> exponents) {
  const std::size_t m = points.size();
  if (exponents.size() != m + 1) {
    throw InputError("need exactly one more exponent than points");
  }
  auto distinct = [](std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
  };
  if (!distinct(points) || !distinct(exponents)) {
    throw InputError("points and exponents must be pairwise distinct");
  }
  for (double x : points) {
    if (!std::isfinite(x)) throw InputError("non-finite point");
  }
  for (double l : exponents) {
    if (!std::isfinite(l)) throw InputError("non-finite exponent");
  }

  Vanishing out;
  out.coeffs.assign(m + 1, 0.0);
  if (m == 0) {
    out.coeffs[0] = 1.0;
    out.condition = 1.0;
    return out;
  }

  Eigen::MatrixXd a(m, m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k <= m; ++k) {
      a(j, k) = std::exp(exponents[k] * points[j]);
    }
    // Row scaling leaves the kernel unchanged.
    a.row(j) /= a.row(j).cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  out.condition = sv(m - 1) > 0.0 ? sv(0) / sv(m - 1) : kInf;
  if (!(out.condition <= 1e12)) {
    throw CertificationError(
        "vanishing system is ill-conditioned (condition estimate " +
        std::to_string(out.condition) + "); rescale points or exponents");
  }
  Eigen::VectorXd c = svd.matrixV().col(static_cast<Eigen::Index>(m));
  c /= c.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (std::abs(c(k)) > 1e-14) {
      if (c(k) < 0.0) c = -c;
      break;
    }
  }
  for (std::size_t k = 0; k <= m; ++k) out.coeffs[k] = c(static_cast<Eigen::Index>(k));

  const auto poly = ExpPolynomial1D::real(out.coeffs, exponents);
  for (double x : points) {
    out.residual = std::max(out.residual, std::abs(eval(poly, x)));
  }
  return out;
}

std::string to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::ok:
      return "ok";
    case VerifyStatus::vacuous_zero_sup:
      return "vacuous_zero_sup";
    case VerifyStatus::vacuous_zero_span:
      return "vacuous_zero_span";
    case VerifyStatus::khovanskii_refused:
      return "khovanskii_refused";
  }
  return "unknown";
}

VerifyStatus parse_status(const std::string& s) {
  for (auto v : {VerifyStatus::ok, VerifyStatus::vacuous_zero_sup,
                 VerifyStatus::vacuous_zero_span, VerifyStatus::khovanskii_refused}) {
    if (to_string(v) == s) return v;
  }
  throw InputError("unknown status '" + s + "'");
}

VerifyReport verify_inequality(const ExpPolynomial1D& p, const Interval& B,
                               const RealSet1D& omega, Variant variant,
                               double tolerance) {
  if (!(B.lo < B.hi) || !std::isfinite(B.lo) || !std::isfinite(B.hi)) {
    throw InputError("B must be a bounded interval of positive length");
  }
  if (omega.empty()) throw InputError("omega is empty");
  if (!omega.subset_of(B)) throw InputError("omega is not contained in B");
  if (variant == Variant::real_chebyshev && !p.is_real()) {
    throw InputError("real variant needs real coefficients and exponents");
  }

  VerifyReport r;
  r.variant = variant;
  const Diagram diagram = Diagram::of(p, B, variant);
  const FrequencyBound fb = frequency_bound(diagram);
  r.md = fb.value;
  r.md_exact = fb.exact.str();
  r.warnings = fb.warnings;
  r.exp_factor = std::exp(B.length() * p.max_abs_real_exponent());

  if (variant == Variant::khovanskii_complex && diagram.freq * diagram.len_b < 1.0) {
    r.status = VerifyStatus::khovanskii_refused;
    return r;
  }

  r.sup_b = sup_abs(p, B, tolerance);
  r.sup_omega = Bracket{0.0, 0.0, true};
  for (const auto& c : omega.components()) {
    Bracket b;
    if (c.is_point()) {
      const double v = std::abs(eval(p, c.lo));
      b = {v, v, true};
    } else {
      b = sup_abs(p, {c.lo, c.hi}, tolerance);
    }
    r.sup_omega.lo = std::max(r.sup_omega.lo, b.lo);
    r.sup_omega.hi = std::max(r.sup_omega.hi, b.hi);
    r.sup_omega.certified = r.sup_omega.certified && b.certified;
  }
  r.span = metric_span(omega, r.md, tolerance);

  // A zero span is exact, while a vanishing sup is only numerical, so the
  // span check comes first.
  if (r.span.value == 0.0) {
    r.status = VerifyStatus::vacuous_zero_span;
    return r;
  }
  if (r.sup_omega.hi <= 1e-12 * r.sup_b.hi || r.sup_b.hi == 0.0) {
    r.status = VerifyStatus::vacuous_zero_sup;
    return r;
  }
  r.status = VerifyStatus::ok;
  const std::size_t m = p.degree();
  if (m == 0) return r;
  const double inv_m = 1.0 / static_cast<double>(m);
  const double len = B.length();
  auto c_for = [&](double span, double sb, double so) {
    return (span / len) * std::pow(sb / (r.exp_factor * so), inv_m);
  };
  r.c_required = c_for(r.span.value, r.sup_b.hi, r.sup_omega.hi);
  Bracket cb;
  cb.lo = c_for(r.span.value, r.sup_b.lo, r.sup_omega.hi);
  cb.hi = r.sup_omega.lo > 0.0 ? c_for(r.span.upper_bound, r.sup_b.hi, r.sup_omega.lo) : kInf;
  cb.certified = r.sup_b.certified && r.sup_omega.certified;
  r.c_required_bracket = cb;
  return r;
}

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  // 53 random bits mapped to [0, 1); identical on every platform.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double in(double a, double b) { return a + (b - a) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

ExpPolynomial1D random_poly(Uniform& rng, std::size_t m, const EnsembleConfig& cfg) {
  const bool real = cfg.variant == Variant::real_chebyshev;
  std::vector<ExpTerm> terms;
  while (terms.size() < m + 1) {
    const Complex lambda(rng.in(cfg.re_lo, cfg.re_hi), real ? 0.0 : rng.in(cfg.im_lo, cfg.im_hi));
    const bool clash = std::any_of(terms.begin(), terms.end(), [&](const ExpTerm& t) {
      return std::abs(t.exponent - lambda) < 1e-6;
    });
    if (clash) continue;
    const Complex c(rng.in(-1.0, 1.0), real ? 0.0 : rng.in(-1.0, 1.0));
    terms.push_back({c, lambda});
  }
  return ExpPolynomial1D(std::move(terms));
}

RealSet1D random_omega(Uniform& rng, std::size_t m, const EnsembleConfig& cfg) {
  const Interval& B = cfg.B;
  switch (cfg.omega) {
    case OmegaKind::whole:
      return RealSet1D({}, {B});
    case OmegaKind::intervals: {
      std::vector<Interval> ivs;
      const std::size_t n = 1 + rng.index(3);
      for (std::size_t i = 0; i < n; ++i) {
        double a = rng.in(B.lo, B.hi);
        double b = rng.in(B.lo, B.hi);
        if (a > b) std::swap(a, b);
        if (a == b) b = std::min(B.hi, a + 1e-3 * B.length());
        ivs.push_back({a, b});
      }
      return RealSet1D({}, std::move(ivs));
    }
    case OmegaKind::points:
      break;
  }
  const std::size_t target = m + 1 + rng.index(cfg.extra_points + 1);
  std::vector<double> pts;
  while (RealSet1D::from_points(pts).component_count() < target) {
    pts.push_back(rng.in(B.lo, B.hi));
  }
  return RealSet1D::from_points(std::move(pts));
}

std::optional<double> quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::nullopt;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

EnsembleResult ensemble(const EnsembleConfig& cfg) {
  if (!(cfg.B.lo < cfg.B.hi)) throw InputError("ensemble needs a nondegenerate B");
  if (cfg.re_lo > cfg.re_hi || cfg.im_lo > cfg.im_hi) {
    throw InputError("exponent ranges must satisfy lo <= hi");
  }
  EnsembleResult out;
  out.rows.reserve(cfg.count);
  std::vector<double> cs;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    Uniform rng(instance_seed(cfg.seed, i));
    const std::size_t m_min = std::min<std::size_t>(1, cfg.m_max);
    const std::size_t m = m_min + rng.index(cfg.m_max - m_min + 1);
    const ExpPolynomial1D p = random_poly(rng, m, cfg);
    const RealSet1D omega = random_omega(rng, m, cfg);
    EnsembleRow row{i, m, verify_inequality(p, cfg.B, omega, cfg.variant, cfg.tolerance)};
    auto& s = out.summary;
    switch (row.report.status) {
      case VerifyStatus::ok:
        ++s.ok;
        break;
      case VerifyStatus::vacuous_zero_sup:
        ++s.vacuous_zero_sup;
        break;
      case VerifyStatus::vacuous_zero_span:
        ++s.vacuous_zero_span;
        break;
      case VerifyStatus::khovanskii_refused:
        ++s.khovanskii_refused;
        break;
    }
    if (row.report.c_required && std::isfinite(*row.report.c_required)) {
      cs.push_back(*row.report.c_required);
    }
    out.rows.push_back(std::move(row));
  }
  out.summary.count = cfg.count;
  std::sort(cs.begin(), cs.end());
  if (!cs.empty()) {
    out.summary.c_max = cs.back();
    const std::size_t n = cs.size();
    out.summary.c_median = n % 2 ? cs[n / 2] : 0.5 * (cs[n / 2 - 1] + cs[n / 2]);
  }
  out.summary.c_q90 = quantile(cs, 0.9);
  out.summary.c_q99 = quantile(cs, 0.99);
  return out;
}

void write_csv(std::ostream& out, const EnsembleResult& result) {
  out << "instance_id,m,variant,sup_B_lo,sup_B_hi,sup_Omega,M_D,span,exp_factor,"
         "c_required,status\n";
  for (const auto& row : result.rows) {
    const auto& r = row.report;
    out << row.instance_id << ',' << row.m << ',' << to_string(r.variant) << ','
        << fmt17(r.sup_b.lo) << ',' << fmt17(r.sup_b.hi) << ',' << fmt17(r.sup_omega.hi)
        << ',' << fmt17(r.md) << ',' << fmt17(r.span.value) << ','
        << fmt17(r.exp_factor) << ',' << (r.c_required ? fmt17(*r.c_required) : "")
        << ',' << to_string(r.status) << '\n';
  }
}

}  // namespace turanspan
