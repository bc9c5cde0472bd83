#include "turanspan/multidim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>

#include "turanspan/error.hpp"

namespace turanspan {
namespace {

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

}  // namespace

MultiPoly::MultiPoly(std::size_t n, std::map<Monomial, std::complex<double>> coeffs)
    : n_(n) {
  if (n == 0) throw InputError("polynomial needs at least one variable");
  for (auto& [mono, c] : coeffs) {
    if (mono.size() != n) {
      throw InputError("monomial has " + std::to_string(mono.size()) +
                       " exponents, expected " + std::to_string(n));
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InputError("non-finite polynomial coefficient");
    }
    if (c != 0.0) coeffs_[mono] += c;
  }
}

unsigned MultiPoly::degree() const {
  unsigned d = 0;
  for (const auto& [mono, c] : coeffs_) {
    unsigned t = 0;
    for (unsigned e : mono) t += e;
    d = std::max(d, t);
  }
  return d;
}

std::complex<double> MultiPoly::operator()(std::span<const double> x) const {
  std::complex<double> s = 0.0;
  for (const auto& [mono, c] : coeffs_) {
    double term = 1.0;
    for (std::size_t l = 0; l < n_; ++l) term *= std::pow(x[l], mono[l]);
    s += c * term;
  }
  return s;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  std::map<Monomial, std::complex<double>> out;
  for (const auto& [ma, ca] : coeffs_) {
    for (const auto& [mb, cb] : other.coeffs_) {
      Monomial m(n_);
      for (std::size_t l = 0; l < n_; ++l) m[l] = ma[l] + mb[l];
      out[m] += ca * cb;
    }
  }
  return MultiPoly(n_, std::move(out));
}

MultiPoly MultiPoly::conjugate() const {
  auto out = coeffs_;
  for (auto& [m, c] : out) c = std::conj(c);
  return MultiPoly(n_, std::move(out));
}

MultiPoly MultiPoly::real_part() const {
  std::map<Monomial, std::complex<double>> out;
  for (const auto& [m, c] : coeffs_) out[m] = c.real();
  return MultiPoly(n_, std::move(out));
}

MultiPoly MultiPoly::imag_part() const {
  std::map<Monomial, std::complex<double>> out;
  for (const auto& [m, c] : coeffs_) out[m] = c.imag();
  return MultiPoly(n_, std::move(out));
}

MultiPoly MultiPoly::scaled(double s) const {
  auto out = coeffs_;
  for (auto& [m, c] : out) c *= s;
  return MultiPoly(n_, std::move(out));
}

double MultiPoly::cube_bound() const {
  double s = 0.0;
  for (const auto& [m, c] : coeffs_) s += std::abs(c);
  return s;
}

double MultiPoly::cube_gradient_bound() const {
  double sq = 0.0;
  for (std::size_t l = 0; l < n_; ++l) {
    double partial = 0.0;
    for (const auto& [m, c] : coeffs_) partial += std::abs(c) * m[l];
    sq += partial * partial;
  }
  return std::sqrt(sq);
}

Quasipolynomial::Quasipolynomial(std::size_t n, std::vector<QuasiTerm> terms)
    : n_(n), terms_(std::move(terms)) {
  if (n == 0) throw InputError("quasipolynomial needs n >= 1");
  if (terms_.empty()) throw InputError("quasipolynomial needs at least one term");
  for (const auto& t : terms_) {
    if (t.a.size() != n || t.b.size() != n || t.poly.variables() != n) {
      throw InputError("quasipolynomial term does not match dimension " + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i + 1; j < terms_.size(); ++j) {
      bool same = true;
      for (std::size_t l = 0; l < n; ++l) {
        same = same && std::abs(terms_[i].a[l] - terms_[j].a[l]) <= 1e-12 &&
               std::abs(terms_[i].b[l] - terms_[j].b[l]) <= 1e-12;
      }
      if (same) throw InputError("linear functionals f_j must be pairwise distinct");
    }
  }
}

std::size_t Quasipolynomial::degree() const {
  std::size_t m = 0;
  for (const auto& t : terms_) m += t.poly.degree() + 1;
  return m;
}

std::size_t Quasipolynomial::kappa() const {
  const std::size_t k = terms_.size();
  return k * (k + 1) / 2;
}

double Quasipolynomial::max_frequency() const {
  double r = 0.0;
  std::vector<double> d(n_);
  for (const auto& u : terms_) {
    for (const auto& v : terms_) {
      for (std::size_t l = 0; l < n_; ++l) d[l] = u.b[l] - v.b[l];
      r = std::max(r, norm(d));
    }
  }
  return r;
}

unsigned Quasipolynomial::max_degree_sum() const {
  unsigned r = 0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i; j < terms_.size(); ++j) {
      r = std::max(r, terms_[i].poly.degree() + terms_[j].poly.degree());
    }
  }
  return r;
}

std::complex<double> Quasipolynomial::operator()(std::span<const double> x) const {
  std::complex<double> s = 0.0;
  for (const auto& t : terms_) {
    s += t.poly(x) * std::exp(std::complex<double>(dot(t.a, x), dot(t.b, x)));
  }
  return s;
}

double exp_type(const Quasipolynomial& q) {
  double r = 0.0;
  for (const auto& t : q.terms()) {
    r = std::max(r, std::sqrt(dot(t.a, t.a) + dot(t.b, t.b)));
  }
  return r;
}

double RealTrigQuasipolynomial::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& g : groups_) {
    const double theta = dot(g.frequency, x);
    s += std::exp(dot(g.rate, x)) *
         (g.sin_poly(x).real() * std::sin(theta) + g.cos_poly(x).real() * std::cos(theta));
  }
  return s;
}

double RealTrigQuasipolynomial::cube_gradient_bound() const {
  double s = 0.0;
  for (const auto& g : groups_) {
    double growth = 0.0;
    for (double r : g.rate) growth += std::max(r, 0.0);
    const double amp = g.sin_poly.cube_bound() + g.cos_poly.cube_bound();
    s += std::exp(growth) * ((norm(g.rate) + norm(g.frequency)) * amp +
                             g.sin_poly.cube_gradient_bound() +
                             g.cos_poly.cube_gradient_bound());
  }
  return s;
}

RealTrigQuasipolynomial abs_sq_expand_nd(const Quasipolynomial& q) {
  const std::size_t n = q.dimension();
  const auto& terms = q.terms();
  std::vector<TrigGroup> groups;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i; j < terms.size(); ++j) {
      TrigGroup g;
      g.i = i;
      g.j = j;
      g.rate.resize(n);
      g.frequency.resize(n);
      for (std::size_t l = 0; l < n; ++l) {
        g.rate[l] = terms[i].a[l] + terms[j].a[l];
        g.frequency[l] = terms[i].b[l] - terms[j].b[l];
      }
      const MultiPoly r = terms[i].poly * terms[j].poly.conjugate();
      if (i == j) {
        g.sin_poly = MultiPoly(n);
        g.cos_poly = r.real_part();
      } else {
        // 2 Re[(U + iV) e^{i theta}] = 2U cos theta - 2V sin theta
        g.sin_poly = r.imag_part().scaled(-2.0);
        g.cos_poly = r.real_part().scaled(2.0);
      }
      groups.push_back(std::move(g));
    }
  }
  return RealTrigQuasipolynomial(n, std::move(groups));
}

NDPointSet::NDPointSet(std::size_t n, std::vector<std::vector<double>> points) : n_(n) {
  if (n == 0) throw InputError("point set needs n >= 1");
  for (const auto& p : points) {
    if (p.size() != n) throw InputError("point dimension mismatch");
    for (double x : p) {
      if (!(x >= 0.0 && x <= 1.0)) {
        throw InputError("point coordinates must lie in the unit cube [0,1]");
      }
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::move(points);
}

CoverBounds cover_bounds_nd(const NDPointSet& omega, double eps, unsigned shifts_per_axis) {
  if (!(eps > 0.0)) throw InputError("cover_bounds_nd requires eps > 0");
  const std::size_t n = omega.dimension();
  if (n > 4) throw InputError("cover_bounds_nd supports dimension <= 4");
  if (shifts_per_axis < 1) throw InputError("need at least one shift per axis");
  CoverBounds out;
  if (omega.empty()) return out;
  const auto& pts = omega.points();

  // Greedy packing: points pairwise more than eps apart in some coordinate
  // cannot share a cube.
  std::vector<const std::vector<double>*> packed;
  for (const auto& p : pts) {
    const bool separated = std::all_of(packed.begin(), packed.end(), [&](const auto* q) {
      double d = 0.0;
      for (std::size_t l = 0; l < n; ++l) d = std::max(d, std::abs(p[l] - (*q)[l]));
      return d > eps;
    });
    if (separated) packed.push_back(&p);
  }
  out.lower = packed.size();

  std::uint64_t combos = 1;
  for (std::size_t l = 0; l < n; ++l) combos *= shifts_per_axis;
  out.upper = std::numeric_limits<std::uint64_t>::max();
  std::vector<double> offset(n);
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::uint64_t code = c;
    for (std::size_t l = 0; l < n; ++l) {
      offset[l] = eps * static_cast<double>(code % shifts_per_axis) / shifts_per_axis;
      code /= shifts_per_axis;
    }
    struct Extent {
      std::vector<double> lo, hi;
      std::uint64_t count = 0;
    };
    std::map<std::vector<long long>, Extent> cells;
    std::vector<long long> key(n);
    for (const auto& p : pts) {
      for (std::size_t l = 0; l < n; ++l) {
        key[l] = static_cast<long long>(std::floor((p[l] + offset[l]) / eps));
      }
      auto [it, fresh] = cells.try_emplace(key);
      Extent& e = it->second;
      if (fresh) {
        e.lo = p;
        e.hi = p;
      }
      for (std::size_t l = 0; l < n; ++l) {
        e.lo[l] = std::min(e.lo[l], p[l]);
        e.hi[l] = std::max(e.hi[l], p[l]);
      }
      ++e.count;
    }
    std::uint64_t total = 0;
    for (const auto& [k, e] : cells) {
      bool fits = true;
      for (std::size_t l = 0; l < n; ++l) fits = fits && e.hi[l] - e.lo[l] <= eps;
      // A rounding-split cell falls back to one cube per point.
      total += fits ? 1 : e.count;
    }
    out.upper = std::min(out.upper, total);
  }
  return out;
}

double metric_span_nd_lower(const NDPointSet& omega, const Profile& profile,
                            std::span<const double> eps_grid) {
  double best = 0.0;
  if (omega.empty()) return best;
  const auto n = static_cast<double>(omega.dimension());
  for (double eps : eps_grid) {
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw InputError("eps grid must lie in (0, 1]");
    }
    const auto bounds = cover_bounds_nd(omega, eps);
    const double v = std::pow(eps, n) * (static_cast<double>(bounds.lower) - profile(eps));
    best = std::max(best, v);
  }
  return best;
}

double vitushkin_eval(const Profile& profile, double mu_a, double eps, unsigned n) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("vitushkin_eval needs 0 < eps <= 1");
  if (!(mu_a >= 0.0)) throw InputError("measure must be nonnegative");
  return profile(eps) + mu_a * std::pow(eps, -static_cast<double>(n));
}

FrequencyProfile frequency_profile(const Quasipolynomial& q, double rho) {
  const auto n = static_cast<unsigned>(q.dimension());
  std::vector<unsigned> sums(n, q.max_degree_sum());
  return md_frequency_profile(n, sums, static_cast<unsigned>(q.kappa()),
                              q.max_frequency(), rho);
}

BrudnyiBound brudnyi_rhs(const Quasipolynomial& q, double b_diam, double denom,
                         const BrudnyiConstants& k, double vol_b) {
  if (!(k.c > 0.0 && k.c1 > 0.0 && k.c2 > 0.0 && k.c_km > 0.0)) {
    throw InputError("Brudnyi constants must be positive");
  }
  BrudnyiBound out;
  const double t = exp_type(q);
  const auto m = static_cast<double>(q.degree());
  out.exponent = k.c_km + (m - 1.0) * std::log(k.c1 * std::max(1.0, t)) + k.c2 * t * b_diam;
  if (!(denom > 0.0)) {
    out.vacuous = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  const double base = k.c * static_cast<double>(q.dimension()) * vol_b / denom;
  out.value = std::pow(base, out.exponent);
  return out;
}

Raster rasterize_sublevel(const RealTrigQuasipolynomial& q, double level, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("raster needs 0 < eps <= 1");
  const std::size_t n = q.dimension();
  const auto per_axis = static_cast<std::size_t>(std::ceil(1.0 / eps - 1e-12));
  const double lipschitz = q.cube_gradient_bound();
  Raster out;
  out.eps = eps;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> centre(n);
  while (true) {
    double half_diag_sq = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      const double lo = static_cast<double>(idx[l]) * eps;
      const double hi = std::min(1.0, lo + eps);
      centre[l] = 0.5 * (lo + hi);
      half_diag_sq += 0.25 * (hi - lo) * (hi - lo);
    }
    const double pad = lipschitz * std::sqrt(half_diag_sq);
    const double v = q(centre);
    if (v + pad <= level) {
      ++out.inside;
    } else if (v - pad <= level) {
      ++out.uncertain;
    }
    std::size_t l = 0;
    while (l < n && ++idx[l] == per_axis) idx[l++] = 0;
    if (l == n) break;
  }
  return out;
}

}  // namespace turanspan
