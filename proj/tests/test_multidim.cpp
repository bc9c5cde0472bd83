#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "turanspan/error.hpp"
#include "turanspan/multidim.hpp"

using namespace turanspan;
using namespace std::complex_literals;

namespace {

Quasipolynomial single(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = a.size();
  MultiPoly one(n, {{Monomial(n, 0), 1.0}});
  return Quasipolynomial(n, {{one, std::move(a), std::move(b)}});
}

// Random quasipolynomial in 2 variables: k terms, coefficient degree <= 1.
Quasipolynomial random_quasi(std::mt19937_64& rng, std::size_t k, double freq) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<QuasiTerm> terms;
  for (std::size_t j = 0; j < k; ++j) {
    std::map<Monomial, std::complex<double>> c;
    c[{0, 0}] = {u(rng), u(rng)};
    c[{1, 0}] = {u(rng), u(rng)};
    c[{0, 1}] = {u(rng), u(rng)};
    terms.push_back({MultiPoly(2, c), {u(rng), u(rng)}, {freq * u(rng), freq * u(rng)}});
  }
  return Quasipolynomial(2, std::move(terms));
}

NDPointSet grid(std::size_t n, std::vector<double> axis) {
  std::vector<std::vector<double>> pts{{}};
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<std::vector<double>> next;
    for (const auto& p : pts) {
      for (double x : axis) {
        auto q = p;
        q.push_back(x);
        next.push_back(q);
      }
    }
    pts = std::move(next);
  }
  return NDPointSet(n, std::move(pts));
}

}  // namespace

TEST_CASE("Quasipolynomial structure") {
  std::mt19937_64 rng(51);
  const auto q = random_quasi(rng, 3, 2.0);
  CHECK(q.term_count() == 3);
  CHECK(q.degree() == 6);
  CHECK(q.kappa() == 6);
  CHECK(q.max_degree_sum() == 2);
  CHECK_THROWS_AS(Quasipolynomial(2, {q.terms()[0], q.terms()[0]}), InputError);
}

TEST_CASE("exp_type") {
  CHECK(exp_type(single({1.0, 0.0}, {0.0, 0.0})) == 1.0);
  CHECK(exp_type(single({3.0, 0.0}, {4.0, 0.0})) == doctest::Approx(5.0));
  const auto a = exp_type(single({0.3, -0.2}, {1.1, 0.4}));
  const auto b = exp_type(single({0.6, -0.4}, {2.2, 0.8}));
  CHECK(b == doctest::Approx(2.0 * a));
  // The norm is attained on the complex unit ball at conj(f)/|f|.
  const std::complex<double> f0(3.0, 4.0);
  CHECK(std::abs(f0 * std::conj(f0) / std::abs(f0)) == doctest::Approx(5.0));
}

TEST_CASE("abs_sq_expand_nd") {
  const auto s = abs_sq_expand_nd(single({0.5, -1.0}, {2.0, 3.0}));
  REQUIRE(s.groups().size() == 1);
  CHECK(s.groups()[0].sin_poly.coefficients().empty());
  for (double f : s.groups()[0].frequency) CHECK(f == 0.0);

  MultiPoly one(2, {{{0, 0}, 1.0}}), x(2, {{{1, 0}, 2.0 - 1i}});
  const Quasipolynomial same_b(2, {{one, {0.0, 0.0}, {1.0, 1.0}}, {x, {1.0, 0.0}, {1.0, 1.0}}});
  const auto expanded = abs_sq_expand_nd(same_b);
  for (const auto& g : expanded.groups()) {
    for (double f : g.frequency) CHECK(f == 0.0);
  }

  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto q = random_quasi(rng, 1 + i % 3, 4.0);
    const auto e = abs_sq_expand_nd(q);
    CHECK(e.groups().size() <= q.kappa());
    for (int j = 0; j < 100; ++j) {
      const double pt[] = {u(rng), u(rng)};
      const double ref = std::norm(q(pt));
      CHECK(std::abs(e(pt) - ref) <= 1e-10 * (1.0 + ref));
    }
  }
}

TEST_CASE("cover_bounds_nd examples") {
  const NDPointSet one(2, {{0.3, 0.4}});
  CHECK(cover_bounds_nd(one, 0.1).lower == 1);
  CHECK(cover_bounds_nd(one, 0.1).upper == 1);

  for (std::size_t n = 1; n <= 3; ++n) {
    const double eps = 0.2;
    const auto g = grid(n, {0.0, 2 * eps});
    const auto b = cover_bounds_nd(g, eps);
    CHECK(b.lower == (1u << n));
    CHECK(b.upper == (1u << n));
  }
  const double eps = 0.1;
  const NDPointSet pair(2, {{0.51, 0.33}, {0.51 + eps / 2, 0.33 + eps / 2}});
  CHECK(cover_bounds_nd(pair, eps).lower == 1);
  CHECK(cover_bounds_nd(pair, eps).upper == 1);

  CHECK_THROWS_AS(cover_bounds_nd(NDPointSet(5, {{0, 0, 0, 0, 0}}), 0.1), InputError);
  CHECK_THROWS_AS(NDPointSet(2, {{0.5, 1.5}}), InputError);
  CHECK(NDPointSet(2, {{0.5, 0.5}, {0.5, 0.5}}).size() == 1);
}

TEST_CASE("property: sandwich and exact grids") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0), ue(0.02, 0.5);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::vector<double>> pts;
    const int count = 1 + i % 40;
    for (int j = 0; j < count; ++j) pts.push_back({u(rng), u(rng)});
    const NDPointSet s(2, pts);
    const double eps = ue(rng);
    const auto b = cover_bounds_nd(s, eps);
    CHECK(b.lower <= b.upper);
    CHECK(b.lower >= 1);
    CHECK(b.upper <= s.size());
  }
  for (std::size_t k = 2; k <= 6; ++k) {
    std::vector<double> axis;
    for (std::size_t j = 0; j < k; ++j) axis.push_back(static_cast<double>(j) / (k - 1));
    const auto g = grid(2, axis);
    const double spacing = 1.0 / (k - 1);
    for (double f : {0.3, 0.7, 0.99}) {
      const auto b = cover_bounds_nd(g, f * spacing);
      CHECK(b.lower == k * k);
      CHECK(b.upper == k * k);
    }
  }
}

TEST_CASE("metric_span_nd_lower") {
  const std::vector<double> eps_grid{0.5, 0.33, 0.25, 0.1};
  CHECK(metric_span_nd_lower(NDPointSet(2, {}), [](double) { return 1.0; }, eps_grid) == 0.0);
  const auto g = grid(2, {0.0, 1.0 / 3, 2.0 / 3, 1.0});
  CHECK(metric_span_nd_lower(g, [](double) { return 16.0; }, eps_grid) == 0.0);
  CHECK(metric_span_nd_lower(g, [](double) { return 20.0; }, eps_grid) == 0.0);
  // Spacing 1/3 > 0.33: all 16 points are separated.
  const double v = metric_span_nd_lower(g, [](double) { return 1.0; }, eps_grid);
  CHECK(v == doctest::Approx(0.33 * 0.33 * 15));
  // With eps equal to the (dyadic) spacing, neighbours share a closed cube
  // and the greedy packing keeps every other point per axis.
  const auto d = grid(2, {0.0, 0.25, 0.5, 0.75});
  const std::vector<double> quarter{0.25};
  CHECK(cover_bounds_nd(d, 0.25).lower == 4);
  CHECK(metric_span_nd_lower(d, [](double) { return 1.0; }, quarter) ==
        doctest::Approx(0.0625 * 3));
  const std::vector<double> bad{1.5};
  CHECK_THROWS_AS(metric_span_nd_lower(g, [](double) { return 1.0; }, bad), InputError);
}

TEST_CASE("property: span approaches volume for dense samples") {
  // Box [0.2, 0.7] x [0.1, 0.5] of volume 0.2 sampled on a fine lattice.
  std::vector<std::vector<double>> pts;
  const int N = 101;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      pts.push_back({0.2 + 0.5 * i / (N - 1), 0.1 + 0.4 * j / (N - 1)});
    }
  }
  const NDPointSet s(2, pts);
  const std::vector<double> eps_grid{0.1, 0.05, 0.02, 0.01};
  const double v = metric_span_nd_lower(s, [](double) { return 1.0; }, eps_grid);
  CHECK(v >= 0.2 - 0.05);
}

TEST_CASE("vitushkin_eval") {
  const Profile p = [](double e) { return 3.0 + 2.0 / e; };
  CHECK(vitushkin_eval(p, 0.0, 0.5, 2) == p(0.5));
  const Profile c = [](double) { return 7.0; };
  CHECK(vitushkin_eval(c, 0.3, 0.1, 1) == doctest::Approx(7.0 + 0.3 / 0.1));
  CHECK(vitushkin_eval(p, 0.25, 1.0, 2) == doctest::Approx(5.25));
  CHECK_THROWS_AS(vitushkin_eval(p, 0.25, 0.0, 2), InputError);
  CHECK_THROWS_AS(vitushkin_eval(p, 0.25, 1.1, 2), InputError);
}

TEST_CASE("brudnyi_rhs") {
  std::mt19937_64 rng(54);
  const auto q = random_quasi(rng, 2, 1.0);
  const BrudnyiConstants k{0.5, 2.0, 0.7, 1.3};
  CHECK(brudnyi_rhs(q, 1.0, 1.0, k).value == doctest::Approx(1.0));
  const auto a = brudnyi_rhs(q, 1.0, 0.1, k);
  const auto b = brudnyi_rhs(q, 1.0, 0.2, k);
  CHECK(b.value == doctest::Approx(a.value / std::pow(2.0, a.exponent)));
  const auto lin = single({0.3, 0.4}, {0.0, 0.0});
  const auto l = brudnyi_rhs(lin, 2.0, 0.5, k);
  CHECK(l.exponent == doctest::Approx(1.3 + 0.7 * 0.5 * 2.0));
  CHECK(brudnyi_rhs(q, 1.0, 0.0, k).vacuous);
}

TEST_CASE("frequency_profile of a quasipolynomial") {
  const auto q = single({0.0, 0.0}, {1.0, 0.0});
  const auto prof = frequency_profile(q);
  CHECK(prof.dimension() == 2);
  // One term: max_frequency is 0, so the profile vanishes.
  CHECK(prof(0.5) == 0.0);
}

TEST_CASE("property: sublevel rasters respect the covering estimate") {
  std::mt19937_64 rng(55);
  int checked = 0;
  // Two terms keep the frequency positive; at frequency 0 every profile
  // coefficient vanishes and the estimate degenerates to the measure term.
  for (int i = 0; i < 20; ++i) {
    const auto q = random_quasi(rng, 2, 3.0);
    REQUIRE(q.max_frequency() > 0.0);
    const auto e = abs_sq_expand_nd(q);
    const auto prof = frequency_profile(q);
    double top = 0.0;
    for (int a = 0; a <= 20; ++a) {
      for (int b = 0; b <= 20; ++b) {
        const double pt[] = {a / 20.0, b / 20.0};
        top = std::max(top, e(pt));
      }
    }
    const double level = 0.3 * top;
    for (double eps : {1.0 / 8, 1.0 / 16}) {
      const auto r = rasterize_sublevel(e, level, eps);
      const double measured = static_cast<double>(r.inside + r.uncertain);
      const double mu_lower = static_cast<double>(r.inside) * eps * eps;
      const Profile pf = [&](double x) { return prof(x); };
      CHECK(measured <= vitushkin_eval(pf, mu_lower, eps, 2) + 1e-9);
      ++checked;
    }
  }
  CHECK(checked == 40);
}
