#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "turanspan/error.hpp"
#include "turanspan/verify.hpp"

using namespace turanspan;
using namespace std::complex_literals;

namespace {

const double kPi = std::numbers::pi;

ExpPolynomial1D sine() { return ExpPolynomial1D({{-0.5i, 1i}, {0.5i, -1i}}); }

ExpPolynomial1D exp_minus_one() {
  const double c[] = {1.0, -1.0}, l[] = {1.0, 0.0};
  return ExpPolynomial1D::real(c, l);
}

}  // namespace

TEST_CASE("sup_abs examples") {
  const auto s = sup_abs(sine(), {0.0, kPi}, 1e-10);
  CHECK(s.certified);
  CHECK(s.contains(1.0));
  CHECK(s.width() <= 1e-10 * (1.0 + s.hi));

  const auto e = sup_abs(ExpPolynomial1D({{1.0, 1.0}}), {0.0, 1.0}, 1e-10);
  CHECK(e.contains(std::exp(1.0)));
  CHECK(e.width() <= 1e-9);

  const auto em1 = sup_abs(exp_minus_one(), {0.0, 1.0}, 1e-10);
  CHECK(em1.contains(std::exp(1.0) - 1.0));

  const auto point = sup_abs(exp_minus_one(), {0.5, 0.5}, 1e-10);
  CHECK(point.contains(std::exp(0.5) - 1.0));
  CHECK(point.width() <= 1e-14);
}

TEST_CASE("sup_abs reports an exhausted budget") {
  const auto b = sup_abs(sine(), {0.0, 100.0}, 1e-15, 50);
  CHECK_FALSE(b.certified);
  CHECK(b.contains(1.0));
}

TEST_CASE("property: sup_abs brackets dominate samples") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const auto p = oracle::random_poly(rng, 1 + i % 4, false, -1.0, 1.0, -6.0, 6.0);
    const Interval B{-0.5, 1.5};
    const auto br = sup_abs(p, B, 1e-9);
    double sample = 0.0;
    for (int j = 0; j <= 2000; ++j) sample = std::max(sample, std::abs(eval(p, B.lo + B.length() * j / 2000)));
    CHECK(br.hi >= sample);
    CHECK(br.lo <= br.hi);
    CHECK(br.width() <= 1e-9 * (1.0 + br.hi));
  }
}

TEST_CASE("level_crossings examples") {
  const ExpPolynomial1D two_cos({{1.0, 1i}, {1.0, -1i}});
  const auto c1 = level_crossings(two_cos, 2.0, {0.0, 2 * kPi});
  CHECK(c1.count == 4);
  CHECK_FALSE(c1.degenerate);
  CHECK(level_crossings(ExpPolynomial1D({{1.0, 1.0}}), std::exp(1.0), {0.0, 2.0}).count == 1);
  CHECK(level_crossings(ExpPolynomial1D({{1.0, 0.0}}), 4.0, {-3.0, 3.0}).count == 0);
  // Written with complex terms, sin has |p|^2 touching zero: only tangencies.
  CHECK(level_crossings(sine(), 0.0, {-0.5, 10 * kPi - 0.5}).degenerate);
  const double sc[] = {1.0, -1.0}, sl[] = {1.0, -1.0};
  CHECK(level_crossings(ExpPolynomial1D::real(sc, sl), 0.0, {-1.0, 2.0}).count == 1);
}

TEST_CASE("level_crossings finds a narrow dip between coarse grid points") {
  const ExpPolynomial1D two_cos({{1.0, 1i}, {1.0, -1i}});
  for (double res : {1.0, 0.5, 0.2}) {
    const auto c = level_crossings(two_cos, 0.01, {0.0, kPi}, res);
    CHECK(c.count == 2);
    CHECK_FALSE(c.degenerate);
    const auto v = sublevel_set(two_cos, 0.1, {0.0, kPi}, 1e-12, res);
    REQUIRE(v.set.component_count() == 1);
    CHECK(v.set.lebesgue() == doctest::Approx(2.0 * std::asin(0.05)).epsilon(1e-9));
  }
}

TEST_CASE("property: real zero bound") {
  std::mt19937_64 rng(42);
  std::size_t violations = 0, degenerate = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t m = 1 + i % 4;
    const auto p = oracle::random_poly(rng, m, true, -3.0, 3.0, 0.0, 0.0);
    const auto c = level_crossings(p, 0.0, {0.0, 2.0});
    if (c.degenerate) {
      ++degenerate;
      continue;
    }
    if (c.count > m) ++violations;
  }
  CHECK(violations == 0);
  CHECK(degenerate < 10);
}

TEST_CASE("property: complex crossing bound") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ueta(0.0, 1.0);
  std::size_t violations = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = 1 + i % 3;
    const auto p = oracle::random_poly(rng, m, false, -1.0, 1.0, -8.0, 8.0);
    const Interval B{0.0, 2.0};
    const double d1 = 4.0 * m * m + 14.0 * p.max_abs_exponent() * B.length();
    const double top = sup_abs(p, B, 1e-6).hi;
    for (int j = 0; j < 5; ++j) {
      const double eta = ueta(rng) * top * top;
      const auto c = level_crossings(p, eta, B);
      if (!c.degenerate && static_cast<double>(c.count) > d1) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("sublevel_set examples") {
  const auto half = sublevel_set(sine(), 0.5, {0.0, kPi});
  REQUIRE(half.set.component_count() == 2);
  const auto& cs = half.set.components();
  CHECK(cs[0].lo == 0.0);
  CHECK(cs[0].hi == doctest::Approx(kPi / 6).epsilon(1e-11));
  CHECK(cs[1].lo == doctest::Approx(5 * kPi / 6).epsilon(1e-11));
  CHECK(cs[1].hi == kPi);

  const auto whole = sublevel_set(sine(), 1.5, {0.0, kPi});
  REQUIRE(whole.set.component_count() == 1);
  CHECK(whole.set.lebesgue() == doctest::Approx(kPi));

  const auto zero = sublevel_set(exp_minus_one(), 0.0, {0.0, 1.0});
  REQUIRE(zero.set.component_count() == 1);
  CHECK(zero.set.components()[0].is_point());
  CHECK(std::abs(zero.set.min()) < 1e-12);
}

TEST_CASE("property: sublevel components, covering and span-measure bound") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> ue(0.005, 0.5);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = 1 + i % 3;
    const auto p = oracle::random_poly(rng, m, false, -1.0, 1.0, -5.0, 5.0);
    const Interval B{0.0, 1.5};
    const double md = frequency_bound(Diagram::of(p, B, Variant::nazarov_complex)).value;
    const double top = sup_abs(p, B, 1e-8).hi;
    const double rho = 0.5 * top;
    const auto v = sublevel_set(p, rho, B);
    CHECK(static_cast<double>(v.set.component_count()) <= md);
    for (int j = 0; j < 20; ++j) {
      const double e = ue(rng);
      CHECK(static_cast<double>(cover_count(v.set, e)) <= md + v.set.lebesgue() / e + 1e-9);
    }
    // Omega: a few points of the sublevel set; V at level sup_Omega |p|.
    if (v.set.empty()) continue;
    std::vector<double> pts;
    for (const auto& c : v.set.components()) {
      pts.push_back(c.lo);
      pts.push_back(0.5 * (c.lo + c.hi));
    }
    const auto omega = RealSet1D::from_points(pts);
    double rho_hat = 0.0;
    for (double x : pts) rho_hat = std::max(rho_hat, std::abs(eval(p, x)));
    const auto vh = sublevel_set(p, rho_hat, B);
    CHECK(vh.set.lebesgue() >= metric_span(omega, md).value - 1e-9);
  }
}

TEST_CASE("construct_vanishing examples") {
  const double p0[] = {0.0}, e01[] = {0.0, 1.0};
  const auto v1 = construct_vanishing(p0, e01);
  CHECK(v1.coeffs[0] == doctest::Approx(1.0));
  CHECK(v1.coeffs[1] == doctest::Approx(-1.0));

  const double p01[] = {0.0, 1.0}, e012[] = {0.0, 1.0, 2.0};
  const auto v2 = construct_vanishing(p01, e012);
  CHECK(v2.residual < 1e-10);
  const auto q = ExpPolynomial1D::real(v2.coeffs, e012);
  CHECK(std::abs(eval(q, 0.0)) < 1e-10);
  CHECK(std::abs(eval(q, 1.0)) < 1e-10);

  const double pl[] = {std::log(2.0)};
  const auto v3 = construct_vanishing(pl, e01);
  CHECK(v3.coeffs[0] == doctest::Approx(1.0));
  CHECK(v3.coeffs[1] == doctest::Approx(-0.5));

  const double dup[] = {0.3, 0.3};
  CHECK_THROWS_AS(construct_vanishing(dup, e012), InputError);
  const double bad_e[] = {0.0, 1.0};
  CHECK_THROWS_AS(construct_vanishing(p01, bad_e), InputError);
  const double far[] = {0.0, 1e-14}, steep[] = {0.0, 1.0, 2.0};
  CHECK_THROWS_AS(construct_vanishing(far, steep), CertificationError);
}

TEST_CASE("property: sharpness") {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> ux(0.0, 1.0), ul(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const std::size_t m = 1 + i % 5;
    std::vector<double> pts, ex;
    while (pts.size() < m) {
      const double x = ux(rng);
      bool ok = true;
      for (double y : pts) ok = ok && std::abs(x - y) > 0.05;
      if (ok) pts.push_back(x);
    }
    while (ex.size() < m + 1) {
      const double l = ul(rng);
      bool ok = true;
      for (double y : ex) ok = ok && std::abs(l - y) > 0.3;
      if (ok) ex.push_back(l);
    }
    const auto v = construct_vanishing(pts, ex);
    const auto q = ExpPolynomial1D::real(v.coeffs, ex);
    const double sup_b = sup_abs(q, {0.0, 1.0}, 1e-6).hi;
    CHECK(sup_b > 0.0);
    CHECK(v.residual <= 1e-8 * sup_b);
    CHECK(metric_span(RealSet1D::from_points(pts), static_cast<double>(m)).value == 0.0);
  }
}

TEST_CASE("verify_inequality examples") {
  const auto r = verify_inequality(exp_minus_one(), {0.0, 1.0}, RealSet1D::from_points({0.5, 1.0}),
                                   Variant::real_chebyshev);
  CHECK(r.status == VerifyStatus::ok);
  CHECK(r.md == 1.0);
  CHECK(r.span.value == doctest::Approx(0.5));
  CHECK(r.exp_factor == doctest::Approx(std::exp(1.0)));
  REQUIRE(r.c_required.has_value());
  CHECK(*r.c_required == doctest::Approx(0.5 / std::exp(1.0)).epsilon(1e-8));
  REQUIRE(r.c_required_bracket.has_value());
  CHECK(r.c_required_bracket->contains(0.5 / std::exp(1.0)));

  std::vector<double> zeros;
  for (int k = 0; k <= 10; ++k) zeros.push_back(k * kPi);
  const auto z = verify_inequality(sine(), {0.0, 10 * kPi}, RealSet1D::from_points(zeros),
                                   Variant::nazarov_complex);
  CHECK(z.md == 222.0);
  CHECK(z.span.value == 0.0);
  CHECK(z.status == VerifyStatus::vacuous_zero_span);
  CHECK_FALSE(z.c_required.has_value());

  const double c[] = {1.0, -2.0, 0.5}, l[] = {0.0, 0.7, -1.3};
  const auto p = ExpPolynomial1D::real(c, l);
  const Interval B{0.0, 2.0};
  const auto w = verify_inequality(p, B, RealSet1D({}, {B}), Variant::real_chebyshev);
  CHECK(w.status == VerifyStatus::ok);
  CHECK(w.span.value == doctest::Approx(2.0));
  REQUIRE(w.c_required.has_value());
  CHECK(*w.c_required <= 1.0);
  CHECK(*w.c_required == doctest::Approx(std::pow(1.0 / w.exp_factor, 0.5)).epsilon(1e-9));
}

TEST_CASE("verify_inequality statuses and errors") {
  const ExpPolynomial1D real_exp({{1.0, 1.0}, {-1.0, 0.0}});
  CHECK_THROWS_AS(verify_inequality(real_exp, {0.0, 1.0}, RealSet1D::from_points({2.0}),
                                    Variant::real_chebyshev),
                  InputError);
  CHECK_THROWS_AS(verify_inequality(sine(), {0.0, 1.0}, RealSet1D::from_points({0.5}),
                                    Variant::real_chebyshev),
                  InputError);
  const auto refused = verify_inequality(real_exp, {0.0, 1.0}, RealSet1D::from_points({0.5}),
                                         Variant::khovanskii_complex);
  CHECK(refused.status == VerifyStatus::khovanskii_refused);
  const ExpPolynomial1D zero({{0.0, 0.0}});
  const auto zs = verify_inequality(zero, {0.0, 1.0}, RealSet1D::from_points({0.5}),
                                    Variant::real_chebyshev);
  CHECK(zs.status == VerifyStatus::vacuous_zero_sup);
}

TEST_CASE("property: c_required is invariant under scaling p") {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 30; ++i) {
    const auto p = oracle::random_poly(rng, 1 + i % 3, true, -1.0, 1.0, 0.0, 0.0);
    const auto omega = RealSet1D::from_points({0.05, 0.3, 0.41, 0.77, 0.9});
    const auto a = verify_inequality(p, {0.0, 1.0}, omega, Variant::real_chebyshev);
    const auto b = verify_inequality(p.scaled(-3.5), {0.0, 1.0}, omega, Variant::real_chebyshev);
    REQUIRE(a.status == b.status);
    if (a.c_required) CHECK(*a.c_required == doctest::Approx(*b.c_required).epsilon(1e-7));
  }
}

TEST_CASE("ensemble") {
  EnsembleConfig cfg;
  cfg.count = 0;
  std::ostringstream empty;
  write_csv(empty, ensemble(cfg));
  CHECK(empty.str() ==
        "instance_id,m,variant,sup_B_lo,sup_B_hi,sup_Omega,M_D,span,exp_factor,c_required,status\n");

  cfg.count = 40;
  cfg.seed = 99;
  std::ostringstream a, b;
  write_csv(a, ensemble(cfg));
  write_csv(b, ensemble(cfg));
  CHECK(a.str() == b.str());

  cfg.omega = OmegaKind::whole;
  const auto whole = ensemble(cfg);
  for (const auto& row : whole.rows) {
    if (row.report.c_required) CHECK(*row.report.c_required <= 1.0 + 1e-9);
  }
  CHECK(whole.summary.count == 40);

  cfg.omega = OmegaKind::intervals;
  cfg.variant = Variant::nazarov_complex;
  const auto iv = ensemble(cfg);
  CHECK(iv.summary.ok + iv.summary.vacuous_zero_span + iv.summary.vacuous_zero_sup +
            iv.summary.khovanskii_refused ==
        40);
}
