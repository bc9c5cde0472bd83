#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "turanspan/bounds.hpp"
#include "turanspan/exppoly.hpp"
#include "turanspan/sets.hpp"

namespace turanspan {

// lo <= true value <= hi. certified is false when an iteration cap stopped
// refinement before the requested width was reached (the bracket is still
// valid).
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  bool certified = true;

  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Branch and bound for sup_B |p|.
///
/// Each subinterval is bounded by the smaller of |p(mid)| + sup|p'| r and
/// the square root of the second-order Taylor bound for |p|^2. Stops once
/// hi - lo <= tolerance * (1 + hi).
Bracket sup_abs(const ExpPolynomial1D& p, const Interval& B, double tolerance,
                std::size_t max_evaluations = 4'000'000);

struct CrossingCount {
  std::size_t count = 0;
  bool degenerate = false;  // possible tangency near a grid extremum
};

// Default grid step: a quarter period of the fastest oscillation of |p|^2,
// capped at |B| / 256.
double auto_resolution(const ExpPolynomial1D& p, const Interval& B);

/// Number of sign changes of |p|^2 - eta on an adaptive grid over B.
///
/// For eta = 0 and real p the zeros of p itself are counted (|p|^2 only
/// touches zero). Pass resolution <= 0 for auto_resolution.
CrossingCount level_crossings(const ExpPolynomial1D& p, double eta,
                              const Interval& B, double resolution = 0.0);

struct Sublevel {
  RealSet1D set;
  bool degenerate = false;
};

// {t in B : |p(t)| <= rho} with component endpoints located to `tolerance`.
Sublevel sublevel_set(const ExpPolynomial1D& p, double rho, const Interval& B,
                      double tolerance = 1e-12, double resolution = 0.0);

struct Vanishing {
  std::vector<double> coeffs;  // max |c_k| = 1, first nonzero entry positive
  double residual = 0.0;       // max_j |p(x_j)|
  double condition = 0.0;      // ratio of extreme singular values
};

/// Real exponential polynomial with the given m+1 exponents vanishing at
/// the given m points (kernel of the matrix [exp(lambda_k x_j)]).
/// Throws CertificationError when the condition estimate exceeds 1e12.
Vanishing construct_vanishing(std::span<const double> points,
                              std::span<const double> exponents);

enum class VerifyStatus { ok, vacuous_zero_sup, vacuous_zero_span, khovanskii_refused };

std::string to_string(VerifyStatus s);
VerifyStatus parse_status(const std::string& s);

struct VerifyReport {
  Bracket sup_b;
  Bracket sup_omega;
  Variant variant = Variant::nazarov_complex;
  double md = 0.0;
  std::string md_exact;  // decimal digits of the exact frequency bound
  SpanResult span;
  double exp_factor = 1.0;
  // Smallest c for which the span inequality holds on this instance, from
  // the upper ends of both brackets; the bracket collects the extreme
  // combinations. Absent unless status is ok and m >= 1.
  std::optional<double> c_required;
  std::optional<Bracket> c_required_bracket;
  VerifyStatus status = VerifyStatus::ok;
  std::vector<std::string> warnings;
};

VerifyReport verify_inequality(const ExpPolynomial1D& p, const Interval& B,
                               const RealSet1D& omega, Variant variant,
                               double tolerance = 1e-9);

enum class OmegaKind { points, intervals, whole };

/// Seeded random study of c_required.
///
/// Coefficients are uniform on [-1,1] (real) or [-1,1]^2 (complex);
/// exponents are uniform on [re_lo, re_hi] + i[im_lo, im_hi] (imaginary part
/// zero for the real variant) with near-duplicates (gap < 1e-6) redrawn.
/// The degree m is uniform on {1..m_max}. Point sets draw m+1+U{0..extra}
/// uniform points of B; interval sets draw 1..3 random subintervals.
struct EnsembleConfig {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::size_t m_max = 3;
  double re_lo = -1.0;
  double re_hi = 1.0;
  double im_lo = -2.0;
  double im_hi = 2.0;
  Interval B{0.0, 1.0};
  OmegaKind omega = OmegaKind::points;
  std::size_t extra_points = 4;
  Variant variant = Variant::real_chebyshev;
  double tolerance = 1e-9;
};

struct EnsembleRow {
  std::size_t instance_id = 0;
  std::size_t m = 0;
  VerifyReport report;
};

struct EnsembleSummary {
  std::size_t count = 0;
  std::size_t ok = 0;
  std::size_t vacuous_zero_sup = 0;
  std::size_t vacuous_zero_span = 0;
  std::size_t khovanskii_refused = 0;
  std::optional<double> c_max;
  std::optional<double> c_median;
  std::optional<double> c_q90;
  std::optional<double> c_q99;
};

struct EnsembleResult {
  std::vector<EnsembleRow> rows;
  EnsembleSummary summary;
};

EnsembleResult ensemble(const EnsembleConfig& config);

// Header plus one line per instance; numbers use 17 significant digits.
void write_csv(std::ostream& out, const EnsembleResult& result);

}  // namespace turanspan
