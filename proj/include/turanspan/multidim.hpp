#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "turanspan/bounds.hpp"

namespace turanspan {

using Monomial = std::vector<unsigned>;

// Polynomial in n real variables with complex coefficients.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t n = 1) : n_(n) {}
  MultiPoly(std::size_t n, std::map<Monomial, std::complex<double>> coeffs);

  std::size_t variables() const { return n_; }
  const std::map<Monomial, std::complex<double>>& coefficients() const { return coeffs_; }
  // Total degree of the nonzero part; 0 for the zero polynomial.
  unsigned degree() const;

  std::complex<double> operator()(std::span<const double> x) const;

  MultiPoly operator*(const MultiPoly& other) const;
  MultiPoly conjugate() const;
  MultiPoly real_part() const;
  MultiPoly imag_part() const;
  MultiPoly scaled(double s) const;

  // sup over [0,1]^n of |value| and of the gradient norm.
  double cube_bound() const;
  double cube_gradient_bound() const;

 private:
  std::size_t n_;
  std::map<Monomial, std::complex<double>> coeffs_;
};

struct QuasiTerm {
  MultiPoly poly;
  std::vector<double> a;  // real part of the linear functional
  std::vector<double> b;  // imaginary part
};

/// p(x) = sum_j p_j(x) exp(<a_j + i b_j, x>) on R^n.
class Quasipolynomial {
 public:
  Quasipolynomial(std::size_t n, std::vector<QuasiTerm> terms);

  std::size_t dimension() const { return n_; }
  const std::vector<QuasiTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  // m = sum (d_j + 1)
  std::size_t degree() const;
  // k(k+1)/2
  std::size_t kappa() const;
  // max ||b_i - b_j||
  double max_frequency() const;
  // max_{i<=j} d_i + d_j
  unsigned max_degree_sum() const;

  std::complex<double> operator()(std::span<const double> x) const;

 private:
  std::size_t n_;
  std::vector<QuasiTerm> terms_;
};

// max_j ||a_j + i b_j||, the largest |f_j . z| over the complex unit ball.
double exp_type(const Quasipolynomial& q);

struct TrigGroup {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<double> rate;       // a_i + a_j
  std::vector<double> frequency;  // b_i - b_j
  MultiPoly sin_poly;             // P_ij, real coefficients
  MultiPoly cos_poly;             // Q_ij, real coefficients
};

// sum over groups of exp(<rate,x>) [P sin<freq,x> + Q cos<freq,x>].
class RealTrigQuasipolynomial {
 public:
  RealTrigQuasipolynomial(std::size_t n, std::vector<TrigGroup> groups)
      : n_(n), groups_(std::move(groups)) {}

  std::size_t dimension() const { return n_; }
  const std::vector<TrigGroup>& groups() const { return groups_; }
  double operator()(std::span<const double> x) const;
  // Upper bound for the gradient norm on [0,1]^n.
  double cube_gradient_bound() const;

 private:
  std::size_t n_;
  std::vector<TrigGroup> groups_;
};

// One group per pair i <= j, so at most k(k+1)/2 groups.
RealTrigQuasipolynomial abs_sq_expand_nd(const Quasipolynomial& q);

// Points of the unit cube [0,1]^n, duplicates removed.
class NDPointSet {
 public:
  NDPointSet(std::size_t n, std::vector<std::vector<double>> points);

  std::size_t dimension() const { return n_; }
  const std::vector<std::vector<double>>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

 private:
  std::size_t n_;
  std::vector<std::vector<double>> points_;
};

struct CoverBounds {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
};

/// Two-sided bounds on the number of translates of [0,eps]^n covering the
/// set. upper: fewest occupied cells over a lattice of grid shifts;
/// lower: greedy packing with pairwise sup-norm distance > eps.
CoverBounds cover_bounds_nd(const NDPointSet& omega, double eps,
                            unsigned shifts_per_axis = 4);

using Profile = std::function<double(double)>;

// max over eps_grid of eps^n (lower(eps) - M_D(eps)), floored at 0.
double metric_span_nd_lower(const NDPointSet& omega, const Profile& profile,
                            std::span<const double> eps_grid);

// M_D(eps) + mu_A eps^{-n}, for 0 < eps <= 1.
double vitushkin_eval(const Profile& profile, double mu_a, double eps, unsigned n);

// Profile of q with the max_{i<=j}(d_i + d_j) degree sum for every equation.
FrequencyProfile frequency_profile(const Quasipolynomial& q, double rho = 1.0);

struct BrudnyiConstants {
  double c = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double c_km = 1.0;
};

struct BrudnyiBound {
  double value = 0.0;
  double exponent = 0.0;  // l
  bool vacuous = false;
};

// (c n vol_B / denom)^l with l = c_km + (m-1) log(c1 max(1,t)) + c2 t diam(B).
BrudnyiBound brudnyi_rhs(const Quasipolynomial& q, double b_diam, double denom,
                         const BrudnyiConstants& k, double vol_b = 1.0);

struct Raster {
  std::uint64_t inside = 0;     // cells certainly inside the sublevel set
  std::uint64_t uncertain = 0;  // cells that may meet it
  double eps = 0.0;
};

// Classifies the eps-cells of [0,1]^n against {q <= level} using the
// centre value padded by the gradient bound.
Raster rasterize_sublevel(const RealTrigQuasipolynomial& q, double level, double eps);

}  // namespace turanspan
