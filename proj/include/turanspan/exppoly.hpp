#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace turanspan {

using Complex = std::complex<double>;

// Closed bounded interval [lo, hi] of the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double t) const { return lo <= t && t <= hi; }
};

struct ExpTerm {
  Complex coeff;
  Complex exponent;
};

/// p(t) = sum_k c_k exp(lambda_k t) with complex coefficients and exponents.
///
/// The degree is the number of terms minus one. Exponents must be pairwise
/// distinct; two exponents closer than `kExponentTolerance` in both real and
/// imaginary parts are rejected.
class ExpPolynomial1D {
 public:
  static constexpr double kExponentTolerance = 1e-12;

  explicit ExpPolynomial1D(std::vector<ExpTerm> terms);

  // Real coefficients and real exponents.
  static ExpPolynomial1D real(std::span<const double> coeffs,
                              std::span<const double> exponents);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  std::size_t degree() const { return terms_.size() - 1; }

  // max_k |Im lambda_k|
  double max_frequency() const;
  // max_k |lambda_k|
  double max_abs_exponent() const;
  // max_k |Re lambda_k|
  double max_abs_real_exponent() const;

  // True when every c_k and lambda_k is real, so p is real on the real line.
  bool is_real() const;

  ExpPolynomial1D conjugate() const;
  ExpPolynomial1D scaled(Complex factor) const;

 private:
  std::vector<ExpTerm> terms_;
};

// Throws OverflowError if some |Re lambda_k * t| leaves the double exponent
// range.
Complex eval(const ExpPolynomial1D& p, double t);
Complex eval_derivative(const ExpPolynomial1D& p, double t);

struct TrigTerm {
  double amplitude = 0.0;
  double rate = 0.0;
  double frequency = 0.0;  // >= 0
  double phase = 0.0;
};

// q(t) = sum A exp(rate t) cos(frequency t + phase); real on the real line.
class RealExpTrigPolynomial {
 public:
  RealExpTrigPolynomial() = default;
  explicit RealExpTrigPolynomial(std::vector<TrigTerm> terms)
      : terms_(std::move(terms)) {}

  const std::vector<TrigTerm>& terms() const { return terms_; }
  double max_frequency() const;

  double operator()(double t) const;
  // Upper bound for sup |q'| over [B.lo, B.hi].
  double derivative_bound(const Interval& B) const;

 private:
  std::vector<TrigTerm> terms_;
};

double eval_abs_sq(const RealExpTrigPolynomial& q, double t);

/// Real expansion of |p(t)|^2.
///
/// Zero coefficients are dropped first; the remaining r terms produce
/// r(r+1)/2 entries: gamma_k^2 exp(2 a_k t) on the diagonal and
/// 2 gamma_k gamma_l exp((a_k+a_l) t) cos(|b_k-b_l| t +- (phi_k-phi_l))
/// for k < l.
RealExpTrigPolynomial abs_sq_expand(const ExpPolynomial1D& p);

// sum_k |c_k| |lambda_k|^order max(e^{a_k lo}, e^{a_k hi}) >= sup_B |p^(order)|.
double derivative_bound(const ExpPolynomial1D& p, const Interval& B, int order);

// Lipschitz certificate: upper bound for sup_B |p'|.
double derivative_sup_bound(const ExpPolynomial1D& p, const Interval& B);

struct ProductParams {
  std::size_t degree_bound = 0;  // m^2 as stated for |p|^2
  double exponent_bound = 0.0;   // 2 * max|lambda_k|
};

ProductParams nazarov_product_params(const ExpPolynomial1D& p);

}  // namespace turanspan
