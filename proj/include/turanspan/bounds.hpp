#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "turanspan/exppoly.hpp"

namespace turanspan {

using BigCount = boost::multiprecision::cpp_int;
using BigReal = boost::multiprecision::cpp_bin_float_100;

enum class Variant { khovanskii_complex, nazarov_complex, real_chebyshev };

std::string to_string(Variant v);
// Accepts "khovanskii", "nazarov", "real" (and the long enum spellings).
Variant parse_variant(const std::string& name);

// Parameters that fix a frequency bound: degree, |B| and a frequency datum
// (max |Im lambda_k| for khovanskii, max |lambda_k| for nazarov, unused for
// real).
struct Diagram {
  Variant variant = Variant::nazarov_complex;
  std::size_t m = 0;
  double len_b = 0.0;
  double freq = 0.0;

  static Diagram of(const ExpPolynomial1D& p, const Interval& B, Variant v);
};

struct FrequencyBound {
  BigCount exact;
  double value = 0.0;  // exact rounded up to a double; +inf past the range
  bool saturated = false;  // exact > 2^63
  std::vector<std::string> warnings;
};

// base^exponent by repeated squaring.
BigCount big_pow(const BigCount& base, unsigned exponent);

// n (2n+1)^{2n} 2^{2n^2} with n = (m+1)(m+2)/2 + 1.
BigCount khovanskii_C(std::size_t m);

/// Frequency bound M_D of a diagram, computed exactly.
///
/// Doubles are exact dyadic rationals, so the products C(m)|B|lambda and
/// 14 lambda|B| are formed without rounding and the floor is exact.
FrequencyBound frequency_bound(const Diagram& d);

// 4m + 7 lambda_hat r: zeros of p inside any disk of radius r.
double disk_zero_bound(std::size_t m, double lambda_hat, double r);

// m_1...m_n (sum m_i + p + 1)^{p+k} 2^{p + (p+k)(p+k-1)/2}
BigCount khovanskii_system_bound(std::span<const unsigned> degrees, unsigned k,
                                 unsigned p);

// Critical-point count constant for an s-dimensional coordinate slice;
// rounded upward.
BigReal c_hat(unsigned s, double rho, std::span<const unsigned> degree_sums,
              unsigned kappa);

/// M_D(eps) = sum_{j<n} C_j eps^{-j} with
/// C_{n-s} = binom(n, s) 2^{n-s} c_hat_s lambda^s for s = 1..n.
class FrequencyProfile {
 public:
  FrequencyProfile(unsigned n, std::vector<BigReal> coefficients)
      : n_(n), coefficients_(std::move(coefficients)) {}

  unsigned dimension() const { return n_; }
  const std::vector<BigReal>& coefficients() const { return coefficients_; }

  // Throws InputError unless 0 < eps <= 1.
  BigReal evaluate(double eps) const;
  // Rounded upward; +inf when out of double range.
  double operator()(double eps) const;

 private:
  unsigned n_;
  std::vector<BigReal> coefficients_;
};

// degree_sums supplies per-equation degree sums; c_hat_s uses the first s.
FrequencyProfile md_frequency_profile(unsigned n,
                                      std::span<const unsigned> degree_sums,
                                      unsigned kappa, double lambda,
                                      double rho = 1.0);

double to_double_up(const BigCount& x);
double to_double_up(const BigReal& x);

}  // namespace turanspan
