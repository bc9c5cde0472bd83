#include "turanspan/bounds.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <limits>

#include "turanspan/error.hpp"

namespace turanspan {
namespace {

// x = mantissa * 2^exponent exactly, for finite x >= 0.
struct Dyadic {
  BigCount mantissa;
  int exponent = 0;
};

Dyadic to_dyadic(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw InputError("diagram parameters must be finite and nonnegative");
  }
  if (x == 0.0) return {BigCount(0), 0};
  int e = 0;
  const double f = std::frexp(x, &e);
  const auto mant = static_cast<std::uint64_t>(std::ldexp(f, 53));
  return {BigCount(mant), e - 53};
}

// floor(n * 2^e) for n >= 0.
BigCount floor_shift(const BigCount& n, int e) {
  if (e >= 0) return n << e;
  return n >> (-e);
}

// Relative slack that dominates the accumulated rounding of a few hundred
// cpp_bin_float_100 operations.
const BigReal kUpward = BigReal(1) + pow(BigReal(2), -300);

BigReal binomial(unsigned n, unsigned k) {
  BigReal r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= BigReal(n - k + i);
    r /= BigReal(i);
  }
  return r;
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::khovanskii_complex:
      return "khovanskii";
    case Variant::nazarov_complex:
      return "nazarov";
    case Variant::real_chebyshev:
      return "real";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "khovanskii" || name == "KhovanskiiComplex") {
    return Variant::khovanskii_complex;
  }
  if (name == "nazarov" || name == "NazarovComplex") return Variant::nazarov_complex;
  if (name == "real" || name == "RealChebyshev") return Variant::real_chebyshev;
  throw InputError("unknown variant '" + name + "'");
}

Diagram Diagram::of(const ExpPolynomial1D& p, const Interval& B, Variant v) {
  Diagram d;
  d.variant = v;
  d.m = p.degree();
  d.len_b = B.length();
  switch (v) {
    case Variant::khovanskii_complex:
      d.freq = p.max_frequency();
      break;
    case Variant::nazarov_complex:
      d.freq = p.max_abs_exponent();
      break;
    case Variant::real_chebyshev:
      d.freq = 0.0;
      break;
  }
  return d;
}

BigCount big_pow(const BigCount& base, unsigned exponent) {
  BigCount result = 1;
  BigCount b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

BigCount khovanskii_C(std::size_t m) {
  const auto n = static_cast<unsigned>((m + 1) * (m + 2) / 2 + 1);
  return BigCount(n) * big_pow(BigCount(2 * n + 1), 2 * n) *
         big_pow(BigCount(2), 2 * n * n);
}

FrequencyBound frequency_bound(const Diagram& d) {
  FrequencyBound out;
  const Dyadic len = to_dyadic(d.len_b);
  const Dyadic freq = to_dyadic(d.freq);
  switch (d.variant) {
    case Variant::khovanskii_complex: {
      // floor(C(m) |B| lambda / 2) + 1
      const BigCount num = khovanskii_C(d.m) * len.mantissa * freq.mantissa;
      out.exact = floor_shift(num, len.exponent + freq.exponent - 1) + 1;
      if (d.freq * d.len_b < 1.0) {
        out.warnings.push_back(
            "khovanskii bound degenerates: lambda*|B| < 1 gives M_D = " +
            out.exact.str() + " although level crossings need not be rare");
      }
      break;
    }
    case Variant::nazarov_complex: {
      // floor((4m^2 + 14 lambda_hat |B|) / 2) + 1 = 2m^2 + floor(7 lambda_hat |B|) + 1
      const BigCount m(d.m);
      const BigCount num = BigCount(7) * len.mantissa * freq.mantissa;
      out.exact = 2 * m * m + floor_shift(num, len.exponent + freq.exponent) + 1;
      break;
    }
    case Variant::real_chebyshev:
      out.exact = BigCount(d.m);
      break;
  }
  out.value = to_double_up(out.exact);
  out.saturated = out.exact > (BigCount(1) << 63);
  return out;
}

double disk_zero_bound(std::size_t m, double lambda_hat, double r) {
  if (lambda_hat < 0.0 || r < 0.0) {
    throw InputError("disk_zero_bound needs lambda_hat, r >= 0");
  }
  return 4.0 * static_cast<double>(m) + 7.0 * lambda_hat * r;
}

BigCount khovanskii_system_bound(std::span<const unsigned> degrees, unsigned k,
                                 unsigned p) {
  if (degrees.empty()) throw InputError("system bound needs at least one equation");
  BigCount prod = 1;
  BigCount sum = 0;
  for (unsigned m : degrees) {
    prod *= m;
    sum += m;
  }
  const unsigned pk = p + k;
  const unsigned two_exp = p + pk * (pk == 0 ? 0 : pk - 1) / 2;
  return prod * big_pow(sum + p + 1, pk) * big_pow(BigCount(2), two_exp);
}

BigReal c_hat(unsigned s, double rho, std::span<const unsigned> degree_sums,
              unsigned kappa) {
  if (s < 1) throw InputError("c_hat needs s >= 1");
  if (!(rho > 0.0)) throw InputError("c_hat needs rho > 0");
  if (degree_sums.size() != s) throw InputError("c_hat needs s degree sums");
  if (kappa < 1) throw InputError("c_hat needs kappa >= 1");

  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const BigReal pi = boost::math::constants::pi<BigReal>();
  const BigReal base = BigReal(2) * sqrt(BigReal(s)) * BigReal(rho) / pi;

  BigReal prod = 1;
  unsigned long sum = 0;
  for (unsigned d : degree_sums) {
    prod *= BigReal(d);
    sum += d;
  }
  const unsigned long two_kappa = 2UL * kappa;
  const BigReal poly = pow(BigReal(sum + two_kappa + 1), static_cast<int>(two_kappa));
  const BigReal two = pow(BigReal(2), static_cast<int>(kappa + two_kappa * (two_kappa - 1) / 2));
  return pow(base, static_cast<int>(s)) * prod * poly * two * kUpward;
}

BigReal FrequencyProfile::evaluate(double eps) const {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw InputError("frequency profile is defined for 0 < eps <= 1");
  }
  const BigReal inv = BigReal(1) / BigReal(eps);
  BigReal total = 0;
  BigReal power = 1;
  for (const auto& c : coefficients_) {
    total += c * power;
    power *= inv;
  }
  return total * kUpward;
}

double FrequencyProfile::operator()(double eps) const {
  return to_double_up(evaluate(eps));
}

FrequencyProfile md_frequency_profile(unsigned n,
                                      std::span<const unsigned> degree_sums,
                                      unsigned kappa, double lambda, double rho) {
  if (n < 1) throw InputError("profile needs n >= 1");
  if (degree_sums.size() < n) throw InputError("profile needs n degree sums");
  if (!(lambda >= 0.0)) throw InputError("profile needs lambda >= 0");
  using boost::multiprecision::pow;
  std::vector<BigReal> coeffs(n);
  for (unsigned s = 1; s <= n; ++s) {
    const BigReal ch = c_hat(s, rho, degree_sums.first(s), kappa);
    coeffs[n - s] = binomial(n, s) * pow(BigReal(2), static_cast<int>(n - s)) * ch *
                    pow(BigReal(lambda), static_cast<int>(s)) * kUpward;
  }
  return FrequencyProfile(n, std::move(coeffs));
}

double to_double_up(const BigCount& x) {
  const double d = x.convert_to<double>();
  if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
  if (BigCount(d) < x) return std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

double to_double_up(const BigReal& x) {
  const double d = x.convert_to<double>();
  if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
  if (BigReal(d) < x) return std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace turanspan
