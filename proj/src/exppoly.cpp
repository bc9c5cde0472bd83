#include "turanspan/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "turanspan/error.hpp"

namespace turanspan {
namespace {

const double kMaxExpArg = std::log(std::numeric_limits<double>::max());

void check_exponent_range(double real_part, double t) {
  const double arg = real_part * t;
  if (!std::isfinite(arg) || std::abs(arg) > kMaxExpArg) {
    throw OverflowError("exponent Re(lambda)*t = " + std::to_string(arg) +
                        " outside the double range");
  }
}

// Neumaier-compensated accumulation in extended precision.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

Complex eval_scaled(const ExpPolynomial1D& p, double t, int order) {
  CompensatedSum re, im;
  for (const auto& term : p.terms()) {
    check_exponent_range(term.exponent.real(), t);
    const long double a = term.exponent.real();
    const long double b = term.exponent.imag();
    const long double mag = std::exp(a * static_cast<long double>(t));
    const long double angle = b * static_cast<long double>(t);
    std::complex<long double> e(mag * std::cos(angle), mag * std::sin(angle));
    std::complex<long double> c(term.coeff.real(), term.coeff.imag());
    for (int i = 0; i < order; ++i) c *= std::complex<long double>(a, b);
    const auto v = c * e;
    re.add(v.real());
    im.add(v.imag());
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

}  // namespace

ExpPolynomial1D::ExpPolynomial1D(std::vector<ExpTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw InputError("exponential polynomial needs at least one term");
  }
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()) ||
        !std::isfinite(t.exponent.real()) || !std::isfinite(t.exponent.imag())) {
      throw InputError("non-finite coefficient or exponent");
    }
  }
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    for (std::size_t l = k + 1; l < terms_.size(); ++l) {
      const Complex d = terms_[k].exponent - terms_[l].exponent;
      if (std::abs(d.real()) <= kExponentTolerance &&
          std::abs(d.imag()) <= kExponentTolerance) {
        throw InputError("exponents " + std::to_string(k) + " and " +
                         std::to_string(l) + " are not distinct");
      }
    }
  }
}

ExpPolynomial1D ExpPolynomial1D::real(std::span<const double> coeffs,
                                      std::span<const double> exponents) {
  if (coeffs.size() != exponents.size()) {
    throw InputError("coefficient and exponent counts differ");
  }
  std::vector<ExpTerm> terms;
  terms.reserve(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    terms.push_back({Complex(coeffs[k], 0.0), Complex(exponents[k], 0.0)});
  }
  return ExpPolynomial1D(std::move(terms));
}

double ExpPolynomial1D::max_frequency() const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, std::abs(t.exponent.imag()));
  return r;
}

double ExpPolynomial1D::max_abs_exponent() const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, std::abs(t.exponent));
  return r;
}

double ExpPolynomial1D::max_abs_real_exponent() const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, std::abs(t.exponent.real()));
  return r;
}

bool ExpPolynomial1D::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const ExpTerm& t) {
    return t.coeff.imag() == 0.0 && t.exponent.imag() == 0.0;
  });
}

ExpPolynomial1D ExpPolynomial1D::conjugate() const {
  std::vector<ExpTerm> out = terms_;
  for (auto& t : out) {
    t.coeff = std::conj(t.coeff);
    t.exponent = std::conj(t.exponent);
  }
  return ExpPolynomial1D(std::move(out));
}

ExpPolynomial1D ExpPolynomial1D::scaled(Complex factor) const {
  std::vector<ExpTerm> out = terms_;
  for (auto& t : out) t.coeff *= factor;
  return ExpPolynomial1D(std::move(out));
}

Complex eval(const ExpPolynomial1D& p, double t) { return eval_scaled(p, t, 0); }

Complex eval_derivative(const ExpPolynomial1D& p, double t) {
  return eval_scaled(p, t, 1);
}

double RealExpTrigPolynomial::max_frequency() const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, t.frequency);
  return r;
}

double RealExpTrigPolynomial::operator()(double t) const {
  CompensatedSum s;
  for (const auto& term : terms_) {
    check_exponent_range(term.rate, t);
    const long double lt = t;
    s.add(static_cast<long double>(term.amplitude) * std::exp(term.rate * lt) *
          std::cos(term.frequency * lt + term.phase));
  }
  return static_cast<double>(s.value());
}

double RealExpTrigPolynomial::derivative_bound(const Interval& B) const {
  double r = 0.0;
  for (const auto& term : terms_) {
    check_exponent_range(term.rate, B.lo);
    check_exponent_range(term.rate, B.hi);
    const double growth =
        std::max(std::exp(term.rate * B.lo), std::exp(term.rate * B.hi));
    r += std::abs(term.amplitude) * (std::abs(term.rate) + term.frequency) * growth;
  }
  return r;
}

double eval_abs_sq(const RealExpTrigPolynomial& q, double t) { return q(t); }

RealExpTrigPolynomial abs_sq_expand(const ExpPolynomial1D& p) {
  struct Polar {
    double gamma, phi, a, b;
  };
  std::vector<Polar> polar;
  for (const auto& t : p.terms()) {
    const double gamma = std::abs(t.coeff);
    if (gamma == 0.0) continue;
    // std::arg lies in [-pi, pi]; fold -pi onto pi.
    double phi = std::arg(t.coeff);
    if (phi <= -std::numbers::pi) phi = std::numbers::pi;
    polar.push_back({gamma, phi, t.exponent.real(), t.exponent.imag()});
  }

  std::vector<TrigTerm> out;
  out.reserve(polar.size() * (polar.size() + 1) / 2);
  for (const auto& k : polar) {
    out.push_back({k.gamma * k.gamma, 2.0 * k.a, 0.0, 0.0});
  }
  for (std::size_t k = 0; k < polar.size(); ++k) {
    for (std::size_t l = k + 1; l < polar.size(); ++l) {
      const auto& u = polar[k];
      const auto& v = polar[l];
      double freq = u.b - v.b;
      double phase = u.phi - v.phi;
      if (freq < 0.0) {
        freq = -freq;
        phase = -phase;
      }
      out.push_back({2.0 * u.gamma * v.gamma, u.a + v.a, freq, phase});
    }
  }
  return RealExpTrigPolynomial(std::move(out));
}

double derivative_bound(const ExpPolynomial1D& p, const Interval& B, int order) {
  double r = 0.0;
  for (const auto& t : p.terms()) {
    const double a = t.exponent.real();
    check_exponent_range(a, B.lo);
    check_exponent_range(a, B.hi);
    const double growth = std::max(std::exp(a * B.lo), std::exp(a * B.hi));
    r += std::abs(t.coeff) * std::pow(std::abs(t.exponent), order) * growth;
  }
  return r;
}

double derivative_sup_bound(const ExpPolynomial1D& p, const Interval& B) {
  return derivative_bound(p, B, 1);
}

ProductParams nazarov_product_params(const ExpPolynomial1D& p) {
  const std::size_t m = p.degree();
  return {m * m, 2.0 * p.max_abs_exponent()};
}

}  // namespace turanspan
