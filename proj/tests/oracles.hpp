#pragma once

// Independent reference implementations used only by the tests. They are
// deliberately naive (exhaustive enumeration, repeated multiplication) so
// that they share no code path with the library.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "turanspan/exppoly.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_int;

// Calls f(blocks) for every partition of indices 0..n-1 into contiguous
// blocks; blocks holds [begin, end) pairs.
template <class F>
void for_each_contiguous_partition(std::size_t n, F&& f) {
  if (n == 0) {
    f(std::vector<std::pair<std::size_t, std::size_t>>{});
    return;
  }
  const std::uint64_t cuts = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < cuts; ++mask) {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t begin = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (mask >> i & 1U) {
        blocks.emplace_back(begin, i + 1);
        begin = i + 1;
      }
    }
    blocks.emplace_back(begin, n);
    f(blocks);
  }
}

// Fewest closed eps-intervals covering sorted points.
inline std::size_t cover_count(const std::vector<double>& pts, double eps) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_contiguous_partition(pts.size(), [&](const auto& blocks) {
    for (auto [b, e] : blocks) {
      if (pts[e - 1] - pts[b] > eps) return;
    }
    best = std::min(best, blocks.size());
  });
  return pts.empty() ? 0 : best;
}

// Least eps with cover_count <= k, for sorted points.
inline double threshold(const std::vector<double>& pts, std::size_t k) {
  double best = std::numeric_limits<double>::infinity();
  for_each_contiguous_partition(pts.size(), [&](const auto& blocks) {
    if (blocks.size() > k) return;
    double worst = 0.0;
    for (auto [b, e] : blocks) worst = std::max(worst, pts[e - 1] - pts[b]);
    best = std::min(best, worst);
  });
  return best;
}

// sup over eps of eps (M(eps) - md) for a finite sorted point set, by
// evaluating each constant piece of M at its right end.
inline double finite_span(const std::vector<double>& pts, double md) {
  if (pts.empty()) return 0.0;
  if (md <= 0.0) return std::numeric_limits<double>::infinity();
  double best = 0.0;
  for (std::size_t k = 2; k <= pts.size(); ++k) {
    const double right = threshold(pts, k - 1);
    const double left = threshold(pts, k);
    if (right > left) best = std::max(best, right * (static_cast<double>(k) - md));
  }
  return best;
}

// Least total measure of eps-covers of sorted components [lo_i, hi_i].
inline double resolution_measure(const std::vector<std::pair<double, double>>& comps,
                                 double eps) {
  double best = std::numeric_limits<double>::infinity();
  for_each_contiguous_partition(comps.size(), [&](const auto& blocks) {
    double total = 0.0;
    for (auto [b, e] : blocks) total += std::max(eps, comps[e - 1].second - comps[b].first);
    best = std::min(best, total);
  });
  return comps.empty() ? 0.0 : best;
}

// n (2n+1)^{2n} 2^{2n^2} by one multiplication per factor.
inline Big khovanskii_C(std::size_t m) {
  const std::size_t n = (m + 1) * (m + 2) / 2 + 1;
  Big r = n;
  for (std::size_t i = 0; i < 2 * n; ++i) r *= (2 * n + 1);
  for (std::size_t i = 0; i < 2 * n * n; ++i) r *= 2;
  return r;
}

inline Big system_bound(const std::vector<unsigned>& degrees, unsigned k, unsigned p) {
  Big r = 1;
  unsigned sum = 0;
  for (unsigned d : degrees) {
    r *= d;
    sum += d;
  }
  for (unsigned i = 0; i < p + k; ++i) r *= (sum + p + 1);
  const unsigned s = p + k;
  const unsigned e = p + (s == 0 ? 0 : s * (s - 1) / 2);
  for (unsigned i = 0; i < e; ++i) r *= 2;
  return r;
}

// |p(t)|^2 as p(t) * conj(p(t)) in long double.
inline long double abs_sq(const turanspan::ExpPolynomial1D& p, double t) {
  std::complex<long double> s = 0;
  for (const auto& term : p.terms()) {
    const std::complex<long double> c(term.coeff.real(), term.coeff.imag());
    const std::complex<long double> l(term.exponent.real(), term.exponent.imag());
    s += c * std::exp(l * static_cast<long double>(t));
  }
  return std::norm(s);
}

inline turanspan::ExpPolynomial1D random_poly(std::mt19937_64& rng, std::size_t m, bool real,
                                              double re_lo, double re_hi, double im_lo,
                                              double im_hi) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), re(re_lo, re_hi), im(im_lo, im_hi);
  std::vector<turanspan::ExpTerm> terms;
  while (terms.size() < m + 1) {
    turanspan::Complex l(re(rng), real ? 0.0 : im(rng));
    bool close = false;
    for (const auto& t : terms) close = close || std::abs(t.exponent - l) < 1e-3;
    if (close) continue;
    terms.push_back({turanspan::Complex(u(rng), real ? 0.0 : u(rng)), l});
  }
  return turanspan::ExpPolynomial1D(std::move(terms));
}

}  // namespace oracle
