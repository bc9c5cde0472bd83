#include "turanspan/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "turanspan/error.hpp"

namespace turanspan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest n >= 1 with extent <= n * eps.
std::uint64_t chain_length(double extent, double eps) {
  if (extent <= eps) return 1;
  auto n = static_cast<std::uint64_t>(std::ceil(extent / eps));
  while (n > 1 && extent <= static_cast<double>(n - 1) * eps) --n;
  while (extent > static_cast<double>(n) * eps) ++n;
  return n;
}

}  // namespace

RealSet1D::RealSet1D(std::vector<double> points, std::vector<Interval> intervals) {
  std::vector<Component> raw;
  raw.reserve(points.size() + intervals.size());
  for (double x : points) {
    if (!std::isfinite(x)) throw InputError("non-finite point in set");
    raw.push_back({x, x});
  }
  for (const auto& iv : intervals) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw InputError("non-finite interval endpoint in set");
    }
    if (iv.lo > iv.hi) throw InputError("interval with lo > hi");
    raw.push_back({iv.lo, iv.hi});
  }
  std::sort(raw.begin(), raw.end(), [](const Component& a, const Component& b) {
    return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
  });
  for (const auto& c : raw) {
    if (!components_.empty() && c.lo <= components_.back().hi) {
      components_.back().hi = std::max(components_.back().hi, c.hi);
    } else {
      components_.push_back(c);
    }
  }
}

bool RealSet1D::is_finite() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Component& c) { return c.is_point(); });
}

std::size_t RealSet1D::interval_count() const {
  return static_cast<std::size_t>(std::count_if(
      components_.begin(), components_.end(),
      [](const Component& c) { return !c.is_point(); }));
}

std::size_t RealSet1D::point_count() const {
  return components_.size() - interval_count();
}

std::vector<double> RealSet1D::points() const {
  std::vector<double> out;
  for (const auto& c : components_) {
    if (c.is_point()) out.push_back(c.lo);
  }
  return out;
}

std::vector<Interval> RealSet1D::intervals() const {
  std::vector<Interval> out;
  for (const auto& c : components_) {
    if (!c.is_point()) out.push_back({c.lo, c.hi});
  }
  return out;
}

double RealSet1D::lebesgue() const {
  double s = 0.0;
  for (const auto& c : components_) s += c.length();
  return s;
}

double RealSet1D::diameter() const {
  return empty() ? 0.0 : components_.back().hi - components_.front().lo;
}

bool RealSet1D::contains(double t) const {
  auto it = std::upper_bound(
      components_.begin(), components_.end(), t,
      [](double v, const Component& c) { return v < c.lo; });
  if (it == components_.begin()) return false;
  --it;
  return t <= it->hi;
}

bool RealSet1D::subset_of(const Interval& B) const {
  return empty() || (B.lo <= min() && max() <= B.hi);
}

bool RealSet1D::subset_of(const RealSet1D& other) const {
  for (const auto& c : components_) {
    auto it = std::upper_bound(
        other.components_.begin(), other.components_.end(), c.lo,
        [](double v, const Component& o) { return v < o.lo; });
    if (it == other.components_.begin()) return false;
    --it;
    if (c.hi > it->hi) return false;
  }
  return true;
}

RealSet1D RealSet1D::united(const RealSet1D& other) const {
  std::vector<double> pts = points();
  std::vector<Interval> ivs = intervals();
  for (double x : other.points()) pts.push_back(x);
  for (const auto& iv : other.intervals()) ivs.push_back(iv);
  return RealSet1D(std::move(pts), std::move(ivs));
}

RealSet1D RealSet1D::scaled(double s) const {
  if (!(s > 0.0)) throw InputError("scale factor must be positive");
  std::vector<double> pts;
  std::vector<Interval> ivs;
  for (const auto& c : components_) {
    if (c.is_point()) {
      pts.push_back(c.lo * s);
    } else {
      ivs.push_back({c.lo * s, c.hi * s});
    }
  }
  return RealSet1D(std::move(pts), std::move(ivs));
}

std::uint64_t cover_count(const RealSet1D& omega, double eps) {
  if (!(eps > 0.0)) throw InputError("cover_count requires eps > 0");
  std::uint64_t total = 0;
  // Active chain of n adjacent covers [start, start + n * eps].
  double start = 0.0;
  std::uint64_t n = 0;
  for (const auto& c : omega.components()) {
    if (n > 0 && c.lo - start <= static_cast<double>(n) * eps) {
      if (c.hi - start > static_cast<double>(n) * eps) {
        const std::uint64_t need = chain_length(c.hi - start, eps);
        total += need - n;
        n = need;
      }
      continue;
    }
    start = c.lo;
    n = chain_length(c.hi - c.lo, eps);
    total += n;
  }
  return total;
}

namespace {

// Greedy block count for sorted points with closed blocks of diameter <= d.
std::size_t point_blocks(std::span<const double> pts, double d) {
  std::size_t blocks = 0;
  std::size_t i = 0;
  while (i < pts.size()) {
    const double start = pts[i];
    ++blocks;
    while (i < pts.size() && pts[i] - start <= d) ++i;
  }
  return blocks;
}

}  // namespace

std::vector<double> cover_thresholds(const RealSet1D& omega, std::size_t k_max) {
  if (!omega.is_finite()) {
    throw InputError("cover_thresholds requires a finite point set");
  }
  const std::vector<double> pts = omega.points();
  if (k_max < 1 || k_max > pts.size()) {
    throw InputError("k_max must lie in [1, |omega|]");
  }
  std::vector<double> candidates;
  candidates.reserve(pts.size() * (pts.size() - 1) / 2 + 1);
  candidates.push_back(0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      candidates.push_back(pts[j] - pts[i]);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<double> out(k_max);
  // Thresholds are nonincreasing in k, so the search window only shrinks.
  std::size_t hi = candidates.size() - 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::size_t lo = 0;
    std::size_t h = hi;
    while (lo < h) {
      const std::size_t mid = lo + (h - lo) / 2;
      if (point_blocks(pts, candidates[mid]) <= k) {
        h = mid;
      } else {
        lo = mid + 1;
      }
    }
    out[k - 1] = candidates[lo];
    hi = lo;
  }
  return out;
}

namespace {

SpanResult finite_span(const RealSet1D& omega, double md, double tolerance) {
  const std::size_t n = omega.component_count();
  SpanResult r;
  r.certified = Certification::exact;
  if (n < 2) return r;
  const std::vector<double> th = cover_thresholds(omega, n);
  // On [eps*_k, eps*_{k-1}) the cover count is k.
  for (std::size_t k = 2; k <= n; ++k) {
    const double excess = static_cast<double>(k) - md;
    if (excess <= 0.0) continue;
    const double v = th[k - 2] * excess;
    if (v > r.value) {
      r.value = v;
      const double eps = th[k - 2] - tolerance / excess;
      r.attained_epsilon = eps > 0.0 ? eps : th[k - 2] / 2.0;
    }
  }
  r.upper_bound = r.value;
  return r;
}

struct Tracker {
  double best;
  std::optional<double> witness;
  void offer(double value, double eps) {
    if (value > best) {
      best = value;
      witness = eps;
    }
  }
};

SpanResult interval_span(const RealSet1D& omega, double md, double tolerance) {
  const auto& comps = omega.components();
  const double mu = omega.lebesgue();
  const double c = static_cast<double>(comps.size());

  SpanResult r;
  if (c <= md) {
    // mu - eps * md <= f(eps) <= mu + eps * (c - md) <= mu.
    r.value = mu;
    r.upper_bound = mu;
    r.attained_epsilon = tolerance / md;
    r.certified = Certification::exact;
    return r;
  }

  // f(eps) -> mu as eps -> 0, so mu is always a lower bound.
  Tracker t{mu, tolerance / md};

  double gap = kInf;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    gap = std::min(gap, comps[i].lo - comps[i - 1].hi);
  }

  constexpr std::uint64_t kBudget = 4'000'000;
  std::uint64_t work = 0;
  bool complete = true;

  // Scales at or above the smallest gap: bisect every threshold above it.
  const std::uint64_t k_gap = cover_count(omega, gap);
  double hi_bracket = std::max(omega.diameter(), gap);
  for (std::uint64_t k = 1; k < k_gap; ++k) {
    double lo = gap;
    double hi = hi_bracket;
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (cover_count(omega, mid) <= k) {
        hi = mid;
      } else {
        lo = mid;
      }
      work += comps.size();
    }
    hi_bracket = hi;
    const auto m = static_cast<double>(cover_count(omega, lo));
    t.offer(lo * (m - md), lo);
    if (work > kBudget) {
      complete = false;
      break;
    }
  }

  // Below the smallest gap no cover touches two components, so
  // M(eps) = #points + sum ceil(L_i / eps). The piece suprema sit at the
  // left limits of eps = L_i / j.
  std::vector<double> lengths;
  double points = 0.0;
  for (const auto& comp : comps) {
    if (comp.is_point()) {
      points += 1.0;
    } else {
      lengths.push_back(comp.length());
    }
  }
  constexpr double kShrink = 1.0 - 4.0 * std::numeric_limits<double>::epsilon();
  auto left_limit_count = [&](double eps, std::span<const std::size_t> exact_ids,
                              std::span<const double> exact_js) {
    double count = points;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      double fl = std::floor(lengths[i] / eps * kShrink);
      for (std::size_t e = 0; e < exact_ids.size(); ++e) {
        if (exact_ids[e] == i) fl = exact_js[e];
      }
      count += fl + 1.0;
    }
    return count;
  };

  double stop_eps = gap;
  if (complete) {
    t.offer(gap * (left_limit_count(gap, {}, {}) - md), gap * (1.0 - 1e-12));

    using Entry = std::tuple<double, std::size_t, double>;  // eps, interval, j
    std::priority_queue<Entry> heap;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      double j = std::floor(lengths[i] / gap) + 1.0;
      while (lengths[i] / j >= gap) j += 1.0;
      heap.emplace(lengths[i] / j, i, j);
    }
    std::vector<std::size_t> ids;
    std::vector<double> js;
    while (!heap.empty()) {
      const double eps = std::get<0>(heap.top());
      stop_eps = eps;
      if (mu + eps * (c - md) <= t.best + tolerance) break;
      if (work > kBudget) {
        complete = false;
        break;
      }
      ids.clear();
      js.clear();
      while (!heap.empty() && std::get<0>(heap.top()) >= eps * (1.0 - 1e-15)) {
        const auto [e, i, j] = heap.top();
        heap.pop();
        ids.push_back(i);
        js.push_back(j);
        heap.emplace(lengths[i] / (j + 1.0), i, j + 1.0);
      }
      t.offer(eps * (left_limit_count(eps, ids, js) - md), eps * (1.0 - 1e-12));
      work += lengths.size();
    }
    if (heap.empty()) stop_eps = 0.0;
  }

  r.value = t.best;
  r.attained_epsilon = t.witness;
  r.certified = Certification::lower_bound_with_tolerance;
  r.upper_bound = complete ? std::max(t.best, std::min(t.best + tolerance,
                                                       mu + stop_eps * (c - md)))
                           : std::max(t.best, mu + stop_eps * (c - md));
  return r;
}

}  // namespace

SpanResult metric_span(const RealSet1D& omega, double md, double tolerance) {
  if (!(md >= 0.0) || std::isnan(md)) throw InputError("M_D must be nonnegative");
  if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (omega.empty()) return SpanResult{};
  if (md < 1.0) {
    // The single-cover piece eps * (1 - M_D) is unbounded.
    SpanResult r;
    r.value = kInf;
    r.upper_bound = kInf;
    return r;
  }
  if (omega.is_finite()) return finite_span(omega, md, tolerance);
  return interval_span(omega, md, tolerance);
}

double resolution_measure(const RealSet1D& omega, double eps) {
  if (!(eps > 0.0)) throw InputError("resolution_measure requires eps > 0");
  const auto& comps = omega.components();
  const std::size_t n = comps.size();
  std::vector<double> best(n + 1, kInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = j; i >= 1; --i) {
      const double span = comps[j - 1].hi - comps[i - 1].lo;
      best[j] = std::min(best[j], best[i - 1] + std::max(eps, span));
      // Longer chunks only get wider; once a chunk alone exceeds the best
      // split, nothing to its left can help.
      if (span > best[j]) break;
    }
  }
  return best[n];
}

}  // namespace turanspan
