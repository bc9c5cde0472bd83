#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "turanspan/exppoly.hpp"

namespace turanspan {

/// Finite union of closed intervals and isolated points.
///
/// Components are kept sorted and pairwise disjoint: overlapping or touching
/// intervals are merged at construction, points inside intervals are
/// absorbed, duplicate points (exact equality) are removed and degenerate
/// intervals [a, a] become points.
class RealSet1D {
 public:
  struct Component {
    double lo = 0.0;
    double hi = 0.0;
    bool is_point() const { return lo == hi; }
    double length() const { return hi - lo; }
  };

  RealSet1D() = default;
  RealSet1D(std::vector<double> points, std::vector<Interval> intervals);

  static RealSet1D from_points(std::vector<double> points) {
    return RealSet1D(std::move(points), {});
  }

  const std::vector<Component>& components() const { return components_; }
  bool empty() const { return components_.empty(); }
  bool is_finite() const;
  std::size_t component_count() const { return components_.size(); }
  std::size_t interval_count() const;
  std::size_t point_count() const;

  // Only valid for finite sets.
  std::vector<double> points() const;
  std::vector<Interval> intervals() const;

  double lebesgue() const;
  double diameter() const;
  double min() const { return components_.front().lo; }
  double max() const { return components_.back().hi; }

  bool contains(double t) const;
  bool subset_of(const Interval& B) const;
  bool subset_of(const RealSet1D& other) const;

  RealSet1D united(const RealSet1D& other) const;
  RealSet1D scaled(double s) const;

 private:
  std::vector<Component> components_;
};

enum class Certification { exact, lower_bound_with_tolerance };

struct SpanResult {
  double value = 0.0;  // may be +inf
  // Scale at which epsilon * (M(epsilon) - M_D) >= value - tolerance.
  std::optional<double> attained_epsilon;
  Certification certified = Certification::exact;
  // Upper bound on the true supremum; equals value when exact.
  double upper_bound = 0.0;
};

// Minimal number of translates of [0, eps] covering the set (greedy).
std::uint64_t cover_count(const RealSet1D& omega, double eps);

/// Thresholds eps*_1 .. eps*_{k_max} for a finite set: eps*_k is the least
/// eps with cover_count <= k, i.e. the min over partitions into k contiguous
/// blocks of the largest block diameter. Entry k-1 holds eps*_k.
std::vector<double> cover_thresholds(const RealSet1D& omega, std::size_t k_max);

/// sup over eps > 0 of eps * (M(eps, omega) - md).
///
/// Exact for finite sets and for sets with at most md components. Otherwise
/// the result is a certified lower bound within `tolerance` of the
/// supremum, unless the search budget runs out first (then upper_bound
/// records how far off it may be).
SpanResult metric_span(const RealSet1D& omega, double md, double tolerance = 1e-9);

// Least Lebesgue measure of a union of length-eps closed intervals covering
// the set.
double resolution_measure(const RealSet1D& omega, double eps);

}  // namespace turanspan
