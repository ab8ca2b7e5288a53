#ifndef GBT_INTERVAL_HPP
#define GBT_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gbt/algebra/rational.hpp"

namespace gbt {

/// Closed interval with outward rounding: every result is widened by one ulp
/// on each side, so the exact real result is always enclosed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
  Interval(double l, double h) : lo(l), hi(h) {}

  static Interval enclose(const BigRational& q) {
    const double d = q.get_d();
    if (BigRational(d) == q) return Interval(d);
    return Interval(down(d), up(d));
  }

  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

  double mid() const { return lo + 0.5 * (hi - lo); }
  double width() const { return hi - lo; }
  double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  /// Strictly inside `outer`.
  bool interior_of(const Interval& outer) const { return outer.lo < lo && hi < outer.hi; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {down(a.lo + b.lo), up(a.hi + b.hi)};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {down(a.lo - b.hi), up(a.hi - b.lo)};
  }
  friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
  }
};

inline bool intersects(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

inline Interval intersection(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

/// Axis-aligned box given by per-coordinate bounds.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const { return lo.size(); }
  std::vector<Interval> intervals() const {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < lo.size(); ++i) out.emplace_back(lo[i], hi[i]);
    return out;
  }
  static Box square(double a, double b, std::size_t dim) {
    return Box{std::vector<double>(dim, a), std::vector<double>(dim, b)};
  }
};

}  // namespace gbt

#endif
