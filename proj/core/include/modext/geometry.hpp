#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace modext {

inline constexpr std::size_t kMaxDim = 2;

/// A location in R^d for d <= 2. Unused trailing coordinates are zero.
using Point = std::array<double, kMaxDim>;

struct Interval {
  double lo;
  double hi;
};

/// Axis-aligned box [a_1,b_1] x ... x [a_d,b_d] with the Euclidean metric.
class BoxDomain {
 public:
  /// Throws ParameterError unless 1 <= d <= 2 and lo < hi on each axis.
  explicit BoxDomain(std::vector<Interval> axes);
  static BoxDomain interval(double lo, double hi) { return BoxDomain({{lo, hi}}); }

  [[nodiscard]] std::size_t dim() const noexcept { return axes_.size(); }
  [[nodiscard]] const Interval& axis(std::size_t i) const { return axes_.at(i); }
  [[nodiscard]] const std::vector<Interval>& axes() const noexcept { return axes_; }
  [[nodiscard]] double diameter() const noexcept;
  [[nodiscard]] bool contains(const Point& p, double slack = 0.0) const noexcept;

  friend bool operator==(const BoxDomain& a, const BoxDomain& b) noexcept;

 private:
  std::vector<Interval> axes_;
};

[[nodiscard]] inline double distance(const Point& a, const Point& b, std::size_t dim) noexcept {
  if (dim == 1) return std::abs(a[0] - b[0]);
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

/// Regular lattice over a BoxDomain, endpoints included. Points are ordered
/// lexicographically (last axis fastest).
class Grid {
 public:
  /// Throws ParameterError when counts.size() != dim or any count < 2.
  Grid(BoxDomain domain, std::vector<std::size_t> counts);
  static Grid uniform(double lo, double hi, std::size_t count) {
    return Grid(BoxDomain::interval(lo, hi), {count});
  }

  [[nodiscard]] const BoxDomain& domain() const noexcept { return domain_; }
  [[nodiscard]] std::size_t dim() const noexcept { return domain_.dim(); }
  [[nodiscard]] const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] const Point& point(std::size_t i) const { return points_.at(i); }
  [[nodiscard]] const std::vector<Point>& points() const noexcept { return points_; }
  /// Coordinate j along axis `axis`; the last one equals hi exactly.
  [[nodiscard]] double coordinate(std::size_t axis, std::size_t j) const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.domain_ == b.domain_ && a.counts_ == b.counts_;
  }

 private:
  BoxDomain domain_;
  std::vector<std::size_t> counts_;
  std::vector<Point> points_;
};

}  // namespace modext
