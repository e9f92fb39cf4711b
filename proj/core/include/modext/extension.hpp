#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modext/geometry.hpp"
#include "modext/modulus.hpp"

namespace modext {

/// Finite set of anchor locations with values, inside a box domain.
class AnchorSet {
 public:
  /// Throws ParameterError when empty, sizes differ, a value is not finite
  /// or a point lies outside the domain.
  AnchorSet(BoxDomain domain, std::vector<Point> points, std::vector<double> values);

  [[nodiscard]] const BoxDomain& domain() const noexcept { return domain_; }
  [[nodiscard]] const std::vector<Point>& points() const noexcept { return points_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

  /// Copy with one extra anchor appended.
  [[nodiscard]] AnchorSet with(const Point& p, double value) const;

 private:
  BoxDomain domain_;
  std::vector<Point> points_;
  std::vector<double> values_;
};

/// Smallest M with |v_i - v_j| <= M theta(|x_i - x_j|) over all anchor pairs.
/// Throws ConsistencyError for coincident points with different values.
[[nodiscard]] double fit_constant(const AnchorSet& anchors, const Modulus& theta);

/// Outcome of one of the extension checks. `witness` holds the offending
/// (or extremal) points; `worst_violation` is the largest excess of the left
/// side over the right side of the checked inequality, so it is <= tol on pass.
struct VerificationReport {
  std::string check;
  bool pass = true;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::size_t checks = 0;
  std::vector<Point> witness;
  /// Largest |xi(x) - xi(y)| / theta(|x - y|) seen (verify_modulus only).
  std::optional<double> max_ratio;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// The inf-convolution extension
///   xi(x) = min_y ( v_y + M theta(|x - y|) )
/// of anchor data. It agrees with the anchors, admits theta with constant
/// M everywhere and is the largest function doing so.
class ExtensionModel {
 public:
  /// Default relative tolerance of the anchor consistency check in `build`.
  static constexpr double kDefaultConsistencyTol = 1e-9;

  /// Fits M when omitted. A supplied M must satisfy every anchor pair up to
  /// rel_tol * M * theta(diam E); otherwise ConsistencyError carries the
  /// worst pair.
  static ExtensionModel build(AnchorSet anchors, Modulus theta, std::optional<double> constant = {},
                              double rel_tol = kDefaultConsistencyTol);

  /// Skips the consistency check. Negative controls only.
  static ExtensionModel unchecked(AnchorSet anchors, Modulus theta, double constant);

  [[nodiscard]] double operator()(const Point& x) const;
  [[nodiscard]] double eval(const Point& x) const { return (*this)(x); }
  /// Value together with the index of the minimizing anchor. Ties go to the
  /// lexicographically smallest anchor location.
  [[nodiscard]] std::pair<double, std::size_t> eval_with_witness(const Point& x) const;
  [[nodiscard]] std::vector<double> eval(std::span<const Point> xs) const;

  [[nodiscard]] const AnchorSet& anchors() const noexcept { return anchors_; }
  [[nodiscard]] const Modulus& theta() const noexcept { return theta_; }
  [[nodiscard]] double constant() const noexcept { return constant_; }
  /// M * theta(diam E): the natural scale for absolute tolerances.
  [[nodiscard]] double scale() const;

 private:
  ExtensionModel(AnchorSet anchors, Modulus theta, double constant);

  AnchorSet anchors_;
  Modulus theta_;
  double constant_;
};

/// |xi(x_i) - v_i| <= tol at every anchor.
[[nodiscard]] VerificationReport verify_restriction(const ExtensionModel& model, double tol);

/// |xi(x) - v_y| <= M theta(|x - y|) + tol for every probe x and anchor y.
[[nodiscard]] VerificationReport verify_sandwich(const ExtensionModel& model,
                                                 std::span<const Point> probes, double tol);

/// |xi(x) - xi(y)| <= M theta(|x - y|) + tol for each pair.
[[nodiscard]] VerificationReport verify_modulus(const ExtensionModel& model,
                                                std::span<const std::pair<Point, Point>> pairs,
                                                double tol);

/// verify_modulus over all pairs of `points`, evaluating the extension once per point.
[[nodiscard]] VerificationReport verify_modulus_all_pairs(const ExtensionModel& model,
                                                          std::span<const Point> points, double tol);

}  // namespace modext
