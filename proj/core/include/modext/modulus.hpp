#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace modext {

/// A modulus of continuity theta: R+ -> R+ with theta(0) = 0, nondecreasing,
/// continuous and subadditive.
///
/// Three families are provided:
///  - power:      theta(t) = t^alpha, 0 < alpha <= 1
///  - piecewise:  concave piecewise-linear through user knots, continued
///                linearly with the final slope past the last knot
///  - scaled:     theta(t) = c * inner(t)
///
/// The built-in families are subadditive by construction (concave with
/// theta(0) = 0). `validate` samples the axioms for anything else.
class Modulus {
 public:
  enum class Family { power, piecewise, scaled };

  struct Knot {
    double t;
    double value;
  };

  static Modulus power(double alpha, double domain_cap);
  /// Throws ValidationError if the knots are not sorted, do not start at
  /// (0,0), decrease, or have an increasing slope.
  static Modulus piecewise(std::vector<Knot> knots, double domain_cap);
  static Modulus scaled(double scale, Modulus inner);

  /// Skips the concavity and monotonicity checks. Only for negative
  /// controls and externally verified data.
  static Modulus piecewise_unchecked(std::vector<Knot> knots, double domain_cap);

  /// Throws DomainError when t < 0 or t is NaN.
  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] double eval(double t) const { return (*this)(t); }

  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] double domain_cap() const noexcept { return domain_cap_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }
  [[nodiscard]] const std::vector<Knot>& knots() const noexcept { return knots_; }
  [[nodiscard]] const Modulus& inner() const;

  /// Exponent beta with theta(t) >= c t^beta near zero; 1 for anything
  /// that is not a (scaled) power law.
  [[nodiscard]] double small_scale_exponent() const;

  /// sup_{0<t<=diameter} min(2, omega t) / theta(t), exact for concave theta.
  /// Bounds the theta-seminorm, over a set of that diameter, of any function
  /// with sup-norm 1 and Lipschitz constant omega.
  [[nodiscard]] double oscillation_ratio(double omega, double diameter) const;

  /// C with oscillation_ratio(omega, diameter) <= C omega^beta for every
  /// omega > 0, where beta = small_scale_exponent().
  [[nodiscard]] double oscillation_constant(double diameter) const;

 private:
  Modulus() = default;

  Family family_ = Family::power;
  double domain_cap_ = 1.0;
  double alpha_ = 1.0;
  double scale_ = 1.0;
  std::vector<Knot> knots_;
  std::vector<double> slopes_;
  std::shared_ptr<const Modulus> inner_;
};

[[nodiscard]] std::string to_string(Modulus::Family family);

struct ModulusValidationReport {
  enum class Kind { none, monotonicity, subadditivity };

  bool pass = true;
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Largest excess over the tolerance-free inequality; <= 0 when every check holds.
  double worst_violation = 0.0;
  Kind worst_kind = Kind::none;
  /// (s, t): for subadditivity theta(s+t) > theta(s) + theta(t); for
  /// monotonicity theta(s) > theta(t) with s < t.
  std::pair<double, double> witness{0.0, 0.0};
  double tolerance = 0.0;
};

/// Samples [0, D] on a uniform lattice (the interval count is rounded up to
/// an even number so D/2 is always a sample) and checks monotonicity over all
/// ordered pairs and subadditivity over every pair with s + t <= D.
/// A negative `tol` selects the default, 1e-12 * theta(D).
[[nodiscard]] ModulusValidationReport validate(const Modulus& modulus, std::size_t samples,
                                               double tol = -1.0);

}  // namespace modext
