#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modext/field.hpp"
#include "modext/geometry.hpp"
#include "modext/modulus.hpp"

namespace modext {

enum class Basis { faber_schauder, trig_smooth };
enum class CoefficientLaw { gaussian, rademacher, uniform_symmetric };

[[nodiscard]] std::string to_string(Basis basis);
[[nodiscard]] std::string to_string(CoefficientLaw law);
[[nodiscard]] Basis parse_basis(const std::string& name);
[[nodiscard]] CoefficientLaw parse_law(const std::string& name);

/// Partial sums xi_n = sum_{k<=n} z_k phi_k of a basis series with i.i.d.
/// unit-variance, mean-zero coefficients z_k. At each fixed x this is a
/// martingale in the filtration generated by z_1..z_n.
///
/// faber_schauder: k = 2^j + q (j >= 0, 0 <= q < 2^j) is the hat on the
///   q-th dyadic cell of level j, with peak height
///   level_heights[j] if given, else (b-a)^h 2^{-j h} / 2
///   (h = holder_exponent; h = 1/2 gives the Levy-Ciesielski Brownian bridge).
/// trig_smooth: phi_k(x) = k^{-p} sin(k pi (x-a)/(b-a)).
struct SeriesSpec {
  Basis basis = Basis::faber_schauder;
  CoefficientLaw law = CoefficientLaw::gaussian;
  double holder_exponent = 0.5;
  std::vector<double> level_heights;
  double p = 4.0;
  std::size_t n_max = 1;
  std::size_t smooth_order = 0;
  double a = 0.0;
  double b = 1.0;

  [[nodiscard]] BoxDomain domain() const { return BoxDomain::interval(a, b); }
  [[nodiscard]] double length() const noexcept { return b - a; }

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

/// Throws ParameterError when the spec is structurally invalid.
void check(const SeriesSpec& spec);

/// E|Z| for a unit-variance draw from `law`.
[[nodiscard]] double mean_abs(CoefficientLaw law);

/// Coefficient z_k (k >= 1) for the given seed; a pure function of (law, seed, k).
[[nodiscard]] double coefficient(CoefficientLaw law, std::uint64_t seed, std::size_t k);

/// Dyadic level and in-level position of Faber-Schauder index k >= 1.
struct DyadicIndex {
  std::size_t level;
  std::size_t position;
};
[[nodiscard]] DyadicIndex dyadic_index(std::size_t k);
/// Number of coefficients after completing levels 0..j: 2^{j+1} - 1.
[[nodiscard]] std::size_t completed_level_count(std::size_t j);

/// Peak height of the level-j hats.
[[nodiscard]] double level_height(const SeriesSpec& spec, std::size_t level);
/// Amplitude c_k = k^{-p} of the k-th trigonometric term.
[[nodiscard]] double trig_amplitude(const SeriesSpec& spec, std::size_t k);

/// phi_k(x).
[[nodiscard]] double basis_function(const SeriesSpec& spec, std::size_t k, double x);

/// One sample path: the spec, its seed, and z_1..z_{n_max}.
class PathHandle {
 public:
  PathHandle(SeriesSpec spec, std::uint64_t seed, std::vector<double> coefficients);

  [[nodiscard]] const SeriesSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return z_; }
  /// z_k, 1-based.
  [[nodiscard]] double z(std::size_t k) const { return z_.at(k - 1); }

 private:
  SeriesSpec spec_;
  std::uint64_t seed_;
  std::vector<double> z_;
};

[[nodiscard]] PathHandle draw_path(const SeriesSpec& spec, std::uint64_t seed);

/// Replaces coefficients; used to build deterministic fixtures.
[[nodiscard]] PathHandle path_with_coefficients(const SeriesSpec& spec, std::vector<double> z);

/// xi_n(x) at a single location.
[[nodiscard]] double partial_sum_at(const PathHandle& path, std::size_t n, double x);

/// xi_n on a 1-D grid inside the spec domain. Terms are accumulated in
/// increasing k, so partial_sum(n) + z_{n+1} phi_{n+1} == partial_sum(n+1)
/// bit for bit.
[[nodiscard]] FieldSample partial_sum(const PathHandle& path, std::size_t n, const Grid& grid);

/// partial_sum at each of the increasing indices `ns`, computed in one pass
/// with results identical to separate calls.
[[nodiscard]] std::vector<FieldSample> partial_sums(const PathHandle& path,
                                                    std::span<const std::size_t> ns,
                                                    const Grid& grid);

/// xi_n and its analytic derivatives up to order m + 1 (trig_smooth only;
/// CapabilityError otherwise). Requires m <= spec.smooth_order.
[[nodiscard]] SmoothFieldSample partial_sum_smooth(const PathHandle& path, std::size_t n,
                                                   const Grid& grid, std::size_t m);
[[nodiscard]] std::vector<SmoothFieldSample> partial_sums_smooth(const PathHandle& path,
                                                                 std::span<const std::size_t> ns,
                                                                 const Grid& grid, std::size_t m);

/// Analytic bound on the contribution of term k to the M_n functional:
///   without m: ||phi_k||_inf + [phi_k]_theta             (first theorem's M_n)
///   with m:    ||phi_k||_{m+1} + [phi_k^{(m+1)}]_theta   (smooth M_n, trig only)
/// By the triangle inequality M_n(xi_n) <= sum_{k<=n} |z_k| term_bound(k).
[[nodiscard]] double term_bound(const SeriesSpec& spec, const Modulus& theta, std::size_t k,
                                std::optional<std::size_t> m = {});

/// Deterministic certificate sup_n E[M_n] <= value for the infinite series.
/// Faber-Schauder terms are grouped per level (one hat per level is nonzero
/// at any x). Tails are bounded by an integral test (trig) or a geometric
/// ratio bound (Faber). Throws CertificationError if the envelope diverges.
[[nodiscard]] double envelope_bound(const SeriesSpec& spec, const Modulus& theta,
                                    std::optional<std::size_t> m = {});

}  // namespace modext
