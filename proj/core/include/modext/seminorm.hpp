#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "modext/field.hpp"
#include "modext/modulus.hpp"

namespace modext {

using IndexPair = std::pair<std::size_t, std::size_t>;

struct SeminormResult {
  double value = 0.0;
  /// Grid indices (i < j) attaining the supremum; the lowest pair wins ties.
  IndexPair witness{0, 1};
  std::size_t pairs_scanned = 0;
};

/// sup over distinct grid pairs of |f(x) - f(y)| / theta(|x - y|).
///
/// Without a budget (or with one covering all N(N-1)/2 pairs) the scan is
/// exhaustive. A smaller budget scans every nearest-neighbour pair along each
/// axis plus evenly spaced pairs from geometrically growing index-lag strata,
/// so the result never exceeds the exhaustive value.
///
/// Throws ParameterError for grids with fewer than two points and
/// DegenerateModulusError if theta vanishes at a nonzero distance.
[[nodiscard]] SeminormResult theta_seminorm(const FieldSample& f, const Modulus& theta,
                                            std::optional<std::size_t> pair_budget = {});

/// max_i |f_i|.
[[nodiscard]] double sup_norm(const FieldSample& f);

struct SeminormBreakdown {
  double sup_norm = 0.0;
  double theta_seminorm = 0.0;
  double total = 0.0;
  IndexPair witness{0, 1};
};

/// sup|f| + theta-seminorm: the functional whose expectation must stay
/// bounded along the martingale.
[[nodiscard]] SeminormBreakdown m_n(const FieldSample& f, const Modulus& theta,
                                    std::optional<std::size_t> pair_budget = {});

/// |f(origin)| + theta-seminorm. Satisfies
/// m_n / (1 + theta(diam E)) <= m_n_tilde <= m_n.
[[nodiscard]] double m_n_tilde(const FieldSample& f, const Modulus& theta, std::size_t origin_index,
                               std::optional<std::size_t> pair_budget = {});

/// C^m norm: sum_{l=0}^{m} max_i |jets[l][i]|. Requires m <= order + 1.
[[nodiscard]] double cm_norm(const SmoothFieldSample& f, std::size_t m);

/// ||f||_{m+1} + theta-seminorm of the (m+1)-th derivative, m = f.order().
[[nodiscard]] double theorem2_mn(const SmoothFieldSample& f, const Modulus& theta);

}  // namespace modext
