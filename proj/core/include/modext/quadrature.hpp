#pragma once

#include <cstddef>
#include <optional>

#include "modext/field.hpp"

namespace modext {

/// Rebuilds F(x) = F(a) + int_a^x f(s) ds on the grid of `deriv` from samples
/// of f. f is interpolated by local cubics through the four nearest nodes and
/// each grid cell is integrated by composite Simpson with an even number of
/// panels, chosen so the total panel count is at least quadrature_points - 1.
/// Simpson is exact on cubics, so the result is exact whenever f is a cubic.
///
/// The first value equals value_at_a exactly. Throws ParameterError for a
/// non 1-D grid, quadrature_points < grid size, or when `expected` is given
/// and differs from the grid's interval.
[[nodiscard]] FieldSample reconstruct_antiderivative(const FieldSample& deriv, double value_at_a,
                                                     std::size_t quadrature_points,
                                                     std::optional<Interval> expected = {});

/// Composite Simpson rule for a callable on [lo, hi] with `panels` (rounded
/// up to even) subintervals.
template <typename F>
[[nodiscard]] double simpson(F&& f, double lo, double hi, std::size_t panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  const double h = (hi - lo) / static_cast<double>(panels);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < panels; ++i) {
    const double v = f(lo + h * static_cast<double>(i));
    (i % 2 == 1 ? odd : even) += v;
  }
  return h / 3.0 * (f(lo) + 4.0 * odd + 2.0 * even + f(hi));
}

}  // namespace modext
