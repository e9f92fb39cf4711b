#include "modext/quadrature.hpp"

#include <algorithm>
#include <array>

#include "modext/error.hpp"

namespace modext {

namespace {

// Lagrange polynomial through up to four nodes starting at `first`.
double local_cubic(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t first,
                   std::size_t count, double x) {
  double out = 0.0;
  for (std::size_t a = first; a < first + count; ++a) {
    double w = 1.0;
    for (std::size_t b = first; b < first + count; ++b) {
      if (b != a) w *= (x - xs[b]) / (xs[a] - xs[b]);
    }
    out += w * ys[a];
  }
  return out;
}

}  // namespace

FieldSample reconstruct_antiderivative(const FieldSample& deriv, double value_at_a,
                                       std::size_t quadrature_points, std::optional<Interval> expected) {
  const Grid& grid = deriv.grid();
  if (grid.dim() != 1) throw ParameterError("antiderivative reconstruction is one-dimensional");
  const auto& ax = grid.domain().axis(0);
  if (expected && (expected->lo != ax.lo || expected->hi != ax.hi)) {
    throw ParameterError("derivative samples live on a different interval than expected");
  }
  const std::size_t n = grid.size();
  if (quadrature_points < n) throw ParameterError("quadrature_points must be at least the grid size");

  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = grid.point(i)[0];
  const auto& ys = deriv.values();

  std::size_t panels = (quadrature_points - 1 + (n - 2)) / (n - 1);
  panels = std::max<std::size_t>(panels, 2);
  if (panels % 2 != 0) ++panels;

  const std::size_t stencil = std::min<std::size_t>(4, n);
  std::vector<double> out(n);
  out[0] = value_at_a;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t first = std::min(i > 0 ? i - 1 : 0, n - stencil);
    const double piece = simpson(
        [&](double x) { return local_cubic(xs, ys, first, stencil, x); }, xs[i], xs[i + 1], panels);
    out[i + 1] = out[i] + piece;
  }
  return FieldSample(grid, std::move(out), deriv.label());
}

}  // namespace modext
