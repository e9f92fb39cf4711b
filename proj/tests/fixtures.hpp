#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "modext/field.hpp"
#include "modext/geometry.hpp"
#include "modext/modulus.hpp"

namespace fixtures {

inline modext::FieldSample sample_1d(double lo, double hi, std::size_t n, auto&& f) {
  auto grid = modext::Grid::uniform(lo, hi, n);
  std::vector<double> v;
  for (const auto& p : grid.points()) v.push_back(f(p[0]));
  return {grid, v};
}

// Random concave piecewise-linear modulus on [0, cap] with `knots` interior knots.
inline modext::Modulus random_concave(std::mt19937_64& gen, double cap, int knots) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> ts;
  for (int i = 0; i < knots; ++i) ts.push_back(cap * u(gen));
  ts.push_back(cap);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<double> slopes;
  for (std::size_t i = 0; i < ts.size(); ++i) slopes.push_back(0.05 + 3.0 * u(gen));
  std::sort(slopes.rbegin(), slopes.rend());
  std::vector<modext::Modulus::Knot> k{{0.0, 0.0}};
  double t0 = 0.0;
  double v = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] - t0 < 1e-9) continue;
    v += slopes[i] * (ts[i] - t0);
    t0 = ts[i];
    k.push_back({t0, v});
  }
  return modext::Modulus::piecewise(k, cap);
}

}  // namespace fixtures
