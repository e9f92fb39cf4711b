#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "modext/series.hpp"

namespace modext {

struct MartingaleStatistic {
  std::string name;  // "g=1", "g=identity" or "g=sign"
  double mean = 0.0;
  double standard_error = 0.0;
  double z_score = 0.0;
  bool pass = true;
};

struct MartingaleCheckReport {
  std::size_t n = 0;
  double x = 0.0;
  std::size_t trials = 0;
  double threshold_se = 4.0;
  std::vector<MartingaleStatistic> statistics;
  bool pass = true;
};

struct MartingaleCheckOptions {
  double threshold_se = 4.0;
  /// Test hook: value added to xi_n(x) at index n. Turns the sequence into a
  /// non-martingale for negative controls.
  std::function<double(std::size_t)> offset;
};

/// Over `trials` independent paths, estimates E[(xi_{n+1}(x) - xi_n(x)) g(xi_n(x))]
/// for g in {1, identity, sign} and passes when each is within
/// threshold_se standard errors of zero. Requires trials >= 100 and n < n_max.
[[nodiscard]] MartingaleCheckReport martingale_check(const SeriesSpec& spec, std::size_t n, double x,
                                                     std::size_t trials, std::uint64_t seed,
                                                     const MartingaleCheckOptions& options = {});

}  // namespace modext
