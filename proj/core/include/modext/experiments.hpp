#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "modext/geometry.hpp"
#include "modext/modulus.hpp"
#include "modext/report.hpp"
#include "modext/series.hpp"

namespace modext {

/// Where the extension constant comes from in the first pipeline.
enum class ConstantSource { m_n, fit };

struct Theorem1Config {
  SeriesSpec spec;
  Modulus theta = Modulus::power(1.0, 1.0);
  Grid anchor_grid = Grid::uniform(0.0, 1.0, 2);
  Grid verify_grid = Grid::uniform(0.0, 1.0, 3);
  std::vector<std::size_t> checkpoints;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  double m_inflation = 1.0;
  ConstantSource constant = ConstantSource::m_n;
};

struct Theorem2Config {
  SeriesSpec spec;
  std::size_t m = 0;
  Modulus theta = Modulus::power(1.0, 1.0);
  Grid grid = Grid::uniform(0.0, 1.0, 2);
  std::size_t quadrature_points = 0;  // 0: grid size
  std::vector<std::size_t> checkpoints;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Hard limit on the antiderivative reconstruction discrepancy.
  double reconstruction_tol = 1e-7;
};

struct RunOptions {
  /// Worker threads; results do not depend on this.
  std::size_t parallel = 1;
  /// Test hook replacing the series iterates: returns xi_n on `grid` for each n.
  std::function<std::vector<FieldSample>(std::size_t trial, std::span<const std::size_t> ns,
                                         const Grid& grid)>
      iterates;
  /// Test hook replacing the random path of a trial.
  std::function<PathHandle(std::size_t trial, std::uint64_t seed)> path;
};

/// Throws ParameterError / CertificationError for an invalid configuration.
void check(const Theorem1Config& cfg);
void check(const Theorem2Config& cfg);

/// Per trial: iterates at the checkpoints on the anchor grid, the deepest
/// iterate as limit proxy, M from m_n (or fit_constant) times the inflation,
/// the inf-convolution extension of the proxy, its three verifications on
/// the verify grid, and the sup error of every checkpoint iterate against
/// the extension on the verify grid.
///
/// Metrics per checkpoint: "M_n" (anchor grid), "sup_error" and
/// "level_increment" (sup of xi_{n_c} - xi_{n_{c-1}} on the verify grid).
[[nodiscard]] ExperimentReport run_theorem1(const Theorem1Config& cfg, const RunOptions& options = {});

/// Per trial: analytic jets at the checkpoints, the deepest one as limit
/// proxy, ||xi_n - xi||_m, the theta-seminorm of the top-jet difference, the
/// smooth M_n, the per-path tail bound sum_{k>n} |z_k| c_k sum_{l<=m} (k pi/L)^l
/// (checked with zero tolerance), and the antiderivative reconstruction of
/// the proxy from its first derivative.
///
/// Metrics per checkpoint: "M_n", "cm_error", "top_seminorm_error", "tail_bound".
[[nodiscard]] ExperimentReport run_theorem2(const Theorem2Config& cfg, const RunOptions& options = {});

/// Ensemble of iterates on a grid: metrics "M_n" and "sup_error" (against
/// the deepest checkpoint) per checkpoint.
struct SimulationConfig {
  SeriesSpec spec;
  Modulus theta = Modulus::power(1.0, 1.0);
  Grid grid = Grid::uniform(0.0, 1.0, 2);
  std::vector<std::size_t> checkpoints;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
};
void check(const SimulationConfig& cfg);
[[nodiscard]] ExperimentReport run_simulation(const SimulationConfig& cfg,
                                              const RunOptions& options = {});

/// Runs body(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace modext
