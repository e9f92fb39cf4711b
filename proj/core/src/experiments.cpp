#include "modext/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "modext/error.hpp"
#include "modext/extension.hpp"
#include "modext/io.hpp"
#include "modext/quadrature.hpp"
#include "modext/rng.hpp"
#include "modext/seminorm.hpp"

namespace modext {

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

namespace {

void check_checkpoints(const std::vector<std::size_t>& checkpoints, std::size_t n_max) {
  if (checkpoints.empty()) throw ParameterError("at least one checkpoint is required");
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    if (c > 0 && checkpoints[c] <= checkpoints[c - 1]) {
      throw ParameterError("checkpoints must be strictly increasing");
    }
  }
  if (checkpoints.back() > n_max) throw ParameterError("checkpoints must not exceed n_max");
}

void check_series_grid(const SeriesSpec& spec, const Grid& grid, const char* what) {
  if (grid.dim() != 1) throw ParameterError(std::string(what) + " must be one-dimensional");
  if (!(grid.domain() == spec.domain())) {
    throw ParameterError(std::string(what) + " must cover the series domain exactly");
  }
}

// Checkpoints plus n_max, which supplies the limit proxy.
std::vector<std::size_t> with_limit(const std::vector<std::size_t>& checkpoints, std::size_t n_max) {
  auto ns = checkpoints;
  if (ns.back() != n_max) ns.push_back(n_max);
  return ns;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

PathHandle trial_path(const SeriesSpec& spec, const RunOptions& options, std::size_t trial,
                      std::uint64_t seed) {
  return options.path ? options.path(trial, seed) : draw_path(spec, seed);
}

std::vector<FieldSample> trial_iterates(const PathHandle& path, const RunOptions& options,
                                        std::size_t trial, std::span<const std::size_t> ns,
                                        const Grid& grid) {
  if (options.iterates) {
    auto out = options.iterates(trial, ns, grid);
    if (out.size() != ns.size()) throw ParameterError("iterate hook returned the wrong count");
    return out;
  }
  return partial_sums(path, ns, grid);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

void fail_trial(TrialRecord& rec, std::size_t checkpoints, std::size_t metrics, const std::string& why) {
  rec.ok = false;
  rec.failure = why;
  rec.metrics.assign(checkpoints, std::vector<double>(metrics, 0.0));
}

}  // namespace

void check(const Theorem1Config& cfg) {
  check(cfg.spec);
  check_series_grid(cfg.spec, cfg.anchor_grid, "anchor grid");
  check_series_grid(cfg.spec, cfg.verify_grid, "verify grid");
  if (cfg.verify_grid.size() <= cfg.anchor_grid.size()) {
    throw ParameterError("verify grid must be strictly finer than the anchor grid");
  }
  check_checkpoints(cfg.checkpoints, cfg.spec.n_max);
  if (cfg.trials < 1) throw ParameterError("trials must be at least 1");
  if (!(cfg.m_inflation >= 1.0) || !std::isfinite(cfg.m_inflation)) {
    throw ParameterError("M_inflation must be a finite number >= 1");
  }
  (void)envelope_bound(cfg.spec, cfg.theta);
}

void check(const Theorem2Config& cfg) {
  check(cfg.spec);
  if (cfg.spec.basis != Basis::trig_smooth) throw ParameterError("the smooth pipeline needs trig_smooth");
  if (cfg.spec.smooth_order < cfg.m) throw ParameterError("spec smooth_order must be at least m");
  if (cfg.spec.p < static_cast<double>(cfg.m) + 3.0) throw ParameterError("trig decay needs p >= m + 3");
  check_series_grid(cfg.spec, cfg.grid, "grid");
  if (cfg.quadrature_points != 0 && cfg.quadrature_points < cfg.grid.size()) {
    throw ParameterError("quadrature_points must be at least the grid size");
  }
  check_checkpoints(cfg.checkpoints, cfg.spec.n_max);
  if (cfg.trials < 1) throw ParameterError("trials must be at least 1");
  (void)envelope_bound(cfg.spec, cfg.theta, cfg.m);
}

void check(const SimulationConfig& cfg) {
  check(cfg.spec);
  check_series_grid(cfg.spec, cfg.grid, "grid");
  check_checkpoints(cfg.checkpoints, cfg.spec.n_max);
  if (cfg.trials < 1) throw ParameterError("trials must be at least 1");
}

ExperimentReport run_theorem1(const Theorem1Config& cfg, const RunOptions& options) {
  check(cfg);
  ExperimentReport report;
  report.kind = "theorem1";
  report.config = to_json(cfg);
  report.seed = cfg.seed;
  report.checkpoints = cfg.checkpoints;
  report.metric_names = {"M_n", "sup_error", "level_increment"};
  report.trials.resize(cfg.trials);

  const auto ns = with_limit(cfg.checkpoints, cfg.spec.n_max);
  const std::size_t cps = cfg.checkpoints.size();
  const auto& verify_points = cfg.verify_grid.points();

  parallel_for(cfg.trials, options.parallel, [&](std::size_t t) {
    TrialRecord& rec = report.trials[t];
    rec.trial = t;
    rec.seed = rng::derive_seed(cfg.seed, t);
    try {
      const PathHandle path = trial_path(cfg.spec, options, t, rec.seed);
      const auto on_anchors = trial_iterates(path, options, t, ns, cfg.anchor_grid);
      const auto on_verify = trial_iterates(path, options, t, ns, cfg.verify_grid);
      const FieldSample& limit = on_anchors.back();

      AnchorSet anchors(cfg.anchor_grid.domain(), cfg.anchor_grid.points(), limit.values());
      const double base = cfg.constant == ConstantSource::m_n ? m_n(limit, cfg.theta).total
                                                              : fit_constant(anchors, cfg.theta);
      const double constant = cfg.m_inflation * base;
      const auto model = ExtensionModel::build(std::move(anchors), cfg.theta, constant);
      const auto extension = model.eval(verify_points);

      const double tol = ExtensionModel::kDefaultConsistencyTol * model.scale();
      rec.verifications.push_back(verify_restriction(model, 1e-12 * std::max(1.0, model.scale())));
      rec.verifications.push_back(verify_sandwich(model, verify_points, tol));
      rec.verifications.push_back(verify_modulus_all_pairs(model, verify_points, tol));

      rec.metrics.resize(cps);
      for (std::size_t c = 0; c < cps; ++c) {
        const auto& current = on_verify[c].values();
        const double increment =
            c == 0 ? sup_norm(on_verify[c]) : max_abs_diff(current, on_verify[c - 1].values());
        rec.metrics[c] = {m_n(on_anchors[c], cfg.theta).total, max_abs_diff(current, extension),
                          increment};
      }
      rec.scalars["M"] = constant;
      rec.scalars["limit_M_n"] = m_n(limit, cfg.theta).total;
      rec.scalars["max_modulus_ratio"] = rec.verifications.back().max_ratio.value_or(0.0);
      rec.ok = std::all_of(rec.verifications.begin(), rec.verifications.end(),
                           [](const VerificationReport& r) { return r.pass; });
    } catch (const Error& e) {
      fail_trial(rec, cps, report.metric_names.size(), e.what());
    }
  });

  aggregate(report);
  report.properties["median_sup_error_strictly_decreasing"] =
      strictly_decreasing(report.medians("sup_error"));
  // Ratios of successive level increments, checkpoint c over c-1 for c >= 2.
  const std::size_t inc = report.metric_index("level_increment");
  for (std::size_t c = 2; c < cps; ++c) {
    std::vector<double> ratios;
    for (const auto& rec : report.trials) {
      if (!rec.failure.empty()) continue;
      const double prev = rec.metrics[c - 1][inc];
      if (prev > 0.0) ratios.push_back(rec.metrics[c][inc] / prev);
    }
    report.aggregate_scalars["median_increment_ratio_" + std::to_string(cfg.checkpoints[c])] =
        quartiles(std::move(ratios)).median;
  }
  return report;
}

ExperimentReport run_theorem2(const Theorem2Config& cfg, const RunOptions& options) {
  check(cfg);
  ExperimentReport report;
  report.kind = "theorem2";
  report.config = to_json(cfg);
  report.seed = cfg.seed;
  report.checkpoints = cfg.checkpoints;
  report.metric_names = {"M_n", "cm_error", "top_seminorm_error", "tail_bound"};
  report.trials.resize(cfg.trials);

  const auto ns = with_limit(cfg.checkpoints, cfg.spec.n_max);
  const std::size_t cps = cfg.checkpoints.size();
  const std::size_t m = cfg.m;
  const std::size_t qp = cfg.quadrature_points == 0 ? cfg.grid.size() : cfg.quadrature_points;
  const std::size_t n_max = cfg.spec.n_max;
  const double omega_unit = std::numbers::pi / cfg.spec.length();

  parallel_for(cfg.trials, options.parallel, [&](std::size_t t) {
    TrialRecord& rec = report.trials[t];
    rec.trial = t;
    rec.seed = rng::derive_seed(cfg.seed, t);
    try {
      const PathHandle path = trial_path(cfg.spec, options, t, rec.seed);
      const auto samples = partial_sums_smooth(path, ns, cfg.grid, m);
      const SmoothFieldSample& limit = samples.back();

      // tail[k] = sum_{k' > k} |z_k'| c_k' sum_{l<=m} (k' pi / L)^l
      std::vector<double> tail(n_max + 1, 0.0);
      for (std::size_t k = n_max; k >= 1; --k) {
        const double omega = static_cast<double>(k) * omega_unit;
        double weight = 0.0;
        double power = 1.0;
        for (std::size_t l = 0; l <= m; ++l, power *= omega) weight += power;
        tail[k - 1] = tail[k] + std::abs(path.z(k)) * trig_amplitude(cfg.spec, k) * weight;
      }

      rec.metrics.resize(cps);
      double worst_tail_slack = -std::numeric_limits<double>::infinity();
      bool tail_ok = true;
      for (std::size_t c = 0; c < cps; ++c) {
        std::vector<std::vector<double>> diff(m + 2, std::vector<double>(cfg.grid.size()));
        for (std::size_t l = 0; l < m + 2; ++l) {
          for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
            diff[l][i] = samples[c].jet(l)[i] - limit.jet(l)[i];
          }
        }
        const SmoothFieldSample delta(cfg.grid, std::move(diff), m);
        const double cm_error = cm_norm(delta, m);
        const double top = theta_seminorm(delta.derivative(m + 1), cfg.theta).value;
        const double bound = tail[cfg.checkpoints[c]];
        worst_tail_slack = std::max(worst_tail_slack, cm_error - bound);
        if (!(cm_error <= bound)) tail_ok = false;
        rec.metrics[c] = {theorem2_mn(samples[c], cfg.theta), cm_error, top, bound};
      }

      const auto rebuilt =
          reconstruct_antiderivative(limit.derivative(1), limit.jet(0).front(), qp);
      const double discrepancy = max_abs_diff(rebuilt.values(), limit.jet(0));

      rec.scalars["reconstruction_discrepancy"] = discrepancy;
      rec.scalars["max_tail_slack"] = worst_tail_slack;
      rec.scalars["limit_M_n"] = theorem2_mn(limit, cfg.theta);

      VerificationReport tail_check;
      tail_check.check = "tail_bound";
      tail_check.pass = tail_ok;
      tail_check.worst_violation = worst_tail_slack;
      tail_check.tolerance = 0.0;
      tail_check.checks = cps;
      VerificationReport recon_check;
      recon_check.check = "reconstruction";
      recon_check.pass = discrepancy <= cfg.reconstruction_tol;
      recon_check.worst_violation = discrepancy;
      recon_check.tolerance = cfg.reconstruction_tol;
      recon_check.checks = cfg.grid.size();
      rec.verifications = {tail_check, recon_check};
      rec.ok = tail_check.pass && recon_check.pass;
    } catch (const Error& e) {
      fail_trial(rec, cps, report.metric_names.size(), e.what());
    }
  });

  aggregate(report);
  report.properties["median_cm_error_strictly_decreasing"] =
      strictly_decreasing(report.medians("cm_error"));
  report.properties["median_top_seminorm_error_strictly_decreasing"] =
      strictly_decreasing(report.medians("top_seminorm_error"));
  return report;
}

ExperimentReport run_simulation(const SimulationConfig& cfg, const RunOptions& options) {
  check(cfg);
  ExperimentReport report;
  report.kind = "simulate";
  report.config = to_json(cfg);
  report.seed = cfg.seed;
  report.checkpoints = cfg.checkpoints;
  report.metric_names = {"M_n", "sup_error"};
  report.trials.resize(cfg.trials);
  const auto ns = with_limit(cfg.checkpoints, cfg.spec.n_max);

  parallel_for(cfg.trials, options.parallel, [&](std::size_t t) {
    TrialRecord& rec = report.trials[t];
    rec.trial = t;
    rec.seed = rng::derive_seed(cfg.seed, t);
    try {
      const PathHandle path = trial_path(cfg.spec, options, t, rec.seed);
      const auto iterates = trial_iterates(path, options, t, ns, cfg.grid);
      for (std::size_t c = 0; c < cfg.checkpoints.size(); ++c) {
        rec.metrics.push_back({m_n(iterates[c], cfg.theta).total,
                               max_abs_diff(iterates[c].values(), iterates.back().values())});
      }
    } catch (const Error& e) {
      fail_trial(rec, cfg.checkpoints.size(), report.metric_names.size(), e.what());
    }
  });
  aggregate(report);
  report.properties["median_sup_error_strictly_decreasing"] =
      strictly_decreasing(report.medians("sup_error"));
  return report;
}

}  // namespace modext
