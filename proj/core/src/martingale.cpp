#include "modext/martingale.hpp"

#include <cmath>
#include <limits>

#include "modext/error.hpp"
#include "modext/rng.hpp"

namespace modext {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

MartingaleCheckReport martingale_check(const SeriesSpec& spec, std::size_t n, double x,
                                       std::size_t trials, std::uint64_t seed,
                                       const MartingaleCheckOptions& options) {
  check(spec);
  if (trials < 100) throw ParameterError("martingale_check needs at least 100 trials");
  if (n >= spec.n_max) throw ParameterError("martingale_check needs n < n_max");

  // Only z_1..z_{n+1} matter; draws are keyed by index so truncation keeps them.
  SeriesSpec truncated = spec;
  truncated.n_max = n + 1;
  if (truncated.basis == Basis::faber_schauder && !truncated.level_heights.empty()) {
    truncated.level_heights.resize(
        std::min(truncated.level_heights.size(), dyadic_index(n + 1).level + 1));
  }

  const char* names[3] = {"g=1", "g=identity", "g=sign"};
  CompensatedSum sums[3];
  CompensatedSum squares[3];
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = rng::derive_seed(seed, t);
    std::vector<double> z(n + 1);
    for (std::size_t k = 1; k <= n + 1; ++k) z[k - 1] = coefficient(spec.law, trial_seed, k);
    const PathHandle path(truncated, trial_seed, std::move(z));
    double now = partial_sum_at(path, n, x);
    double next = partial_sum_at(path, n + 1, x);
    if (options.offset) {
      now += options.offset(n);
      next += options.offset(n + 1);
    }
    const double inc = next - now;
    const double g[3] = {1.0, now, sign(now)};
    for (int s = 0; s < 3; ++s) {
      const double v = inc * g[s];
      sums[s].add(v);
      squares[s].add(v * v);
    }
  }

  MartingaleCheckReport report;
  report.n = n;
  report.x = x;
  report.trials = trials;
  report.threshold_se = options.threshold_se;
  const double count = static_cast<double>(trials);
  for (int s = 0; s < 3; ++s) {
    MartingaleStatistic st;
    st.name = names[s];
    st.mean = sums[s].value() / count;
    const double var = std::max(0.0, (squares[s].value() - count * st.mean * st.mean) / (count - 1.0));
    st.standard_error = std::sqrt(var / count);
    if (st.standard_error > 0.0) {
      st.z_score = st.mean / st.standard_error;
    } else {
      st.z_score = st.mean == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), st.mean);
    }
    st.pass = std::abs(st.mean) <= options.threshold_se * st.standard_error;
    report.pass = report.pass && st.pass;
    report.statistics.push_back(st);
  }
  return report;
}

}  // namespace modext
