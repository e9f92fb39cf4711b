#include "modext/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "modext/error.hpp"

namespace modext {

namespace {

struct PairScan {
  const FieldSample& f;
  const Modulus& theta;
  SeminormResult result;
  bool any = false;

  void visit(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    const Grid& g = f.grid();
    const double d = distance(g.point(i), g.point(j), g.dim());
    const double denom = theta(d);
    if (!(denom > 0.0)) {
      std::ostringstream msg;
      msg << "modulus is zero at nonzero distance " << d;
      throw DegenerateModulusError(msg.str());
    }
    const double ratio = std::abs(f[i] - f[j]) / denom;
    ++result.pairs_scanned;
    if (!any || ratio > result.value ||
        (ratio == result.value && IndexPair{i, j} < result.witness)) {
      result.value = ratio;
      result.witness = {i, j};
      any = true;
    }
  }
};

std::vector<std::size_t> stratum_lags(std::size_t n) {
  std::vector<std::size_t> lags;
  for (std::size_t lag = 2; lag < n; lag = std::max(lag + 1, lag * 3 / 2)) lags.push_back(lag);
  return lags;
}

}  // namespace

double sup_norm(const FieldSample& f) {
  if (f.size() == 0) throw ParameterError("sup_norm of an empty sample");
  double best = 0.0;
  for (double v : f.values()) best = std::max(best, std::abs(v));
  return best;
}

SeminormResult theta_seminorm(const FieldSample& f, const Modulus& theta,
                              std::optional<std::size_t> pair_budget) {
  const std::size_t n = f.size();
  if (n < 2) throw ParameterError("theta_seminorm needs at least two grid points");
  const std::size_t all_pairs = n * (n - 1) / 2;

  PairScan scan{f, theta, {}};
  if (!pair_budget || *pair_budget >= all_pairs) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) scan.visit(i, j);
    }
    return scan.result;
  }

  // Nearest neighbours along every axis are always included.
  const Grid& g = f.grid();
  std::size_t nn = 0;
  if (g.dim() == 1) {
    for (std::size_t i = 0; i + 1 < n; ++i, ++nn) scan.visit(i, i + 1);
  } else {
    const std::size_t rows = g.counts()[0];
    const std::size_t cols = g.counts()[1];
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t i = r * cols + c;
        if (c + 1 < cols) scan.visit(i, i + 1), ++nn;
        if (r + 1 < rows) scan.visit(i, i + cols), ++nn;
      }
    }
  }

  const std::size_t remaining = *pair_budget > nn ? *pair_budget - nn : 0;
  const auto lags = stratum_lags(n);
  if (remaining == 0 || lags.empty()) return scan.result;
  const std::size_t quota = std::max<std::size_t>(1, remaining / lags.size());
  for (std::size_t lag : lags) {
    const std::size_t candidates = n - lag;
    const std::size_t take = std::min(quota, candidates);
    for (std::size_t s = 0; s < take; ++s) {
      const std::size_t i = s * candidates / take;
      scan.visit(i, i + lag);
    }
  }
  return scan.result;
}

SeminormBreakdown m_n(const FieldSample& f, const Modulus& theta,
                      std::optional<std::size_t> pair_budget) {
  SeminormBreakdown out;
  out.sup_norm = sup_norm(f);
  const auto semi = theta_seminorm(f, theta, pair_budget);
  out.theta_seminorm = semi.value;
  out.witness = semi.witness;
  out.total = out.sup_norm + out.theta_seminorm;
  return out;
}

double m_n_tilde(const FieldSample& f, const Modulus& theta, std::size_t origin_index,
                 std::optional<std::size_t> pair_budget) {
  if (origin_index >= f.size()) {
    std::ostringstream msg;
    msg << "origin index " << origin_index << " is outside the grid of " << f.size() << " points";
    throw ParameterError(msg.str());
  }
  return std::abs(f[origin_index]) + theta_seminorm(f, theta, pair_budget).value;
}

double cm_norm(const SmoothFieldSample& f, std::size_t m) {
  if (m >= f.jets().size()) {
    std::ostringstream msg;
    msg << "C^" << m << " norm needs derivatives up to order " << m << ", sample has "
        << f.jets().size() - 1;
    throw ParameterError(msg.str());
  }
  double total = 0.0;
  for (std::size_t l = 0; l <= m; ++l) {
    double best = 0.0;
    for (double v : f.jet(l)) best = std::max(best, std::abs(v));
    total += best;
  }
  return total;
}

double theorem2_mn(const SmoothFieldSample& f, const Modulus& theta) {
  const std::size_t top = f.order() + 1;
  return cm_norm(f, top) + theta_seminorm(f.derivative(top), theta).value;
}

}  // namespace modext
