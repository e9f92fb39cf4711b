#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "modext/error.hpp"
#include "modext/martingale.hpp"
#include "modext/seminorm.hpp"
#include "modext/series.hpp"

using namespace modext;

namespace {

SeriesSpec faber(std::size_t n_max, CoefficientLaw law = CoefficientLaw::gaussian) {
  SeriesSpec s;
  s.basis = Basis::faber_schauder;
  s.law = law;
  s.n_max = n_max;
  return s;
}

SeriesSpec trig(std::size_t n_max, double p, std::size_t m = 0) {
  SeriesSpec s;
  s.basis = Basis::trig_smooth;
  s.p = p;
  s.n_max = n_max;
  s.smooth_order = m;
  return s;
}

// Schauder function of level j, position q on [0,1], written out directly.
double schauder(std::size_t j, std::size_t q, double x) {
  const double width = std::ldexp(1.0, -static_cast<int>(j));
  const double lo = q * width;
  const double mid = lo + width / 2;
  const double hi = lo + width;
  if (x <= lo || x >= hi) return 0.0;
  const double peak = std::sqrt(width) / 2;
  return x <= mid ? peak * (x - lo) / (mid - lo) : peak * (hi - x) / (hi - mid);
}

}  // namespace

TEST_CASE("coefficients are deterministic and normalised") {
  const auto a = draw_path(faber(63), 5);
  const auto b = draw_path(faber(63), 5);
  CHECK(a.coefficients() == b.coefficients());
  CHECK(draw_path(faber(63), 6).coefficients() != a.coefficients());
  const auto r = draw_path(faber(255, CoefficientLaw::rademacher), 1);
  for (double z : r.coefficients()) CHECK(std::abs(z) == 1.0);
  const auto u = draw_path(faber(255, CoefficientLaw::uniform_symmetric), 1);
  for (double z : u.coefficients()) CHECK(std::abs(z) <= std::sqrt(3.0));

  double sum = 0.0;
  double sq = 0.0;
  const std::size_t n = 100000;
  for (std::size_t k = 1; k <= n; ++k) {
    const double z = coefficient(CoefficientLaw::gaussian, 77, k);
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) <= 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sq / n - 1.0) <= 0.02);
  CHECK(mean_abs(CoefficientLaw::rademacher) == 1.0);
  CHECK(mean_abs(CoefficientLaw::gaussian) == doctest::Approx(std::sqrt(2 / std::numbers::pi)));
}

TEST_CASE("dyadic bookkeeping") {
  CHECK(dyadic_index(1).level == 0);
  CHECK(dyadic_index(2).level == 1);
  CHECK(dyadic_index(3).position == 1);
  CHECK(dyadic_index(8).level == 3);
  CHECK(completed_level_count(0) == 1);
  CHECK(completed_level_count(8) == 511);
}

TEST_CASE("partial sum examples") {
  const auto grid = Grid::uniform(0.0, 1.0, 5);
  const auto path = draw_path(faber(7), 3);
  const auto zero = partial_sum(path, 0, grid);
  for (double v : zero.values()) CHECK(v == 0.0);
  CHECK(partial_sum_at(path, 1, 0.5) == doctest::Approx(0.5 * path.z(1)).epsilon(1e-15));
  CHECK_THROWS_AS((void)partial_sum(path, 8, grid), ParameterError);

  const auto tp = draw_path(trig(8, 4.0), 3);
  CHECK(partial_sum_at(tp, 1, 0.5) == doctest::Approx(tp.z(1)).epsilon(1e-15));
  CHECK(partial_sum_at(tp, 1, 0.3) == doctest::Approx(tp.z(1) * std::sin(0.3 * std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("Faber-Schauder terms match a direct Schauder evaluation") {
  const auto spec = faber(127);
  for (std::size_t k = 1; k <= 127; ++k) {
    const auto [j, q] = dyadic_index(k);
    for (int i = 0; i <= 64; ++i) {
      const double x = i / 64.0 + 0.003 * (i % 3);
      if (x > 1.0) continue;
      CHECK(basis_function(spec, k, x) == doctest::Approx(schauder(j, q, x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("property: one more term is exactly one more summand") {
  for (auto spec : {faber(255), trig(200, 4.0)}) {
    const auto grid = Grid::uniform(spec.a, spec.b, 97);
    const auto path = draw_path(spec, 12);
    for (std::size_t n : {0u, 1u, 5u, 31u, 100u, 199u}) {
      const auto now = partial_sum(path, n, grid);
      const auto next = partial_sum(path, n + 1, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.point(i)[0];
        CHECK(now[i] + path.z(n + 1) * basis_function(spec, n + 1, x) == next[i]);
      }
    }
    const std::vector<std::size_t> ns{3, 17, 64, 150};
    const auto batch = partial_sums(path, ns, grid);
    for (std::size_t c = 0; c < ns.size(); ++c) CHECK(batch[c].values() == partial_sum(path, ns[c], grid).values());
  }
}

TEST_CASE("smooth jets") {
  const auto spec = trig(64, 5.0, 2);
  const auto grid = Grid::uniform(0.0, 1.0, 33);
  const auto path = draw_path(spec, 4);
  const auto s1 = partial_sum_smooth(path, 1, grid, 1);
  CHECK(s1.jet(1)[0] == doctest::Approx(path.z(1) * std::numbers::pi).epsilon(1e-14));
  const auto s = partial_sum_smooth(path, 40, grid, 2);
  const auto plain = partial_sum(path, 40, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(s.jet(0)[i] - plain[i]) <= 1e-12);
  double envelope = 0.0;
  for (std::size_t k = 1; k <= 40; ++k) {
    envelope += std::abs(path.z(k)) * trig_amplitude(spec, k) * std::pow(k * std::numbers::pi, 3);
  }
  for (double v : s.jet(3)) CHECK(std::abs(v) <= envelope);
  // jets against central differences of the previous order
  const double h = 1e-5;
  for (double x : {0.1, 0.45, 0.8}) {
    const double fd = (partial_sum_at(path, 40, x + h) - partial_sum_at(path, 40, x - h)) / (2 * h);
    double exact = 0.0;
    for (std::size_t k = 1; k <= 40; ++k) {
      exact += path.z(k) * trig_amplitude(spec, k) * k * std::numbers::pi * std::cos(k * std::numbers::pi * x);
    }
    CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
  }
  CHECK_THROWS_AS((void)partial_sum_smooth(draw_path(faber(7), 1), 3, grid, 0), CapabilityError);
  CHECK_THROWS_AS((void)partial_sum_smooth(path, 3, grid, 3), ParameterError);
}

TEST_CASE("envelope certificates") {
  const auto lin = Modulus::power(1.0, 1.0);
  CHECK(std::isfinite(envelope_bound(trig(64, 4.0), lin, std::size_t{0})));
  CHECK_THROWS_AS((void)envelope_bound(trig(64, 2.0, 1), lin, std::size_t{1}), CertificationError);
  CHECK(std::isfinite(envelope_bound(faber(511), Modulus::power(0.4, 1.0))));
  CHECK_THROWS_AS((void)envelope_bound(faber(511), Modulus::power(0.6, 1.0)), CertificationError);
  CHECK_THROWS_AS((void)envelope_bound(faber(511), lin, std::size_t{0}), CapabilityError);
}

TEST_CASE("property: per-path M_n is bounded by the sum of term bounds") {
  const auto theta = Modulus::power(0.4, 1.0);
  for (auto spec : {faber(255), trig(128, 4.0)}) {
    const auto grid = Grid::uniform(0.0, 1.0, 129);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto path = draw_path(spec, seed);
      double bound = 0.0;
      for (std::size_t n = 1; n <= spec.n_max; n += 1) {
        bound += std::abs(path.z(n)) * term_bound(spec, theta, n);
        if (n % 17 != 0 && n != spec.n_max) continue;
        CHECK(m_n(partial_sum(path, n, grid), theta).total <= bound);
      }
    }
  }
  const auto spec = trig(64, 5.0, 1);
  const auto grid = Grid::uniform(0.0, 1.0, 129);
  const auto path = draw_path(spec, 9);
  double bound = 0.0;
  for (std::size_t n = 1; n <= 64; ++n) {
    bound += std::abs(path.z(n)) * term_bound(spec, Modulus::power(1.0, 1.0), n, std::size_t{1});
    CHECK(theorem2_mn(partial_sum_smooth(path, n, grid, 1), Modulus::power(1.0, 1.0)) <= bound);
  }
}

TEST_CASE("property: the envelope dominates the empirical mean of M_n") {
  const auto theta = Modulus::power(0.4, 1.0);
  const auto spec = faber(255);
  const double envelope = envelope_bound(spec, theta);
  const auto grid = Grid::uniform(0.0, 1.0, 129);
  const std::size_t trials = 200;
  const std::vector<std::size_t> ns{1, 15, 63, 255};
  std::vector<std::vector<double>> samples(ns.size());
  for (std::size_t t = 0; t < trials; ++t) {
    const auto iterates = partial_sums(draw_path(spec, 1000 + t), ns, grid);
    for (std::size_t c = 0; c < ns.size(); ++c) samples[c].push_back(m_n(iterates[c], theta).total);
  }
  for (const auto& s : samples) {
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / trials;
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (trials - 1) / trials);
    CHECK(mean <= envelope + 4 * se);
  }
}

TEST_CASE("martingale check passes by construction and flags drift") {
  for (auto spec : {faber(63), trig(64, 4.0)}) {
    const auto r = martingale_check(spec, 3, 0.37, 4000, 42);
    CHECK(r.pass);
    CHECK(r.statistics.size() == 3);
  }
  MartingaleCheckOptions drift;
  drift.offset = [](std::size_t n) { return 0.01 * static_cast<double>(n); };
  const auto bad = martingale_check(faber(63), 3, 0.37, 4000, 42, drift);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.statistics[0].pass);
  CHECK_THROWS_AS((void)martingale_check(faber(63), 3, 0.37, 50, 42), ParameterError);
}
