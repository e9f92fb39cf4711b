#include <doctest.h>

#include <cmath>
#include <random>

#include "modext/error.hpp"
#include "modext/extension.hpp"

using modext::AnchorSet;
using modext::BoxDomain;
using modext::ExtensionModel;
using modext::Modulus;
using modext::Point;

namespace {

const BoxDomain kUnit = BoxDomain::interval(0.0, 1.0);

AnchorSet anchors_1d(std::vector<double> xs, std::vector<double> vs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x, 0.0});
  return AnchorSet(kUnit, pts, vs);
}

// Consistent anchors: samples of a function that admits theta with constant <= 1.
AnchorSet random_anchors(std::mt19937_64& gen, const Modulus& theta, std::size_t count, bool planar) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const BoxDomain dom = planar ? BoxDomain({{0, 1}, {0, 1}}) : kUnit;
  const Point c{u(gen), u(gen)};
  const double sign = u(gen) < 0.5 ? -1.0 : 1.0;
  std::vector<Point> pts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < count; ++i) {
    Point p{u(gen), planar ? u(gen) : 0.0};
    pts.push_back(p);
    vals.push_back(sign * theta(modext::distance(p, c, dom.dim())));
  }
  return AnchorSet(dom, pts, vals);
}

}  // namespace

TEST_CASE("anchor sets reject bad data") {
  CHECK_THROWS_AS(AnchorSet(kUnit, {}, {}), modext::ParameterError);
  CHECK_THROWS_AS(AnchorSet(kUnit, {{0.5, 0}}, {1.0, 2.0}), modext::ParameterError);
  CHECK_THROWS_AS(AnchorSet(kUnit, {{1.5, 0}}, {1.0}), modext::ParameterError);
  CHECK_THROWS_AS(AnchorSet(kUnit, {{0.5, 0}}, {NAN}), modext::ParameterError);
}

TEST_CASE("fit_constant examples") {
  const auto lin = Modulus::power(1.0, 1.0);
  const auto root = Modulus::power(0.5, 1.0);
  CHECK(modext::fit_constant(anchors_1d({0, 1}, {0, 1}), lin) == 1.0);
  CHECK(modext::fit_constant(anchors_1d({0, 0.25, 1}, {0, 0.5, 1}), root) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(modext::fit_constant(anchors_1d({0, 1}, {2, 2}), root) == 0.0);
  CHECK_THROWS_AS((void)modext::fit_constant(anchors_1d({0.5, 0.5}, {1, 2}), root), modext::ConsistencyError);
}

TEST_CASE("build fits or checks M") {
  const auto lin = Modulus::power(1.0, 1.0);
  const auto model = ExtensionModel::build(anchors_1d({0, 1}, {0, 1}), lin);
  CHECK(model.constant() == 1.0);
  try {
    (void)ExtensionModel::build(anchors_1d({0, 1}, {0, 1}), lin, 0.5);
    FAIL("expected a consistency error");
  } catch (const modext::ConsistencyError& e) {
    CHECK(e.witness() == std::pair<std::size_t, std::size_t>{0, 1});
  }
  CHECK_NOTHROW((void)ExtensionModel::build(anchors_1d({0, 0.25, 1}, {0, 0.5, 1}), Modulus::power(0.5, 1.0), 1.0));
}

TEST_CASE("evaluation examples") {
  const auto lin = Modulus::power(1.0, 1.0);
  const auto m1 = ExtensionModel::build(anchors_1d({0, 0.5, 1}, {0, 0.5, 1}), lin, 1.0);
  CHECK(m1({0.25, 0}) == 0.25);
  CHECK(m1({0.5, 0}) == 0.5);
  const auto m2 = ExtensionModel::build(anchors_1d({0, 1}, {0, 1}), Modulus::power(0.5, 1.0), 1.0);
  CHECK(std::abs(m2({0.5, 0}) - std::sqrt(0.5)) <= 1e-9);
  const auto [value, idx] = m2.eval_with_witness({0.5, 0});
  CHECK(idx == 0);
  CHECK(value == m2({0.5, 0}));
}

TEST_CASE("verifiers on the linear model") {
  const auto lin = Modulus::power(1.0, 1.0);
  const auto model = ExtensionModel::build(anchors_1d({0, 0.5, 1}, {0, 0.5, 1}), lin, 1.0);
  std::vector<Point> probes;
  for (int i = 0; i <= 100; ++i) probes.push_back({i / 100.0, 0});
  CHECK(modext::verify_restriction(model, 1e-12).pass);
  const auto s = modext::verify_sandwich(model, probes, 1e-12);
  CHECK(s.pass);
  CHECK(s.worst_violation <= 0.0);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<Point, Point>> pairs;
  for (int i = 0; i < 1000; ++i) pairs.push_back({{u(gen), 0}, {u(gen), 0}});
  const auto r = modext::verify_modulus(model, pairs, 1e-12);
  CHECK(r.pass);
  REQUIRE(r.max_ratio);
  CHECK(*r.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sqrt model sandwich on nine probes") {
  const auto model = ExtensionModel::build(anchors_1d({0, 1}, {0, 1}), Modulus::power(0.5, 1.0), 1.0);
  std::vector<Point> probes;
  for (int i = 1; i <= 9; ++i) probes.push_back({i / 10.0, 0});
  const auto r = modext::verify_sandwich(model, probes, 1e-12);
  CHECK(r.pass);
  CHECK(r.checks == 18);
}

TEST_CASE("negative controls") {
  const auto lin = Modulus::power(1.0, 1.0);
  const auto bad = ExtensionModel::unchecked(anchors_1d({0, 1}, {0, 1}), lin, 0.5);
  const auto r = modext::verify_restriction(bad, 1e-12);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.witness.empty());

  const auto good = ExtensionModel::build(anchors_1d({0, 0.5, 1}, {0, 0.5, 1}), lin, 1.0);
  // corrupt one anchor value after the fact
  const auto corrupted = ExtensionModel::unchecked(anchors_1d({0, 0.5, 1}, {0, 0.9, 1}), lin, 1.0);
  std::vector<Point> probes{{0.25, 0}, {0.75, 0}};
  CHECK(modext::verify_sandwich(good, probes, 1e-12).pass);
  const auto s = modext::verify_sandwich(corrupted, probes, 1e-12);
  CHECK_FALSE(s.pass);
  CHECK(s.witness.size() == 2);
}

TEST_CASE("property: random consistent anchors satisfy all three guarantees") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const bool planar = trial % 2 == 1;
    const Modulus theta = Modulus::power(0.3 + 0.7 * u(gen), 1.5);
    const auto anchors = random_anchors(gen, theta, 5 + trial * 3, planar);
    const auto model = ExtensionModel::build(anchors, theta);
    const double scale = model.scale();
    CHECK(modext::verify_restriction(model, 1e-12).pass);
    std::vector<Point> probes;
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < 300; ++i) {
      probes.push_back({u(gen), planar ? u(gen) : 0.0});
      pairs.push_back({probes.back(), {u(gen), planar ? u(gen) : 0.0}});
    }
    CHECK(modext::verify_sandwich(model, probes, 1e-9 * scale).pass);
    const auto r = modext::verify_modulus(model, pairs, 1e-12 * scale);
    CHECK(r.pass);
    if (model.constant() > 0) CHECK(*r.max_ratio / model.constant() <= 1.0 + 1e-9);
  }
}

TEST_CASE("property: eval is nondecreasing in M") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto theta = Modulus::power(0.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto anchors = random_anchors(gen, theta, 12, trial % 2 == 0);
    const double fit = modext::fit_constant(anchors, theta);
    const auto lo = ExtensionModel::build(anchors, theta, fit);
    const auto hi = ExtensionModel::build(anchors, theta, fit * 1.5 + 0.1);
    for (int i = 0; i < 100; ++i) {
      const Point x{u(gen), u(gen) * (anchors.domain().dim() == 2 ? 1.0 : 0.0)};
      CHECK(lo(x) <= hi(x));
    }
  }
}

TEST_CASE("property: the extension is the largest admissible function on a grid") {
  // Bellman-Ford style relaxation over all grid pairs from +inf, pinned at
  // the anchors, converges to the largest grid function bounded by
  // v_y + M theta(|x - y|) that is M-theta-regular on the grid.
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto theta = Modulus::power(0.6, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 41;
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<double>(i) / (n - 1));
    const auto shift = static_cast<std::size_t>(trial);
    std::vector<std::size_t> anchor_idx{0, 7 + shift, 20, 33 - shift};
    std::vector<double> ax;
    std::vector<double> av;
    for (auto i : anchor_idx) {
      ax.push_back(xs[i]);
      av.push_back(0.5 * theta(std::abs(xs[i] - u(gen))));
    }
    const auto model = ExtensionModel::build(anchors_1d(ax, av), theta);
    const double M = model.constant();

    std::vector<double> best(n, INFINITY);
    for (std::size_t a = 0; a < anchor_idx.size(); ++a) best[anchor_idx[a]] = av[a];
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double cand = best[j] + M * theta(std::abs(xs[i] - xs[j]));
          if (cand < best[i] - 1e-15) {
            best[i] = cand;
            changed = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(model({xs[i], 0}) == doctest::Approx(best[i]).epsilon(1e-12));
  }
}

TEST_CASE("property: adding anchors taken from the extension changes nothing") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto theta = Modulus::power(0.4, 1.5);
  for (int trial = 0; trial < 8; ++trial) {
    const bool planar = trial % 2 == 0;
    auto anchors = random_anchors(gen, theta, 30, planar);
    const auto base = ExtensionModel::build(anchors, theta);
    for (int k = 0; k < 50; ++k) {
      const Point x{u(gen), planar ? u(gen) : 0.0};
      anchors = anchors.with(x, base(x));
    }
    const auto refined = ExtensionModel::build(anchors, theta, base.constant());
    for (int i = 0; i < 300; ++i) {
      const Point x{u(gen), planar ? u(gen) : 0.0};
      CHECK(std::abs(refined(x) - base(x)) <= 1e-12);
    }
  }
}
