#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "modext/error.hpp"
#include "modext/quadrature.hpp"

using namespace modext;

TEST_CASE("simpson is exact on cubics") {
  const auto cubic = [](double x) { return 2 * x * x * x - x + 0.5; };
  CHECK(simpson(cubic, 0.0, 2.0, 2) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(simpson(cubic, 0.0, 2.0, 3) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("cos integrates to sin") {
  const auto d = fixtures::sample_1d(0, std::numbers::pi / 2, 1001, [](double x) { return std::cos(x); });
  const auto f = reconstruct_antiderivative(d, 0.0, 1001);
  CHECK(f[0] == 0.0);
  CHECK(std::abs(f.values().back() - 1.0) <= 1e-8);
  for (std::size_t i = 0; i < f.size(); i += 50) {
    CHECK(std::abs(f[i] - std::sin(f.grid().point(i)[0])) <= 1e-8);
  }
}

TEST_CASE("trivial antiderivatives") {
  const auto zero = fixtures::sample_1d(0, 1, 11, [](double) { return 0.0; });
  const auto flat = reconstruct_antiderivative(zero, 2.5, 11);
  for (double v : flat.values()) CHECK(v == 2.5);
  const auto one = fixtures::sample_1d(0, 1, 11, [](double) { return 1.0; });
  const auto id = reconstruct_antiderivative(one, 0.0, 21);
  for (std::size_t i = 0; i < id.size(); ++i) CHECK(id[i] == doctest::Approx(id.grid().point(i)[0]).epsilon(1e-14));
  const auto quad = fixtures::sample_1d(-1, 1, 7, [](double x) { return 3 * x * x; });
  const auto cube = reconstruct_antiderivative(quad, -1.0, 7);
  for (std::size_t i = 0; i < cube.size(); ++i) {
    const double x = cube.grid().point(i)[0];
    CHECK(cube[i] == doctest::Approx(x * x * x).epsilon(1e-13));
  }
}

TEST_CASE("reconstruction errors") {
  const auto d = fixtures::sample_1d(0, 1, 11, [](double x) { return x; });
  CHECK_THROWS_AS((void)reconstruct_antiderivative(d, 0.0, 5), ParameterError);
  CHECK_THROWS_AS((void)reconstruct_antiderivative(d, 0.0, 11, Interval{0.0, 2.0}), ParameterError);
  CHECK_NOTHROW((void)reconstruct_antiderivative(d, 0.0, 11, Interval{0.0, 1.0}));
  const FieldSample planar(Grid(BoxDomain({{0, 1}, {0, 1}}), {3, 3}), std::vector<double>(9, 0.0));
  CHECK_THROWS_AS((void)reconstruct_antiderivative(planar, 0.0, 9), ParameterError);
}

TEST_CASE("error shrinks with more quadrature points on a coarse grid") {
  const auto d = fixtures::sample_1d(0, 3, 13, [](double x) { return std::exp(x); });
  const double exact = std::exp(3.0) - 1.0;
  const double coarse = std::abs(reconstruct_antiderivative(d, 0.0, 13).values().back() - exact);
  const double fine = std::abs(reconstruct_antiderivative(d, 0.0, 1201).values().back() - exact);
  CHECK(fine <= coarse);
}
