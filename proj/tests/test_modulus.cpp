#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "modext/error.hpp"
#include "modext/modulus.hpp"

using modext::Modulus;

TEST_CASE("power modulus values") {
  CHECK(Modulus::power(1.0, 1.0)(0.3) == 0.3);
  CHECK(Modulus::power(0.5, 1.0)(0.25) == 0.5);
  CHECK(Modulus::power(0.4, 1.0)(0.0) == 0.0);
  CHECK_THROWS_AS((void)Modulus::power(0.0, 1.0), modext::ParameterError);
  CHECK_THROWS_AS((void)Modulus::power(1.5, 1.0), modext::ParameterError);
  CHECK_THROWS_AS((void)Modulus::power(0.5, 1.0)(-0.1), modext::DomainError);
  CHECK_THROWS_AS((void)Modulus::power(0.5, 1.0)(std::nan("")), modext::DomainError);
}

TEST_CASE("piecewise modulus interpolates and continues linearly") {
  const auto lin = Modulus::piecewise({{0, 0}, {1, 1}}, 1.0);
  CHECK(lin(0.5) == 0.5);
  const auto kinked = Modulus::piecewise({{0, 0}, {0.5, 0.7}, {1, 1}}, 1.0);
  CHECK(kinked(0.75) == doctest::Approx(0.85).epsilon(1e-15));
  // final slope 0.6 continues past the last knot
  CHECK(kinked(1.5) == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(kinked(0.0) == 0.0);
}

TEST_CASE("piecewise modulus rejects convex knots and names the slopes") {
  try {
    (void)Modulus::piecewise({{0, 0}, {0.5, 0.2}, {1, 1}}, 1.0);
    FAIL("expected a validation error");
  } catch (const modext::ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("0.4") != std::string::npos);
    CHECK(what.find("1.6") != std::string::npos);
  }
  CHECK_THROWS_AS((void)Modulus::piecewise({{0.1, 0}, {1, 1}}, 1.0), modext::ValidationError);
  CHECK_THROWS_AS((void)Modulus::piecewise({{0, 0}, {0.5, 0.6}, {0.4, 0.7}}, 1.0), modext::ValidationError);
  CHECK_THROWS_AS((void)Modulus::piecewise({{0, 0}, {0.5, 0.6}, {1, 0.5}}, 1.0), modext::ValidationError);
}

TEST_CASE("scaled modulus") {
  const auto s = Modulus::scaled(2.0, Modulus::piecewise({{0, 0}, {1, 1}}, 1.0));
  CHECK(s(0.5) == 1.0);
  CHECK(s.small_scale_exponent() == 1.0);
  CHECK(Modulus::scaled(3.0, Modulus::power(0.3, 1.0)).small_scale_exponent() == 0.3);
}

TEST_CASE("scaled Lipschitz power equals the two-knot piecewise modulus") {
  const double D = 2.5;
  const double c = 1.7;
  const auto a = Modulus::scaled(c, Modulus::power(1.0, D));
  const auto b = Modulus::piecewise({{0, 0}, {D, c * D}}, D);
  for (int i = 0; i < 1000; ++i) {
    const double t = D * i / 999.0;
    CHECK(std::abs(a(t) - b(t)) <= 1e-12);
  }
}

TEST_CASE("validate passes the built-in families") {
  for (double alpha : {0.3, 0.5, 1.0}) {
    const auto r = modext::validate(Modulus::power(alpha, 1.0), 100);
    CHECK(r.pass);
    CHECK(r.violations == 0);
  }
  // additivity boundary: equality is not a violation
  const auto lin = modext::validate(Modulus::power(1.0, 1.0), 101);
  CHECK(lin.pass);
  CHECK(lin.worst_violation <= 1e-16);
}

TEST_CASE("validate catches the t^2 negative control at (0.5, 0.5)") {
  std::vector<Modulus::Knot> knots;
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    knots.push_back({t, t * t});
  }
  const auto sq = Modulus::piecewise_unchecked(knots, 1.0);
  const auto r = modext::validate(sq, 101, 1e-12);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_kind == modext::ModulusValidationReport::Kind::subadditivity);
  CHECK(r.witness.first == doctest::Approx(0.5));
  CHECK(r.witness.second == doctest::Approx(0.5));
  CHECK(r.worst_violation == doctest::Approx(0.5));
}

TEST_CASE("validate reports monotonicity failures") {
  const auto bump = Modulus::piecewise_unchecked({{0, 0}, {0.5, 1.0}, {1, 0.5}}, 1.0);
  const auto r = modext::validate(bump, 11);
  CHECK_FALSE(r.pass);
  CHECK(r.violations > 0);
}

TEST_CASE("property: random concave moduli are monotone and subadditive") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto theta = fixtures::random_concave(gen, 1.0 + trial * 0.05, 2 + trial % 7);
    CHECK(theta(0.0) == 0.0);
    const auto r = modext::validate(theta, 200);
    CHECK(r.pass);
    const double D = theta.domain_cap();
    for (int i = 0; i < 50; ++i) {
      const double s = D * i / 100.0;
      const double t = D * (i + 7) / 173.0;
      CHECK(theta(s + t) <= theta(s) + theta(t) + 1e-12);
      CHECK(theta(std::min(s, t)) <= theta(std::max(s, t)));
    }
  }
}

TEST_CASE("oscillation ratio is bounded by the oscillation constant") {
  for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
    const auto theta = Modulus::power(alpha, 1.0);
    for (double omega : {0.1, 1.0, 3.0, 40.0, 1000.0}) {
      CHECK(theta.oscillation_ratio(omega, 1.0) <=
            theta.oscillation_constant(1.0) * std::pow(omega, alpha) * (1 + 1e-12));
    }
  }
  // Lipschitz: min(2, w t)/t peaks at w for w <= 2
  CHECK(Modulus::power(1.0, 1.0).oscillation_ratio(1.5, 1.0) == doctest::Approx(1.5));
}
