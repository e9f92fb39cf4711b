#include "modext/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modext/error.hpp"
#include "modext/rng.hpp"

namespace modext {

std::string to_string(Basis basis) {
  return basis == Basis::faber_schauder ? "faber_schauder" : "trig_smooth";
}

std::string to_string(CoefficientLaw law) {
  switch (law) {
    case CoefficientLaw::gaussian:
      return "gaussian";
    case CoefficientLaw::rademacher:
      return "rademacher";
    case CoefficientLaw::uniform_symmetric:
      return "uniform_symmetric";
  }
  return "unknown";
}

Basis parse_basis(const std::string& name) {
  if (name == "faber_schauder") return Basis::faber_schauder;
  if (name == "trig_smooth") return Basis::trig_smooth;
  throw ParameterError("unknown basis '" + name + "'");
}

CoefficientLaw parse_law(const std::string& name) {
  if (name == "gaussian") return CoefficientLaw::gaussian;
  if (name == "rademacher") return CoefficientLaw::rademacher;
  if (name == "uniform_symmetric") return CoefficientLaw::uniform_symmetric;
  throw ParameterError("unknown coefficient law '" + name + "'");
}

void check(const SeriesSpec& spec) {
  if (!std::isfinite(spec.a) || !std::isfinite(spec.b) || !(spec.a < spec.b)) {
    throw ParameterError("series domain must satisfy a < b");
  }
  if (spec.n_max < 1) throw ParameterError("series n_max must be at least 1");
  if (spec.basis == Basis::faber_schauder) {
    if (!spec.level_heights.empty()) {
      for (double h : spec.level_heights) {
        if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("level heights must be positive");
      }
      if (spec.level_heights.size() < 64 &&
          spec.n_max > completed_level_count(spec.level_heights.size() - 1)) {
        throw ParameterError("n_max reaches past the last level with a given height");
      }
    } else if (!(spec.holder_exponent > 0.0 && spec.holder_exponent <= 1.0)) {
      throw ParameterError("Faber-Schauder holder exponent must lie in (0, 1]");
    }
  } else {
    if (!(spec.p > 0.0) || !std::isfinite(spec.p)) throw ParameterError("trig decay power p must be > 0");
  }
}

double mean_abs(CoefficientLaw law) {
  switch (law) {
    case CoefficientLaw::gaussian:
      return std::sqrt(2.0 / std::numbers::pi);
    case CoefficientLaw::rademacher:
      return 1.0;
    case CoefficientLaw::uniform_symmetric:
      return std::sqrt(3.0) / 2.0;
  }
  return 1.0;
}

double coefficient(CoefficientLaw law, std::uint64_t seed, std::size_t k) {
  const std::uint64_t b0 = rng::bits(seed, k, 0);
  switch (law) {
    case CoefficientLaw::gaussian: {
      const double u1 = rng::open_unit(b0);
      const double u2 = rng::open_unit(rng::bits(seed, k, 1));
      return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    case CoefficientLaw::rademacher:
      return (b0 >> 63) != 0 ? 1.0 : -1.0;
    case CoefficientLaw::uniform_symmetric:
      return std::sqrt(3.0) * (2.0 * rng::open_unit(b0) - 1.0);
  }
  return 0.0;
}

DyadicIndex dyadic_index(std::size_t k) {
  if (k == 0) throw ParameterError("series indices start at 1");
  const std::size_t level = static_cast<std::size_t>(std::bit_width(k)) - 1;
  return {level, k - (std::size_t{1} << level)};
}

std::size_t completed_level_count(std::size_t j) { return (std::size_t{2} << j) - 1; }

double level_height(const SeriesSpec& spec, std::size_t level) {
  if (!spec.level_heights.empty()) {
    if (level >= spec.level_heights.size()) throw ParameterError("no height given for this level");
    return spec.level_heights[level];
  }
  const double h = spec.holder_exponent;
  return std::pow(spec.length(), h) * std::exp2(-static_cast<double>(level) * h) / 2.0;
}

double trig_amplitude(const SeriesSpec& spec, std::size_t k) {
  return std::pow(static_cast<double>(k), -spec.p);
}

namespace {

double unit_coordinate(const SeriesSpec& spec, double x) {
  return std::clamp((x - spec.a) / spec.length(), 0.0, 1.0);
}

// Unit-height tent on [0, 1] peaking at 1/2.
double tent(double w) { return 1.0 - std::abs(2.0 * w - 1.0); }

// Level-j hat containing u, as (position, phi value / height).
std::pair<std::size_t, double> level_cell(std::size_t level, double u) {
  const std::size_t cells = std::size_t{1} << level;
  const double s = std::ldexp(u, static_cast<int>(level));
  const std::size_t q = std::min(static_cast<std::size_t>(s), cells - 1);
  return {q, tent(s - static_cast<double>(q))};
}

double trig_phase(std::size_t l, double s, double c) {
  switch (l % 4) {
    case 0:
      return s;
    case 1:
      return c;
    case 2:
      return -s;
    default:
      return -c;
  }
}

// c_k (k pi / L)^l
double trig_scale(const SeriesSpec& spec, std::size_t k, std::size_t l) {
  const double omega = static_cast<double>(k) * std::numbers::pi / spec.length();
  double out = trig_amplitude(spec, k);
  for (std::size_t i = 0; i < l; ++i) out *= omega;
  return out;
}

double trig_angle(std::size_t k, double u) { return static_cast<double>(k) * std::numbers::pi * u; }

void check_checkpoints(const PathHandle& path, std::span<const std::size_t> ns) {
  for (std::size_t c = 0; c < ns.size(); ++c) {
    if (ns[c] > path.coefficients().size()) {
      std::ostringstream msg;
      msg << "index n = " << ns[c] << " exceeds n_max = " << path.coefficients().size();
      throw ParameterError(msg.str());
    }
    if (c > 0 && ns[c] < ns[c - 1]) throw ParameterError("checkpoints must be nondecreasing");
  }
}

void check_grid(const SeriesSpec& spec, const Grid& grid) {
  if (grid.dim() != 1) throw ParameterError("series fields are one-dimensional");
  const auto& ax = grid.domain().axis(0);
  const double slack = 1e-12 * spec.length();
  if (ax.lo < spec.a - slack || ax.hi > spec.b + slack) {
    throw ParameterError("grid extends outside the series domain");
  }
}

// Writes xi_{ns[c]}(x) into out[c], accumulating terms in increasing k.
void accumulate_point(const PathHandle& path, std::span<const std::size_t> ns, double x,
                      std::span<double> out) {
  const SeriesSpec& spec = path.spec();
  const auto& z = path.coefficients();
  const double u = unit_coordinate(spec, x);
  const std::size_t last = ns.empty() ? 0 : ns.back();
  double acc = 0.0;
  std::size_t c = 0;
  auto flush = [&](std::size_t k_done) {
    while (c < ns.size() && ns[c] <= k_done) out[c++] = acc;
  };
  flush(0);
  if (spec.basis == Basis::faber_schauder) {
    for (std::size_t level = 0; (std::size_t{1} << level) <= last; ++level) {
      const auto [q, shape] = level_cell(level, u);
      const std::size_t k = (std::size_t{1} << level) + q;
      // Every index below k on this level has a zero hat at u.
      flush(k - 1);
      if (k > last) break;
      acc += z[k - 1] * (level_height(spec, level) * shape);
    }
    flush(last);
  } else {
    for (std::size_t k = 1; k <= last; ++k) {
      acc += z[k - 1] * (trig_scale(spec, k, 0) * std::sin(trig_angle(k, u)));
      flush(k);
    }
  }
}

}  // namespace

double basis_function(const SeriesSpec& spec, std::size_t k, double x) {
  const double u = unit_coordinate(spec, x);
  if (spec.basis == Basis::faber_schauder) {
    const auto [level, pos] = dyadic_index(k);
    const auto [q, shape] = level_cell(level, u);
    return q == pos ? level_height(spec, level) * shape : 0.0;
  }
  return trig_scale(spec, k, 0) * std::sin(trig_angle(k, u));
}

PathHandle::PathHandle(SeriesSpec spec, std::uint64_t seed, std::vector<double> coefficients)
    : spec_(std::move(spec)), seed_(seed), z_(std::move(coefficients)) {
  check(spec_);
  if (z_.size() != spec_.n_max) throw ParameterError("path needs exactly n_max coefficients");
}

PathHandle draw_path(const SeriesSpec& spec, std::uint64_t seed) {
  check(spec);
  std::vector<double> z(spec.n_max);
  for (std::size_t k = 1; k <= spec.n_max; ++k) z[k - 1] = coefficient(spec.law, seed, k);
  return PathHandle(spec, seed, std::move(z));
}

PathHandle path_with_coefficients(const SeriesSpec& spec, std::vector<double> z) {
  return PathHandle(spec, 0, std::move(z));
}

double partial_sum_at(const PathHandle& path, std::size_t n, double x) {
  const std::size_t ns[1] = {n};
  check_checkpoints(path, ns);
  double out = 0.0;
  accumulate_point(path, ns, x, std::span<double>(&out, 1));
  return out;
}

std::vector<FieldSample> partial_sums(const PathHandle& path, std::span<const std::size_t> ns,
                                      const Grid& grid) {
  check_checkpoints(path, ns);
  check_grid(path.spec(), grid);
  std::vector<std::vector<double>> values(ns.size(), std::vector<double>(grid.size()));
  std::vector<double> scratch(ns.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    accumulate_point(path, ns, grid.point(i)[0], scratch);
    for (std::size_t c = 0; c < ns.size(); ++c) values[c][i] = scratch[c];
  }
  std::vector<FieldSample> out;
  out.reserve(ns.size());
  for (std::size_t c = 0; c < ns.size(); ++c) out.emplace_back(grid, std::move(values[c]), ns[c]);
  return out;
}

FieldSample partial_sum(const PathHandle& path, std::size_t n, const Grid& grid) {
  const std::size_t ns[1] = {n};
  return std::move(partial_sums(path, ns, grid).front());
}

std::vector<SmoothFieldSample> partial_sums_smooth(const PathHandle& path,
                                                   std::span<const std::size_t> ns, const Grid& grid,
                                                   std::size_t m) {
  const SeriesSpec& spec = path.spec();
  if (spec.basis != Basis::trig_smooth) {
    throw CapabilityError("only the trig_smooth basis provides analytic derivatives");
  }
  if (m > spec.smooth_order) throw ParameterError("requested order exceeds the spec's smooth_order");
  check_checkpoints(path, ns);
  check_grid(spec, grid);

  const std::size_t rows = m + 2;
  const std::size_t last = ns.empty() ? 0 : ns.back();
  // jets[c][l][i]
  std::vector<std::vector<std::vector<double>>> jets(
      ns.size(), std::vector<std::vector<double>>(rows, std::vector<double>(grid.size())));
  std::vector<std::vector<double>> scales(last + 1, std::vector<double>(rows));
  for (std::size_t k = 1; k <= last; ++k) {
    for (std::size_t l = 0; l < rows; ++l) scales[k][l] = trig_scale(spec, k, l);
  }
  const auto& z = path.coefficients();
  std::vector<double> acc(rows);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = unit_coordinate(spec, grid.point(i)[0]);
    std::fill(acc.begin(), acc.end(), 0.0);
    std::size_t c = 0;
    auto flush = [&](std::size_t k_done) {
      for (; c < ns.size() && ns[c] <= k_done; ++c) {
        for (std::size_t l = 0; l < rows; ++l) jets[c][l][i] = acc[l];
      }
    };
    flush(0);
    for (std::size_t k = 1; k <= last; ++k) {
      const double angle = trig_angle(k, u);
      const double s = std::sin(angle);
      const double co = std::cos(angle);
      for (std::size_t l = 0; l < rows; ++l) acc[l] += z[k - 1] * (scales[k][l] * trig_phase(l, s, co));
      flush(k);
    }
  }
  std::vector<SmoothFieldSample> out;
  out.reserve(ns.size());
  for (std::size_t c = 0; c < ns.size(); ++c) out.emplace_back(grid, std::move(jets[c]), m, ns[c]);
  return out;
}

SmoothFieldSample partial_sum_smooth(const PathHandle& path, std::size_t n, const Grid& grid,
                                     std::size_t m) {
  const std::size_t ns[1] = {n};
  return std::move(partial_sums_smooth(path, ns, grid, m).front());
}

double term_bound(const SeriesSpec& spec, const Modulus& theta, std::size_t k,
                  std::optional<std::size_t> m) {
  const double diam = spec.length();
  if (spec.basis == Basis::faber_schauder) {
    if (m) throw CapabilityError("Faber-Schauder paths have no smooth-functional bound");
    const auto [level, pos] = dyadic_index(k);
    const double h = level_height(spec, level);
    const double slope = std::ldexp(2.0, static_cast<int>(level)) / diam;
    return h * (1.0 + theta.oscillation_ratio(slope, diam));
  }
  const double omega = static_cast<double>(k) * std::numbers::pi / diam;
  const double c = trig_amplitude(spec, k);
  if (!m) return c * (1.0 + theta.oscillation_ratio(omega, diam));
  double norms = 0.0;
  double power = 1.0;
  for (std::size_t l = 0; l <= *m + 1; ++l) {
    norms += power;
    if (l <= *m) power *= omega;
  }
  // power == omega^{m+1}
  return c * (norms + power * theta.oscillation_ratio(omega, diam));
}

namespace {

// Upper bound on E max_{i<count} |Z_i| for i.i.d. unit-variance draws.
double expected_max_abs(CoefficientLaw law, double count) {
  switch (law) {
    case CoefficientLaw::gaussian:
      return std::min(count * mean_abs(law), std::sqrt(2.0 * std::log(2.0 * count)));
    case CoefficientLaw::rademacher:
      return 1.0;
    case CoefficientLaw::uniform_symmetric:
      return std::sqrt(3.0);
  }
  return 1.0;
}

double trig_envelope(const SeriesSpec& spec, const Modulus& theta, std::optional<std::size_t> m) {
  const double beta = theta.small_scale_exponent();
  const double top = m ? static_cast<double>(*m) + 1.0 + beta : beta;
  if (!(spec.p - top > 1.0)) {
    std::ostringstream msg;
    msg << "envelope diverges: terms decay like k^" << top - spec.p << " (p = " << spec.p
        << ", growth exponent " << top << ")";
    throw CertificationError(msg.str());
  }
  const double ez = mean_abs(spec.law);
  const std::size_t head = std::max<std::size_t>(spec.n_max, 1024);
  double total = 0.0;
  for (std::size_t k = 1; k <= head; ++k) total += ez * term_bound(spec, theta, k, m);

  // For k > K each term is a sum of A_e k^{e-p}; sum_{k>K} k^{e-p} <= K^{e-p+1}/(p-e-1).
  const double w = std::numbers::pi / spec.length();
  const double kk = static_cast<double>(head);
  auto tail = [&](double coef, double e) {
    return coef * std::pow(kk, e - spec.p + 1.0) / (spec.p - e - 1.0);
  };
  const double osc = theta.oscillation_constant(spec.length());
  if (!m) {
    total += ez * (tail(1.0, 0.0) + tail(osc * std::pow(w, beta), beta));
  } else {
    double wl = 1.0;
    for (std::size_t l = 0; l <= *m + 1; ++l) {
      total += ez * tail(wl, static_cast<double>(l));
      if (l <= *m) wl *= w;
    }
    total += ez * tail(wl * osc * std::pow(w, beta), top);
  }
  return total;
}

double faber_envelope(const SeriesSpec& spec, const Modulus& theta) {
  const double diam = spec.length();
  const std::size_t max_level = dyadic_index(spec.n_max).level;
  auto level_term = [&](std::size_t j) {
    const double count = std::ldexp(1.0, static_cast<int>(j));
    const double slope = std::ldexp(2.0, static_cast<int>(j)) / diam;
    return expected_max_abs(spec.law, count) * level_height(spec, j) *
           (1.0 + theta.oscillation_ratio(slope, diam));
  };

  if (!spec.level_heights.empty()) {
    // The generator stops at the last level with a given height.
    double total = 0.0;
    for (std::size_t j = 0; j < spec.level_heights.size(); ++j) total += level_term(j);
    return total;
  }

  const double beta = theta.small_scale_exponent();
  const double h = spec.holder_exponent;
  if (!(beta < h)) {
    std::ostringstream msg;
    msg << "envelope diverges: level terms grow like 2^{j(" << beta << " - " << h
        << ")}; the modulus must be strictly weaker than the path regularity";
    throw CertificationError(msg.str());
  }
  // level_term(j) <= g sqrt(j+1) H (r0^j + C (2/L)^beta r1^j) <= b_j := (A + B) g sqrt(j+1) r1^j
  const double r1 = std::exp2(beta - h);
  std::size_t head = std::max<std::size_t>(max_level + 1, 64);
  while (std::sqrt((head + 2.0) / (head + 1.0)) * r1 >= 0.999) head *= 2;
  double total = 0.0;
  for (std::size_t j = 0; j <= head; ++j) total += level_term(j);

  const double g = spec.law == CoefficientLaw::gaussian ? std::sqrt(2.0 * std::numbers::ln2)
                   : spec.law == CoefficientLaw::rademacher ? 1.0
                                                            : std::sqrt(3.0);
  const double big_h = std::pow(diam, h) / 2.0;
  const double a_coef = big_h;
  const double b_coef = big_h * theta.oscillation_constant(diam) * std::pow(2.0 / diam, beta);
  const double rho = std::sqrt((head + 3.0) / (head + 2.0)) * r1;
  const double next = (a_coef + b_coef) * g * std::sqrt(head + 2.0) *
                      std::pow(r1, static_cast<double>(head + 1));
  return total + next / (1.0 - rho);
}

}  // namespace

double envelope_bound(const SeriesSpec& spec, const Modulus& theta, std::optional<std::size_t> m) {
  check(spec);
  if (spec.basis == Basis::faber_schauder) {
    if (m) throw CapabilityError("the smooth functional needs the trig_smooth basis");
    return faber_envelope(spec, theta);
  }
  return trig_envelope(spec, theta, m);
}

}  // namespace modext
