#include "modext/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "modext/error.hpp"

namespace modext {

namespace {

// Slopes may only increase by this relative amount before a knot list is
// rejected as non-concave.
constexpr double kConcavityTol = 1e-12;

void check_cap(double domain_cap) {
  if (!(domain_cap > 0.0) || !std::isfinite(domain_cap)) {
    throw ParameterError("modulus domain_cap must be a positive finite number");
  }
}

}  // namespace

Modulus Modulus::power(double alpha, double domain_cap) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "power modulus exponent must lie in (0, 1], got " << alpha;
    throw ParameterError(msg.str());
  }
  check_cap(domain_cap);
  Modulus m;
  m.family_ = Family::power;
  m.alpha_ = alpha;
  m.domain_cap_ = domain_cap;
  return m;
}

Modulus Modulus::piecewise_unchecked(std::vector<Knot> knots, double domain_cap) {
  check_cap(domain_cap);
  if (knots.size() < 2) throw ValidationError("piecewise modulus needs at least two knots");
  if (knots.front().t != 0.0 || knots.front().value != 0.0) {
    throw ValidationError("piecewise modulus must start at the knot (0, 0)");
  }
  Modulus m;
  m.family_ = Family::piecewise;
  m.domain_cap_ = domain_cap;
  m.slopes_.reserve(knots.size() - 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double dt = knots[i + 1].t - knots[i].t;
    if (!(dt > 0.0) || !std::isfinite(knots[i + 1].value)) {
      std::ostringstream msg;
      msg << "piecewise modulus knots must be finite with strictly increasing t (knot " << i + 1 << ")";
      throw ValidationError(msg.str());
    }
    m.slopes_.push_back((knots[i + 1].value - knots[i].value) / dt);
  }
  m.knots_ = std::move(knots);
  return m;
}

Modulus Modulus::piecewise(std::vector<Knot> knots, double domain_cap) {
  Modulus m = piecewise_unchecked(std::move(knots), domain_cap);
  for (std::size_t i = 0; i < m.slopes_.size(); ++i) {
    if (m.slopes_[i] < 0.0) {
      std::ostringstream msg;
      msg << "piecewise modulus values must be nondecreasing; segment " << i << " has slope "
          << m.slopes_[i];
      throw ValidationError(msg.str());
    }
    if (i > 0 && m.slopes_[i] > m.slopes_[i - 1] * (1.0 + kConcavityTol)) {
      std::ostringstream msg;
      msg << "piecewise modulus must be concave: slope increases " << m.slopes_[i - 1] << " -> "
          << m.slopes_[i] << " at knot " << i;
      throw ValidationError(msg.str());
    }
  }
  return m;
}

Modulus Modulus::scaled(double scale, Modulus inner) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ParameterError("modulus scale must be a positive finite number");
  }
  Modulus m;
  m.family_ = Family::scaled;
  m.scale_ = scale;
  m.domain_cap_ = inner.domain_cap();
  m.inner_ = std::make_shared<const Modulus>(std::move(inner));
  return m;
}

const Modulus& Modulus::inner() const {
  if (!inner_) throw ParameterError("modulus has no inner modulus");
  return *inner_;
}

double Modulus::operator()(double t) const {
  if (!(t >= 0.0)) {
    std::ostringstream msg;
    msg << "modulus evaluated at negative or NaN argument " << t;
    throw DomainError(msg.str());
  }
  if (t == 0.0) return 0.0;
  switch (family_) {
    case Family::power:
      return alpha_ == 1.0 ? t : std::pow(t, alpha_);
    case Family::piecewise: {
      // First knot with knot.t > t; the segment to its left contains t.
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double v, const Knot& k) { return v < k.t; });
      std::size_t seg = static_cast<std::size_t>(it - knots_.begin()) - 1;
      seg = std::min(seg, slopes_.size() - 1);
      return knots_[seg].value + (t - knots_[seg].t) * slopes_[seg];
    }
    case Family::scaled:
      return scale_ * (*inner_)(t);
  }
  return 0.0;
}

double Modulus::small_scale_exponent() const {
  switch (family_) {
    case Family::power:
      return alpha_;
    case Family::scaled:
      return inner_->small_scale_exponent();
    case Family::piecewise:
      return 1.0;
  }
  return 1.0;
}

double Modulus::oscillation_ratio(double omega, double diameter) const {
  if (!(omega > 0.0)) return 0.0;
  // min(2, omega t) / theta(t) increases up to t = 2/omega and decreases after
  // it when theta(t)/t is nonincreasing.
  const double t = std::min(2.0 / omega, diameter);
  const double denom = (*this)(t);
  if (!(denom > 0.0)) throw DegenerateModulusError("modulus vanishes at a nonzero distance");
  return std::min(2.0, omega * t) / denom;
}

double Modulus::oscillation_constant(double diameter) const {
  switch (family_) {
    case Family::power:
      return std::pow(2.0, 1.0 - alpha_);
    case Family::scaled:
      return inner_->oscillation_constant(diameter) / scale_;
    case Family::piecewise: {
      // theta(t) >= t theta(D) / D on [0, D] by concavity.
      const double denom = (*this)(diameter);
      if (!(denom > 0.0)) throw DegenerateModulusError("modulus vanishes at a nonzero distance");
      return diameter / denom;
    }
  }
  return 0.0;
}

std::string to_string(Modulus::Family family) {
  switch (family) {
    case Modulus::Family::power:
      return "power";
    case Modulus::Family::piecewise:
      return "piecewise";
    case Modulus::Family::scaled:
      return "scaled";
  }
  return "unknown";
}

ModulusValidationReport validate(const Modulus& modulus, std::size_t samples, double tol) {
  if (samples < 3) throw ParameterError("modulus validation needs at least 3 samples");
  const double cap = modulus.domain_cap();
  std::size_t intervals = samples - 1;
  if (intervals % 2 != 0) ++intervals;

  std::vector<double> ts(intervals + 1);
  std::vector<double> vals(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    ts[i] = i == intervals ? cap : cap * static_cast<double>(i) / static_cast<double>(intervals);
    vals[i] = modulus(ts[i]);
  }

  ModulusValidationReport report;
  report.samples = ts.size();
  report.tolerance = tol < 0.0 ? 1e-12 * modulus(cap) : tol;
  report.worst_violation = -std::numeric_limits<double>::infinity();

  auto record = [&](double excess, ModulusValidationReport::Kind kind, double s, double t) {
    ++report.checks;
    if (excess > report.tolerance) ++report.violations;
    if (excess > report.worst_violation) {
      report.worst_violation = excess;
      report.worst_kind = kind;
      report.witness = {s, t};
    }
  };

  // theta(t1) <= theta(t2) for all t1 < t2 reduces to comparing each sample
  // with the running maximum of its predecessors.
  std::size_t argmax = 0;
  for (std::size_t j = 1; j < ts.size(); ++j) {
    record(vals[argmax] - vals[j], ModulusValidationReport::Kind::monotonicity, ts[argmax], ts[j]);
    if (vals[j] > vals[argmax]) argmax = j;
  }

  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i; i + j <= intervals; ++j) {
      const double sum = ts[i] + ts[j];
      record(modulus(sum) - (vals[i] + vals[j]), ModulusValidationReport::Kind::subadditivity, ts[i],
             ts[j]);
    }
  }

  report.pass = report.violations == 0;
  if (report.pass) report.worst_kind = ModulusValidationReport::Kind::none;
  return report;
}

}  // namespace modext
