#include "modext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "modext/error.hpp"
#include "modext/seminorm.hpp"

namespace modext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double theta_at(const Modulus& theta, double d) {
  const double v = theta(d);
  if (d > 0.0 && !(v > 0.0)) throw DegenerateModulusError("modulus vanishes at a nonzero distance");
  return v;
}

}  // namespace

AnchorSet::AnchorSet(BoxDomain domain, std::vector<Point> points, std::vector<double> values)
    : domain_(std::move(domain)), points_(std::move(points)), values_(std::move(values)) {
  if (points_.empty()) throw ParameterError("anchor set must not be empty");
  if (points_.size() != values_.size()) {
    throw ParameterError("anchor points and values differ in length");
  }
  const double slack = 1e-12 * domain_.diameter();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw ParameterError("anchor value is not finite");
    if (!domain_.contains(points_[i], slack)) {
      std::ostringstream msg;
      msg << "anchor " << i << " lies outside the domain";
      throw ParameterError(msg.str());
    }
  }
}

AnchorSet AnchorSet::with(const Point& p, double value) const {
  auto pts = points_;
  auto vals = values_;
  pts.push_back(p);
  vals.push_back(value);
  return AnchorSet(domain_, std::move(pts), std::move(vals));
}

double fit_constant(const AnchorSet& anchors, const Modulus& theta) {
  const auto& pts = anchors.points();
  const auto& vals = anchors.values();
  const std::size_t dim = anchors.domain().dim();
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = distance(pts[i], pts[j], dim);
      const double dv = std::abs(vals[i] - vals[j]);
      if (d == 0.0) {
        if (dv != 0.0) {
          std::ostringstream msg;
          msg << "anchors " << i << " and " << j << " coincide but carry different values";
          throw ConsistencyError(msg.str(), {i, j});
        }
        continue;
      }
      best = std::max(best, dv / theta_at(theta, d));
    }
  }
  return best;
}

ExtensionModel::ExtensionModel(AnchorSet anchors, Modulus theta, double constant)
    : anchors_(std::move(anchors)), theta_(std::move(theta)), constant_(constant) {}

ExtensionModel ExtensionModel::unchecked(AnchorSet anchors, Modulus theta, double constant) {
  return ExtensionModel(std::move(anchors), std::move(theta), constant);
}

ExtensionModel ExtensionModel::build(AnchorSet anchors, Modulus theta, std::optional<double> constant,
                                     double rel_tol) {
  if (!constant) {
    const double fitted = fit_constant(anchors, theta);
    return ExtensionModel(std::move(anchors), std::move(theta), fitted);
  }
  const double m = *constant;
  if (!(m >= 0.0) || !std::isfinite(m)) throw ParameterError("extension constant must be >= 0");

  const auto& pts = anchors.points();
  const auto& vals = anchors.values();
  const std::size_t dim = anchors.domain().dim();
  const double tol = rel_tol * m * theta(anchors.domain().diameter());
  double worst = -kInf;
  IndexPair witness{0, 0};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = distance(pts[i], pts[j], dim);
      const double excess = std::abs(vals[i] - vals[j]) - m * theta_at(theta, d);
      if (excess > worst) {
        worst = excess;
        witness = {i, j};
      }
    }
  }
  if (worst > tol) {
    std::ostringstream msg;
    msg << "constant M = " << m << " is below the anchors' fitted constant; anchors " << witness.first
        << " and " << witness.second << " violate the bound by " << worst;
    throw ConsistencyError(msg.str(), witness);
  }
  return ExtensionModel(std::move(anchors), std::move(theta), m);
}

std::pair<double, std::size_t> ExtensionModel::eval_with_witness(const Point& x) const {
  const auto& pts = anchors_.points();
  const auto& vals = anchors_.values();
  const std::size_t dim = anchors_.domain().dim();
  double best = kInf;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = vals[i] + constant_ * theta_(distance(x, pts[i], dim));
    if (v < best || (v == best && pts[i] < pts[arg])) {
      best = v;
      arg = i;
    }
  }
  return {best, arg};
}

double ExtensionModel::operator()(const Point& x) const {
  const auto& pts = anchors_.points();
  const auto& vals = anchors_.values();
  const std::size_t dim = anchors_.domain().dim();
  double best = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    best = std::min(best, vals[i] + constant_ * theta_(distance(x, pts[i], dim)));
  }
  return best;
}

std::vector<double> ExtensionModel::eval(std::span<const Point> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back((*this)(x));
  return out;
}

double ExtensionModel::scale() const { return constant_ * theta_(anchors_.domain().diameter()); }

VerificationReport verify_restriction(const ExtensionModel& model, double tol) {
  VerificationReport r;
  r.check = "restriction";
  r.tolerance = tol;
  r.worst_violation = -kInf;
  const auto& pts = model.anchors().points();
  const auto& vals = model.anchors().values();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dev = std::abs(model(pts[i]) - vals[i]);
    ++r.checks;
    if (dev > r.worst_violation) {
      r.worst_violation = dev;
      r.witness = {pts[i]};
    }
  }
  r.pass = r.worst_violation <= tol;
  return r;
}

VerificationReport verify_sandwich(const ExtensionModel& model, std::span<const Point> probes,
                                   double tol) {
  VerificationReport r;
  r.check = "sandwich";
  r.tolerance = tol;
  r.worst_violation = -kInf;
  const auto& pts = model.anchors().points();
  const auto& vals = model.anchors().values();
  const std::size_t dim = model.anchors().domain().dim();
  const double m = model.constant();
  for (const auto& x : probes) {
    const double ex = model(x);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double excess = std::abs(ex - vals[i]) - m * model.theta()(distance(x, pts[i], dim));
      ++r.checks;
      if (excess > r.worst_violation) {
        r.worst_violation = excess;
        r.witness = {x, pts[i]};
      }
    }
  }
  if (r.checks == 0) r.worst_violation = 0.0;
  r.pass = r.worst_violation <= tol;
  return r;
}

namespace {

struct ModulusAccumulator {
  VerificationReport report;
  double best_ratio = -kInf;

  explicit ModulusAccumulator(double tol) {
    report.check = "modulus";
    report.tolerance = tol;
    report.worst_violation = -kInf;
  }

  void add(const Point& x, const Point& y, double ex, double ey, double theta_d, double m) {
    const double delta = std::abs(ex - ey);
    const double excess = delta - m * theta_d;
    ++report.checks;
    if (excess > report.worst_violation) report.worst_violation = excess;
    if (theta_d > 0.0) {
      const double ratio = delta / theta_d;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        report.witness = {x, y};
      }
    }
  }

  VerificationReport finish() {
    if (report.checks == 0) report.worst_violation = 0.0;
    report.max_ratio = best_ratio == -kInf ? 0.0 : best_ratio;
    report.pass = report.worst_violation <= report.tolerance;
    return std::move(report);
  }
};

}  // namespace

VerificationReport verify_modulus(const ExtensionModel& model,
                                  std::span<const std::pair<Point, Point>> pairs, double tol) {
  ModulusAccumulator acc(tol);
  const std::size_t dim = model.anchors().domain().dim();
  for (const auto& [x, y] : pairs) {
    acc.add(x, y, model(x), model(y), model.theta()(distance(x, y, dim)), model.constant());
  }
  return acc.finish();
}

VerificationReport verify_modulus_all_pairs(const ExtensionModel& model, std::span<const Point> points,
                                            double tol) {
  ModulusAccumulator acc(tol);
  const std::size_t dim = model.anchors().domain().dim();
  const auto values = model.eval(points);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      acc.add(points[i], points[j], values[i], values[j],
              model.theta()(distance(points[i], points[j], dim)), model.constant());
    }
  }
  return acc.finish();
}

}  // namespace modext
