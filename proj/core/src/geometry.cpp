#include "modext/geometry.hpp"

#include <sstream>

#include "modext/error.hpp"
#include "modext/field.hpp"

namespace modext {

BoxDomain::BoxDomain(std::vector<Interval> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > kMaxDim) {
    throw ParameterError("box domain dimension must be 1 or 2");
  }
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const auto& [lo, hi] = axes_[i];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      std::ostringstream msg;
      msg << "box domain axis " << i << " must satisfy lo < hi, got [" << lo << ", " << hi << "]";
      throw ParameterError(msg.str());
    }
  }
}

double BoxDomain::diameter() const noexcept {
  double sq = 0.0;
  for (const auto& [lo, hi] : axes_) sq += (hi - lo) * (hi - lo);
  return axes_.size() == 1 ? axes_[0].hi - axes_[0].lo : std::sqrt(sq);
}

bool BoxDomain::contains(const Point& p, double slack) const noexcept {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (!(p[i] >= axes_[i].lo - slack && p[i] <= axes_[i].hi + slack)) return false;
  }
  for (std::size_t i = axes_.size(); i < kMaxDim; ++i) {
    if (p[i] != 0.0) return false;
  }
  return true;
}

bool operator==(const BoxDomain& a, const BoxDomain& b) noexcept {
  if (a.axes_.size() != b.axes_.size()) return false;
  for (std::size_t i = 0; i < a.axes_.size(); ++i) {
    if (a.axes_[i].lo != b.axes_[i].lo || a.axes_[i].hi != b.axes_[i].hi) return false;
  }
  return true;
}

Grid::Grid(BoxDomain domain, std::vector<std::size_t> counts)
    : domain_(std::move(domain)), counts_(std::move(counts)) {
  if (counts_.size() != domain_.dim()) {
    throw ParameterError("grid needs one point count per domain axis");
  }
  std::size_t total = 1;
  for (std::size_t c : counts_) {
    if (c < 2) throw ParameterError("grid needs at least 2 points per axis");
    total *= c;
  }
  points_.resize(total, Point{0.0, 0.0});
  if (dim() == 1) {
    for (std::size_t i = 0; i < counts_[0]; ++i) points_[i][0] = coordinate(0, i);
  } else {
    for (std::size_t i = 0; i < counts_[0]; ++i) {
      for (std::size_t j = 0; j < counts_[1]; ++j) {
        points_[i * counts_[1] + j] = {coordinate(0, i), coordinate(1, j)};
      }
    }
  }
}

double Grid::coordinate(std::size_t axis, std::size_t j) const {
  const auto& [lo, hi] = domain_.axis(axis);
  const std::size_t last = counts_.at(axis) - 1;
  if (j == last) return hi;
  return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(last);
}

FieldSample::FieldSample(Grid grid, std::vector<double> values, std::optional<std::size_t> label)
    : grid_(std::move(grid)), values_(std::move(values)), label_(label) {
  if (values_.size() != grid_.size()) {
    throw ParameterError("field sample size does not match its grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("field sample contains a non-finite value");
  }
}

SmoothFieldSample::SmoothFieldSample(Grid grid, std::vector<std::vector<double>> jets,
                                     std::size_t order, std::optional<std::size_t> label)
    : grid_(std::move(grid)), jets_(std::move(jets)), order_(order), label_(label) {
  if (grid_.dim() != 1) throw ParameterError("smooth field samples are one-dimensional");
  if (jets_.size() != order_ + 2) {
    throw ParameterError("smooth field sample of order m needs m + 2 jet rows");
  }
  for (const auto& row : jets_) {
    if (row.size() != grid_.size()) throw ParameterError("jet row size does not match its grid");
    for (double v : row) {
      if (!std::isfinite(v)) throw ParameterError("jet row contains a non-finite value");
    }
  }
}

FieldSample SmoothFieldSample::derivative(std::size_t l) const {
  if (l >= jets_.size()) throw ParameterError("derivative order exceeds available jets");
  return FieldSample(grid_, jets_[l], label_);
}

}  // namespace modext
