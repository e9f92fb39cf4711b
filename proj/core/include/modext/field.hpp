#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "modext/geometry.hpp"

namespace modext {

/// One realization of a field restricted to a grid.
class FieldSample {
 public:
  /// Throws ParameterError on a size mismatch or a non-finite value.
  FieldSample(Grid grid, std::vector<double> values, std::optional<std::size_t> label = {});

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  /// Martingale index n, when the sample is an iterate of a sequence.
  [[nodiscard]] std::optional<std::size_t> label() const noexcept { return label_; }

 private:
  Grid grid_;
  std::vector<double> values_;
  std::optional<std::size_t> label_;
};

/// A one-dimensional realization together with its derivatives up to order
/// m + 1: jets[l][i] is the l-th derivative at grid point i.
class SmoothFieldSample {
 public:
  /// Throws ParameterError unless the grid is 1-D, jets.size() == order + 2
  /// and every jet row is finite and grid-sized.
  SmoothFieldSample(Grid grid, std::vector<std::vector<double>> jets, std::size_t order,
                    std::optional<std::size_t> label = {});

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t order() const noexcept { return order_; }
  [[nodiscard]] const std::vector<std::vector<double>>& jets() const noexcept { return jets_; }
  [[nodiscard]] const std::vector<double>& jet(std::size_t l) const { return jets_.at(l); }
  [[nodiscard]] std::optional<std::size_t> label() const noexcept { return label_; }

  /// The l-th derivative as a plain FieldSample.
  [[nodiscard]] FieldSample derivative(std::size_t l) const;

 private:
  Grid grid_;
  std::vector<std::vector<double>> jets_;
  std::size_t order_;
  std::optional<std::size_t> label_;
};

}  // namespace modext
