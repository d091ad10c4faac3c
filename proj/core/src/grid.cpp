#include "hfm/grid.hpp"

#include <cmath>
#include <string>

#include "hfm/error.hpp"

namespace hfm {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridSpec make_grid(int dim, double half_extent, std::size_t points) {
  if (dim < 1 || dim > kMaxGridDim) {
    throw InvalidArgument("grid dimension must be in [1, " + std::to_string(kMaxGridDim) +
                          "], got " + std::to_string(dim));
  }
  if (!std::isfinite(half_extent) || half_extent <= 0.0) {
    throw InvalidArgument("grid half extent must be positive and finite");
  }
  if (points < 8 || !is_power_of_two(points)) {
    throw InvalidArgument("grid points per axis must be a power of two >= 8, got " +
                          std::to_string(points));
  }
  return GridSpec(dim, half_extent, points);
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim_; ++a) n *= points_;
  return n;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim_); }

GridSpec GridSpec::dual() const { return make_grid(dim_, nyquist(), points_); }

GridSpec GridSpec::padded(std::size_t factor) const {
  if (!is_power_of_two(factor)) throw InvalidArgument("padding factor must be a power of two");
  return make_grid(dim_, half_extent_ * static_cast<double>(factor), points_ * factor);
}

GridSpec GridSpec::refined(std::size_t factor) const {
  if (!is_power_of_two(factor)) throw InvalidArgument("refinement factor must be a power of two");
  return make_grid(dim_, half_extent_, points_ * factor);
}

bool GridSpec::operator==(const GridSpec& other) const {
  return dim_ == other.dim_ && points_ == other.points_ &&
         std::abs(half_extent_ - other.half_extent_) <= 1e-12 * half_extent_;
}

GridSpec GridSpec::with_dim(int dim) const { return make_grid(dim, half_extent_, points_); }

}  // namespace hfm
