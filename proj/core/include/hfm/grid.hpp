#pragma once

#include <cstddef>
#include <numbers>

namespace hfm {

// Uniform periodic sampling of the box [-L, L)^dim with N points per axis.
//
// Sample i on an axis sits at x_i = -L + i h, h = 2L/N, so the grid is
// symmetric about the origin (index N/2 is x = 0). The dual grid used by the
// Fourier transform has spacing pi/L and covers [-pi/h, pi/h), again with the
// zero frequency at index N/2.
class GridSpec {
 public:
  GridSpec() = default;

  int dim() const { return dim_; }
  double half_extent() const { return half_extent_; }
  std::size_t points() const { return points_; }

  double spacing() const { return 2.0 * half_extent_ / static_cast<double>(points_); }
  double dual_spacing() const { return std::numbers::pi / half_extent_; }
  // Largest representable frequency magnitude, pi/h.
  double nyquist() const { return std::numbers::pi / spacing(); }

  // points^dim.
  std::size_t size() const;
  // h^dim, the rectangle-rule weight.
  double cell_volume() const;

  double coordinate(std::size_t i) const {
    return -half_extent_ + static_cast<double>(i) * spacing();
  }
  double frequency(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(points_ / 2)) * dual_spacing();
  }

  // Grid on which fourier() places its output: half extent pi/h, same N.
  GridSpec dual() const;
  // Same spacing, factor times as many points (factor a power of two).
  GridSpec padded(std::size_t factor) const;
  // Same half extent, factor times as many points.
  GridSpec refined(std::size_t factor) const;
  GridSpec with_dim(int dim) const;

  // Half extents are compared to 1e-12 relative, so that dual().dual()
  // compares equal to the original grid despite rounding in pi/(pi/L).
  bool operator==(const GridSpec& other) const;

 private:
  friend GridSpec make_grid(int dim, double half_extent, std::size_t points);
  GridSpec(int dim, double half_extent, std::size_t points)
      : dim_(dim), half_extent_(half_extent), points_(points) {}

  int dim_ = 1;
  double half_extent_ = 1.0;
  std::size_t points_ = 8;
};

inline constexpr int kMaxGridDim = 4;

// Throws InvalidArgument unless points is a power of two >= 8, half_extent is
// finite and positive, and 1 <= dim <= kMaxGridDim.
GridSpec make_grid(int dim, double half_extent, std::size_t points);

bool is_power_of_two(std::size_t n);

}  // namespace hfm
