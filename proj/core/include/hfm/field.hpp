#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hfm/grid.hpp"

namespace hfm {

using cplx = std::complex<double>;

inline constexpr double kDefaultNegTol = 1e-10;

using Point = std::array<double, kMaxGridDim>;

// Visit every grid site in row-major order (axis 0 slowest). fn(flat, x)
// receives the flat index and the coordinates; unused trailing entries of x
// are zero.
template <class Fn>
void for_each_point(const GridSpec& grid, Fn&& fn) {
  const int dim = grid.dim();
  const std::size_t n = grid.points();
  const std::size_t total = grid.size();
  std::array<std::size_t, kMaxGridDim> idx{};
  Point x{};
  for (int a = 0; a < dim; ++a) x[a] = grid.coordinate(0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, static_cast<const Point&>(x));
    for (int a = dim - 1; a >= 0; --a) {
      if (++idx[a] < n) {
        x[a] = grid.coordinate(idx[a]);
        break;
      }
      idx[a] = 0;
      x[a] = grid.coordinate(0);
    }
  }
}

// Complex samples on a GridSpec. Immutable once built.
//
// The nonnegative flag records that the samples represent a real function
// >= 0 up to a rounding tolerance; construction through nonnegative() checks
// that claim and operations that need it (pointwise_power) refuse fields
// without it.
class Field {
 public:
  Field() = default;
  Field(GridSpec grid, std::vector<cplx> samples);

  // Throws NumericalError if any sample has |imag| > eps_neg or
  // real < -eps_neg.
  static Field nonnegative(GridSpec grid, std::vector<cplx> samples,
                           double eps_neg = kDefaultNegTol);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const cplx& operator[](std::size_t i) const { return samples_[i]; }
  bool is_nonnegative() const { return nonnegative_; }
  double neg_tolerance() const { return eps_neg_; }

  // Moves the samples out, leaving the field empty.
  std::vector<cplx> take_samples() &&;

 private:
  GridSpec grid_;
  std::vector<cplx> samples_;
  bool nonnegative_ = false;
  double eps_neg_ = kDefaultNegTol;
};

// Evaluate fn(const Point&) -> cplx (or anything convertible) at every site.
template <class Fn>
Field sample_field(const GridSpec& grid, Fn&& fn) {
  std::vector<cplx> s(grid.size());
  for_each_point(grid, [&](std::size_t i, const Point& x) { s[i] = cplx(fn(x)); });
  return Field(grid, std::move(s));
}

// Same, tagged nonnegative (and checked).
template <class Fn>
Field sample_nonnegative(const GridSpec& grid, Fn&& fn, double eps_neg = kDefaultNegTol) {
  std::vector<cplx> s(grid.size());
  for_each_point(grid, [&](std::size_t i, const Point& x) { s[i] = cplx(fn(x)); });
  return Field::nonnegative(grid, std::move(s), eps_neg);
}

// h^dim * sum of samples. Fixed left-to-right summation order.
cplx integrate(const Field& f);

// (integral |f|^q)^(1/q), q >= 1.
double lq_norm(const Field& f, double q);

// Integral of |f|^q without the outer root.
double lq_integral(const Field& f, double q);

double max_abs(const Field& f);

// Clamp rounding-level negatives to zero and raise to alpha in [1/2, 1].
Field pointwise_power(const Field& f, double alpha);

// Product grid; the factors must share half extent and points per axis.
Field tensor_product(std::span<const Field> factors);
Field tensor_power(const Field& f, int m);

// |f| and |f|^2, both tagged nonnegative.
Field modulus(const Field& f);
Field abs_squared(const Field& f);

Field scale(const Field& f, cplx c);
// Pointwise product on a common grid.
Field multiply(const Field& a, const Field& b);

// Embed into a box factor times larger with the same spacing, zero filled.
Field zero_pad(const Field& f, std::size_t factor);

// Throws NumericalError on NaN or Inf samples.
void require_finite(const Field& f, const char* what);

}  // namespace hfm
