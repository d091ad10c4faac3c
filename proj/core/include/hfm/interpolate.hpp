#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hfm/field.hpp"

namespace hfm {

enum class InterpOrder { linear, cubic };

// Band-limited refinement: zero-pad the spectrum so the same function is
// sampled factor times more densely on the same box.
Field refine_bandlimited(const Field& f, std::size_t factor);

// Off-grid evaluation of a sampled field. The field is first refined by
// `oversample` (band-limited, exact for band-limited data), then evaluated
// by tensor-product Lagrange interpolation of the requested order on the
// refined grid. Points outside the box see zero samples.
//
// T = double keeps only the real part, which halves memory for the
// nonnegative data used by the projection forms.
template <class T>
class GridInterpolator {
 public:
  GridInterpolator(const Field& f, std::size_t oversample, InterpOrder order);

  // x holds grid().dim() coordinates.
  T operator()(std::span<const double> x) const;

  const GridSpec& grid() const { return grid_; }
  InterpOrder order() const { return order_; }

 private:
  GridSpec grid_;
  InterpOrder order_;
  std::vector<T> values_;
};

extern template class GridInterpolator<double>;
extern template class GridInterpolator<cplx>;

}  // namespace hfm
