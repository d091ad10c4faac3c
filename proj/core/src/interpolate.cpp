#include "hfm/interpolate.hpp"

#include <array>
#include <cmath>

#include "hfm/error.hpp"
#include "hfm/fourier.hpp"

namespace hfm {

Field refine_bandlimited(const Field& f, std::size_t factor) {
  if (factor == 1) return f;
  // The refined grid's dual has the same spacing pi/L and factor times the
  // extent, which is exactly zero_pad on the dual grid.
  return inverse_fourier(zero_pad(fourier(f), factor));
}

namespace {

template <class T>
T from_cplx(const cplx& v);
template <>
double from_cplx<double>(const cplx& v) {
  return v.real();
}
template <>
cplx from_cplx<cplx>(const cplx& v) {
  return v;
}

struct Stencil {
  std::array<long, 4> index{};
  std::array<double, 4> weight{};
  int width = 0;
};

Stencil make_stencil(double u, InterpOrder order) {
  Stencil s;
  const double fl = std::floor(u);
  const double t = u - fl;
  const long base = static_cast<long>(fl);
  if (order == InterpOrder::linear) {
    s.width = 2;
    s.index = {base, base + 1, 0, 0};
    s.weight = {1.0 - t, t, 0.0, 0.0};
  } else {
    s.width = 4;
    s.index = {base - 1, base, base + 1, base + 2};
    s.weight = {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
                -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
  }
  return s;
}

}  // namespace

template <class T>
GridInterpolator<T>::GridInterpolator(const Field& f, std::size_t oversample, InterpOrder order)
    : order_(order) {
  const Field fine = refine_bandlimited(f, oversample);
  grid_ = fine.grid();
  values_.resize(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) values_[i] = from_cplx<T>(fine[i]);
}

template <class T>
T GridInterpolator<T>::operator()(std::span<const double> x) const {
  const int dim = grid_.dim();
  if (static_cast<int>(x.size()) < dim) throw InvalidArgument("interpolator: too few coordinates");
  const long n = static_cast<long>(grid_.points());
  const double h = grid_.spacing();
  const double lo = -grid_.half_extent();
  std::array<Stencil, kMaxGridDim> st;
  for (int a = 0; a < dim; ++a) {
    st[a] = make_stencil((x[a] - lo) / h, order_);
    // Entirely outside the box along one axis: nothing to add.
    if (st[a].index[0] >= n || st[a].index[st[a].width - 1] < 0) return T(0.0);
  }
  const int w = st[0].width;
  int combos = 1;
  for (int a = 0; a < dim; ++a) combos *= w;
  T acc = T(0.0);
  for (int c = 0; c < combos; ++c) {
    int rem = c;
    std::size_t flat = 0;
    double wt = 1.0;
    bool inside = true;
    for (int a = 0; a < dim && inside; ++a) {
      const int k = rem % w;
      rem /= w;
      const long idx = st[a].index[k];
      inside = idx >= 0 && idx < n;
      wt *= st[a].weight[k];
      flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(inside ? idx : 0);
    }
    if (inside) acc += wt * values_[flat];
  }
  return acc;
}

template class GridInterpolator<double>;
template class GridInterpolator<cplx>;

}  // namespace hfm
