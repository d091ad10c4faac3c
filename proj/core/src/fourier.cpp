#include "hfm/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "hfm/error.hpp"

namespace hfm {
namespace {

// FFTW planning is not thread safe; execution with fftw_execute_dft on a
// cached plan is. Plans are created FFTW_UNALIGNED so any std::vector buffer
// can be fed to them.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    int dims[kMaxGridDim];
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) {
      dims[a] = static_cast<int>(n);
      total *= n;
    }
    std::vector<cplx> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(dim, dims, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Multiply by (-1)^{sum of indices}. N is even, so the parity of the flat
// row-major index along each axis is the parity of that axis index.
void checkerboard(std::span<cplx> data, int dim, std::size_t n) {
  std::array<std::size_t, kMaxGridDim> idx{};
  std::size_t parity = 0;
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    if (parity & 1U) data[flat] = -data[flat];
    for (int a = dim - 1; a >= 0; --a) {
      ++parity;
      if (++idx[a] < n) break;
      // The axis wrapped from n-1 to 0: n-1 increments in total were undone.
      parity -= n;
      idx[a] = 0;
    }
  }
}

Field transform(const Field& f, int sign) {
  require_finite(f, "fourier");
  const GridSpec& g = f.grid();
  std::vector<cplx> data(f.samples().begin(), f.samples().end());
  detail::centered_dft(data, g.dim(), g.points(), sign);
  // Forward: (2 pi)^(-1/2) h per axis. Backward from a dual grid is the
  // same formula with the dual grid's own spacing.
  const double c = std::pow(g.spacing() / std::sqrt(2.0 * std::numbers::pi), g.dim());
  for (cplx& v : data) v *= c;
  return Field(g.dual(), std::move(data));
}

}  // namespace

namespace detail {

void centered_dft(std::span<cplx> data, int dim, std::size_t n, int sign) {
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= n;
  if (data.size() != total) throw InvalidArgument("centered_dft: size mismatch");
  fftw_plan plan = plan_cache().get(dim, n, sign);
  checkerboard(data, dim, n);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
  checkerboard(data, dim, n);
}

}  // namespace detail

Field fourier(const Field& f) { return transform(f, -1); }

Field inverse_fourier(const Field& fhat) { return transform(fhat, +1); }

std::vector<double> frequency_norm_squared(const GridSpec& grid) {
  const GridSpec dual = grid.dual();
  std::vector<double> out(grid.size());
  // frequency(k) on the original grid equals the coordinate on its dual.
  for_each_point(dual, [&](std::size_t i, const Point& xi) {
    double s = 0.0;
    for (int a = 0; a < grid.dim(); ++a) s += xi[a] * xi[a];
    out[i] = s;
  });
  return out;
}

Field fourier_multiply(const Field& f, const std::function<cplx(double)>& radial_symbol) {
  const Field fh = fourier(f);
  const std::vector<double> k2 = frequency_norm_squared(f.grid());
  std::vector<cplx> s(fh.samples().begin(), fh.samples().end());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= radial_symbol(k2[i]);
  return inverse_fourier(Field(fh.grid(), std::move(s)));
}

}  // namespace hfm
