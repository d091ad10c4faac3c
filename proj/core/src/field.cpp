#include "hfm/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hfm/error.hpp"

namespace hfm {

Field::Field(GridSpec grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) {
    throw InvalidArgument("field sample count " + std::to_string(samples_.size()) +
                          " does not match grid size " + std::to_string(grid_.size()));
  }
}

Field Field::nonnegative(GridSpec grid, std::vector<cplx> samples, double eps_neg) {
  if (!(eps_neg >= 0.0)) throw InvalidArgument("negativity tolerance must be >= 0");
  Field f(grid, std::move(samples));
  for (const cplx& v : f.samples_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError("nonnegative field has non-finite samples");
    }
    if (std::abs(v.imag()) > eps_neg || v.real() < -eps_neg) {
      throw NumericalError("field claimed nonnegative has sample (" + std::to_string(v.real()) +
                           ", " + std::to_string(v.imag()) + ")");
    }
  }
  f.nonnegative_ = true;
  f.eps_neg_ = eps_neg;
  return f;
}

std::vector<cplx> Field::take_samples() && {
  nonnegative_ = false;
  return std::move(samples_);
}

void require_finite(const Field& f, const char* what) {
  for (const cplx& v : f.samples()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError(std::string(what) + ": non-finite sample");
    }
  }
}

cplx integrate(const Field& f) {
  require_finite(f, "integrate");
  cplx sum = 0.0;
  for (const cplx& v : f.samples()) sum += v;
  return sum * f.grid().cell_volume();
}

double lq_integral(const Field& f, double q) {
  if (!(q >= 1.0)) throw InvalidArgument("lq_norm requires q >= 1");
  require_finite(f, "lq_norm");
  double sum = 0.0;
  if (q == 2.0) {
    for (const cplx& v : f.samples()) sum += std::norm(v);
  } else {
    for (const cplx& v : f.samples()) sum += std::pow(std::abs(v), q);
  }
  return sum * f.grid().cell_volume();
}

double lq_norm(const Field& f, double q) { return std::pow(lq_integral(f, q), 1.0 / q); }

double max_abs(const Field& f) {
  double m = 0.0;
  for (const cplx& v : f.samples()) m = std::max(m, std::abs(v));
  return m;
}

Field pointwise_power(const Field& f, double alpha) {
  if (!f.is_nonnegative()) {
    throw InvalidArgument("pointwise_power requires a field tagged nonnegative");
  }
  if (!(alpha >= 0.5 && alpha <= 1.0)) {
    throw InvalidArgument("pointwise_power exponent must lie in [1/2, 1]");
  }
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = std::max(f[i].real(), 0.0);
    out[i] = alpha == 1.0 ? r : (alpha == 0.5 ? std::sqrt(r) : std::pow(r, alpha));
  }
  return Field::nonnegative(f.grid(), std::move(out), f.neg_tolerance());
}

Field tensor_product(std::span<const Field> factors) {
  if (factors.empty()) throw InvalidArgument("tensor_product needs at least one factor");
  const GridSpec& g0 = factors[0].grid();
  int dim = 0;
  bool nonneg = true;
  for (const Field& f : factors) {
    if (!(f.grid().with_dim(g0.dim()) == g0)) {
      throw InvalidArgument("tensor_product factors must share per-axis sampling");
    }
    dim += f.grid().dim();
    nonneg = nonneg && f.is_nonnegative();
  }
  const GridSpec out_grid = make_grid(dim, g0.half_extent(), g0.points());
  std::vector<cplx> out(factors[0].samples().begin(), factors[0].samples().end());
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const auto b = factors[k].samples();
    std::vector<cplx> next(out.size() * b.size());
    std::size_t w = 0;
    for (const cplx& va : out) {
      for (const cplx& vb : b) next[w++] = va * vb;
    }
    out = std::move(next);
  }
  if (nonneg) return Field::nonnegative(out_grid, std::move(out), factors[0].neg_tolerance());
  return Field(out_grid, std::move(out));
}

Field tensor_power(const Field& f, int m) {
  if (m < 1) throw InvalidArgument("tensor_power needs m >= 1");
  std::vector<Field> copies(static_cast<std::size_t>(m), f);
  return tensor_product(copies);
}

Field modulus(const Field& f) {
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
  return Field::nonnegative(f.grid(), std::move(out));
}

Field abs_squared(const Field& f) {
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::norm(f[i]);
  return Field::nonnegative(f.grid(), std::move(out));
}

Field scale(const Field& f, cplx c) {
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = c * f[i];
  if (f.is_nonnegative() && c.imag() == 0.0 && c.real() >= 0.0) {
    return Field::nonnegative(f.grid(), std::move(out), f.neg_tolerance());
  }
  return Field(f.grid(), std::move(out));
}

Field multiply(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("multiply: grids differ");
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  if (a.is_nonnegative() && b.is_nonnegative()) {
    // Products of clamped values can only pick up negativity of order eps^2.
    return Field::nonnegative(a.grid(), std::move(out), a.neg_tolerance());
  }
  return Field(a.grid(), std::move(out));
}

Field zero_pad(const Field& f, std::size_t factor) {
  const GridSpec& g = f.grid();
  const GridSpec big = g.padded(factor);
  if (factor == 1) return f;
  const std::size_t n = g.points();
  const std::size_t nb = big.points();
  // Index i on the small grid lands at i + offset on the big grid, because
  // both put x = 0 at the middle index.
  const std::size_t offset = nb / 2 - n / 2;
  std::vector<cplx> out(big.size(), cplx(0.0));
  const int dim = g.dim();
  std::array<std::size_t, kMaxGridDim> idx{};
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    std::size_t dst = 0;
    for (int a = 0; a < dim; ++a) dst = dst * nb + idx[a] + offset;
    out[dst] = f[flat];
    for (int a = dim - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  if (f.is_nonnegative()) return Field::nonnegative(big, std::move(out), f.neg_tolerance());
  return Field(big, std::move(out));
}

}  // namespace hfm
