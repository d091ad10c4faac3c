#include "hfm/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hfm/error.hpp"
#include "hfm/fourier.hpp"

namespace hfm {
namespace {

constexpr double kPi = std::numbers::pi;

void require_width(const GaussianSpec& g) {
  if (g.center.empty()) throw InvalidArgument("GaussianSpec needs a center of dimension >= 1");
  if (!(g.width.real() > 0.0)) throw InvalidArgument("GaussianSpec width needs Re a > 0");
}

// Apply the same (n_out x n_in) matrix along every axis of a row-major
// n_in^dim array.
std::vector<cplx> apply_separable(std::vector<cplx> data, int dim, std::size_t n_in,
                                  std::size_t n_out, const std::vector<cplx>& mat) {
  std::array<std::size_t, kMaxGridDim> shape{};
  for (int a = 0; a < dim; ++a) shape[a] = n_in;
  for (int a = 0; a < dim; ++a) {
    std::size_t outer = 1;
    std::size_t inner = 1;
    for (int b = 0; b < a; ++b) outer *= shape[b];
    for (int b = a + 1; b < dim; ++b) inner *= shape[b];
    std::vector<cplx> next(outer * n_out * inner, cplx(0.0));
    for (std::size_t o = 0; o < outer; ++o) {
      const cplx* src = data.data() + o * n_in * inner;
      cplx* dst = next.data() + o * n_out * inner;
      for (std::size_t m = 0; m < n_out; ++m) {
        const cplx* row = mat.data() + m * n_in;
        cplx* d = dst + m * inner;
        for (std::size_t n = 0; n < n_in; ++n) {
          const cplx k = row[n];
          if (k == 0.0) continue;
          const cplx* s = src + n * inner;
          for (std::size_t i = 0; i < inner; ++i) d[i] += k * s[i];
        }
      }
    }
    data = std::move(next);
    shape[a] = n_out;
  }
  return data;
}

Field clamp_nonnegative(GridSpec grid, std::vector<cplx> v, double eps_neg) {
  for (cplx& z : v) z = std::max(z.real(), 0.0);
  return Field::nonnegative(grid, std::move(v), eps_neg);
}

void require_same_dim(const Field& f, const GridSpec& target) {
  if (f.grid().dim() != target.dim()) throw InvalidArgument("target grid dimension mismatch");
}

}  // namespace

GaussianSpec centered_gaussian(int d, cplx amplitude, cplx width) {
  if (d < 1) throw InvalidArgument("Gaussian dimension must be >= 1");
  GaussianSpec g{amplitude, std::vector<double>(static_cast<std::size_t>(d), 0.0), width};
  require_width(g);
  return g;
}

GaussianSpec normalized_gaussian(int d) {
  // integral e^{-2|x|^2} = (pi/2)^{d/2}.
  return centered_gaussian(d, std::pow(2.0 / kPi, d / 4.0), 1.0);
}

Field sample(const GaussianSpec& g, const GridSpec& grid) {
  require_width(g);
  if (g.dim() != grid.dim()) throw InvalidArgument("GaussianSpec and grid dimensions differ");
  return sample_field(grid, [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) r2 += (x[a] - g.center[a]) * (x[a] - g.center[a]);
    return g.amplitude * std::exp(-g.width * r2);
  });
}

double gaussian_lq_integral(const GaussianSpec& g, double q) {
  require_width(g);
  if (!(q >= 1.0)) throw InvalidArgument("gaussian_lq_integral needs q >= 1");
  return std::pow(std::abs(g.amplitude), q) * std::pow(kPi / (q * g.width.real()), g.dim() / 2.0);
}

GaussianSpec gaussian_evolve_closed(const GaussianSpec& g, const FlowParams& flow) {
  require_width(g);
  // For Re a > 0 the factor 1 + 4ta (t >= 0) has positive real part and
  // 1 + 4isa has imaginary part 4 s Re a, which vanishes only at s = 0
  // where the factor is 1. Neither path meets the negative real axis, so the
  // principal branch of z^{-d/2} is the continuous continuation from the
  // identity.
  cplx z;
  switch (flow.kind) {
    case FlowKind::heat:
      if (!(flow.time >= 0.0)) throw InvalidArgument("heat time must be >= 0");
      z = 1.0 + 4.0 * flow.time * g.width;
      break;
    case FlowKind::schrodinger:
      if (!std::isfinite(flow.time)) throw InvalidArgument("Schroedinger time must be finite");
      z = 1.0 + 4.0 * cplx(0.0, flow.time) * g.width;
      break;
    default:
      throw InvalidArgument("closed-form evolution covers heat and Schroedinger flows only");
  }
  if (z.imag() == 0.0 && z.real() <= 0.0) throw NumericalError("Gaussian evolution hit a branch cut");
  GaussianSpec out = g;
  out.width = g.width / z;
  out.amplitude = g.amplitude * std::pow(z, -g.dim() / 2.0);
  return out;
}

Field heat_evolve(const Field& f, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("heat_evolve needs t >= 0");
  if (t == 0.0) return f;
  Field out = fourier_multiply(f, [t](double k2) { return cplx(std::exp(-t * k2)); });
  if (!f.is_nonnegative()) return out;
  const double tol = f.neg_tolerance() * std::max(1.0, max_abs(f));
  for (const cplx& v : out.samples()) {
    if (v.real() < -tol) throw NumericalError("heat evolution of nonnegative data went negative");
  }
  return clamp_nonnegative(out.grid(), std::move(out).take_samples(), f.neg_tolerance());
}

Field heat_kernel(double t, const GridSpec& grid) {
  if (!(t > 0.0)) throw InvalidArgument("heat_kernel needs t > 0");
  const double c = std::pow(4.0 * kPi * t, -grid.dim() / 2.0);
  return sample_nonnegative(grid, [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) r2 += x[a] * x[a];
    return c * std::exp(-r2 / (4.0 * t));
  });
}

Field convolve(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("convolve: grids differ");
  const Field ah = fourier(a);
  const Field bh = fourier(b);
  std::vector<cplx> prod(ah.size());
  const double c = std::pow(2.0 * kPi, a.grid().dim() / 2.0);
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = c * ah[i] * bh[i];
  return inverse_fourier(Field(ah.grid(), std::move(prod)));
}

namespace detail {

Field separable_gaussian_transform(const Field& f, const GridSpec& target, double lambda,
                                   double sigma2, double c) {
  require_same_dim(f, target);
  if (!(sigma2 > 0.0)) throw InvalidArgument("Gaussian transform needs sigma^2 > 0");
  const GridSpec& src = f.grid();
  const std::size_t n_in = src.points();
  const std::size_t n_out = target.points();
  std::vector<cplx> mat(n_out * n_in);
  for (std::size_t m = 0; m < n_out; ++m) {
    const double xm = lambda * target.coordinate(m);
    for (std::size_t n = 0; n < n_in; ++n) {
      const double dy = src.coordinate(n) - xm;
      mat[m * n_in + n] = std::exp(-dy * dy / (2.0 * sigma2));
    }
  }
  std::vector<cplx> in(f.samples().begin(), f.samples().end());
  if (f.is_nonnegative()) {
    for (cplx& z : in) z = std::max(z.real(), 0.0);
  }
  std::vector<cplx> out = apply_separable(std::move(in), src.dim(), n_in, n_out, mat);
  const double scale = c * src.cell_volume();
  for (cplx& z : out) z *= scale;
  if (f.is_nonnegative() && c >= 0.0) {
    return clamp_nonnegative(target, std::move(out), f.neg_tolerance());
  }
  return Field(target, std::move(out));
}

}  // namespace detail

Field heat_evolve_kernel(const Field& f, double t, const GridSpec& target) {
  if (!(t >= 0.0)) throw InvalidArgument("heat_evolve_kernel needs t >= 0");
  if (t == 0.0) {
    if (!(target == f.grid())) throw InvalidArgument("t = 0 kernel evolution needs the source grid");
    return f;
  }
  const int d = f.grid().dim();
  return detail::separable_gaussian_transform(f, target, 1.0, 2.0 * t,
                                              std::pow(4.0 * kPi * t, -d / 2.0));
}

Field mehler_evolve_kernel(const Field& f, double t, const GridSpec& target) {
  if (!(t > 0.0)) throw InvalidArgument("mehler_evolve_kernel needs t > 0");
  const double sigma2 = -std::expm1(-2.0 * t);
  return detail::separable_gaussian_transform(f, target, std::exp(-t), sigma2,
                                              std::pow(2.0 * kPi * sigma2, -f.grid().dim() / 2.0));
}

double support_radius(const Field& f, double rel_tol) {
  const double level = rel_tol * max_abs(f);
  double r = 0.0;
  for_each_point(f.grid(), [&](std::size_t i, const Point& x) {
    if (std::abs(f[i]) > level) {
      for (int a = 0; a < f.grid().dim(); ++a) r = std::max(r, std::abs(x[a]));
    }
  });
  return r;
}

SupportInfo measure_support(const Field& f, double space_tol, double band_tol) {
  return SupportInfo{support_radius(f, space_tol), support_radius(fourier(f), band_tol)};
}

SupportInfo measure_support(const Field& f, double rel_tol) {
  return measure_support(f, rel_tol, rel_tol);
}

Field schrodinger_evolve(const Field& f, double s, double rel_tol) {
  if (!std::isfinite(s)) throw InvalidArgument("schrodinger_evolve needs finite s");
  if (s == 0.0) return f;
  const GridSpec& g = f.grid();
  const SupportInfo sup = measure_support(f, rel_tol);
  if (sup.bandwidth >= g.nyquist() - g.dual_spacing()) {
    throw NumericalError("schrodinger_evolve: data not resolved, spectrum reaches pi/h");
  }
  const double reach = sup.radius + 2.0 * sup.bandwidth * std::abs(s);
  if (reach >= g.half_extent()) {
    throw NumericalError("schrodinger_evolve: wave packet reaches " + std::to_string(reach) +
                         " > box half extent " + std::to_string(g.half_extent()) +
                         " (wrap-around)");
  }
  return fourier_multiply(f, [s](double k2) { return std::polar(1.0, -s * k2); });
}

Field mehler_evolve(const Field& f, double t, FlowRoute route) {
  if (!(t >= 0.0)) throw InvalidArgument("mehler_evolve needs t >= 0");
  if (t == 0.0) return f;
  const GridSpec& g = f.grid();
  const int d = g.dim();
  const double contraction = std::exp(-t);
  if (route == FlowRoute::kernel) return mehler_evolve_kernel(f, t, g);
  if (route != FlowRoute::spectral) throw InvalidArgument("mehler_evolve: unsupported route");
  const double tau = -std::expm1(-2.0 * t) / 2.0;
  // (e^{tau Delta} f)(y) = (2 pi)^{-d/2} sum_k fhat_k e^{-tau xi_k^2} e^{i xi_k y} dxi^d,
  // evaluated at y = e^{-t} x. Separable, so one N x N matrix per axis.
  Field fh = fourier(f);
  std::vector<cplx> spec(fh.samples().begin(), fh.samples().end());
  const std::vector<double> k2 = frequency_norm_squared(g);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= std::exp(-tau * k2[i]);
  const std::size_t n = g.points();
  const double w = g.dual_spacing() / std::sqrt(2.0 * kPi);
  std::vector<cplx> mat(n * n);
  for (std::size_t m = 0; m < n; ++m) {
    const double y = contraction * g.coordinate(m);
    for (std::size_t k = 0; k < n; ++k) mat[m * n + k] = w * std::polar(1.0, g.frequency(k) * y);
  }
  std::vector<cplx> out = apply_separable(std::move(spec), d, n, n, mat);
  if (f.is_nonnegative()) {
    const double tol = f.neg_tolerance() * std::max(1.0, max_abs(f));
    for (const cplx& v : out) {
      if (v.real() < -tol) throw NumericalError("Mehler evolution of nonnegative data went negative");
    }
    return clamp_nonnegative(g, std::move(out), f.neg_tolerance());
  }
  return Field(g, std::move(out));
}

Field sliding_gaussian(const Field& f, double t, const GridSpec& target) {
  if (!(t > 0.0)) throw InvalidArgument("sliding_gaussian needs t > 0");
  const int d = f.grid().dim();
  return detail::separable_gaussian_transform(abs_squared(f), target, 1.0 / t, 2.0 / (t * t),
                                              std::pow(4.0 * kPi, -d / 2.0));
}

Field evolve(const Field& f, const FlowParams& flow) {
  switch (flow.kind) {
    case FlowKind::heat:
      if (flow.route == FlowRoute::kernel) return heat_evolve_kernel(f, flow.time, f.grid());
      if (flow.route == FlowRoute::spectral) return heat_evolve(f, flow.time);
      break;
    case FlowKind::schrodinger:
      if (flow.route == FlowRoute::spectral) return schrodinger_evolve(f, flow.time);
      break;
    case FlowKind::mehler:
      if (flow.route != FlowRoute::closed_form) return mehler_evolve(f, flow.time, flow.route);
      break;
  }
  throw InvalidArgument("evolve: route not available for this flow on sampled data");
}

}  // namespace hfm
