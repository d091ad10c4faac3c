#pragma once

#include <optional>
#include <vector>

#include "hfm/field.hpp"

namespace hfm {

enum class FlowKind { heat, schrodinger, mehler };
enum class FlowRoute { spectral, kernel, closed_form };

struct FlowParams {
  FlowKind kind = FlowKind::heat;
  // t >= 0 for heat and Mehler, any real s for Schroedinger.
  double time = 0.0;
  FlowRoute route = FlowRoute::spectral;
};

// A * exp(-a |x - c|^2) with Re a > 0.
struct GaussianSpec {
  cplx amplitude = 1.0;
  std::vector<double> center;  // size d
  cplx width = 1.0;

  int dim() const { return static_cast<int>(center.size()); }
};

GaussianSpec centered_gaussian(int d, cplx amplitude, cplx width);
// exp(-|x|^2) scaled to unit L^2 norm.
GaussianSpec normalized_gaussian(int d);

Field sample(const GaussianSpec& g, const GridSpec& grid);
// Integral of |g|^q over R^d, exact.
double gaussian_lq_integral(const GaussianSpec& g, double q);

// Exact heat or Schroedinger evolution of a Gaussian. Throws for Mehler,
// negative heat time or Re a <= 0.
GaussianSpec gaussian_evolve_closed(const GaussianSpec& g, const FlowParams& flow);

// e^{t Delta} f by the Fourier multiplier e^{-t|xi|^2}. A nonnegative input
// yields a nonnegative output (rounding-level negatives are clamped).
Field heat_evolve(const Field& f, double t);

// e^{t Delta} f evaluated on `target` by direct summation against the heat
// kernel. Every term is nonnegative for nonnegative f, so the result keeps
// full relative accuracy in the tails where the spectral route only has
// absolute accuracy. target must have f's dimension.
Field heat_evolve_kernel(const Field& f, double t, const GridSpec& target);

// (4 pi t)^{-d/2} e^{-|x|^2 / 4t} sampled on grid.
Field heat_kernel(double t, const GridSpec& grid);

// Periodic convolution by quadrature on a common grid; both inputs must be
// negligible at the box edges.
Field convolve(const Field& a, const Field& b);

struct SupportInfo {
  // Largest sup-norm radius where |f| exceeds tol * max|f|.
  double radius = 0.0;
  // Same for the Fourier transform.
  double bandwidth = 0.0;
};

SupportInfo measure_support(const Field& f, double rel_tol);
SupportInfo measure_support(const Field& f, double space_tol, double band_tol);
// Spatial part of measure_support only.
double support_radius(const Field& f, double rel_tol);

// e^{is Delta} f by the multiplier e^{-is|xi|^2}.
//
// Wrap-around check: with R the spatial radius and Xi the bandwidth of f at
// relative level rel_tol, the evolved function spreads to R + 2 Xi |s|; this
// must stay inside the box or NumericalError is thrown.
Field schrodinger_evolve(const Field& f, double s, double rel_tol = 1e-12);

// e^{tL} f(x) = (e^{tau Delta} f)(e^{-t} x), tau = (1 - e^{-2t}) / 2.
// spectral: heat multiplier followed by band-limited evaluation at the
//   contracted points (a scaled, non-periodic DFT sum).
// kernel: direct summation against the Mehler kernel; nonnegative output for
//   nonnegative input.
Field mehler_evolve(const Field& f, double t, FlowRoute route = FlowRoute::spectral);

// Kernel route onto another grid of the same dimension.
Field mehler_evolve_kernel(const Field& f, double t, const GridSpec& target);

// u~(t, x) = (4 pi)^{-d/2} integral e^{-|x - t v|^2 / 4} |f(v)|^2 dv,
// evaluated on target.
Field sliding_gaussian(const Field& f, double t, const GridSpec& target);

// Dispatches on flow.kind; closed_form is rejected here (use
// gaussian_evolve_closed).
Field evolve(const Field& f, const FlowParams& flow);

namespace detail {

// out(x) = c * sum_y f(y) prod_a exp(-(y_a - lambda x_a)^2 / (2 sigma2)) h^d
// on `target`, applied one axis at a time.
Field separable_gaussian_transform(const Field& f, const GridSpec& target, double lambda,
                                   double sigma2, double c);

}  // namespace detail

}  // namespace hfm
