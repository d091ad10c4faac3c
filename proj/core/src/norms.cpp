#include "hfm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hfm/error.hpp"
#include "hfm/flows.hpp"

namespace hfm {
namespace {

constexpr double kPi = std::numbers::pi;

// Distance beyond which a Gaussian factor e^{-r^2/4} sits below tol^2.
double gaussian_reach(double tol) { return std::sqrt(8.0 * std::log(1.0 / tol)); }

GridSpec widened(const GridSpec& base, double radius, const MixedNormSpec& spec) {
  const std::size_t n = spec.eval_points == 0 ? base.points() : spec.eval_points;
  return make_grid(base.dim(), std::max(radius, base.half_extent()), n);
}

// Box of the given radius with spacing at most `spacing`, never fewer points
// than base. eval_points, when set, wins.
GridSpec widened_at(const GridSpec& base, double radius, double spacing, const MixedNormSpec& spec) {
  if (spec.eval_points != 0 || radius <= base.half_extent()) return widened(base, radius, spec);
  std::size_t n = base.points();
  while (static_cast<double>(n) * spacing < 2.0 * radius) n *= 2;
  return make_grid(base.dim(), radius, n);
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.5 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [1/2, 1]");
}

void check_spec_dim(const Field& f, const MixedNormSpec& spec) {
  if (f.grid().dim() != spec.d) throw InvalidArgument("field dimension differs from spec.d");
}

}  // namespace

GaussianSpec heat_kernel_power(int d, double alpha) {
  return centered_gaussian(d, std::pow(4.0 * kPi, -d * alpha / 2.0), alpha / 4.0);
}

GridSpec flow_grid(const Field& data, double t, const MixedNormSpec& spec) {
  if (!(t >= 0.0)) throw InvalidArgument("flow_grid needs t >= 0");
  const double tol = spec.support_tol;
  const double r0 = support_radius(data, tol * tol);
  const double radius = r0 + gaussian_reach(tol) * std::sqrt(t) + 1.0;
  // Keep the data's spacing until e^{-t xi^2} has cut the spectrum to tol;
  // the square root taken afterwards roughly doubles the band.
  const double band = std::sqrt(std::log(1.0 / tol) / std::max(t, 1e-300));
  const double spacing = std::max(data.grid().spacing(), kPi / (2.0 * band));
  return widened_at(data.grid(), radius, spacing, spec);
}

double q_mitigated(const Field& f, const MixedNormSpec& spec, double alpha, double t) {
  check_alpha(alpha);
  check_spec_dim(f, spec);
  if (!(t > 0.0)) throw InvalidArgument("q_mitigated needs t > 0");
  if (!f.is_nonnegative()) throw InvalidArgument("q_mitigated needs nonnegative data");
  const GridSpec grid = flow_grid(f, t, spec);
  const Field u = heat_evolve_kernel(f, t, grid);
  const double factor = std::pow(t, spec.d * (alpha - 0.5) / 2.0);
  return factor * strichartz_norm(pointwise_power(u, alpha), spec);
}

double q_flow(const Field& f, const MixedNormSpec& spec, double t) {
  return q_mitigated(abs_squared(f), spec, 0.5, t);
}

double q_flow_rescaled(const Field& f, const MixedNormSpec& spec, double t) {
  check_spec_dim(f, spec);
  if (!(t > 0.0)) throw InvalidArgument("q_flow_rescaled needs t > 0");
  const Field g = abs_squared(f);
  const double r0 = support_radius(g, spec.support_tol * spec.support_tol);
  const GridSpec target = widened(f.grid(), t * r0 + gaussian_reach(spec.support_tol) + 1.0, spec);
  const Field u = sliding_gaussian(f, t, target);
  return strichartz_norm(pointwise_power(u, 0.5), spec);
}

double q_mehler(const Field& f, const MixedNormSpec& spec, double t) {
  check_spec_dim(f, spec);
  if (!(t > 0.0)) throw InvalidArgument("q_mehler needs t > 0");
  // The profile decays like e^{-|x|^2/4} whatever f does, so the box is
  // widened to that reach at the data's own spacing.
  const GridSpec& g = f.grid();
  const double reach = std::sqrt(4.0 * std::log(1.0 / spec.support_tol)) + 1.0;
  const GridSpec target = widened_at(g, reach, g.spacing(), spec);
  const Field m = mehler_evolve_kernel(abs_squared(f), t, target);
  const Field weight = sample_nonnegative(target, [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < spec.d; ++a) r2 += x[a] * x[a];
    return std::exp(-r2 / 2.0);
  });
  return strichartz_norm(pointwise_power(multiply(weight, m), 0.5), spec);
}

LimitValues limit_values(const Field& f, const MixedNormSpec& spec) {
  check_spec_dim(f, spec);
  LimitValues out;
  out.q_zero = strichartz_norm(modulus(f), spec);
  out.q_infinity = strichartz_norm(heat_kernel_power(spec.d, 0.5), spec) * lq_norm(f, 2.0);
  return out;
}

LimitValues mehler_limit_values(const Field& f, const MixedNormSpec& spec) {
  check_spec_dim(f, spec);
  const int d = spec.d;
  const Field damped = sample_field(f.grid(), [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    return std::exp(-r2 / 4.0);
  });
  LimitValues out;
  out.q_zero = strichartz_norm(modulus(multiply(damped, f)), spec);
  // integral |f|^2 d gamma = (2 pi)^{-d/2} integral |f|^2 e^{-|x|^2/2}.
  const double gauss_mass =
      std::pow(2.0 * kPi, -d / 2.0) * integrate(abs_squared(multiply(damped, f))).real();
  out.q_infinity = strichartz_norm(centered_gaussian(d, 1.0, 0.25), spec) * std::sqrt(gauss_mass);
  return out;
}

LimitValues mitigated_limit_values(const Field& f, const MixedNormSpec& spec, double alpha) {
  check_alpha(alpha);
  check_spec_dim(f, spec);
  if (!f.is_nonnegative()) throw InvalidArgument("mitigated limits need nonnegative data");
  const double mass = integrate(f).real();
  LimitValues out;
  out.q_zero = alpha == 0.5 ? strichartz_norm(pointwise_power(f, 0.5), spec) : 0.0;
  out.q_infinity = std::pow(mass, alpha) * strichartz_norm(heat_kernel_power(spec.d, alpha), spec);
  return out;
}

}  // namespace hfm
