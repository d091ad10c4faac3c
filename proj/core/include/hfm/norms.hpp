#pragma once

#include "hfm/field.hpp"
#include "hfm/space_time.hpp"

namespace hfm {

// Box used to evaluate a heat-evolved profile at time t: the source box, or
// larger when the heat kernel tails (relative level support_tol after the
// square root) would reach the boundary, sampled with spec.eval_points per
// axis (the data's count when 0). The spacing grows with sqrt(t) like the
// profile itself.
GridSpec flow_grid(const Field& data, double t, const MixedNormSpec& spec);

// Q_{p,q}(t) = || e^{is Delta} (e^{t Delta} |f|^2)^{1/2} ||_{L^p_s L^q_x}.
double q_flow(const Field& f, const MixedNormSpec& spec, double t);

// || e^{is Delta} u~(t, .)^{1/2} ||, u~ the sliding Gaussian average of |f|^2.
// Equal to q_flow(f, spec, t^{-2}).
double q_flow_rescaled(const Field& f, const MixedNormSpec& spec, double t);

// t^{d(alpha - 1/2)/2} || e^{is Delta} (e^{t Delta} f)^alpha ||, f >= 0.
double q_mitigated(const Field& f, const MixedNormSpec& spec, double alpha, double t);

// || e^{is Delta} (e^{-|x|^2/2} e^{tL} |f|^2)^{1/2} ||.
double q_mehler(const Field& f, const MixedNormSpec& spec, double t);

struct LimitValues {
  double q_zero = 0.0;
  double q_infinity = 0.0;
};

// t -> 0 and t -> infinity values of q_flow: ||e^{is Delta}|f|||, and
// ||e^{is Delta} H_1^{1/2}|| ||f||_2 (the Gaussian factor in closed form).
LimitValues limit_values(const Field& f, const MixedNormSpec& spec);

// Same for q_mehler: ||e^{is Delta}(e^{-|x|^2/4}|f|)|| and
// ||e^{is Delta} e^{-|x|^2/4}|| (integral |f|^2 d gamma)^{1/2}.
LimitValues mehler_limit_values(const Field& f, const MixedNormSpec& spec);

// Same for q_mitigated on nonnegative f. For alpha > 1/2 the mitigating
// factor sends the t -> 0 value to 0 and the t -> infinity value is
// ||f||_1^alpha ||e^{is Delta} H_1^alpha||.
LimitValues mitigated_limit_values(const Field& f, const MixedNormSpec& spec, double alpha);

// H_1^alpha = (4 pi)^{-d alpha/2} e^{-alpha |x|^2 / 4} as a GaussianSpec.
GaussianSpec heat_kernel_power(int d, double alpha);

}  // namespace hfm
