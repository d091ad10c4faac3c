#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hfm/field.hpp"
#include "hfm/flows.hpp"
#include "hfm/quadrature.hpp"

namespace hfm {

// Exponents and discretization for ||e^{is Delta} f||_{L^p_s L^q_x(R x R^d)}.
struct MixedNormSpec {
  int d = 1;
  double p = 6.0;  // outer, in s
  double q = 6.0;  // inner, in x
  // s = Lambda tan(theta) with Lambda = s_scale * T, where T is the
  // dispersive time of the data (spatial spread over twice the frequency
  // spread). Tying Lambda to the data keeps the theta nodes covariant
  // under dilation of the data.
  double s_scale = 1.0;
  std::size_t s_nodes = 129;
  // Relative level below which samples count as outside the support when
  // sizing boxes and choosing between the near and far routes.
  double support_tol = 1e-12;
  // Same for the spectrum. Square roots of heat-evolved mixtures in d = 2
  // have spectra decaying only exponentially, so 2D runs loosen this; the
  // neglected content bounds the relative error of the norm.
  double band_tol = 1e-12;
  // Largest zero-padding factor tried for the near route, and largest
  // refinement factor tried for the far route.
  std::size_t max_pad = 8;
  // Points per axis of the grid on which flowed profiles are evaluated
  // before the norm is taken; 0 keeps the data's own count. The heat kernel
  // sum needs the data finely sampled at small t, the norm does not.
  std::size_t eval_points = 0;

  // p, q >= 2, (d,p,q) != (2,2,inf) and 2/p + d/q = d/2 (to 1e-12).
  bool admissible() const;
  // q an even integer dividing p (p an integer multiple of q).
  bool even_divides() const;
};

MixedNormSpec make_triple(int d, double p, double q);

// p(d) = 2 + 4/d.
double p_of_d(int d);

// (integral (integral |u(s,x)|^q dx)^{p/q} ds)^{1/p} for a family u(s_k, .)
// given on quadrature nodes s_k with weights w_k (Jacobian included).
double mixed_norm(std::span<const Field> family, std::span<const double> weights, double p,
                  double q);

struct SpaceTimeResult {
  double integral = 0.0;  // the p-th power of the norm
  double norm = 0.0;
  // Diagnostics.
  double lambda = 0.0;
  double radius = 0.0;
  double bandwidth = 0.0;
  double s_switch = 0.0;
  std::size_t pad = 1;
  std::size_t refine = 1;
  std::size_t near_nodes = 0;
};

// s-nodes used for data with the given dispersive time.
QuadratureRule s_quadrature(const MixedNormSpec& spec, double dispersive_time);

// Root mean square distance of |f|^2 from its centroid, averaged over axes.
double rms_spread(const Field& f);

// spread_x / (2 spread_xi), with second moments of |f|^2 and |fhat|^2 about
// their centroids, averaged over axes.
double dispersive_time(const Field& f);

// Evaluates ||e^{is Delta} f||_{L^p_s L^q_x}.
//
// Each s-node uses one of two exact representations of e^{is Delta} f:
// near (|s| small) the Fourier multiplier on a zero-padded copy of the box;
// far, the pseudo-conformal identity
//   |e^{is Delta} f(x)| = (2|s|)^{-d/2} |ghat(x / 2s)|,  g = e^{i|y|^2/4s} f,
// which only needs f's own grid. With R the support radius and Xi the
// bandwidth, the near route is valid for |s| <= (L_pad - R) / 2 Xi and the
// far route for |s| >= R / 2(pi/h - Xi), where h shrinks if f is first
// refined (band-limited). Padding and refinement are the smallest powers of
// two giving a factor-two overlap; NumericalError if none up to max_pad.
SpaceTimeResult strichartz_integral(const Field& f, const MixedNormSpec& spec);

double strichartz_norm(const Field& f, const MixedNormSpec& spec);

// Same quadrature with the x-integrals taken from the closed-form evolved
// Gaussian.
double strichartz_norm(const GaussianSpec& g, const MixedNormSpec& spec);

}  // namespace hfm
