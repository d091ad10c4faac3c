#pragma once

#include <cstddef>

#include "hfm/field.hpp"
#include "hfm/flows.hpp"

namespace hfm {

// Discretization of the modified norm
//
//   |||f|||_p^p = c_d int dx int dz int_0^inf dzeta zeta^{nu-1}/Gamma(nu)
//                 int ds |int e^{-|z - sqrt(zeta) xi|^2} e^{i(x.xi - s|xi|^2)} fhat(xi) dxi|^p
//
// with c_d = (p(d)/pi)^{d/2} / (2 pi)^{d+2} and nu = d(p - p(d))/4 > 0.
//
// zeta in (0, 1] is integrated in w = zeta^nu, which turns the weight into
// dw / Gamma(nu + 1); zeta in [1, inf) in log zeta with a tan map.
struct ModifiedNormSpec {
  int d = 1;
  double p = 8.0;
  std::size_t zeta_nodes = 32;       // Gauss-Legendre in w on (0, 1]
  std::size_t zeta_tail_nodes = 32;  // tan-compactified in log zeta
  // z is integrated by the midpoint rule with step z_step * max(1, sqrt(zeta))
  // over the range where the Gaussian window meets the spectrum of f, widened
  // by z_margin.
  double z_step = 0.25;
  double z_margin = 3.0;
  // Passed to the inner L^p_{s,x} evaluations.
  std::size_t s_nodes = 97;
  double support_tol = 1e-10;
  double band_tol = 1e-10;
  // Points per axis for heat-evolved profiles in q_modified; 0 keeps the
  // data's own count.
  std::size_t eval_points = 0;

  double nu() const;
};

// Checks p > p(d).
ModifiedNormSpec make_modified(int d, double p);

// Sampled route; d = 1 only. For each (zeta, z) node the x,s integral is an
// L^p_{s,x} Strichartz integral of the windowed profile, after the rescaling
// xi -> xi / sqrt(zeta) and a Galilean shift when zeta > 1.
double modified_norm(const Field& f, const ModifiedNormSpec& spec);

// Gaussian route, any d: the xi, x and z integrals are Gaussian and done in
// closed form; s and zeta by quadrature.
double modified_norm(const GaussianSpec& g, const ModifiedNormSpec& spec);

// t^{d(alpha - 1/2)/2} |||(e^{t Delta} f)^alpha|||_p for nonnegative f.
double q_modified(const Field& f, const ModifiedNormSpec& spec, double alpha, double t);

// C_{d,m} with
//   C^{2m} = pi^nu / (2^{nu+1} m^d Gamma(nu + 1)) (p(d)/2)^{d/2},
// nu = d(2m - p(d))/4.
double sharp_modified_constant(int d, int m);

}  // namespace hfm
