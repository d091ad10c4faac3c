#pragma once

#include <cstddef>
#include <vector>

namespace hfm {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre on [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

// n-point Gauss-Hermite for integral g(y) e^{-y^2} dy.
QuadratureRule gauss_hermite(std::size_t n);

// Nodes s = scale * tan(theta), theta Gauss-Legendre on (lo, hi) with
// -pi/2 <= lo < hi <= pi/2, weights carrying the Jacobian scale / cos^2.
// Integrands decaying like |s|^{-1-eps} become smooth, bounded functions of
// theta.
QuadratureRule tan_compactified(std::size_t n, double scale, double lo, double hi);

// Midpoint rule on [a, b] with n equal cells. Spectrally accurate for
// integrands that vanish to all orders at both ends.
QuadratureRule midpoint(std::size_t n, double a, double b);

}  // namespace hfm
