#include "hfm/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>

#include "hfm/error.hpp"

namespace hfm {

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw InvalidArgument("gauss_legendre needs at least one node");
  if (!(a < b)) throw InvalidArgument("gauss_legendre needs a < b");
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
  if (t == nullptr) throw NumericalError("GSL could not build the Gauss-Legendre table");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, i, &r.nodes[i], &r.weights[i], t);
  }
  gsl_integration_glfixed_table_free(t);
  return r;
}

QuadratureRule gauss_hermite(std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_hermite needs at least one node");
  gsl_integration_fixed_workspace* w =
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, n, 0.0, 1.0, 0.0, 0.0);
  if (w == nullptr) throw NumericalError("GSL could not build the Gauss-Hermite table");
  QuadratureRule r;
  const double* x = gsl_integration_fixed_nodes(w);
  const double* wt = gsl_integration_fixed_weights(w);
  r.nodes.assign(x, x + n);
  r.weights.assign(wt, wt + n);
  gsl_integration_fixed_free(w);
  return r;
}

QuadratureRule tan_compactified(std::size_t n, double scale, double lo, double hi) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(scale > 0.0)) throw InvalidArgument("compactification scale must be positive");
  if (!(lo >= -half_pi && hi <= half_pi && lo < hi)) {
    throw InvalidArgument("compactified angle range must lie in [-pi/2, pi/2]");
  }
  QuadratureRule r = gauss_legendre(n, lo, hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(r.nodes[i]);
    r.weights[i] *= scale / (c * c);
    r.nodes[i] = scale * std::tan(r.nodes[i]);
  }
  return r;
}

QuadratureRule midpoint(std::size_t n, double a, double b) {
  if (n == 0 || !(a < b)) throw InvalidArgument("midpoint rule needs n >= 1 and a < b");
  QuadratureRule r;
  const double h = (b - a) / static_cast<double>(n);
  r.nodes.resize(n);
  r.weights.assign(n, h);
  for (std::size_t i = 0; i < n; ++i) r.nodes[i] = a + (static_cast<double>(i) + 0.5) * h;
  return r;
}

}  // namespace hfm
