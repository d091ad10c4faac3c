#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hfm/field.hpp"
#include "hfm/groups.hpp"
#include "hfm/interpolate.hpp"

namespace hfm {

// Discretization shared by the quadratic forms on R^{md}. Integrands are
// tensor products of one factor f on R^d, so F(rho X) = prod_k f((rho X)_k)
// is read through interpolants of f alone; the X-integral is a midpoint
// rule with `points` nodes per axis on the box where f exceeds support_tol.
struct FormSpec {
  std::size_t points = 40;
  std::size_t angles = 64;    // rotations for O(2), reflections added
  std::size_t samples = 256;  // Haar samples for O(n), n >= 3
  std::uint64_t seed = 1;
  double support_tol = 1e-12;
  std::size_t oversample = 4;
  InterpOrder order = InterpOrder::cubic;
};

struct FormResult {
  double value = 0.0;
  // Standard error over group elements (antithetic pairs for Monte Carlo,
  // zero for the deterministic samplers).
  double std_error = 0.0;
  std::size_t elements = 0;
};

enum class HzVariant { d1_sextic, d2_quartic };

// c int F P F with F = f (x) f (x) f on R^3, P averaging over the
// isometries fixing (1,1,1), c = 1/(2 sqrt 3) (d1_sextic); or F = f (x) f
// on R^4 with (1,0,1,0), (0,1,0,1) fixed and c = 1/4 (d2_quartic).
// Equals the sixth (fourth) power of the L^6 (L^4) Strichartz norm of f
// for nonnegative f.
FormResult hz_form(const Field& f, HzVariant variant, const FormSpec& spec = {});

// pi^nu / (2^{nu+1} m^d Gamma(nu + 1)) (p(d)/2)^{d/2} int F P F with
// F = f^{(x) m} on R^{md} and P averaging over the isometries fixing
// 1_1, ..., 1_d. Needs nu = d(2m - p(d))/4 > 0 and md <= 4.
FormResult modified_rep(const Field& f, int m, const FormSpec& spec = {});

// int (e^{t Delta} f1)^{1/2} (e^{t Delta} f2)^{1/2} for nonnegative f1, f2 on
// a common grid.
double lambda_heat(const Field& f1, const Field& f2, double t);

// (1/4) int |grad log e^{t Delta} f1 - grad log e^{t Delta} f2|^2
//       (e^{t Delta} f1)^{1/2} (e^{t Delta} f2)^{1/2}.
// Log-gradients come from the kernel-weighted mean, grad log (H_t * f)(x) =
// (m_t(x) - x) / 2t, and are zeroed where either evolution is below 1e-30
// of its maximum.
double lambda_heat_derivative(const Field& f1, const Field& f2, double t);

struct MehlerTerms {
  double lambda = 0.0;
  double first = 0.0;   // (1/4) int |v1 - v2|^2 (u1 u2)^{1/2}
  double second = 0.0;  // int (<x, (v1 + v2)/2> + n) (u1 u2)^{1/2}
};

// u_j = e^{-|x|^2/2} e^{tL} f_j and v_j = grad log u_j on the data grid.
MehlerTerms lambda_mehler_terms(const Field& f1, const Field& f2, double t);

// d/dt of the (1,6,6) quantity to the sixth power:
//   1/(8 sqrt 3) int_O int |V(X) - rho^T V(rho X)|^2 U(X)^{1/2} U(rho X)^{1/2}
// with U = e^{t Delta}|F|^2, F = f (x) f (x) f, V = grad log U. Since U is
// the tensor cube of u = e^{t Delta}|f|^2, only u^{1/2} and (log u)' are
// interpolated.
FormResult q66_derivative(const Field& f, double t, const FormSpec& spec = {});

// Log-gradient of e^{t Delta} f on `target` by the kernel-weighted mean; one
// field per axis, zero where e^{t Delta} f < 1e-30 of its maximum.
std::vector<Field> heat_log_gradient(const Field& f, double t, const GridSpec& target);

}  // namespace hfm
