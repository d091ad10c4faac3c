#include "hfm/modified_norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hfm/error.hpp"
#include "hfm/fourier.hpp"
#include "hfm/norms.hpp"
#include "hfm/quadrature.hpp"
#include "hfm/space_time.hpp"

namespace hfm {
namespace {

constexpr double kPi = std::numbers::pi;

// Windows whose peak sits below level * peak(fhat) contribute about level^p
// relative to the norm; with level = 10^{-12/p} that is 1e-12 and they are
// skipped. The same level bounds the frequency range the z-range covers:
// beyond it every window is below max(level, e^{-z_margin^2}).
double skip_level(double p) { return std::pow(10.0, -12.0 / p); }
// log zeta beyond which the tail weight e^{-kappa u} is negligible.
constexpr double kMaxLogZeta = 80.0;

struct ZetaNode {
  double zeta;
  double weight;
};

void check_spec(const ModifiedNormSpec& spec) {
  if (spec.d < 1) throw InvalidArgument("modified norm needs d >= 1");
  if (!(spec.nu() > 0.0)) throw InvalidArgument("modified norm needs p > p(d) (nu > 0)");
  if (spec.zeta_nodes < 2 || spec.zeta_tail_nodes < 2 || spec.s_nodes < 2) {
    throw InvalidArgument("modified norm needs at least two nodes per quadrature");
  }
  if (!(spec.z_step > 0.0) || !(spec.z_margin > 0.0)) {
    throw InvalidArgument("modified norm needs positive z_step and z_margin");
  }
}

// Nodes for zeta^{nu-1}/Gamma(nu) dzeta with the split at zeta0, the scale
// at which sqrt(zeta) times the spectral spread of f reaches one.
std::vector<ZetaNode> zeta_rule(const ModifiedNormSpec& spec, double zeta0) {
  const double nu = spec.nu();
  const double lift = std::pow(zeta0, nu);
  std::vector<ZetaNode> out;
  const QuadratureRule inner = gauss_legendre(spec.zeta_nodes, 0.0, 1.0);
  const double g1 = std::tgamma(nu + 1.0);
  for (std::size_t k = 0; k < inner.size(); ++k) {
    out.push_back({zeta0 * std::pow(inner.nodes[k], 1.0 / nu), lift * inner.weights[k] / g1});
  }
  // Past zeta0 the z-integrated integrand decays like zeta^{-kappa-nu}.
  const double kappa = spec.d * (spec.p - 2.0) / 4.0;
  const QuadratureRule tail = tan_compactified(spec.zeta_tail_nodes, 1.0 / kappa, 0.0, kPi / 2.0);
  const double g0 = std::tgamma(nu);
  for (std::size_t k = 0; k < tail.size(); ++k) {
    const double u = tail.nodes[k];
    if (u > kMaxLogZeta) continue;
    out.push_back({zeta0 * std::exp(u), lift * tail.weights[k] * std::exp(nu * u) / g0});
  }
  return out;
}

// fhat(start + k step), k < count, for 1D f by the trapezoid sum
// (2 pi)^{-1/2} h sum_j f(x_j) e^{-i x_j xi}, with the phases advanced by
// recurrence along k. Frequencies past pi/h, where the sum only repeats
// itself, are set to zero.
std::vector<cplx> spectrum_at(const Field& f, double start, double step, std::size_t count) {
  const GridSpec& g = f.grid();
  std::vector<cplx> out(count);
  const double c = g.spacing() / std::sqrt(2.0 * kPi);
  for (std::size_t j = 0; j < g.points(); ++j) {
    if (f[j] == cplx(0.0)) continue;
    const double x = g.coordinate(j);
    cplx phase = c * f[j] * std::polar(1.0, -x * start);
    const cplx rot = std::polar(1.0, -x * step);
    for (std::size_t k = 0; k < count; ++k) {
      out[k] += phase;
      phase *= rot;
    }
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (std::abs(start + static_cast<double>(k) * step) > g.nyquist()) out[k] = 0.0;
  }
  return out;
}

double prefactor(int d) {
  return std::pow(p_of_d(d) / kPi, d / 2.0) / std::pow(2.0 * kPi, d + 2.0);
}

}  // namespace

double ModifiedNormSpec::nu() const { return d * (p - p_of_d(d)) / 4.0; }

ModifiedNormSpec make_modified(int d, double p) {
  ModifiedNormSpec s;
  s.d = d;
  s.p = p;
  check_spec(s);
  return s;
}

double modified_norm(const Field& f, const ModifiedNormSpec& spec) {
  check_spec(spec);
  const GridSpec& g = f.grid();
  if (g.dim() != spec.d) throw InvalidArgument("modified_norm: field dimension differs from spec.d");
  if (spec.d != 1) throw InvalidArgument("modified_norm on sampled fields supports d = 1 only");
  require_finite(f, "modified_norm");
  if (max_abs(f) == 0.0) return 0.0;

  // The norm is invariant under f -> l^{1/2} f(l x). Work with the dilate
  // whose spectrum has unit spread, fhat_1(xi) = w^{1/2} fhat(w xi), so the
  // zeta and z rules below see data of a fixed scale.
  const Field fhat = fourier(f);
  const double omega = rms_spread(fhat);
  const SupportInfo sup = measure_support(f, spec.support_tol, spec.band_tol);
  const double radius = sup.radius * omega;
  const double band = std::max(sup.bandwidth / omega, std::sqrt(std::log(1.0 / spec.band_tol)));
  const double reach = 2.0 * std::sqrt(std::log(1.0 / spec.support_tol));
  const double work_l = radius + reach + 1.0;
  std::size_t work_n = 64;
  while (kPi * static_cast<double>(work_n) / (2.0 * work_l) < 2.0 * band) work_n *= 2;
  const GridSpec dual = make_grid(1, work_l, work_n).dual();
  const double amp = std::sqrt(omega);
  const auto spectrum = [&](double start, double step, std::size_t count) {
    std::vector<cplx> v = spectrum_at(f, omega * start, omega * step, count);
    for (cplx& c : v) c *= amp;
    return v;
  };
  const std::vector<cplx> fhat1 = spectrum(dual.coordinate(0), dual.spacing(), dual.points());
  // For zeta > 1 the window carries e^{-eta^2}, below 1e-20 past |eta| =
  // sqrt(ln 1e20); only that band of the spectrum is evaluated.
  const auto band_steps = static_cast<std::size_t>(std::sqrt(std::log(1e20)) / dual.spacing());
  const std::size_t k_mid = dual.points() / 2;
  const std::size_t k0 = k_mid > band_steps ? k_mid - band_steps : 0;
  const std::size_t k1 = std::min(dual.points() - 1, k_mid + band_steps);
  const double level = skip_level(spec.p);
  double peak = 0.0;
  for (const cplx& c : fhat1) peak = std::max(peak, std::abs(c));

  double xi_lo = 0.0;
  double xi_hi = 0.0;
  bool seen = false;
  for (std::size_t k = 0; k < dual.points(); ++k) {
    if (std::abs(fhat1[k]) <= level * peak) continue;
    const double xi = dual.coordinate(k);
    xi_lo = seen ? std::min(xi_lo, xi) : xi;
    xi_hi = seen ? std::max(xi_hi, xi) : xi;
    seen = true;
  }

  MixedNormSpec inner;
  inner.d = 1;
  inner.p = spec.p;
  inner.q = spec.p;
  inner.s_nodes = spec.s_nodes;
  inner.support_tol = spec.support_tol;
  inner.band_tol = spec.band_tol;

  const double p = spec.p;
  const double lift = std::pow(2.0 * kPi, p / 2.0);
  double total = 0.0;
  for (const ZetaNode& zn : zeta_rule(spec, 1.0)) {
    const double root = std::sqrt(zn.zeta);
    const double sigma = std::max(1.0, root);
    const double z_lo = root * xi_lo - spec.z_margin;
    const double z_hi = root * xi_hi + spec.z_margin;
    const auto count = static_cast<std::size_t>(std::ceil((z_hi - z_lo) / (spec.z_step * sigma)));
    const QuadratureRule zr = midpoint(std::max<std::size_t>(count, 2), z_lo, z_hi);
    double inner_sum = 0.0;
    for (std::size_t j = 0; j < zr.size(); ++j) {
      const double z = zr.nodes[j];
      // zeta <= 1: window times fhat_1. zeta > 1: after
      // xi -> (eta + z) / sigma, e^{-eta^2} fhat_1((eta + z) / sigma).
      std::vector<cplx> window;
      if (zn.zeta <= 1.0) {
        window = fhat1;
      } else {
        window.assign(dual.points(), 0.0);
        const std::vector<cplx> part =
            spectrum((dual.coordinate(k0) + z) / sigma, dual.spacing() / sigma, k1 - k0 + 1);
        std::copy(part.begin(), part.end(), window.begin() + static_cast<std::ptrdiff_t>(k0));
      }
      double top = 0.0;
      for (std::size_t k = 0; k < dual.size(); ++k) {
        const double xi = dual.coordinate(k);
        const double r = zn.zeta <= 1.0 ? z - root * xi : xi;
        window[k] *= std::exp(-r * r);
        top = std::max(top, std::abs(window[k]));
      }
      if (top < level * peak) continue;
      const Field psi = inverse_fourier(Field(dual, std::move(window)));
      inner_sum += zr.weights[j] * strichartz_integral(psi, inner).integral;
    }
    total += zn.weight * lift * std::pow(sigma, 3.0 - p) * inner_sum;
  }
  return std::pow(prefactor(1) * total, 1.0 / p);
}

double modified_norm(const GaussianSpec& gs, const ModifiedNormSpec& spec) {
  check_spec(spec);
  if (gs.dim() != spec.d) throw InvalidArgument("modified_norm: Gaussian dimension differs from spec.d");
  const cplx a = gs.width;
  if (!(a.real() > 0.0)) throw InvalidArgument("modified_norm: Gaussian needs Re(width) > 0");
  const int d = spec.d;
  const double p = spec.p;
  const double base = std::pow(std::abs(gs.amplitude), p);
  const double shape = std::pow(std::abs(2.0 * a), -p / 2.0) * std::pow(kPi, p / 2.0);
  const cplx inv4a = 1.0 / (4.0 * a);

  double total = 0.0;
  // Spectral spread of the Gaussian is Re(1/a)^{-1/2}.
  for (const ZetaNode& zn : zeta_rule(spec, (1.0 / a).real())) {
    const double zeta = zn.zeta;
    const double c = zeta + inv4a.real();
    const QuadratureRule sr = tan_compactified(spec.s_nodes, c, -kPi / 2.0, kPi / 2.0);
    double s_sum = 0.0;
    for (std::size_t k = 0; k < sr.size(); ++k) {
      // With B = zeta + 1/4a + is the xi-integral is sqrt(pi/B) times
      // exp(-|z|^2 + (2 sqrt(zeta) z + ix)^2 / 4B); |.|^p is then a
      // Gaussian in (z_j, x_j) whose matrix has determinant
      // p^2 Re(1/4a) / 4|B|^2.
      const cplx B = zeta + inv4a + cplx(0.0, sr.nodes[k]);
      const double det = p * p * inv4a.real() / (4.0 * std::norm(B));
      const double per_axis = shape * std::pow(std::abs(B), -p / 2.0) * kPi / std::sqrt(det);
      s_sum += sr.weights[k] * std::pow(per_axis, d);
    }
    total += zn.weight * s_sum;
  }
  return std::pow(prefactor(d) * base * total, 1.0 / p);
}

double q_modified(const Field& f, const ModifiedNormSpec& spec, double alpha, double t) {
  if (!(alpha >= 0.5 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [1/2, 1]");
  if (!(t > 0.0)) throw InvalidArgument("q_modified needs t > 0");
  if (!f.is_nonnegative()) throw InvalidArgument("q_modified needs nonnegative data");
  MixedNormSpec sizing;
  sizing.d = spec.d;
  sizing.eval_points = spec.eval_points;
  const Field u = heat_evolve_kernel(f, t, flow_grid(f, t, sizing));
  const double factor = std::pow(t, spec.d * (alpha - 0.5) / 2.0);
  return factor * modified_norm(pointwise_power(u, alpha), spec);
}

double sharp_modified_constant(int d, int m) {
  if (d < 1 || m < 1) throw InvalidArgument("sharp_modified_constant needs d, m >= 1");
  const double nu = d * (2.0 * m - p_of_d(d)) / 4.0;
  if (!(nu > 0.0)) throw InvalidArgument("sharp_modified_constant needs 2m > p(d)");
  const double c2m = std::pow(kPi, nu) / (std::pow(2.0, nu + 1.0) * std::pow(m, d) * std::tgamma(nu + 1.0)) *
                     std::pow(p_of_d(d) / 2.0, d / 2.0);
  return std::pow(c2m, 1.0 / (2.0 * m));
}

}  // namespace hfm
