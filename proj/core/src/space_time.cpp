#include "hfm/space_time.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hfm/error.hpp"
#include "hfm/fourier.hpp"
#include "hfm/interpolate.hpp"
#include "hfm/threading.hpp"

namespace hfm {
namespace {

constexpr double kPi = std::numbers::pi;

bool near_integer(double v) { return std::abs(v - std::round(v)) <= 1e-12 * std::max(1.0, v); }

// |v|^q without a pow call for the even exponents that dominate usage.
double abs_pow(const cplx& v, double q) {
  const double n = std::norm(v);
  if (q == 2.0) return n;
  if (q == 4.0) return n * n;
  if (q == 6.0) return n * n * n;
  if (q == 8.0) return (n * n) * (n * n);
  return std::pow(n, q / 2.0);
}

void check_exponents(const MixedNormSpec& spec) {
  if (spec.d < 1) throw InvalidArgument("mixed norm needs d >= 1");
  if (!(spec.p >= 1.0 && spec.q >= 1.0) || !std::isfinite(spec.p) || !std::isfinite(spec.q)) {
    throw InvalidArgument("mixed norm needs finite p, q >= 1");
  }
  if (spec.s_nodes < 2) throw InvalidArgument("mixed norm needs at least two s-nodes");
  if (!(spec.s_scale > 0.0)) throw InvalidArgument("s_scale must be positive");
  if (!(spec.support_tol > 0.0 && spec.support_tol < 1.0) ||
      !(spec.band_tol > 0.0 && spec.band_tol < 1.0)) {
    throw InvalidArgument("support_tol and band_tol must lie in (0, 1)");
  }
  // ||u(s)||_q^p decays like |s|^{-dp(1/2 - 1/q)} for Schwartz data.
  if (spec.d * spec.p * (0.5 - 1.0 / spec.q) <= 1.0) {
    throw InvalidArgument("L^p_s L^q_x norm is infinite for Schwartz data at these exponents");
  }
}

}  // namespace

bool MixedNormSpec::admissible() const {
  if (p < 2.0 || q < 2.0) return false;
  return std::abs(2.0 / p + d / q - d / 2.0) <= 1e-12;
}

bool MixedNormSpec::even_divides() const {
  if (!near_integer(q) || !near_integer(p)) return false;
  const long qi = std::lround(q);
  const long pi = std::lround(p);
  return qi > 0 && qi % 2 == 0 && pi % qi == 0;
}

MixedNormSpec make_triple(int d, double p, double q) {
  MixedNormSpec s;
  s.d = d;
  s.p = p;
  s.q = q;
  check_exponents(s);
  return s;
}

double p_of_d(int d) {
  if (d < 1) throw InvalidArgument("p(d) needs d >= 1");
  return 2.0 + 4.0 / d;
}

double mixed_norm(std::span<const Field> family, std::span<const double> weights, double p,
                  double q) {
  if (family.size() != weights.size()) throw InvalidArgument("mixed_norm: node/weight mismatch");
  if (!(p >= 1.0 && q >= 1.0)) throw InvalidArgument("mixed_norm needs p, q >= 1");
  double total = 0.0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    total += weights[k] * std::pow(lq_integral(family[k], q), p / q);
  }
  return std::pow(total, 1.0 / p);
}

QuadratureRule s_quadrature(const MixedNormSpec& spec, double dispersive_time) {
  if (!(dispersive_time > 0.0) || !std::isfinite(dispersive_time)) {
    throw NumericalError("dispersive time of the data is not positive and finite");
  }
  return tan_compactified(spec.s_nodes, spec.s_scale * dispersive_time, -kPi / 2.0, kPi / 2.0);
}

double rms_spread(const Field& f) {
  const int d = f.grid().dim();
  double mass = 0.0;
  Point m1{};
  Point m2{};
  for_each_point(f.grid(), [&](std::size_t i, const Point& x) {
    const double w = std::norm(f[i]);
    mass += w;
    for (int a = 0; a < d; ++a) {
      m1[a] += w * x[a];
      m2[a] += w * x[a] * x[a];
    }
  });
  if (!(mass > 0.0)) throw NumericalError("rms_spread: zero field");
  double var = 0.0;
  for (int a = 0; a < d; ++a) {
    const double mean = m1[a] / mass;
    var += m2[a] / mass - mean * mean;
  }
  return std::sqrt(std::max(var / d, 0.0));
}

double dispersive_time(const Field& f) { return rms_spread(f) / (2.0 * rms_spread(fourier(f))); }

SpaceTimeResult strichartz_integral(const Field& f, const MixedNormSpec& spec) {
  check_exponents(spec);
  const GridSpec& g = f.grid();
  if (g.dim() != spec.d) throw InvalidArgument("strichartz: field dimension differs from spec.d");
  require_finite(f, "strichartz");
  if (max_abs(f) == 0.0) return SpaceTimeResult{};

  const int d = g.dim();
  const double h = g.spacing();
  const SupportInfo sup = measure_support(f, spec.support_tol, spec.band_tol);
  if (sup.radius >= g.half_extent() - 2.0 * h) {
    throw NumericalError("strichartz: data not negligible at the box boundary (radius " +
                         std::to_string(sup.radius) + ")");
  }
  if (sup.bandwidth >= g.nyquist() - 2.0 * g.dual_spacing()) {
    throw NumericalError("strichartz: data under-resolved, spectrum reaches pi/h");
  }

  SpaceTimeResult res;
  res.radius = sup.radius;
  res.bandwidth = sup.bandwidth;
  // Near route valid up to s_hi(pad), far route from s_lo / refine. Take
  // the cheapest (pad, refine) pair leaving a factor-two overlap.
  const double s_lo = sup.radius / (2.0 * (g.nyquist() - sup.bandwidth));
  const auto s_hi_for = [&](std::size_t pad) {
    const double l_pad = g.half_extent() * static_cast<double>(pad);
    return sup.bandwidth > 0.0 ? (l_pad - sup.radius) / (2.0 * sup.bandwidth)
                               : std::numeric_limits<double>::infinity();
  };
  bool found = false;
  for (std::size_t c = 1; c <= spec.max_pad && !found; c *= 2) {
    for (std::size_t other = 1; other <= c && !found; other *= 2) {
      for (const auto& [pad, refine] : {std::pair{c, other}, std::pair{other, c}}) {
        if (s_lo / static_cast<double>(refine) <= 0.5 * s_hi_for(pad)) {
          res.pad = pad;
          res.refine = refine;
          found = true;
          break;
        }
      }
    }
  }
  if (!found) {
    throw NumericalError("strichartz: no padding or refinement up to " +
                         std::to_string(spec.max_pad) +
                         " separates the near and far routes; refine the grid");
  }
  const double s_hi = s_hi_for(res.pad);
  const double s_far = s_lo / static_cast<double>(res.refine);
  if (std::isinf(s_hi)) {
    res.s_switch = std::max(2.0 * s_far, 1.0);
  } else if (s_far > 0.0) {
    res.s_switch = std::sqrt(s_far * s_hi);
  } else {
    res.s_switch = 0.5 * s_hi;
  }

  res.lambda = spec.s_scale * dispersive_time(f);
  const QuadratureRule rule = s_quadrature(spec, res.lambda / spec.s_scale);

  // Near route data: spectrum on the padded box.
  const Field padded = zero_pad(f, res.pad);
  const GridSpec& pg = padded.grid();
  const Field spec_pad = fourier(padded);
  const std::vector<double> k2 = frequency_norm_squared(pg);
  const double near_scale = std::pow(pg.dual_spacing() / std::sqrt(2.0 * kPi), d);
  const double near_cell = pg.cell_volume();

  // Far route data: f band-limited onto a finer grid of the same box.
  const Field fine = refine_bandlimited(f, res.refine);
  const GridSpec& fg = fine.grid();
  std::vector<double> y2(fg.size());
  for_each_point(fg, [&](std::size_t i, const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    y2[i] = r2;
  });
  const double far_scale = std::pow(fg.spacing() / std::sqrt(2.0 * kPi), d);
  const double far_cell = fg.dual().cell_volume();

  const double q = spec.q;
  std::vector<double> lq(rule.size());
  std::vector<char> near(rule.size());
  parallel_for(rule.size(), [&](std::size_t k) {
    const double s = rule.nodes[k];
    double sum = 0.0;
    if (std::abs(s) <= res.s_switch) {
      near[k] = 1;
      std::vector<cplx> buf(spec_pad.samples().begin(), spec_pad.samples().end());
      for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= std::polar(1.0, -s * k2[i]);
      detail::centered_dft(buf, d, pg.points(), +1);
      const double sc = std::pow(near_scale, q);
      for (const cplx& v : buf) sum += abs_pow(v, q);
      lq[k] = sum * sc * near_cell;
    } else {
      std::vector<cplx> buf(fine.samples().begin(), fine.samples().end());
      const double inv4s = 1.0 / (4.0 * s);
      for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= std::polar(1.0, y2[i] * inv4s);
      detail::centered_dft(buf, d, fg.points(), -1);
      const double sc = std::pow(far_scale, q);
      for (const cplx& v : buf) sum += abs_pow(v, q);
      lq[k] = sum * sc * far_cell * std::pow(2.0 * std::abs(s), d - d * q / 2.0);
    }
  });

  double total = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    total += rule.weights[k] * std::pow(lq[k], spec.p / q);
    res.near_nodes += near[k] ? 1 : 0;
  }
  res.integral = total;
  res.norm = std::pow(total, 1.0 / spec.p);
  return res;
}

double strichartz_norm(const Field& f, const MixedNormSpec& spec) {
  return strichartz_integral(f, spec).norm;
}

double strichartz_norm(const GaussianSpec& g, const MixedNormSpec& spec) {
  check_exponents(spec);
  if (g.dim() != spec.d) throw InvalidArgument("strichartz: Gaussian dimension differs from spec.d");
  // T for A e^{-a|x|^2}: spatial spread (4 Re a)^{-1/2}, frequency spread
  // Re(1/a)^{-1/2}.
  const double sx = 1.0 / std::sqrt(4.0 * g.width.real());
  const double sxi = 1.0 / std::sqrt((1.0 / g.width).real());
  const QuadratureRule rule = s_quadrature(spec, sx / (2.0 * sxi));
  double total = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const GaussianSpec u =
        gaussian_evolve_closed(g, FlowParams{FlowKind::schrodinger, rule.nodes[k], FlowRoute::closed_form});
    total += rule.weights[k] * std::pow(gaussian_lq_integral(u, spec.q), spec.p / spec.q);
  }
  return std::pow(total, 1.0 / spec.p);
}

}  // namespace hfm
