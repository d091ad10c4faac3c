#include "hfm/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "hfm/error.hpp"
#include "hfm/flows.hpp"
#include "hfm/norms.hpp"
#include "hfm/space_time.hpp"
#include "hfm/threading.hpp"

namespace hfm {
namespace {

constexpr double kPi = std::numbers::pi;
// Integration nodes where F(X) sits below this fraction of its maximum are
// dropped; the products they feed are smaller still.
constexpr double kNodeFloor = 1e-14;
// Relative floor below which log-gradients are zeroed.
constexpr double kLogFloor = 1e-30;

// One tensor factor: values and, optionally, the d components of a vector
// field attached to it, all on the same grid.
struct Factor {
  int d = 1;
  std::optional<GridInterpolator<double>> value;
  std::vector<GridInterpolator<double>> grad;
  double radius = 0.0;
};

Factor make_factor(const Field& value, const std::vector<Field>& grad, const FormSpec& spec) {
  Factor fac;
  fac.d = value.grid().dim();
  fac.value.emplace(value, spec.oversample, spec.order);
  // Log-gradients grow linearly and are cut to zero far out, so band-limited
  // refinement would ring; they are read with the local stencil only.
  for (const Field& g : grad) fac.grad.emplace_back(g, 1, spec.order);
  fac.radius = support_radius(value, spec.support_tol);
  return fac;
}

// Per-element values of int G(X) G(rho X) [|V(X) - rho^T V(rho X)|^2] dX over
// [-R, R]^{md}, G the m-fold tensor power of the factor and V the stacked
// factor gradients (only when the factor carries them).
std::vector<double> pair_integrals(const Factor& fac, int m, const InvarianceGroup& group,
                                   std::size_t points) {
  const int d = fac.d;
  const int n = m * d;
  if (n != group.ambient_dim) throw InvalidArgument("form: group and tensor dimensions differ");
  const bool with_grad = !fac.grad.empty();
  const double r = fac.radius;
  const double h = 2.0 * r / static_cast<double>(points);
  std::vector<double> axis(points);
  for (std::size_t i = 0; i < points; ++i) axis[i] = -r + (static_cast<double>(i) + 0.5) * h;

  // Factor tables on the d-dimensional node grid.
  std::size_t block = 1;
  for (int a = 0; a < d; ++a) block *= points;
  std::vector<double> fval(block);
  std::vector<double> fgrad(with_grad ? block * d : 0);
  for (std::size_t b = 0; b < block; ++b) {
    double x[kMaxGridDim];
    std::size_t rest = b;
    for (int a = d - 1; a >= 0; --a) {
      x[a] = axis[rest % points];
      rest /= points;
    }
    const std::span<const double> xs(x, d);
    fval[b] = (*fac.value)(xs);
    for (int a = 0; with_grad && a < d; ++a) fgrad[b * d + a] = fac.grad[a](xs);
  }
  double fmax = 0.0;
  for (double v : fval) fmax = std::max(fmax, std::abs(v));
  const double gmax = std::pow(fmax, m);

  // Nodes of R^{md} that carry mass.
  std::vector<double> xs;
  std::vector<double> gx;
  std::vector<double> vx;
  std::size_t total = 1;
  for (int k = 0; k < m; ++k) total *= block;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    std::size_t blocks[kMaxGridDim];
    for (int k = m - 1; k >= 0; --k) {
      blocks[k] = rest % block;
      rest /= block;
    }
    double g = 1.0;
    for (int k = 0; k < m; ++k) g *= fval[blocks[k]];
    if (std::abs(g) < kNodeFloor * gmax) continue;
    gx.push_back(g);
    for (int k = 0; k < m; ++k) {
      std::size_t br = blocks[k];
      double x[kMaxGridDim];
      for (int a = d - 1; a >= 0; --a) {
        x[a] = axis[br % points];
        br /= points;
      }
      for (int a = 0; a < d; ++a) {
        xs.push_back(x[a]);
        if (with_grad) vx.push_back(fgrad[blocks[k] * d + a]);
      }
    }
  }
  const std::size_t count = gx.size();
  const double cell = std::pow(h, n);

  std::vector<double> out(group.elements.size());
  parallel_for(group.elements.size(), [&](std::size_t e) {
    const Eigen::MatrixXd& rho = group.elements[e];
    Eigen::VectorXd x(n);
    Eigen::VectorXd vy(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      for (int a = 0; a < n; ++a) x[a] = xs[i * n + a];
      const Eigen::VectorXd y = rho * x;
      double gy = 1.0;
      for (int k = 0; k < m && gy != 0.0; ++k) {
        gy *= (*fac.value)(std::span<const double>(y.data() + k * d, d));
      }
      if (gy == 0.0) continue;
      double weight = 1.0;
      if (with_grad) {
        for (int k = 0; k < m; ++k) {
          for (int a = 0; a < d; ++a) vy[k * d + a] = fac.grad[a](std::span<const double>(y.data() + k * d, d));
        }
        const Eigen::VectorXd back = rho.transpose() * vy;
        weight = 0.0;
        for (int a = 0; a < n; ++a) {
          const double diff = vx[i * n + a] - back[a];
          weight += diff * diff;
        }
      }
      acc += gx[i] * gy * weight;
    }
    out[e] = acc * cell;
  });
  return out;
}

FormResult combine(const std::vector<double>& values, const InvarianceGroup& group, double scale) {
  FormResult res;
  res.elements = values.size();
  for (std::size_t k = 0; k < values.size(); ++k) res.value += group.weights[k] * values[k];
  res.value *= scale;
  if (group.sampler == GroupSampler::haar_monte_carlo) {
    const std::size_t pairs = values.size() / 2;
    std::vector<double> a(pairs);
    double mean = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
      a[j] = 0.5 * (values[2 * j] + values[2 * j + 1]);
      mean += a[j];
    }
    mean /= static_cast<double>(pairs);
    double var = 0.0;
    for (double v : a) var += (v - mean) * (v - mean);
    if (pairs > 1) var /= static_cast<double>(pairs - 1);
    res.std_error = scale * std::sqrt(var / static_cast<double>(pairs));
  }
  return res;
}

std::size_t group_count(int complement_dim, const FormSpec& spec) {
  return complement_dim == 2 ? spec.angles : spec.samples;
}

void require_nonnegative(const Field& f, const char* what) {
  if (!f.is_nonnegative()) throw InvalidArgument(std::string(what) + " needs nonnegative data");
}

void require_pair(const Field& f1, const Field& f2, double t) {
  require_nonnegative(f1, "Lambda");
  require_nonnegative(f2, "Lambda");
  if (!(f1.grid() == f2.grid())) throw InvalidArgument("Lambda: f1 and f2 must share a grid");
  if (!(t > 0.0)) throw InvalidArgument("Lambda needs t > 0");
}

GridSpec pair_grid(const Field& f1, const Field& f2, double t) {
  MixedNormSpec sizing;
  sizing.d = f1.grid().dim();
  const GridSpec a = flow_grid(f1, t, sizing);
  const GridSpec b = flow_grid(f2, t, sizing);
  return a.half_extent() >= b.half_extent() ? a : b;
}

// Coordinate a of every site of `grid`, times f.
Field times_coordinate(const Field& f, int a) {
  std::vector<cplx> s(f.size());
  for_each_point(f.grid(), [&](std::size_t i, const Point& x) { s[i] = x[a] * f[i]; });
  return Field(f.grid(), std::move(s));
}

struct KernelMeans {
  std::vector<std::vector<double>> mean;  // per axis
  std::vector<char> valid;
};

// m_a(x) = int y_a f(y) K(x, y) dy / int f(y) K(x, y) dy for the separable
// Gaussian kernel with contraction lambda and variance sigma2, whose
// normalized transform of f is `denom`. Sites where denom is below the
// floor are marked invalid.
KernelMeans kernel_means(const Field& f, const GridSpec& target, double lambda, double sigma2,
                         const Field& denom) {
  const int d = f.grid().dim();
  double top = 0.0;
  for (const cplx& v : denom.samples()) top = std::max(top, v.real());
  KernelMeans out;
  out.valid.resize(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) out.valid[i] = denom[i].real() > kLogFloor * top;
  out.mean.assign(d, std::vector<double>(target.size(), 0.0));
  for (int a = 0; a < d; ++a) {
    const Field num = detail::separable_gaussian_transform(times_coordinate(f, a), target, lambda, sigma2,
                                                           std::pow(2.0 * kPi * sigma2, -d / 2.0));
    for (std::size_t i = 0; i < target.size(); ++i) {
      if (out.valid[i]) out.mean[a][i] = num[i].real() / denom[i].real();
    }
  }
  return out;
}

}  // namespace

std::vector<Field> heat_log_gradient(const Field& f, double t, const GridSpec& target) {
  require_nonnegative(f, "heat_log_gradient");
  if (!(t > 0.0)) throw InvalidArgument("heat_log_gradient needs t > 0");
  const int d = f.grid().dim();
  const Field u = heat_evolve_kernel(f, t, target);
  const auto means = kernel_means(f, target, 1.0, 2.0 * t, u);
  std::vector<Field> grad;
  for (int a = 0; a < d; ++a) {
    std::vector<cplx> s(target.size());
    for_each_point(target, [&](std::size_t i, const Point& x) {
      s[i] = means.valid[i] ? (means.mean[a][i] - x[a]) / (2.0 * t) : 0.0;
    });
    grad.emplace_back(target, std::move(s));
  }
  return grad;
}

FormResult hz_form(const Field& f, HzVariant variant, const FormSpec& spec) {
  require_nonnegative(f, "hz_form");
  const int d = variant == HzVariant::d1_sextic ? 1 : 2;
  const int m = variant == HzVariant::d1_sextic ? 3 : 2;
  if (f.grid().dim() != d) throw InvalidArgument("hz_form: field dimension does not match the variant");
  const InvarianceGroup group = sample_group(diagonal_subspace(m, d), spec.angles, spec.seed);
  const Factor fac = make_factor(f, {}, spec);
  const double c = variant == HzVariant::d1_sextic ? 1.0 / (2.0 * std::sqrt(3.0)) : 0.25;
  return combine(pair_integrals(fac, m, group, spec.points), group, c);
}

FormResult modified_rep(const Field& f, int m, const FormSpec& spec) {
  require_nonnegative(f, "modified_rep");
  const int d = f.grid().dim();
  if (m < 2) throw InvalidArgument("modified_rep needs m >= 2");
  if (m * d > 4) throw InvalidArgument("modified_rep supports md <= 4");
  const double nu = d * (2.0 * m - p_of_d(d)) / 4.0;
  if (!(nu > 0.0)) throw InvalidArgument("modified_rep needs 2m > p(d) (nu > 0)");
  const Eigen::MatrixXd w = diagonal_subspace(m, d);
  const InvarianceGroup group = sample_group(w, group_count(m * d - d, spec), spec.seed);
  const Factor fac = make_factor(f, {}, spec);
  const double c = std::pow(kPi, nu) / (std::pow(2.0, nu + 1.0) * std::pow(m, d) * std::tgamma(nu + 1.0)) *
                   std::pow(p_of_d(d) / 2.0, d / 2.0);
  return combine(pair_integrals(fac, m, group, spec.points), group, c);
}

double lambda_heat(const Field& f1, const Field& f2, double t) {
  require_pair(f1, f2, t);
  const GridSpec grid = pair_grid(f1, f2, t);
  const Field u1 = heat_evolve_kernel(f1, t, grid);
  const Field u2 = heat_evolve_kernel(f2, t, grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += std::sqrt(u1[i].real() * u2[i].real());
  return sum * grid.cell_volume();
}

double lambda_heat_derivative(const Field& f1, const Field& f2, double t) {
  require_pair(f1, f2, t);
  const int d = f1.grid().dim();
  const GridSpec grid = pair_grid(f1, f2, t);
  const Field u1 = heat_evolve_kernel(f1, t, grid);
  const Field u2 = heat_evolve_kernel(f2, t, grid);
  const std::vector<Field> g1 = heat_log_gradient(f1, t, grid);
  const std::vector<Field> g2 = heat_log_gradient(f2, t, grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double diff2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double dv = g1[a][i].real() - g2[a][i].real();
      diff2 += dv * dv;
    }
    sum += diff2 * std::sqrt(u1[i].real() * u2[i].real());
  }
  return 0.25 * sum * grid.cell_volume();
}

MehlerTerms lambda_mehler_terms(const Field& f1, const Field& f2, double t) {
  require_pair(f1, f2, t);
  const GridSpec& grid = f1.grid();
  const int d = grid.dim();
  const double lambda = std::exp(-t);
  const double sigma2 = -std::expm1(-2.0 * t);

  // u_j and v_j = -x + lambda (m_j - lambda x) / sigma2.
  const auto build = [&](const Field& f, std::vector<double>& u, std::vector<std::vector<double>>& v) {
    const Field e = mehler_evolve(f, t, FlowRoute::kernel);
    const auto means = kernel_means(f, grid, lambda, sigma2, e);
    u.assign(grid.size(), 0.0);
    v.assign(d, std::vector<double>(grid.size(), 0.0));
    for_each_point(grid, [&](std::size_t i, const Point& x) {
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
      u[i] = std::exp(-r2 / 2.0) * std::max(e[i].real(), 0.0);
      if (!means.valid[i]) return;
      for (int a = 0; a < d; ++a) v[a][i] = -x[a] + lambda * (means.mean[a][i] - lambda * x[a]) / sigma2;
    });
  };
  std::vector<double> u1;
  std::vector<double> u2;
  std::vector<std::vector<double>> v1;
  std::vector<std::vector<double>> v2;
  build(f1, u1, v1);
  build(f2, u2, v2);

  MehlerTerms out;
  for_each_point(grid, [&](std::size_t i, const Point& x) {
    const double w = std::sqrt(u1[i] * u2[i]);
    if (w == 0.0) return;
    double diff2 = 0.0;
    double drift = 0.0;
    for (int a = 0; a < d; ++a) {
      const double dv = v1[a][i] - v2[a][i];
      diff2 += dv * dv;
      drift += x[a] * 0.5 * (v1[a][i] + v2[a][i]);
    }
    out.lambda += w;
    out.first += 0.25 * diff2 * w;
    out.second += (drift + d) * w;
  });
  const double cell = grid.cell_volume();
  out.lambda *= cell;
  out.first *= cell;
  out.second *= cell;
  return out;
}

FormResult q66_derivative(const Field& f, double t, const FormSpec& spec) {
  if (f.grid().dim() != 1) throw InvalidArgument("q66_derivative needs d = 1 data");
  if (!(t > 0.0)) throw InvalidArgument("q66_derivative needs t > 0");
  const Field g = abs_squared(f);
  MixedNormSpec sizing;
  sizing.d = 1;
  const GridSpec grid = flow_grid(g, t, sizing);
  const Field root = pointwise_power(heat_evolve_kernel(g, t, grid), 0.5);
  const std::vector<Field> grad = heat_log_gradient(g, t, grid);
  const Factor fac = make_factor(root, grad, spec);
  const InvarianceGroup group = sample_group(diagonal_subspace(3, 1), spec.angles, spec.seed);
  return combine(pair_integrals(fac, 3, group, spec.points), group, 1.0 / (8.0 * std::sqrt(3.0)));
}

}  // namespace hfm
