#include "hfm/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hfm/error.hpp"
#include "hfm/threading.hpp"

namespace hfm {
namespace {

Eigen::MatrixXd embed(const InvarianceGroup& g, const Eigen::MatrixXd& r) {
  return g.fixed * g.fixed.transpose() + g.complement * r * g.complement.transpose();
}

Eigen::MatrixXd haar_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the signs so that R has a positive diagonal; Q is then Haar.
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Eigen::MatrixXd diagonal_subspace(int m, int d) {
  if (m < 1 || d < 1) throw InvalidArgument("diagonal_subspace needs m, d >= 1");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m * d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < m; ++k) w(k * d + j, j) = 1.0 / std::sqrt(static_cast<double>(m));
  }
  return w;
}

InvarianceGroup sample_group(const Eigen::MatrixXd& fixed_basis, std::size_t count,
                             std::uint64_t seed) {
  const int n = static_cast<int>(fixed_basis.rows());
  const int k = static_cast<int>(fixed_basis.cols());
  if (n < 1 || k < 1) throw InvalidArgument("sample_group needs a nonempty basis");
  if (k >= n) throw InvalidArgument("sample_group: fixed subspace leaves no complement");

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(fixed_basis);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j) {
    if (std::abs(r(j, j)) < 1e-12) throw InvalidArgument("sample_group: fixed basis is degenerate");
  }
  const Eigen::MatrixXd q = qr.householderQ();

  InvarianceGroup g;
  g.ambient_dim = n;
  g.fixed = q.leftCols(k);
  g.complement = q.rightCols(n - k);
  g.count = count;
  g.seed = seed;
  const int c = n - k;

  if (c == 1) {
    g.sampler = GroupSampler::exact_reflection;
    g.elements = {embed(g, Eigen::MatrixXd::Identity(1, 1)), embed(g, -Eigen::MatrixXd::Identity(1, 1))};
    g.weights = {0.5, 0.5};
    g.count = 1;
    return g;
  }
  if (count < 1) throw InvalidArgument("sample_group needs count >= 1");
  if (c == 2) {
    g.sampler = GroupSampler::angle_quadrature;
    Eigen::Matrix2d flip;
    flip << 1.0, 0.0, 0.0, -1.0;
    for (std::size_t j = 0; j < count; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
      Eigen::Matrix2d rot;
      rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      g.elements.push_back(embed(g, rot));
      g.elements.push_back(embed(g, rot * flip));
    }
    g.weights.assign(g.elements.size(), 1.0 / static_cast<double>(g.elements.size()));
    return g;
  }
  if (count % 2 != 0) throw InvalidArgument("sample_group: Haar sample count must be even");
  g.sampler = GroupSampler::haar_monte_carlo;
  Eigen::MatrixXd flip = Eigen::MatrixXd::Identity(c, c);
  flip(0, 0) = -1.0;
  g.elements.resize(count);
  parallel_for(count / 2, [&](std::size_t j) {
    const Eigen::MatrixXd rot = haar_orthogonal(c, derive_seed(seed, j));
    g.elements[2 * j] = embed(g, rot);
    g.elements[2 * j + 1] = embed(g, rot * flip);
  });
  g.weights.assign(count, 1.0 / static_cast<double>(count));
  return g;
}

Field project_invariant(const Field& f, const InvarianceGroup& group, InterpOrder order,
                        std::size_t oversample) {
  const GridSpec& grid = f.grid();
  const int n = grid.dim();
  if (n != group.ambient_dim) throw InvalidArgument("project_invariant: grid and group dimensions differ");

  const double top = max_abs(f);
  double edge = 0.0;
  const double lo = grid.coordinate(0);
  const double hi = grid.coordinate(grid.points() - 1);
  for_each_point(grid, [&](std::size_t i, const Point& x) {
    for (int a = 0; a < n; ++a) {
      if (x[a] == lo || x[a] == hi) {
        edge = std::max(edge, std::abs(f[i]));
        break;
      }
    }
  });
  if (edge > 1e-10 * top) {
    throw NumericalError("project_invariant: field not negligible on the box boundary");
  }

  const GridInterpolator<cplx> interp(f, oversample, order);
  std::vector<Point> points(grid.size());
  for_each_point(grid, [&](std::size_t i, const Point& x) { points[i] = x; });
  std::vector<cplx> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    Eigen::VectorXd x(n);
    for (int a = 0; a < n; ++a) x[a] = points[i][a];
    cplx acc = 0.0;
    for (std::size_t k = 0; k < group.elements.size(); ++k) {
      const Eigen::VectorXd y = group.elements[k] * x;
      acc += group.weights[k] * interp(std::span<const double>(y.data(), n));
    }
    out[i] = acc;
  });
  return Field(grid, std::move(out));
}

}  // namespace hfm
