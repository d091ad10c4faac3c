#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hfm/field.hpp"
#include "hfm/interpolate.hpp"

namespace hfm {

enum class GroupSampler { exact_reflection, angle_quadrature, haar_monte_carlo };

// A weighted sample of the isometries of R^n that fix a subspace W
// pointwise. Elements act as rho = P_W + C R C^T with C an orthonormal basis
// of the complement and R in O(n - dim W).
struct InvarianceGroup {
  int ambient_dim = 0;
  Eigen::MatrixXd fixed;       // n x dim W, orthonormal columns
  Eigen::MatrixXd complement;  // n x (n - dim W), orthonormal columns
  GroupSampler sampler = GroupSampler::angle_quadrature;
  std::vector<Eigen::MatrixXd> elements;
  std::vector<double> weights;  // sum to one
  std::size_t count = 0;
  std::uint64_t seed = 0;

  int complement_dim() const { return static_cast<int>(complement.cols()); }
};

// Span of the vectors (e_j, ..., e_j) / sqrt(m), j = 1..d, in (R^d)^m with
// coordinates ordered factor by factor.
Eigen::MatrixXd diagonal_subspace(int m, int d);

// complement_dim 1: the two elements {id, reflection}, weight 1/2.
// complement_dim 2: `count` equispaced rotations and their reflections,
//   weight 1/(2 count).
// complement_dim >= 3: `count` Haar samples (count even) drawn as
//   count/2 QR-of-Gaussian rotations, each paired with its composition with
//   a reflection so determinants +1 and -1 occur equally. Element k's
//   stream is mt19937_64 seeded from splitmix64(seed, k), so samples do not
//   depend on the thread count.
// The basis columns are orthonormalized; InvalidArgument if W is
// degenerate or all of R^n.
InvarianceGroup sample_group(const Eigen::MatrixXd& fixed_basis, std::size_t count,
                             std::uint64_t seed = 0);

// PF(X) = sum_k w_k F(rho_k X), F read through an interpolant. Throws
// NumericalError if F exceeds 1e-10 of its maximum on the box boundary,
// since rotated points then leave the box with mass.
Field project_invariant(const Field& f, const InvarianceGroup& group,
                        InterpOrder order = InterpOrder::cubic, std::size_t oversample = 1);

// splitmix64 of (seed + golden * (index + 1)); per-element RNG seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace hfm
