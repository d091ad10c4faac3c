#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hfm/field.hpp"
#include "hfm/flows.hpp"

namespace hfm {

// Finite sum of Gaussians, the test-data class used throughout. All shipped
// presets have positive real amplitudes and comparable real widths, so they
// are smooth, strictly positive and have no nearby complex zeros (square
// roots of their heat evolutions stay band-limited).
struct GaussianMixture {
  std::vector<GaussianSpec> parts;

  int dim() const;
  double operator()(const Point& x) const;
};

Field sample(const GaussianMixture& m, const GridSpec& grid);

GaussianMixture gaussian_preset(int d);
// exp(-|x - c1|^2) + 0.6 exp(-|x - c2|^2) with fixed offset centers.
GaussianMixture two_bump_preset(int d);
// Two or three Gaussians with widths in [0.8, 1.2], centers in [-1.5, 1.5]^d
// and amplitudes in [0.3, 1], drawn from mt19937_64(seed).
GaussianMixture random_bump_preset(int d, std::uint64_t seed);

// Parses "gaussian", "two_bump" or "random_bump(<seed>)"; a bare
// "random_bump" uses default_seed.
GaussianMixture preset_by_name(const std::string& name, int d, std::uint64_t default_seed);

}  // namespace hfm
