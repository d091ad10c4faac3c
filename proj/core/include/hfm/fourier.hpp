#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hfm/field.hpp"

namespace hfm {

// Approximates (2 pi)^(-d/2) * integral e^{-i x.xi} f(x) dx on f.grid().dual().
Field fourier(const Field& f);
// Inverse of fourier(); maps a field on a dual grid back to physical space.
Field inverse_fourier(const Field& fhat);

// |xi|^2 at every site of grid.dual(), row-major.
std::vector<double> frequency_norm_squared(const GridSpec& grid);

// inverse_fourier(symbol(|xi|^2) * fourier(f)). The symbol is evaluated once
// per dual-grid site.
Field fourier_multiply(const Field& f, const std::function<cplx(double)>& radial_symbol);

namespace detail {

// Unnormalized centered DFT on a row-major N^dim array:
//   out_k = sum_j (-1)^{|j|+|k|} in_j exp(sign * 2 pi i j.k / N),
// which is the kernel of both transforms above once the grid scaling is
// applied. sign is -1 (forward) or +1 (backward). Thread safe.
void centered_dft(std::span<cplx> data, int dim, std::size_t n, int sign);

}  // namespace detail

}  // namespace hfm
