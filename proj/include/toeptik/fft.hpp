#pragma once

#include <span>

#include "toeptik/types.hpp"

namespace toeptik {

/// Smallest length >= min_length whose prime factors are all <= 7.
std::size_t smooth_length(std::size_t min_length);

/// In-place evaluation of the polynomial with coefficients `data` at the
/// roots of unity exp(+2*pi*i*k/L), k = 0..L-1, where L = data.size().
void transform_forward(std::span<cplx> data);

/// Inverse of transform_forward, including the 1/L normalization.
void transform_inverse(std::span<cplx> data);

/// Evaluate a coefficient sequence at the L-th roots of unity, folding
/// coefficients beyond L (z^L = 1 on the grid).
CVector evaluate_on_roots(std::span<const cplx> coeffs, std::size_t length);

}  // namespace toeptik
