#pragma once

#include <span>

#include "bifield/grid.hpp"
#include "bifield/weight.hpp"

namespace bifield {

/// Direct is the plain weighted summation and serves as the reference;
/// Fast routes the same sums through FFTW.
enum class TransformMethod { Direct, Fast };

/// phi(x_m) = (dk / sqrt(2 pi)) sum_j e^{i s k_j x_m} psi(k_j) / w(k_j)
CVector to_position(std::span<const cplx> psi_k, const WeightFunction& w, int s, const Grid& grid,
                    TransformMethod method = TransformMethod::Direct);

/// psi(k_j) = w(k_j) (dx / sqrt(2 pi)) sum_m e^{-i s k_j x_m} phi(x_m); exact inverse of
/// to_position.
CVector to_momentum(std::span<const cplx> phi_x, const WeightFunction& w, int s, const Grid& grid,
                    TransformMethod method = TransformMethod::Direct);

/// Band-limited evaluation of the position amplitude at an arbitrary x (the
/// to_position sum taken off the lattice). Used for sinc-style interpolation.
cplx position_amplitude_at(std::span<const cplx> psi_k, const WeightFunction& w, int s,
                           const Grid& grid, double x);

/// values(x_m - q dx) on the antiperiodic lattice: entries that wrap past the
/// domain edge change sign.
CVector shift_on_lattice(std::span<const cplx> values, long q);

}  // namespace bifield
