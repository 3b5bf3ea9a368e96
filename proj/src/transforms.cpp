#include "bifield/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bifield {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

void require_length(std::size_t got, const Grid& grid, const char* what) {
  if (got != grid.size()) {
    throw std::invalid_argument(std::string(what) + " length " + std::to_string(got) +
                                " does not match grid size " + std::to_string(grid.size()));
  }
}

// FFTW planning is not reentrant; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// out_m = sum_j e^{sign 2 pi i j m / n} in_j
CVector fftw_dft(const CVector& in, int sign) {
  const int n = static_cast<int>(in.size());
  CVector out(in.size());
  CVector scratch = in;
  auto* ip = reinterpret_cast<fftw_complex*>(scratch.data());
  auto* op = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, ip, op, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

// e^{i pi s (1 - n) m / n}: the half-integer offset part of e^{i s k_j x_m}.
cplx offset_twiddle(int s, std::size_t m, std::size_t n) {
  const long long two_n = 2 * static_cast<long long>(n);
  long long p = (s * (1 - static_cast<long long>(n)) * static_cast<long long>(m)) % two_n;
  if (p < 0) p += two_n;
  return std::polar(1.0, std::numbers::pi * static_cast<double>(p) / static_cast<double>(n));
}

}  // namespace

CVector to_position(std::span<const cplx> psi_k, const WeightFunction& w, int s, const Grid& grid,
                    TransformMethod method) {
  check_direction(s);
  require_length(psi_k.size(), grid, "momentum amplitude");
  const std::size_t n = grid.size();
  CVector g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = psi_k[j] / w(grid.k(j));

  const double scale = grid.delta_k() * kInvSqrt2Pi;
  CVector phi(n);
  if (method == TransformMethod::Direct) {
    for (std::size_t m = 0; m < n; ++m) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += grid.plane_wave(s, j, m) * g[j];
      phi[m] = scale * acc;
    }
  } else {
    CVector sums = fftw_dft(g, s);
    for (std::size_t m = 0; m < n; ++m) phi[m] = scale * offset_twiddle(s, m, n) * sums[m];
  }
  return phi;
}

CVector to_momentum(std::span<const cplx> phi_x, const WeightFunction& w, int s, const Grid& grid,
                    TransformMethod method) {
  check_direction(s);
  require_length(phi_x.size(), grid, "position amplitude");
  const std::size_t n = grid.size();
  const double scale = grid.delta_x() * kInvSqrt2Pi;
  CVector psi(n);
  if (method == TransformMethod::Direct) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t m = 0; m < n; ++m) acc += std::conj(grid.plane_wave(s, j, m)) * phi_x[m];
      psi[j] = w(grid.k(j)) * scale * acc;
    }
  } else {
    CVector twisted(n);
    for (std::size_t m = 0; m < n; ++m) twisted[m] = std::conj(offset_twiddle(s, m, n)) * phi_x[m];
    CVector sums = fftw_dft(twisted, -s);
    for (std::size_t j = 0; j < n; ++j) psi[j] = w(grid.k(j)) * scale * sums[j];
  }
  return psi;
}

cplx position_amplitude_at(std::span<const cplx> psi_k, const WeightFunction& w, int s,
                           const Grid& grid, double x) {
  check_direction(s);
  require_length(psi_k.size(), grid, "momentum amplitude");
  cplx acc = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    acc += grid.plane_wave_at(s, j, x) * psi_k[j] / w(grid.k(j));
  }
  return grid.delta_k() * kInvSqrt2Pi * acc;
}

CVector shift_on_lattice(std::span<const cplx> values, long q) {
  const long n = static_cast<long>(values.size());
  CVector out(values.size());
  for (long m = 0; m < n; ++m) {
    long src = m - q;
    // each full wrap across the domain flips the sign
    long wraps = 0;
    if (src < 0) {
      wraps = (-src + n - 1) / n;
      src += wraps * n;
    } else if (src >= n) {
      wraps = src / n;
      src -= wraps * n;
    }
    const cplx v = values[static_cast<std::size_t>(src)];
    out[static_cast<std::size_t>(m)] = (wraps % 2 == 0) ? v : -v;
  }
  return out;
}

}  // namespace bifield
