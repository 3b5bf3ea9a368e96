#include "bifield/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bifield {

namespace {

// Phase index p with e^{i s k_j x_m} = e^{i pi p / n}.
std::size_t phase_index(int s, std::size_t j, std::size_t m, std::size_t n) {
  const long long two_n = 2 * static_cast<long long>(n);
  const long long offset = 2 * static_cast<long long>(j) + 1 - static_cast<long long>(n);
  long long p = (s * offset * static_cast<long long>(m)) % two_n;
  if (p < 0) p += two_n;
  return static_cast<std::size_t>(p);
}

}  // namespace

Grid::Grid(long n_modes, double delta_k) {
  if (n_modes < 2 || n_modes % 2 != 0) {
    throw std::invalid_argument("n_modes must be a positive even integer, got " +
                                std::to_string(n_modes));
  }
  if (!(delta_k > 0.0) || !std::isfinite(delta_k)) {
    throw std::invalid_argument("delta_k must be positive and finite");
  }
  n_ = static_cast<std::size_t>(n_modes);
  dk_ = delta_k;
  dx_ = 2.0 * std::numbers::pi / (static_cast<double>(n_) * dk_);

  k_.resize(n_);
  x_.resize(n_);
  const double half = static_cast<double>(n_) / 2.0;
  for (std::size_t j = 0; j < n_; ++j) {
    k_[j] = (static_cast<double>(j) - half + 0.5) * dk_;
  }
  for (std::size_t m = 0; m < n_; ++m) x_[m] = static_cast<double>(m) * dx_;

  roots_.resize(2 * n_);
  for (std::size_t p = 0; p < 2 * n_; ++p) {
    roots_[p] = std::polar(1.0, std::numbers::pi * static_cast<double>(p) /
                                    static_cast<double>(n_));
  }
}

cplx Grid::plane_wave(int s, std::size_t j, std::size_t m) const {
  return roots_[phase_index(s, j, m, n_)];
}

cplx Grid::plane_wave_at(int s, std::size_t j, double y) const {
  return std::polar(1.0, static_cast<double>(s) * k_[j] * y);
}

std::size_t Grid::nearest_index(double x) const {
  const double L = length();
  double r = std::fmod(x, L);
  if (r < 0) r += L;
  auto m = static_cast<std::size_t>(std::llround(r / dx_));
  return m % n_;
}

bool Grid::on_grid(double x, double tol) const {
  const double q = x / dx_;
  return std::abs(q - std::round(q)) <= tol;
}

std::size_t Grid::mode_index(double k) const {
  const double q = k / dk_ + static_cast<double>(n_) / 2.0 - 0.5;
  long j = std::lround(q);
  if (j < 0) j = 0;
  if (j >= static_cast<long>(n_)) j = static_cast<long>(n_) - 1;
  return static_cast<std::size_t>(j);
}

GridPtr make_grid(long n_modes, double delta_k) {
  return std::make_shared<const Grid>(n_modes, delta_k);
}

int check_direction(int s) {
  if (s != 1 && s != -1) {
    throw std::invalid_argument("propagation direction s must be +1 or -1, got " +
                                std::to_string(s));
  }
  return s;
}

double FieldContext::field_prefactor() const {
  return std::sqrt(hbar * c / (2.0 * epsilon * area));
}

void FieldContext::validate() const {
  for (double v : {hbar, c, epsilon, area}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("field constants hbar, c, epsilon, A must be positive");
    }
  }
}

}  // namespace bifield
