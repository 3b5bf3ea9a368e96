#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace bifield {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Symmetric wavenumber lattice k_j = (j - n/2 + 1/2) dk with its conjugate
/// position lattice x_m = m dx, dx = 2 pi / (n dk).
///
/// The half-integer offset keeps k = 0 off the lattice. A consequence is that
/// every function synthesised from these modes is antiperiodic over one
/// domain length L = n dx: f(x + L) = -f(x).
class Grid {
 public:
  Grid(long n_modes, double delta_k);

  std::size_t size() const { return n_; }
  double delta_k() const { return dk_; }
  double delta_x() const { return dx_; }
  double length() const { return static_cast<double>(n_) * dx_; }

  double k(std::size_t j) const { return k_[j]; }
  double x(std::size_t m) const { return x_[m]; }
  std::span<const double> k_values() const { return k_; }
  std::span<const double> x_values() const { return x_; }

  /// e^{i s k_j x_m}, looked up from a table of 2n-th roots of unity so the
  /// phase is exact up to a single rounding.
  cplx plane_wave(int s, std::size_t j, std::size_t m) const;

  /// e^{i s k_j y} for arbitrary real y.
  cplx plane_wave_at(int s, std::size_t j, double y) const;

  std::size_t nearest_index(double x) const;
  bool on_grid(double x, double tol = 1e-9) const;

  /// Index of the mode with wavenumber closest to k.
  std::size_t mode_index(double k) const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && dk_ == other.dk_;
  }

 private:
  std::size_t n_;
  double dk_;
  double dx_;
  std::vector<double> k_;
  std::vector<double> x_;
  CVector roots_;  // e^{i pi p / n}, p = 0 .. 2n-1
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws std::invalid_argument for odd or non-positive n_modes and
/// non-positive delta_k.
GridPtr make_grid(long n_modes, double delta_k);

/// Throws std::invalid_argument unless s is +1 or -1.
int check_direction(int s);

/// Physical constants of the 1-D field; natural units by default.
struct FieldContext {
  double hbar = 1.0;
  double c = 1.0;
  double epsilon = 1.0;
  double area = 1.0;

  double mu0() const { return 1.0 / (epsilon * c * c); }

  /// sqrt(hbar c / (2 epsilon A)), the field prefactor of the local modes.
  double field_prefactor() const;

  void validate() const;
};

}  // namespace bifield
