#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>

namespace bifield::biortho {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using cplx = std::complex<double>;

/// Inputs whose 2-norm condition number exceeds this are rejected.
inline constexpr double kMaxConditionNumber = 1e12;

/// N linearly independent vectors stored as the columns of an N x N matrix.
class FiniteBasis {
 public:
  /// Throws SingularBasisError when the matrix is not square or is singular
  /// (condition number above kMaxConditionNumber).
  explicit FiniteBasis(Matrix columns);

  const Matrix& vectors() const { return columns_; }
  Vector vector(std::size_t n) const { return columns_.col(static_cast<Eigen::Index>(n)); }
  std::size_t dimension() const { return static_cast<std::size_t>(columns_.cols()); }
  double condition_number() const { return condition_; }

 private:
  Matrix columns_;
  double condition_;
};

/// The biorthonormal partners <beta_i|alpha_j> = delta_ij of a FiniteBasis.
class DualBasis {
 public:
  const Matrix& vectors() const { return columns_; }
  Vector vector(std::size_t n) const { return columns_.col(static_cast<Eigen::Index>(n)); }
  std::size_t dimension() const { return static_cast<std::size_t>(columns_.cols()); }

  /// The beta vectors viewed as a basis in their own right.
  FiniteBasis as_basis() const { return FiniteBasis(columns_); }

 private:
  friend DualBasis dual_basis(const FiniteBasis& basis);
  explicit DualBasis(Matrix columns) : columns_(std::move(columns)) {}
  Matrix columns_;
};

/// Hermitian, invertible eta with its inverse cached.
class MetricOperator {
 public:
  /// Inverse computed by LU. Throws std::invalid_argument if eta is not
  /// Hermitian to 1e-10 (relative) or not invertible.
  explicit MetricOperator(Matrix eta);
  /// Uses the supplied inverse after checking eta * inverse = I to 1e-10.
  MetricOperator(Matrix eta, Matrix inverse);

  static MetricOperator identity(std::size_t n);

  const Matrix& matrix() const { return eta_; }
  const Matrix& inverse() const { return inverse_; }
  std::size_t dimension() const { return static_cast<std::size_t>(eta_.cols()); }

 private:
  Matrix eta_;
  Matrix inverse_;
};

/// Solves B^dagger = A^{-1}. Throws SingularBasisError via FiniteBasis.
DualBasis dual_basis(const FiniteBasis& basis);

/// <<psi, phi>>^BQM = <phi~|psi>, with phi~ carrying phi's alpha-coefficients on the beta vectors.
cplx bqm_inner(const Vector& psi, const Vector& phi, const FiniteBasis& alpha, const DualBasis& beta);

/// sum_n |alpha_n><beta_n|; the identity for a valid pair.
Matrix identity_resolution(const FiniteBasis& alpha, const DualBasis& beta);

/// eta = sum_n |beta_n><beta_n| so that eta alpha_n = beta_n; the inverse is sum_n |alpha_n><alpha_n|.
MetricOperator metric_from_dual(const DualBasis& beta);

struct PseudoHermiticity {
  bool pass;
  /// max of ||H^dagger - eta H eta^{-1}||_F and ||eta H - H^dagger eta||_F, the
  /// latter being Hermiticity under the eta-inner product.
  double residual;
};

PseudoHermiticity is_pseudo_hermitian(const Matrix& H, const MetricOperator& eta, double tol);

/// <<beta_n, beta_m>>^eta = <beta_m| eta |beta_n>  (= <alpha_m| eta^3 |alpha_n>).
cplx beta_eta_overlap(const DualBasis& beta, const MetricOperator& eta, std::size_t n,
                      std::size_t m);

/// <<psi, phi>>^eta = <phi| eta |psi>
cplx eta_inner(const Vector& psi, const Vector& phi, const MetricOperator& eta);

enum class ExpMethod { Pade, Eigendecomposition };

/// exp(A). Pade is scaling-and-squaring; Eigendecomposition requires a
/// nondegenerate spectrum and throws DegenerateSpectrumError otherwise.
Matrix expm(const Matrix& A, ExpMethod method = ExpMethod::Pade);

struct Eigensystem {
  Vector values;
  FiniteBasis vectors;
};

/// Right eigenvectors of H as a basis. Throws DegenerateSpectrumError when
/// two eigenvalues are closer than min_gap.
Eigensystem eigensystem(const Matrix& H, double min_gap = 1e-8);

struct EvolvedPair {
  Vector psi;
  Vector psi_tilde;
};

/// psi(t) = exp(-i H t / hbar) psi(0); psi~(t) = exp(-i H^dagger t / hbar) psi~(0).
EvolvedPair evolve_pair(const Vector& psi0, const Vector& psi_tilde0, const Matrix& H, double t,
                        double hbar = 1.0, ExpMethod method = ExpMethod::Pade);

}  // namespace bifield::biortho
