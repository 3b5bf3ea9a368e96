#include "bifield/biortho.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "bifield/errors.hpp"

namespace bifield::biortho {

namespace {

double condition_number_of(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

void require_dimension(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    std::ostringstream msg;
    msg << what << " has dimension " << got << ", expected " << want;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

FiniteBasis::FiniteBasis(Matrix columns) : columns_(std::move(columns)) {
  if (columns_.rows() != columns_.cols() || columns_.rows() == 0) {
    throw SingularBasisError("basis matrix must be square and non-empty");
  }
  condition_ = condition_number_of(columns_);
  if (!(condition_ <= kMaxConditionNumber)) {
    std::ostringstream msg;
    msg << "basis is singular or ill-conditioned (condition number " << condition_ << ")";
    throw SingularBasisError(msg.str());
  }
}

MetricOperator::MetricOperator(Matrix eta) : eta_(std::move(eta)) {
  if (eta_.rows() != eta_.cols()) throw std::invalid_argument("metric must be square");
  const double scale = std::max(1.0, eta_.norm());
  if ((eta_ - eta_.adjoint()).norm() > 1e-10 * scale) {
    throw std::invalid_argument("metric operator is not Hermitian");
  }
  Eigen::FullPivLU<Matrix> lu(eta_);
  if (!lu.isInvertible()) throw std::invalid_argument("metric operator is not invertible");
  inverse_ = lu.inverse();
}

MetricOperator::MetricOperator(Matrix eta, Matrix inverse)
    : eta_(std::move(eta)), inverse_(std::move(inverse)) {
  if (eta_.rows() != eta_.cols() || inverse_.rows() != eta_.rows() ||
      inverse_.cols() != eta_.cols()) {
    throw std::invalid_argument("metric and inverse must be square of equal size");
  }
  const double scale = std::max(1.0, eta_.norm());
  if ((eta_ - eta_.adjoint()).norm() > 1e-10 * scale) {
    throw std::invalid_argument("metric operator is not Hermitian");
  }
  const Matrix id = Matrix::Identity(eta_.rows(), eta_.cols());
  if ((eta_ * inverse_ - id).norm() > 1e-10 * std::max(1.0, scale * inverse_.norm())) {
    throw std::invalid_argument("supplied inverse does not invert the metric");
  }
}

MetricOperator MetricOperator::identity(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  return MetricOperator(Matrix::Identity(dim, dim), Matrix::Identity(dim, dim));
}

DualBasis dual_basis(const FiniteBasis& basis) {
  const Matrix& a = basis.vectors();
  // B^dagger A = I  <=>  A^dagger B = I
  Matrix b = a.adjoint().partialPivLu().solve(Matrix::Identity(a.rows(), a.cols()));
  return DualBasis(std::move(b));
}

cplx bqm_inner(const Vector& psi, const Vector& phi, const FiniteBasis& alpha,
               const DualBasis& beta) {
  const auto n = static_cast<Eigen::Index>(alpha.dimension());
  require_dimension(beta.vectors().rows(), n, "dual basis");
  require_dimension(psi.size(), n, "psi");
  require_dimension(phi.size(), n, "phi");
  const Vector phi_coeffs = beta.vectors().adjoint() * phi;
  const Vector phi_tilde = beta.vectors() * phi_coeffs;
  return phi_tilde.dot(psi);
}

Matrix identity_resolution(const FiniteBasis& alpha, const DualBasis& beta) {
  return alpha.vectors() * beta.vectors().adjoint();
}

MetricOperator metric_from_dual(const DualBasis& beta) {
  const Matrix& b = beta.vectors();
  Matrix eta = b * b.adjoint();
  // alpha = (B^dagger)^{-1}
  Matrix a = b.adjoint().partialPivLu().solve(Matrix::Identity(b.rows(), b.cols()));
  Matrix inverse = a * a.adjoint();
  // exact Hermitian parts; rounding otherwise leaves ~1e-16 skew components
  eta = (0.5 * (eta + eta.adjoint())).eval();
  inverse = (0.5 * (inverse + inverse.adjoint())).eval();
  return MetricOperator(std::move(eta), std::move(inverse));
}

PseudoHermiticity is_pseudo_hermitian(const Matrix& H, const MetricOperator& eta, double tol) {
  require_dimension(H.rows(), H.cols(), "Hamiltonian");
  require_dimension(H.rows(), static_cast<Eigen::Index>(eta.dimension()), "Hamiltonian");
  const Matrix& e = eta.matrix();
  const double similarity = (H.adjoint() - e * H * eta.inverse()).norm();
  const double hermiticity = (e * H - H.adjoint() * e).norm();
  const double residual = std::max(similarity, hermiticity);
  return {residual <= tol, residual};
}

cplx beta_eta_overlap(const DualBasis& beta, const MetricOperator& eta, std::size_t n,
                      std::size_t m) {
  if (n >= beta.dimension() || m >= beta.dimension()) {
    throw std::out_of_range("basis index out of range");
  }
  return beta.vector(m).dot(eta.matrix() * beta.vector(n));
}

cplx eta_inner(const Vector& psi, const Vector& phi, const MetricOperator& eta) {
  require_dimension(psi.size(), static_cast<Eigen::Index>(eta.dimension()), "psi");
  require_dimension(phi.size(), static_cast<Eigen::Index>(eta.dimension()), "phi");
  return phi.dot(eta.matrix() * psi);
}

Eigensystem eigensystem(const Matrix& H, double min_gap) {
  require_dimension(H.rows(), H.cols(), "Hamiltonian");
  Eigen::ComplexEigenSolver<Matrix> solver(H);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
  const Vector& values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    for (Eigen::Index j = i + 1; j < values.size(); ++j) {
      if (std::abs(values(i) - values(j)) < min_gap) {
        throw DegenerateSpectrumError("Hamiltonian has a degenerate spectrum");
      }
    }
  }
  return {values, FiniteBasis(solver.eigenvectors())};
}

Matrix expm(const Matrix& A, ExpMethod method) {
  require_dimension(A.rows(), A.cols(), "exponent");
  if (method == ExpMethod::Pade) return A.exp();
  const Eigensystem es = eigensystem(A);
  const Matrix& v = es.vectors.vectors();
  const Vector exp_values = es.values.array().exp().matrix();
  return v * exp_values.asDiagonal() * v.partialPivLu().inverse();
}

EvolvedPair evolve_pair(const Vector& psi0, const Vector& psi_tilde0, const Matrix& H, double t,
                        double hbar, ExpMethod method) {
  if (H.rows() != H.cols()) throw std::invalid_argument("Hamiltonian must be square");
  require_dimension(psi0.size(), H.rows(), "psi");
  require_dimension(psi_tilde0.size(), H.rows(), "associated state");
  const cplx factor(0.0, -t / hbar);
  const Matrix u = expm(factor * H, method);
  const Matrix u_tilde = expm(factor * H.adjoint(), method);
  return {u * psi0, u_tilde * psi_tilde0};
}

}  // namespace bifield::biortho
