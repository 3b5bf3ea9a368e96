#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bifield/fock.hpp"
#include "bifield/grid.hpp"
#include "bifield/weight.hpp"

namespace bifield {

/// One branch-pure piece of a linear ladder operator,
///   sum_j dk c_j a^dagger_{s lambda}(k_j)   (creation)   or
///   sum_j dk c_j a_{s lambda}(k_j)          (annihilation),
/// with c_j = weight(k_j) * residual_j when a weight tag is present.
struct OperatorTerm {
  ModeLabel label;
  bool creation;
  std::optional<WeightFunction> weight;
  CVector residual;
};

/// Linear combination of mode ladder operators, stored as coefficient
/// sequences rather than symbols. The weight tag on each term is what makes
/// bio-conjugation possible.
class LadderOperator {
 public:
  explicit LadderOperator(GridPtr grid);
  LadderOperator(GridPtr grid, std::vector<OperatorTerm> terms);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<OperatorTerm>& terms() const { return terms_; }

  /// u_j, the total coefficient of a^dagger(k_j) on a branch.
  CVector creation_coefficients(ModeLabel label) const;
  /// v_j, the total coefficient of a(k_j) on a branch.
  CVector annihilation_coefficients(ModeLabel label) const;

  /// Swaps creation and annihilation parts and conjugates coefficients.
  LadderOperator adjoint() const;
  LadderOperator scaled(cplx factor) const;
  /// Zeroes every coefficient outside the given mode indices.
  LadderOperator restricted_to(std::span<const std::size_t> modes) const;

  LadderOperator operator+(const LadderOperator& other) const;
  LadderOperator operator-(const LadderOperator& other) const;

 private:
  GridPtr grid_;
  std::vector<OperatorTerm> terms_;
};

LadderOperator operator*(cplx factor, const LadderOperator& op);

/// a_{s lambda}(k_j) with density normalisation (coefficient 1/dk on mode j);
/// tagged with the unit weight.
LadderOperator mode_annihilation(GridPtr grid, ModeLabel label, std::size_t j);
LadderOperator mode_creation(GridPtr grid, ModeLabel label, std::size_t j);

/// int dk w(k)/sqrt(2 pi) e^{i s k x_m} a_{s lambda}(k).
LadderOperator positional_annihilation(GridPtr grid, const WeightFunction& w, ModeLabel label,
                                       std::size_t m);
LadderOperator positional_creation(GridPtr grid, const WeightFunction& w, ModeLabel label,
                                   std::size_t m);

/// a(x): unit weight.
inline LadderOperator blip_annihilation(GridPtr g, ModeLabel l, std::size_t m) {
  return positional_annihilation(std::move(g), WeightFunction::unit(), l, m);
}
/// A(x): weight sqrt|k|.
inline LadderOperator local_annihilation(GridPtr g, ModeLabel l, std::size_t m) {
  return positional_annihilation(std::move(g), WeightFunction::sqrt_abs_k(), l, m);
}
/// A^bio(x): weight 1/sqrt|k|.
inline LadderOperator bio_local_annihilation(GridPtr g, ModeLabel l, std::size_t m) {
  return positional_annihilation(std::move(g), WeightFunction::inv_sqrt_abs_k(), l, m);
}

/// [O1, O2] = sum over branches of sum_j dk (v1_j u2_j - u1_j v2_j). Different
/// branches never contribute.
cplx commutator(const LadderOperator& lhs, const LadderOperator& rhs);

struct KernelSample {
  double displacement;
  cplx value;
};

/// K(y) = (dk / 2 pi) sum_j w1(k_j) w2(k_j) e^{i s k_j y} at y = d dx for
/// d = -n/2 .. n/2 - 1. Displacement 0 sits at index n/2.
std::vector<KernelSample> commutator_kernel(const WeightFunction& w1, const WeightFunction& w2,
                                            int s, const Grid& grid);

/// Replaces every term's weight by its reciprocal. Throws BioConjugateUndefined
/// for untagged terms.
LadderOperator bio_conjugate(const LadderOperator& op);

/// Multiplies every coefficient by sqrt|k|. Weight tags absorb the factor.
LadderOperator apply_R(const LadderOperator& op);

/// Largest modulus difference of the u and v coefficients over all branches.
double max_abs_difference(const LadderOperator& a, const LadderOperator& b);

bool is_hermitian(const LadderOperator& op, double tol = 1e-12);

/// S(<psi|) O |psi> for a linear operator.
cplx bio_expectation(const LadderOperator& op, const SingleExcitationState& state);
/// <psi| O |psi>
cplx standard_expectation(const LadderOperator& op, const SingleExcitationState& state);

enum class FieldKind { Electric, Magnetic };

/// Cartesian components (x, y, z) of E(x) or B(x) as ladder operators.
struct FieldObservable {
  FieldKind kind;
  std::size_t index;
  double x;
  std::array<LadderOperator, 3> components;
  /// Set when the requested position was moved to the nearest lattice point.
  std::optional<std::string> warning;

  bool is_hermitian(double tol = 1e-12) const;
};

FieldObservable electric_field(GridPtr grid, double x, const FieldContext& ctx);
FieldObservable magnetic_field(GridPtr grid, double x, const FieldContext& ctx);
FieldObservable electric_field_at(GridPtr grid, std::size_t m, const FieldContext& ctx);
FieldObservable magnetic_field_at(GridPtr grid, std::size_t m, const FieldContext& ctx);

/// <0| E_lambda(x_m) a^dagger_{s lambda}(x0) |0> for every lattice point x_m,
/// evaluated through field-operator commutators.
CVector blip_field_profile(GridPtr grid, std::size_t x0, ModeLabel label, const FieldContext& ctx);

struct FieldVectors {
  std::array<double, 3> electric;
  std::array<double, 3> magnetic;
};

/// Field expectation of the coherent state with density amplitudes
/// alpha_{s lambda}(k_j) at any real x and time t.
FieldVectors coherent_field_expectation(const Grid& grid, const BranchAmplitudes& alpha, double x,
                                        double t, const FieldContext& ctx);

/// Normal-ordered single-excitation energy, sum dk hbar c |k| S(psi)^* psi.
/// Throws NormalizationError unless the bio norm is 1 to 1e-8.
double energy_expectation(const SingleExcitationState& state, const FieldContext& ctx);
/// Dynamical Hamiltonian with signed frequencies, sum dk hbar c k S(psi)^* psi.
double hamiltonian_expectation(const SingleExcitationState& state, const FieldContext& ctx);

}  // namespace bifield
