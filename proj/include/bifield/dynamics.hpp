#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bifield/fock.hpp"
#include "bifield/operators.hpp"

namespace bifield {

enum class EvolutionSide { UnderH, UnderHbio };

std::string side_name(EvolutionSide side);

/// Signed is the dynamical Hamiltonian omega = c k over all k. Magnitude,
/// omega = c |k|, is the positive-frequency dispersion and exists to show what
/// goes wrong without the negative-frequency modes.
enum class Dispersion { Signed, Magnitude };

/// Mixing U^dagger a^dagger(x) U = b1 a^dagger(x, t1) + b2 a(x, t1) restricted
/// to a set of mode indices. Requires b1 > 0, b2 >= 0, b1^2 - b2^2 = 1.
struct BogoliubovBlock {
  double b1 = 1.0;
  double b2 = 0.0;
  std::vector<std::size_t> modes;
  double t1 = 0.0;

  void validate(const Grid& grid) const;
};

struct HamiltonianSpec {
  double c = 1.0;
  Dispersion dispersion = Dispersion::Signed;
  std::optional<BogoliubovBlock> bogoliubov;

  double omega(double k) const;
  void validate() const;
};

/// Side a state must be evolved with: local-type weights (positive exponent)
/// need H, bio-local-type weights need H^bio, photon and blip components
/// accept either (nullopt). Throws SideMismatchError when components disagree.
std::optional<EvolutionSide> required_side(const SingleExcitationState& state);

/// Side an operator term must be evolved with. Creation terms follow the
/// state rule; annihilation terms take the opposite side, since they act on
/// the associated bra.
std::optional<EvolutionSide> required_side(const OperatorTerm& term);

/// Multiplies canonical amplitudes by e^{-i omega(k) t}; tags are kept.
/// Throws SideMismatchError if the side does not fit the state's tags.
SingleExcitationState evolve_state(const SingleExcitationState& state, double t,
                                   EvolutionSide side, const HamiltonianSpec& spec = {});

struct SidedEvolution {
  SingleExcitationState state;
  EvolutionSide side;
};

/// Picks the side from the tag rule (UnderH when either is allowed).
SidedEvolution evolve_state_auto(const SingleExcitationState& state, double t,
                                 const HamiltonianSpec& spec = {});

/// a^dagger coefficients gain e^{+i omega t}, a coefficients e^{-i omega t}.
/// Every term must fit the given side.
LadderOperator heisenberg_evolve(const LadderOperator& op, double t, EvolutionSide side,
                                 const HamiltonianSpec& spec = {});
/// Each term evolves with the side its own tag requires, so mixed operators
/// such as A(x) + A^dagger(x) are accepted.
LadderOperator heisenberg_evolve(const LadderOperator& op, double t,
                                 const HamiltonianSpec& spec = {});

using ComplexMatrix = Eigen::MatrixXcd;

/// G_{mm'} = (dk / 2 pi) sum_j k_j e^{i s k_j (x_m - x_m')}.
ComplexMatrix position_kernel(const Grid& grid, int s);
/// The same kernel assembled through the weighted transforms with weight w,
/// i.e. the matrix of to_position(k * to_momentum(., w), w) divided by dx.
ComplexMatrix position_kernel(const Grid& grid, int s, const WeightFunction& w);

/// H applied in the position representation: phi' = hbar c dx G phi for
/// positional components, hbar c k psi for photon components.
SingleExcitationState apply_H_position(const SingleExcitationState& state,
                                       const FieldContext& ctx);
/// H applied on canonical amplitudes, returned as a photon-tagged state.
SingleExcitationState apply_H_momentum(const SingleExcitationState& state,
                                       const FieldContext& ctx);

struct ExpectationPair {
  cplx schrodinger;
  cplx heisenberg;
};

/// Evolves the state (Schrodinger) and, independently, the operator
/// (Heisenberg) and evaluates both expectation values. Only photon-tagged
/// states are accepted; anything else throws InvalidExpectationError.
ExpectationPair expectation_consistency(const LadderOperator& op,
                                        const SingleExcitationState& state, double t,
                                        const HamiltonianSpec& spec = {});

struct ShapeCheck {
  /// max over branches of max_m |phi_t(x_m) - phi_0(x_m - s c t)|
  double max_error = 0.0;
  /// max |phi_0| over all branches
  double scale = 0.0;
  std::array<double, kBranchCount> branch_error{};
  /// Both propagation directions populated on some polarisation.
  bool two_sided = false;
  /// For two-sided packets: error of the summed profile against a rigid shift
  /// by +ct. Informational only.
  double combined_error = 0.0;
  bool interpolated = false;
  EvolutionSide side = EvolutionSide::UnderH;
  std::optional<std::string> warning;
};

/// Compares the evolved position profile with the initial profile translated
/// by s c t. When s c t is a whole number of lattice steps the reference is an
/// exact antiperiodic index rotation; otherwise `interpolate` must be set and
/// the reference is the band-limited evaluation off the lattice.
ShapeCheck dispersion_free_check(const SingleExcitationState& state, double t,
                                 const HamiltonianSpec& spec = {}, bool interpolate = false);

struct CounterexampleResult {
  /// sqrt(2 pi) times the l2 norm, over branch and target modes, of the
  /// coefficient difference between the two sides.
  double norm;
  /// b2 * sqrt(sum_j (sqrt|k_j| - 1/sqrt|k_j|)^2)
  double closed_form;
};

/// L  = R(b1 a^dagger(x, t1) + b2 a(x, t1))  and
/// Rb = b1 A^dagger(x, t1) + b2 A^bio(x, t1), both restricted to the block's
/// modes, at lattice point x_m. The difference vanishes only for b2 = 0.
CounterexampleResult bogoliubov_counterexample(GridPtr grid, const HamiltonianSpec& spec,
                                               ModeLabel label, std::size_t m);

}  // namespace bifield
