#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bifield/grid.hpp"
#include "bifield/weight.hpp"

namespace bifield {

inline constexpr std::size_t kBranchCount = 4;

/// Propagation direction s = +-1 and polarisation lambda = 1, 2.
class ModeLabel {
 public:
  ModeLabel(int s, int lambda);

  int s() const { return s_; }
  int lambda() const { return lambda_; }
  std::size_t index() const { return (s_ > 0 ? 0 : 2) + static_cast<std::size_t>(lambda_ - 1); }
  static ModeLabel from_index(std::size_t index);

  bool operator==(const ModeLabel&) const = default;

 private:
  int s_;
  int lambda_;
};

std::array<ModeLabel, kBranchCount> all_branches();

/// Provenance of a state component: momentum (photon) modes or a position
/// basis built with a Fourier weight.
class BasisTag {
 public:
  static BasisTag photon() { return BasisTag(std::nullopt); }
  static BasisTag positional(WeightFunction w) { return BasisTag(std::move(w)); }
  static BasisTag local() { return positional(WeightFunction::sqrt_abs_k()); }
  static BasisTag bio_local() { return positional(WeightFunction::inv_sqrt_abs_k()); }
  static BasisTag blip() { return positional(WeightFunction::unit()); }

  bool is_photon() const { return !weight_.has_value(); }
  /// Throws std::logic_error for photon tags.
  const WeightFunction& weight() const;

  /// Tag of the bio-associated state: photon stays photon, weights invert.
  BasisTag associate() const;
  bool self_associate() const { return is_photon() || weight_->self_reciprocal(); }

  std::string name() const;

  bool operator==(const BasisTag& other) const { return weight_ == other.weight_; }

 private:
  explicit BasisTag(std::optional<WeightFunction> w) : weight_(std::move(w)) {}
  std::optional<WeightFunction> weight_;
};

/// Per-branch amplitude sequences; an empty sequence means the branch is zero.
/// Photon components hold psi(k_j), positional components hold phi(x_m).
using BranchAmplitudes = std::array<CVector, kBranchCount>;

struct StateComponent {
  BasisTag tag;
  BranchAmplitudes amplitudes;
};

/// Vacuum plus single-excitation state, stored as a list of components with
/// provenance. The canonical momentum amplitudes psi_{s lambda}(k) are
/// computed once at construction.
///
/// Amplitudes are densities: delta(k - k') is delta_jj' / dk and
/// delta(x - x') is delta_mm' / dx.
class SingleExcitationState {
 public:
  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<StateComponent>& components() const { return components_; }
  cplx vacuum_amplitude() const { return vacuum_; }

  std::span<const cplx> momentum(ModeLabel label) const { return canonical_[label.index()]; }
  std::span<const cplx> momentum(std::size_t branch) const { return canonical_[branch]; }

  /// The tag shared by every component, if there is exactly one.
  std::optional<BasisTag> uniform_tag() const;
  /// Components from two or more different position bases.
  bool mixed_provenance() const;
  /// Every component is a fixed point of the S map.
  bool self_associate() const;

  /// Position amplitudes phi_{s lambda}(x) of a state with a single
  /// positional tag. Throws std::logic_error otherwise.
  CVector position_amplitudes(ModeLabel label) const;

  SingleExcitationState scaled(cplx factor) const;

  friend SingleExcitationState operator+(const SingleExcitationState& a,
                                         const SingleExcitationState& b);

  friend SingleExcitationState make_state_from_components(GridPtr grid,
                                                          std::vector<StateComponent> components,
                                                          cplx vacuum);

 private:
  SingleExcitationState() = default;

  GridPtr grid_;
  std::vector<StateComponent> components_;
  cplx vacuum_ = 0.0;
  BranchAmplitudes canonical_;
};

/// Components with equal tags are merged. Throws std::invalid_argument on
/// length mismatch or non-finite amplitudes.
SingleExcitationState make_state_from_components(GridPtr grid,
                                                 std::vector<StateComponent> components,
                                                 cplx vacuum = 0.0);

SingleExcitationState make_state(GridPtr grid, BasisTag tag, BranchAmplitudes amplitudes,
                                 cplx vacuum = 0.0);
SingleExcitationState make_state(GridPtr grid, BasisTag tag, ModeLabel label, CVector amplitudes);

/// |1(k_j)> : psi(k) = delta_jj' / dk on one branch.
SingleExcitationState photon_mode(GridPtr grid, ModeLabel label, std::size_t j);
/// Positional delta at x_m: phi(x) = delta_mm' / dx on one branch.
SingleExcitationState position_delta(GridPtr grid, BasisTag tag, ModeLabel label, std::size_t m);

/// exp(-(x - center)^2 / (2 width^2)) sampled on the lattice.
CVector gaussian_profile(const Grid& grid, double center, double width);

/// The S map: inverts the Fourier weight of every component, keeping the
/// stored amplitudes. Photon components are fixed points; S is an involution.
SingleExcitationState bio_associate(const SingleExcitationState& state);

enum class InnerProduct { Standard, Bio, Eta, EtaInverse };

/// <<psi, phi>> = <phi|psi> over canonical amplitudes.
cplx standard_inner(const SingleExcitationState& psi, const SingleExcitationState& phi);
/// <<psi, phi>>^bio = S(<phi|) |psi>
cplx bio_inner(const SingleExcitationState& psi, const SingleExcitationState& phi);
/// <phi| eta |psi>, eta acting as 1/|k| on the single-excitation sector.
cplx eta_inner(const SingleExcitationState& psi, const SingleExcitationState& phi);
/// <phi| eta^{-1} |psi>, eta^{-1} acting as |k|.
cplx eta_inv_inner(const SingleExcitationState& psi, const SingleExcitationState& phi);

cplx inner(InnerProduct kind, const SingleExcitationState& psi, const SingleExcitationState& phi);

/// Throws NormalizationError if the squared norm is not positive.
double norm(const SingleExcitationState& psi, InnerProduct kind = InnerProduct::Bio);
SingleExcitationState normalized(const SingleExcitationState& psi,
                                 InnerProduct kind = InnerProduct::Bio);

/// eta|psi>: canonical amplitudes scale by 1/|k|; positional tags w -> w/|k|.
SingleExcitationState eta_apply(const SingleExcitationState& state);
/// eta^{-1}|psi>: canonical amplitudes scale by |k|; positional tags w -> w|k|.
SingleExcitationState eta_inv_apply(const SingleExcitationState& state);

/// Largest modulus difference between the canonical amplitudes (and vacuum
/// amplitudes) of two states on the same grid.
double max_abs_difference(const SingleExcitationState& a, const SingleExcitationState& b);

void require_same_grid(const Grid& a, const Grid& b);

}  // namespace bifield
