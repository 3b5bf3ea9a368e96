#include "bifield/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bifield/errors.hpp"
#include "bifield/transforms.hpp"

namespace bifield {

ModeLabel::ModeLabel(int s, int lambda) : s_(check_direction(s)), lambda_(lambda) {
  if (lambda != 1 && lambda != 2) {
    throw std::invalid_argument("polarisation lambda must be 1 or 2, got " +
                                std::to_string(lambda));
  }
}

ModeLabel ModeLabel::from_index(std::size_t index) {
  if (index >= kBranchCount) throw std::out_of_range("branch index out of range");
  return ModeLabel(index < 2 ? 1 : -1, static_cast<int>(index % 2) + 1);
}

std::array<ModeLabel, kBranchCount> all_branches() {
  return {ModeLabel(1, 1), ModeLabel(1, 2), ModeLabel(-1, 1), ModeLabel(-1, 2)};
}

const WeightFunction& BasisTag::weight() const {
  if (!weight_) throw std::logic_error("photon tag carries no Fourier weight");
  return *weight_;
}

BasisTag BasisTag::associate() const {
  if (is_photon()) return *this;
  return positional(weight_->reciprocal());
}

std::string BasisTag::name() const {
  if (is_photon()) return "photon";
  switch (weight_->kind()) {
    case WeightKind::Unit:
      return "blip";
    case WeightKind::SqrtAbsK:
      return "local";
    case WeightKind::InvSqrtAbsK:
      return "bio_local";
    case WeightKind::Custom:
      break;
  }
  return "positional(" + weight_->name() + ")";
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw GridMismatchError("states or operators live on different grids");
}

namespace {

CVector canonical_branch(const StateComponent& c, std::size_t branch, const Grid& grid) {
  const CVector& amps = c.amplitudes[branch];
  if (amps.empty()) return CVector(grid.size(), 0.0);
  if (c.tag.is_photon()) return amps;
  return to_momentum(amps, c.tag.weight(), ModeLabel::from_index(branch).s(), grid);
}

void accumulate(CVector& into, const CVector& from, cplx factor = 1.0) {
  if (from.empty()) return;
  if (into.empty()) into.assign(from.size(), 0.0);
  for (std::size_t i = 0; i < from.size(); ++i) into[i] += factor * from[i];
}

template <class F>
SingleExcitationState map_components(const SingleExcitationState& state, F&& f) {
  std::vector<StateComponent> out;
  out.reserve(state.components().size());
  for (const auto& c : state.components()) out.push_back(f(c));
  return make_state_from_components(state.grid_ptr(), std::move(out), state.vacuum_amplitude());
}

// sum_b sum_j dk conj(a_bj) * weight(k_j) * b_bj
template <class W>
cplx weighted_overlap(const SingleExcitationState& bra, const SingleExcitationState& ket,
                      W&& weight) {
  require_same_grid(bra.grid(), ket.grid());
  const Grid& g = ket.grid();
  cplx acc = std::conj(bra.vacuum_amplitude()) * ket.vacuum_amplitude();
  for (std::size_t b = 0; b < kBranchCount; ++b) {
    const auto lhs = bra.momentum(b);
    const auto rhs = ket.momentum(b);
    cplx branch = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) branch += std::conj(lhs[j]) * weight(g.k(j)) * rhs[j];
    acc += g.delta_k() * branch;
  }
  return acc;
}

}  // namespace

SingleExcitationState make_state_from_components(GridPtr grid,
                                                 std::vector<StateComponent> components,
                                                 cplx vacuum) {
  if (!grid) throw std::invalid_argument("state needs a grid");
  if (!std::isfinite(vacuum.real()) || !std::isfinite(vacuum.imag())) {
    throw std::invalid_argument("vacuum amplitude is not finite");
  }
  SingleExcitationState st;
  st.grid_ = grid;
  st.vacuum_ = vacuum;
  for (auto& c : components) {
    for (const auto& branch : c.amplitudes) {
      if (!branch.empty() && branch.size() != grid->size()) {
        throw std::invalid_argument("amplitude length " + std::to_string(branch.size()) +
                                    " does not match grid size " + std::to_string(grid->size()));
      }
      for (const auto& v : branch) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          throw std::invalid_argument("amplitudes must be finite");
        }
      }
    }
    auto same = std::find_if(st.components_.begin(), st.components_.end(),
                             [&](const StateComponent& e) { return e.tag == c.tag; });
    if (same == st.components_.end()) {
      st.components_.push_back(std::move(c));
    } else {
      for (std::size_t b = 0; b < kBranchCount; ++b) accumulate(same->amplitudes[b], c.amplitudes[b]);
    }
  }
  for (std::size_t b = 0; b < kBranchCount; ++b) {
    st.canonical_[b].assign(grid->size(), 0.0);
    for (const auto& c : st.components_) accumulate(st.canonical_[b], canonical_branch(c, b, *grid));
  }
  return st;
}

SingleExcitationState make_state(GridPtr grid, BasisTag tag, BranchAmplitudes amplitudes,
                                 cplx vacuum) {
  std::vector<StateComponent> comps;
  comps.push_back({std::move(tag), std::move(amplitudes)});
  return make_state_from_components(std::move(grid), std::move(comps), vacuum);
}

SingleExcitationState make_state(GridPtr grid, BasisTag tag, ModeLabel label, CVector amplitudes) {
  BranchAmplitudes amps;
  amps[label.index()] = std::move(amplitudes);
  return make_state(std::move(grid), std::move(tag), std::move(amps));
}

SingleExcitationState photon_mode(GridPtr grid, ModeLabel label, std::size_t j) {
  if (j >= grid->size()) throw std::out_of_range("mode index out of range");
  CVector amps(grid->size(), 0.0);
  amps[j] = 1.0 / grid->delta_k();
  return make_state(grid, BasisTag::photon(), label, std::move(amps));
}

SingleExcitationState position_delta(GridPtr grid, BasisTag tag, ModeLabel label, std::size_t m) {
  if (tag.is_photon()) throw std::invalid_argument("position delta needs a positional tag");
  if (m >= grid->size()) throw std::out_of_range("position index out of range");
  CVector amps(grid->size(), 0.0);
  amps[m] = 1.0 / grid->delta_x();
  return make_state(grid, std::move(tag), label, std::move(amps));
}

CVector gaussian_profile(const Grid& grid, double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  CVector out(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double d = (grid.x(m) - center) / width;
    out[m] = std::exp(-0.5 * d * d);
  }
  return out;
}

std::optional<BasisTag> SingleExcitationState::uniform_tag() const {
  if (components_.size() != 1) return std::nullopt;
  return components_.front().tag;
}

bool SingleExcitationState::mixed_provenance() const {
  std::size_t positional = 0;
  for (const auto& c : components_) {
    if (!c.tag.is_photon()) ++positional;
  }
  return positional > 1;
}

bool SingleExcitationState::self_associate() const {
  for (const auto& c : components_) {
    if (!c.tag.self_associate()) return false;
  }
  return true;
}

CVector SingleExcitationState::position_amplitudes(ModeLabel label) const {
  const auto tag = uniform_tag();
  if (!tag || tag->is_photon()) {
    throw std::logic_error("position amplitudes need a state with a single positional tag");
  }
  const CVector& amps = components_.front().amplitudes[label.index()];
  return amps.empty() ? CVector(grid_->size(), 0.0) : amps;
}

SingleExcitationState SingleExcitationState::scaled(cplx factor) const {
  std::vector<StateComponent> comps = components_;
  for (auto& c : comps) {
    for (auto& branch : c.amplitudes) {
      for (auto& v : branch) v *= factor;
    }
  }
  return make_state_from_components(grid_, std::move(comps), vacuum_ * factor);
}

SingleExcitationState operator+(const SingleExcitationState& a, const SingleExcitationState& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<StateComponent> comps = a.components_;
  comps.insert(comps.end(), b.components_.begin(), b.components_.end());
  return make_state_from_components(a.grid_, std::move(comps), a.vacuum_ + b.vacuum_);
}

SingleExcitationState bio_associate(const SingleExcitationState& state) {
  return map_components(state, [](const StateComponent& c) {
    return StateComponent{c.tag.associate(), c.amplitudes};
  });
}

cplx standard_inner(const SingleExcitationState& psi, const SingleExcitationState& phi) {
  return weighted_overlap(phi, psi, [](double) { return 1.0; });
}

cplx bio_inner(const SingleExcitationState& psi, const SingleExcitationState& phi) {
  // one tag: S(phi) has canonical amplitudes psi / w^2, no transform needed
  if (const auto tag = phi.uniform_tag()) {
    if (tag->is_photon()) return standard_inner(psi, phi);
    const WeightFunction& w = tag->weight();
    return weighted_overlap(phi, psi, [&w](double k) {
      const double v = w(k);
      return 1.0 / (v * v);
    });
  }
  return standard_inner(psi, bio_associate(phi));
}

cplx eta_inner(const SingleExcitationState& psi, const SingleExcitationState& phi) {
  return weighted_overlap(phi, psi, [](double k) { return 1.0 / std::abs(k); });
}

cplx eta_inv_inner(const SingleExcitationState& psi, const SingleExcitationState& phi) {
  return weighted_overlap(phi, psi, [](double k) { return std::abs(k); });
}

cplx inner(InnerProduct kind, const SingleExcitationState& psi, const SingleExcitationState& phi) {
  switch (kind) {
    case InnerProduct::Standard:
      return standard_inner(psi, phi);
    case InnerProduct::Bio:
      return bio_inner(psi, phi);
    case InnerProduct::Eta:
      return eta_inner(psi, phi);
    case InnerProduct::EtaInverse:
      return eta_inv_inner(psi, phi);
  }
  throw std::invalid_argument("unknown inner product");
}

double norm(const SingleExcitationState& psi, InnerProduct kind) {
  const cplx sq = inner(kind, psi, psi);
  if (!(sq.real() > 0.0)) throw NormalizationError("state has no positive norm");
  return std::sqrt(sq.real());
}

SingleExcitationState normalized(const SingleExcitationState& psi, InnerProduct kind) {
  return psi.scaled(1.0 / norm(psi, kind));
}

namespace {

SingleExcitationState apply_abs_k_power(const SingleExcitationState& state, double power) {
  const Grid& g = state.grid();
  const WeightFunction factor = WeightFunction::abs_power(power);
  return map_components(state, [&](const StateComponent& c) {
    if (!c.tag.is_photon()) return StateComponent{BasisTag::positional(c.tag.weight() * factor), c.amplitudes};
    StateComponent out = c;
    for (auto& branch : out.amplitudes) {
      for (std::size_t j = 0; j < branch.size(); ++j) branch[j] *= factor(g.k(j));
    }
    return out;
  });
}

}  // namespace

SingleExcitationState eta_apply(const SingleExcitationState& state) {
  return apply_abs_k_power(state, -1.0);
}

SingleExcitationState eta_inv_apply(const SingleExcitationState& state) {
  return apply_abs_k_power(state, 1.0);
}

double max_abs_difference(const SingleExcitationState& a, const SingleExcitationState& b) {
  require_same_grid(a.grid(), b.grid());
  double worst = std::abs(a.vacuum_amplitude() - b.vacuum_amplitude());
  for (std::size_t br = 0; br < kBranchCount; ++br) {
    const auto x = a.momentum(br);
    const auto y = b.momentum(br);
    for (std::size_t j = 0; j < x.size(); ++j) worst = std::max(worst, std::abs(x[j] - y[j]));
  }
  return worst;
}

}  // namespace bifield
