#include "bifield/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "bifield/errors.hpp"
#include "bifield/transforms.hpp"

namespace bifield {

std::string side_name(EvolutionSide side) {
  return side == EvolutionSide::UnderH ? "H" : "H_bio";
}

void BogoliubovBlock::validate(const Grid& grid) const {
  if (!(b1 > 0.0) || !(b2 >= 0.0) || !std::isfinite(b1) || !std::isfinite(b2)) {
    throw std::invalid_argument("Bogoliubov coefficients need b1 > 0 and b2 >= 0");
  }
  if (std::abs(b1 * b1 - b2 * b2 - 1.0) > 1e-12 * std::max(1.0, b1 * b1)) {
    throw std::invalid_argument("Bogoliubov coefficients must satisfy b1^2 - b2^2 = 1");
  }
  if (modes.empty()) throw std::invalid_argument("Bogoliubov block needs at least one mode");
  std::set<std::size_t> seen;
  for (auto j : modes) {
    if (j >= grid.size()) throw std::out_of_range("Bogoliubov mode index out of range");
    if (!seen.insert(j).second) throw std::invalid_argument("Bogoliubov modes must be distinct");
  }
  if (!std::isfinite(t1)) throw std::invalid_argument("Bogoliubov time must be finite");
}

double HamiltonianSpec::omega(double k) const {
  return dispersion == Dispersion::Signed ? c * k : c * std::abs(k);
}

void HamiltonianSpec::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("speed of light must be positive");
}

namespace {

std::optional<EvolutionSide> side_for_orientation(int orientation) {
  if (orientation > 0) return EvolutionSide::UnderH;
  if (orientation < 0) return EvolutionSide::UnderHbio;
  return std::nullopt;
}

EvolutionSide opposite(EvolutionSide s) {
  return s == EvolutionSide::UnderH ? EvolutionSide::UnderHbio : EvolutionSide::UnderH;
}

CVector phases(const Grid& g, const HamiltonianSpec& spec, double t, double sign) {
  CVector out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = std::polar(1.0, sign * spec.omega(g.k(j)) * t);
  return out;
}

}  // namespace

std::optional<EvolutionSide> required_side(const SingleExcitationState& state) {
  std::optional<EvolutionSide> side;
  for (const auto& c : state.components()) {
    if (c.tag.is_photon()) continue;
    const auto need = side_for_orientation(c.tag.weight().orientation());
    if (!need) continue;
    if (side && *side != *need) {
      throw SideMismatchError("state mixes components that need H and H_bio");
    }
    side = need;
  }
  return side;
}

std::optional<EvolutionSide> required_side(const OperatorTerm& term) {
  if (!term.weight) return std::nullopt;
  const auto need = side_for_orientation(term.weight->orientation());
  if (!need) return std::nullopt;
  return term.creation ? *need : opposite(*need);
}

SingleExcitationState evolve_state(const SingleExcitationState& state, double t,
                                   EvolutionSide side, const HamiltonianSpec& spec) {
  spec.validate();
  const auto need = required_side(state);
  if (need && *need != side) {
    throw SideMismatchError("state tagged " + state.components().front().tag.name() +
                            " must be evolved with " + side_name(*need) + ", not " +
                            side_name(side));
  }
  const Grid& g = state.grid();
  const CVector phase = phases(g, spec, t, -1.0);
  std::vector<StateComponent> out;
  for (const auto& c : state.components()) {
    StateComponent e{c.tag, {}};
    for (std::size_t b = 0; b < kBranchCount; ++b) {
      if (c.amplitudes[b].empty()) continue;
      const int s = ModeLabel::from_index(b).s();
      CVector psi = c.tag.is_photon() ? c.amplitudes[b] : to_momentum(c.amplitudes[b], c.tag.weight(), s, g);
      for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= phase[j];
      e.amplitudes[b] = c.tag.is_photon() ? std::move(psi) : to_position(psi, c.tag.weight(), s, g);
    }
    out.push_back(std::move(e));
  }
  return make_state_from_components(state.grid_ptr(), std::move(out), state.vacuum_amplitude());
}

SidedEvolution evolve_state_auto(const SingleExcitationState& state, double t,
                                 const HamiltonianSpec& spec) {
  const EvolutionSide side = required_side(state).value_or(EvolutionSide::UnderH);
  return {evolve_state(state, t, side, spec), side};
}

namespace {

LadderOperator evolve_terms(const LadderOperator& op, double t, const HamiltonianSpec& spec,
                            const std::optional<EvolutionSide>& fixed) {
  spec.validate();
  const Grid& g = op.grid();
  const CVector up = phases(g, spec, t, 1.0);
  const CVector down = phases(g, spec, t, -1.0);
  std::vector<OperatorTerm> terms;
  for (const auto& term : op.terms()) {
    const auto need = required_side(term);
    if (fixed && need && *need != *fixed) {
      throw SideMismatchError("operator term must be evolved with " + side_name(*need) +
                              ", not " + side_name(*fixed));
    }
    OperatorTerm e = term;
    const CVector& p = term.creation ? up : down;
    for (std::size_t j = 0; j < e.residual.size(); ++j) e.residual[j] *= p[j];
    terms.push_back(std::move(e));
  }
  return LadderOperator(op.grid_ptr(), std::move(terms));
}

}  // namespace

LadderOperator heisenberg_evolve(const LadderOperator& op, double t, EvolutionSide side,
                                 const HamiltonianSpec& spec) {
  return evolve_terms(op, t, spec, side);
}

LadderOperator heisenberg_evolve(const LadderOperator& op, double t, const HamiltonianSpec& spec) {
  return evolve_terms(op, t, spec, std::nullopt);
}

ComplexMatrix position_kernel(const Grid& grid, int s) {
  check_direction(s);
  const std::size_t n = grid.size();
  const double scale = grid.delta_k() / (2.0 * std::numbers::pi);
  // G depends on m - m' only; negative differences wrap with a sign flip
  CVector g(n);
  for (std::size_t d = 0; d < n; ++d) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += grid.k(j) * grid.plane_wave(s, j, d);
    g[d] = scale * acc;
  }
  ComplexMatrix G(n, n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t mp = 0; mp < n; ++mp) {
      G(m, mp) = m >= mp ? g[m - mp] : -g[m + n - mp];
    }
  }
  return G;
}

ComplexMatrix position_kernel(const Grid& grid, int s, const WeightFunction& w) {
  check_direction(s);
  const std::size_t n = grid.size();
  ComplexMatrix G(n, n);
  CVector unit(n, 0.0);
  for (std::size_t mp = 0; mp < n; ++mp) {
    unit.assign(n, 0.0);
    unit[mp] = 1.0;
    CVector psi = to_momentum(unit, w, s, grid);
    for (std::size_t j = 0; j < n; ++j) psi[j] *= grid.k(j);
    const CVector col = to_position(psi, w, s, grid);
    for (std::size_t m = 0; m < n; ++m) G(m, mp) = col[m] / grid.delta_x();
  }
  return G;
}

SingleExcitationState apply_H_position(const SingleExcitationState& state,
                                       const FieldContext& ctx) {
  ctx.validate();
  const Grid& g = state.grid();
  const double hc = ctx.hbar * ctx.c;
  std::optional<ComplexMatrix> kernels[2];
  std::vector<StateComponent> out;
  for (const auto& c : state.components()) {
    StateComponent e{c.tag, {}};
    for (std::size_t b = 0; b < kBranchCount; ++b) {
      if (c.amplitudes[b].empty()) continue;
      CVector v = c.amplitudes[b];
      if (c.tag.is_photon()) {
        for (std::size_t j = 0; j < v.size(); ++j) v[j] *= hc * g.k(j);
      } else {
        const int s = ModeLabel::from_index(b).s();
        auto& G = kernels[s > 0 ? 0 : 1];
        if (!G) G = position_kernel(g, s);
        const Eigen::Map<const Eigen::VectorXcd> phi(v.data(), static_cast<Eigen::Index>(v.size()));
        const Eigen::VectorXcd res = (hc * g.delta_x()) * (*G * phi);
        v.assign(res.data(), res.data() + res.size());
      }
      e.amplitudes[b] = std::move(v);
    }
    out.push_back(std::move(e));
  }
  return make_state_from_components(state.grid_ptr(), std::move(out), 0.0);
}

SingleExcitationState apply_H_momentum(const SingleExcitationState& state,
                                       const FieldContext& ctx) {
  ctx.validate();
  const Grid& g = state.grid();
  BranchAmplitudes amps;
  for (std::size_t b = 0; b < kBranchCount; ++b) {
    const auto psi = state.momentum(b);
    amps[b].resize(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) amps[b][j] = ctx.hbar * ctx.c * g.k(j) * psi[j];
  }
  return make_state(state.grid_ptr(), BasisTag::photon(), std::move(amps));
}

ExpectationPair expectation_consistency(const LadderOperator& op,
                                        const SingleExcitationState& state, double t,
                                        const HamiltonianSpec& spec) {
  for (const auto& c : state.components()) {
    if (!c.tag.is_photon()) {
      throw InvalidExpectationError("expectation values of mixed-side operators are only valid "
                                    "for photonic states; got a " + c.tag.name() + " component");
    }
  }
  const auto evolved = evolve_state(state, t, EvolutionSide::UnderH, spec);
  const auto op_t = heisenberg_evolve(op, t, spec);
  return {bio_expectation(op, evolved), bio_expectation(op_t, state)};
}

ShapeCheck dispersion_free_check(const SingleExcitationState& state, double t,
                                 const HamiltonianSpec& spec, bool interpolate) {
  const auto tag = state.uniform_tag();
  if (!tag || tag->is_photon()) {
    throw std::invalid_argument("dispersion check needs a state with a single positional tag");
  }
  const Grid& g = state.grid();
  const std::size_t n = g.size();
  const double steps = spec.c * t / g.delta_x();
  const double rounded = std::round(steps);
  const bool on_lattice = std::abs(steps - rounded) <= 1e-9 * std::max(1.0, std::abs(steps));
  if (!on_lattice && !interpolate) {
    throw std::invalid_argument("c t is not a whole number of lattice steps; enable interpolation");
  }

  const auto evolved = evolve_state_auto(state, t, spec);
  ShapeCheck out;
  out.side = evolved.side;
  out.interpolated = !on_lattice;

  std::array<CVector, kBranchCount> before, after;
  double wrapped = 0.0;
  for (std::size_t b = 0; b < kBranchCount; ++b) {
    const ModeLabel label = ModeLabel::from_index(b);
    before[b] = state.position_amplitudes(label);
    after[b] = evolved.state.position_amplitudes(label);
    for (const auto& v : before[b]) out.scale = std::max(out.scale, std::abs(v));
  }

  for (std::size_t b = 0; b < kBranchCount; ++b) {
    const int s = ModeLabel::from_index(b).s();
    CVector reference;
    if (on_lattice) {
      const long q = s * static_cast<long>(rounded);
      reference = shift_on_lattice(before[b], q);
      // entries carried across the domain edge pick up the antiperiodic sign
      for (std::size_t i = 0; i < n; ++i) {
        const long dest = static_cast<long>(i) + q;
        if (dest < 0 || dest >= static_cast<long>(n)) wrapped = std::max(wrapped, std::abs(before[b][i]));
      }
    } else {
      const auto psi = state.momentum(b);
      reference.resize(n);
      for (std::size_t m = 0; m < n; ++m) {
        const double xs = g.x(m) - s * spec.c * t;
        reference[m] = position_amplitude_at(psi, tag->weight(), s, g, xs);
        if (xs < 0.0 || xs >= g.length()) wrapped = std::max(wrapped, std::abs(before[b][m]));
      }
    }
    double err = 0.0;
    for (std::size_t m = 0; m < n; ++m) err = std::max(err, std::abs(after[b][m] - reference[m]));
    out.branch_error[b] = err;
    out.max_error = std::max(out.max_error, err);
  }

  for (int lambda = 1; lambda <= 2; ++lambda) {
    const std::size_t fwd = ModeLabel(1, lambda).index();
    const std::size_t bwd = ModeLabel(-1, lambda).index();
    auto populated = [](const CVector& v) {
      return std::any_of(v.begin(), v.end(), [](cplx z) { return z != cplx(0.0); });
    };
    if (!populated(before[fwd]) || !populated(before[bwd])) continue;
    out.two_sided = true;
    CVector sum0(n), sumt(n);
    for (std::size_t m = 0; m < n; ++m) {
      sum0[m] = before[fwd][m] + before[bwd][m];
      sumt[m] = after[fwd][m] + after[bwd][m];
    }
    if (on_lattice) {
      const CVector rigid = shift_on_lattice(sum0, static_cast<long>(rounded));
      for (std::size_t m = 0; m < n; ++m) {
        out.combined_error = std::max(out.combined_error, std::abs(sumt[m] - rigid[m]));
      }
    }
  }
  if (out.two_sided) {
    out.warning = "packet populates both propagation directions; the combined profile is not a rigid translation";
  }
  if (wrapped > 1e-8 * std::max(out.scale, 1e-300)) {
    const std::string msg = "packet amplitude " + std::to_string(wrapped) +
                            " crosses the domain edge; the antiperiodic wrap may contaminate the check";
    out.warning = out.warning ? *out.warning + "; " + msg : msg;
  }
  return out;
}

CounterexampleResult bogoliubov_counterexample(GridPtr grid, const HamiltonianSpec& spec,
                                               ModeLabel label, std::size_t m) {
  spec.validate();
  if (!spec.bogoliubov) throw std::invalid_argument("counterexample needs a Bogoliubov block");
  const BogoliubovBlock& blk = *spec.bogoliubov;
  blk.validate(*grid);
  if (m >= grid->size()) throw std::out_of_range("position index out of range");

  const LadderOperator blip_t = heisenberg_evolve(blip_annihilation(grid, label, m), blk.t1, spec);
  const LadderOperator lhs =
      apply_R(blip_t.adjoint().scaled(blk.b1) + blip_t.scaled(blk.b2)).restricted_to(blk.modes);

  const LadderOperator local_dag_t = heisenberg_evolve(
      positional_creation(grid, WeightFunction::sqrt_abs_k(), label, m), blk.t1, spec);
  const LadderOperator bio_t =
      heisenberg_evolve(bio_local_annihilation(grid, label, m), blk.t1, spec);
  const LadderOperator rhs =
      (local_dag_t.scaled(blk.b1) + bio_t.scaled(blk.b2)).restricted_to(blk.modes);

  double sq = 0.0;
  for (const ModeLabel l : all_branches()) {
    const CVector ul = lhs.creation_coefficients(l), ur = rhs.creation_coefficients(l);
    const CVector vl = lhs.annihilation_coefficients(l), vr = rhs.annihilation_coefficients(l);
    for (std::size_t j = 0; j < ul.size(); ++j) sq += std::norm(ul[j] - ur[j]) + std::norm(vl[j] - vr[j]);
  }

  double closed = 0.0;
  for (auto j : blk.modes) {
    const double a = std::sqrt(std::abs(grid->k(j)));
    closed += (a - 1.0 / a) * (a - 1.0 / a);
  }
  return {std::sqrt(2.0 * std::numbers::pi * sq), blk.b2 * std::sqrt(closed)};
}

}  // namespace bifield
