#include "bifield/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bifield/errors.hpp"

namespace bifield {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

CVector term_coefficients(const OperatorTerm& t, const Grid& g) {
  CVector c = t.residual;
  if (t.weight) {
    for (std::size_t j = 0; j < c.size(); ++j) c[j] *= (*t.weight)(g.k(j));
  }
  return c;
}

template <class F>
LadderOperator map_terms(const LadderOperator& op, F&& f) {
  std::vector<OperatorTerm> out;
  out.reserve(op.terms().size());
  for (const auto& t : op.terms()) out.push_back(f(t));
  return LadderOperator(op.grid_ptr(), std::move(out));
}

}  // namespace

LadderOperator::LadderOperator(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("operator needs a grid");
}

LadderOperator::LadderOperator(GridPtr grid, std::vector<OperatorTerm> terms)
    : grid_(std::move(grid)), terms_(std::move(terms)) {
  if (!grid_) throw std::invalid_argument("operator needs a grid");
  for (const auto& t : terms_) {
    if (t.residual.size() != grid_->size()) {
      throw std::invalid_argument("operator coefficient length does not match the grid");
    }
  }
}

CVector LadderOperator::creation_coefficients(ModeLabel label) const {
  CVector out(grid_->size(), 0.0);
  for (const auto& t : terms_) {
    if (!t.creation || !(t.label == label)) continue;
    const CVector c = term_coefficients(t, *grid_);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c[j];
  }
  return out;
}

CVector LadderOperator::annihilation_coefficients(ModeLabel label) const {
  CVector out(grid_->size(), 0.0);
  for (const auto& t : terms_) {
    if (t.creation || !(t.label == label)) continue;
    const CVector c = term_coefficients(t, *grid_);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c[j];
  }
  return out;
}

LadderOperator LadderOperator::adjoint() const {
  return map_terms(*this, [](const OperatorTerm& t) {
    OperatorTerm a = t;
    a.creation = !t.creation;
    for (auto& v : a.residual) v = std::conj(v);
    return a;
  });
}

LadderOperator LadderOperator::scaled(cplx factor) const {
  return map_terms(*this, [factor](const OperatorTerm& t) {
    OperatorTerm a = t;
    for (auto& v : a.residual) v *= factor;
    return a;
  });
}

LadderOperator LadderOperator::restricted_to(std::span<const std::size_t> modes) const {
  std::vector<bool> keep(grid_->size(), false);
  for (auto j : modes) {
    if (j >= grid_->size()) throw std::out_of_range("mode index out of range");
    keep[j] = true;
  }
  return map_terms(*this, [&](const OperatorTerm& t) {
    OperatorTerm a = t;
    for (std::size_t j = 0; j < a.residual.size(); ++j) {
      if (!keep[j]) a.residual[j] = 0.0;
    }
    return a;
  });
}

LadderOperator LadderOperator::operator+(const LadderOperator& other) const {
  require_same_grid(*grid_, other.grid());
  std::vector<OperatorTerm> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return LadderOperator(grid_, std::move(terms));
}

LadderOperator LadderOperator::operator-(const LadderOperator& other) const {
  return *this + other.scaled(-1.0);
}

LadderOperator operator*(cplx factor, const LadderOperator& op) { return op.scaled(factor); }

LadderOperator mode_annihilation(GridPtr grid, ModeLabel label, std::size_t j) {
  if (j >= grid->size()) throw std::out_of_range("mode index out of range");
  CVector r(grid->size(), 0.0);
  r[j] = 1.0 / grid->delta_k();
  return LadderOperator(grid, {OperatorTerm{label, false, WeightFunction::unit(), std::move(r)}});
}

LadderOperator mode_creation(GridPtr grid, ModeLabel label, std::size_t j) {
  return mode_annihilation(std::move(grid), label, j).adjoint();
}

LadderOperator positional_annihilation(GridPtr grid, const WeightFunction& w, ModeLabel label,
                                       std::size_t m) {
  if (m >= grid->size()) throw std::out_of_range("position index out of range");
  CVector r(grid->size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = kInvSqrt2Pi * grid->plane_wave(label.s(), j, m);
  return LadderOperator(grid, {OperatorTerm{label, false, w, std::move(r)}});
}

LadderOperator positional_creation(GridPtr grid, const WeightFunction& w, ModeLabel label,
                                   std::size_t m) {
  return positional_annihilation(std::move(grid), w, label, m).adjoint();
}

cplx commutator(const LadderOperator& lhs, const LadderOperator& rhs) {
  require_same_grid(lhs.grid(), rhs.grid());
  const Grid& g = lhs.grid();
  cplx acc = 0.0;
  for (const ModeLabel label : all_branches()) {
    const CVector u1 = lhs.creation_coefficients(label);
    const CVector v1 = lhs.annihilation_coefficients(label);
    const CVector u2 = rhs.creation_coefficients(label);
    const CVector v2 = rhs.annihilation_coefficients(label);
    for (std::size_t j = 0; j < g.size(); ++j) acc += v1[j] * u2[j] - u1[j] * v2[j];
  }
  return g.delta_k() * acc;
}

std::vector<KernelSample> commutator_kernel(const WeightFunction& w1, const WeightFunction& w2,
                                            int s, const Grid& grid) {
  check_direction(s);
  const std::size_t n = grid.size();
  std::vector<double> product(n);
  for (std::size_t j = 0; j < n; ++j) product[j] = w1(grid.k(j)) * w2(grid.k(j));

  const double scale = grid.delta_k() / (2.0 * std::numbers::pi);
  const long half = static_cast<long>(n / 2);
  std::vector<KernelSample> out;
  out.reserve(n);
  for (long d = -half; d < half; ++d) {
    // y = d dx; negative d reuse lattice point d + n across one antiperiodic wrap
    const std::size_t m = static_cast<std::size_t>(d < 0 ? d + static_cast<long>(n) : d);
    const double sign = d < 0 ? -1.0 : 1.0;
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += product[j] * grid.plane_wave(s, j, m);
    out.push_back({static_cast<double>(d) * grid.delta_x(), sign * scale * acc});
  }
  return out;
}

LadderOperator bio_conjugate(const LadderOperator& op) {
  return map_terms(op, [](const OperatorTerm& t) {
    if (!t.weight) {
      throw BioConjugateUndefined("bio-conjugate undefined: operator term carries no weight tag");
    }
    OperatorTerm a = t;
    a.weight = t.weight->reciprocal();
    return a;
  });
}

LadderOperator apply_R(const LadderOperator& op) {
  const Grid& g = op.grid();
  return map_terms(op, [&g](const OperatorTerm& t) {
    OperatorTerm a = t;
    if (a.weight) {
      a.weight = *a.weight * WeightFunction::sqrt_abs_k();
    } else {
      for (std::size_t j = 0; j < a.residual.size(); ++j) a.residual[j] *= std::sqrt(std::abs(g.k(j)));
    }
    return a;
  });
}

double max_abs_difference(const LadderOperator& a, const LadderOperator& b) {
  require_same_grid(a.grid(), b.grid());
  double worst = 0.0;
  for (const ModeLabel label : all_branches()) {
    const CVector ua = a.creation_coefficients(label), ub = b.creation_coefficients(label);
    const CVector va = a.annihilation_coefficients(label), vb = b.annihilation_coefficients(label);
    for (std::size_t j = 0; j < ua.size(); ++j) {
      worst = std::max({worst, std::abs(ua[j] - ub[j]), std::abs(va[j] - vb[j])});
    }
  }
  return worst;
}

bool is_hermitian(const LadderOperator& op, double tol) {
  return max_abs_difference(op, op.adjoint()) <= tol;
}

namespace {

cplx linear_expectation(const LadderOperator& op, const SingleExcitationState& bra_source,
                        const SingleExcitationState& ket) {
  require_same_grid(op.grid(), ket.grid());
  const Grid& g = ket.grid();
  cplx annihilate = 0.0;  // <0| O |psi_1>
  cplx create = 0.0;      // <bra_1| O |0>
  for (const ModeLabel label : all_branches()) {
    const CVector u = op.creation_coefficients(label);
    const CVector v = op.annihilation_coefficients(label);
    const auto psi = ket.momentum(label);
    const auto bra = bra_source.momentum(label);
    for (std::size_t j = 0; j < g.size(); ++j) {
      annihilate += v[j] * psi[j];
      create += u[j] * std::conj(bra[j]);
    }
  }
  return g.delta_k() * (std::conj(bra_source.vacuum_amplitude()) * annihilate +
                        ket.vacuum_amplitude() * create);
}

}  // namespace

cplx bio_expectation(const LadderOperator& op, const SingleExcitationState& state) {
  return linear_expectation(op, bio_associate(state), state);
}

cplx standard_expectation(const LadderOperator& op, const SingleExcitationState& state) {
  return linear_expectation(op, state, state);
}

bool FieldObservable::is_hermitian(double tol) const {
  return std::all_of(components.begin(), components.end(),
                     [tol](const LadderOperator& c) { return bifield::is_hermitian(c, tol); });
}

namespace {

FieldObservable build_field(GridPtr grid, std::size_t m, FieldKind kind, const FieldContext& ctx) {
  ctx.validate();
  const double pref = ctx.field_prefactor();
  FieldObservable f{kind, m, grid->x(m), {LadderOperator(grid), LadderOperator(grid), LadderOperator(grid)}, std::nullopt};
  for (const ModeLabel label : all_branches()) {
    const LadderOperator a = local_annihilation(grid, label, m);
    const LadderOperator hermitian_pair = a + a.adjoint();
    if (kind == FieldKind::Electric) {
      // e_1 = y, e_2 = z
      auto& slot = f.components[label.lambda() == 1 ? 1 : 2];
      slot = slot + hermitian_pair.scaled(pref);
    } else {
      // e_x cross e_y = e_z, e_x cross e_z = -e_y
      const double factor = label.s() / ctx.c * pref;
      if (label.lambda() == 1) {
        f.components[2] = f.components[2] + hermitian_pair.scaled(factor);
      } else {
        f.components[1] = f.components[1] + hermitian_pair.scaled(-factor);
      }
    }
  }
  return f;
}

FieldObservable snapped_field(GridPtr grid, double x, FieldKind kind, const FieldContext& ctx) {
  if (!std::isfinite(x)) throw std::invalid_argument("field position must be finite");
  const long n = static_cast<long>(grid->size());
  const long q = std::lround(x / grid->delta_x());
  const long m = ((q % n) + n) % n;
  // x_q = x_m + w L and every mode function is antiperiodic over L
  const long wraps = (q - m) / n;
  FieldObservable f = build_field(grid, static_cast<std::size_t>(m), kind, ctx);
  if (wraps % 2 != 0) {
    for (auto& c : f.components) c = c.scaled(-1.0);
  }
  f.x = static_cast<double>(q) * grid->delta_x();
  if (!grid->on_grid(x)) {
    f.warning = "position " + std::to_string(x) + " is off the lattice; using the nearest point " +
                std::to_string(f.x);
  }
  return f;
}

}  // namespace

FieldObservable electric_field(GridPtr grid, double x, const FieldContext& ctx) {
  return snapped_field(std::move(grid), x, FieldKind::Electric, ctx);
}

FieldObservable magnetic_field(GridPtr grid, double x, const FieldContext& ctx) {
  return snapped_field(std::move(grid), x, FieldKind::Magnetic, ctx);
}

FieldObservable electric_field_at(GridPtr grid, std::size_t m, const FieldContext& ctx) {
  if (m >= grid->size()) throw std::out_of_range("position index out of range");
  return build_field(std::move(grid), m, FieldKind::Electric, ctx);
}

FieldObservable magnetic_field_at(GridPtr grid, std::size_t m, const FieldContext& ctx) {
  if (m >= grid->size()) throw std::out_of_range("position index out of range");
  return build_field(std::move(grid), m, FieldKind::Magnetic, ctx);
}

CVector blip_field_profile(GridPtr grid, std::size_t x0, ModeLabel label, const FieldContext& ctx) {
  const LadderOperator blip = positional_creation(grid, WeightFunction::unit(), label, x0);
  const std::size_t axis = label.lambda() == 1 ? 1 : 2;
  CVector out(grid->size());
  for (std::size_t m = 0; m < grid->size(); ++m) {
    const FieldObservable e = electric_field_at(grid, m, ctx);
    // the vacuum matrix element of a linear pair is its commutator
    out[m] = commutator(e.components[axis], blip);
  }
  return out;
}

FieldVectors coherent_field_expectation(const Grid& grid, const BranchAmplitudes& alpha, double x,
                                        double t, const FieldContext& ctx) {
  ctx.validate();
  const double pref = ctx.field_prefactor();
  FieldVectors out{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  for (const ModeLabel label : all_branches()) {
    const CVector& a = alpha[label.index()];
    if (a.empty()) continue;
    if (a.size() != grid.size()) throw std::invalid_argument("coherent amplitude length mismatch");
    cplx acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double k = grid.k(j);
      acc += std::sqrt(std::abs(k)) * std::polar(1.0, label.s() * k * x - ctx.c * k * t) * a[j];
    }
    const double value = 2.0 * pref * (grid.delta_k() * kInvSqrt2Pi * acc).real();
    if (label.lambda() == 1) {
      out.electric[1] += value;
      out.magnetic[2] += label.s() / ctx.c * value;
    } else {
      out.electric[2] += value;
      out.magnetic[1] -= label.s() / ctx.c * value;
    }
  }
  return out;
}

namespace {

template <class Dispersion>
double quadratic_expectation(const SingleExcitationState& state, const FieldContext& ctx,
                             Dispersion&& omega) {
  ctx.validate();
  const SingleExcitationState assoc = bio_associate(state);
  const cplx norm_sq = bio_inner(state, state);
  if (std::abs(norm_sq - 1.0) > 1e-8) {
    throw NormalizationError("state is not normalised under the generalised inner product");
  }
  const Grid& g = state.grid();
  cplx acc = 0.0;
  for (std::size_t b = 0; b < kBranchCount; ++b) {
    const auto psi = state.momentum(b);
    const auto bra = assoc.momentum(b);
    for (std::size_t j = 0; j < g.size(); ++j) acc += omega(g.k(j)) * std::conj(bra[j]) * psi[j];
  }
  acc *= ctx.hbar * g.delta_k();
  if (std::abs(acc.imag()) > 1e-8 * std::max(1.0, std::abs(acc.real()))) {
    throw InvalidExpectationError("energy expectation is not real for this mixed-provenance state");
  }
  return acc.real();
}

}  // namespace

double energy_expectation(const SingleExcitationState& state, const FieldContext& ctx) {
  return quadratic_expectation(state, ctx, [&](double k) { return ctx.c * std::abs(k); });
}

double hamiltonian_expectation(const SingleExcitationState& state, const FieldContext& ctx) {
  return quadratic_expectation(state, ctx, [&](double k) { return ctx.c * k; });
}

}  // namespace bifield
