#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bifield/biortho.hpp"
#include "bifield/errors.hpp"
#include "bifield/harness.hpp"
#include "bifield/transforms.hpp"

namespace bifield::harness {

namespace {

namespace bo = bifield::biortho;

class Suite {
 public:
  Suite(const ScenarioConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), grid_(make_grid(cfg.n_modes, cfg.delta_k)), rng_(seed) {}

  std::vector<Check> run() {
    biortho_checks();
    grid_checks();
    fock_checks();
    operator_checks();
    dynamics_checks();
    return std::move(checks_);
  }

 private:
  const ScenarioConfig& cfg_;
  GridPtr grid_;
  std::mt19937_64 rng_;
  std::vector<Check> checks_;

  const Grid& g() const { return *grid_; }
  std::size_t n() const { return grid_->size(); }

  void add(std::string id, std::string desc, std::string anchor, double err, double tol) {
    checks_.push_back(make_check(std::move(id), std::move(desc), std::move(anchor), err, tol));
  }

  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  cplx cgauss() { return {gauss(), gauss()}; }
  std::size_t index(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
  }

  CVector random_vector() {
    CVector v(n());
    for (auto& z : v) z = cgauss();
    return v;
  }

  bo::Matrix random_matrix(Eigen::Index dim) {
    bo::Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = cgauss();
    return m;
  }

  // well conditioned: identity plus a modest perturbation
  bo::Matrix random_basis(Eigen::Index dim) {
    return bo::Matrix::Identity(dim, dim) + 0.3 * random_matrix(dim);
  }

  SingleExcitationState random_state(const BasisTag& tag, cplx vacuum = 0.0) {
    BranchAmplitudes amps;
    for (auto& b : amps) b = random_vector();
    return make_state(grid_, tag, std::move(amps), vacuum);
  }

  // Gaussian packet decayed at the domain edges, shifted left so that a
  // translation of `steps` lattice points keeps it inside.
  SingleExcitationState packet(const BasisTag& tag, ModeLabel label, long steps) {
    const double center = g().length() / 2.0 - 0.5 * static_cast<double>(steps) * label.s() * g().delta_x();
    return make_state(grid_, tag, label, gaussian_profile(g(), center, g().length() / 40.0));
  }

  static std::vector<WeightFunction> named_weights() {
    return {WeightFunction::unit(), WeightFunction::sqrt_abs_k(), WeightFunction::inv_sqrt_abs_k()};
  }

  static double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (auto z : v) m = std::max(m, std::abs(z));
    return m;
  }

  void biortho_checks() {
    double dual_err = 0.0, ident_err = 0.0, ph_err = 0.0, overlap_err = 0.0, expm_err = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Index dim = 2 + static_cast<Eigen::Index>(trial % 7);
      const bo::FiniteBasis A(random_basis(dim));
      const bo::DualBasis B = bo::dual_basis(A);
      const bo::Matrix gram = B.vectors().adjoint() * A.vectors();
      dual_err = std::max(dual_err, (gram - bo::Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff());
      ident_err = std::max(ident_err, (bo::identity_resolution(A, B) - bo::Matrix::Identity(dim, dim))
                                          .cwiseAbs()
                                          .maxCoeff());

      bo::Matrix D = bo::Matrix::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) D(i, i) = static_cast<double>(i) + 0.5 * gauss();
      const bo::Matrix H = A.vectors() * D * A.vectors().inverse();
      const bo::MetricOperator eta = bo::metric_from_dual(B);
      ph_err = std::max(ph_err, bo::is_pseudo_hermitian(H, eta, 1.0).residual / H.norm());

      const bo::Vector psi = A.vectors() * random_matrix(dim).col(0);
      const bo::Vector tilde = eta.matrix() * psi;
      const cplx start = tilde.dot(psi);
      for (double t : {0.5, 3.0, 10.0}) {
        const auto ev = bo::evolve_pair(psi, tilde, H, t);
        overlap_err = std::max(overlap_err, std::abs(ev.psi_tilde.dot(ev.psi) - start) / std::abs(start));
      }
      const bo::Matrix X = cplx(0.0, -0.7) * H;
      const bo::Matrix P = bo::expm(X, bo::ExpMethod::Pade);
      const bo::Matrix E = bo::expm(X, bo::ExpMethod::Eigendecomposition);
      expm_err = std::max(expm_err, (P - E).norm() / P.norm());
    }
    const std::string dual_anchor = "dual basis construction";
    add("biortho.dual_basis", "<beta_i|alpha_j> = delta_ij on random bases", dual_anchor, dual_err, 1e-10);
    add("biortho.identity_resolution", "sum |alpha_n><beta_n| = identity", "identity resolution of the dual pair",
        ident_err, 1e-10);
    add("biortho.pseudo_hermitian", "H = A D A^-1 is pseudo-Hermitian for its eigenbasis metric (relative residual)",
        "pseudo-Hermiticity condition", ph_err, 1e-10);
    add("biortho.eta_overlap_conservation", "<psi~(t)|psi(t)> constant under paired evolution, t up to 10",
        "paired evolution under H and its adjoint", overlap_err, 1e-9);
    add("biortho.expm_crosscheck", "Pade and eigendecomposition exponentials agree",
        "paired evolution under H and its adjoint", expm_err, 1e-10);
  }

  void grid_checks() {
    double round = 0.0, fast = 0.0, dual = 0.0;
    for (const auto& w : named_weights()) {
      for (int s : {1, -1}) {
        const CVector psi = random_vector();
        const CVector phi = to_position(psi, w, s, g());
        const CVector back = to_momentum(phi, w, s, g());
        const CVector phi_fast = to_position(psi, w, s, g(), TransformMethod::Fast);
        const CVector back_fast = to_momentum(phi, w, s, g(), TransformMethod::Fast);
        CVector scaled = psi;
        for (std::size_t j = 0; j < n(); ++j) scaled[j] /= w(g().k(j)) * w(g().k(j));
        const CVector phi_dual = to_position(scaled, w.reciprocal(), s, g());
        const double sp = max_abs(psi), sx = max_abs(phi);
        for (std::size_t i = 0; i < n(); ++i) {
          round = std::max(round, std::abs(back[i] - psi[i]) / sp);
          fast = std::max({fast, std::abs(phi_fast[i] - phi[i]) / sx, std::abs(back_fast[i] - back[i]) / sp});
          dual = std::max(dual, std::abs(phi_dual[i] - phi[i]) / sx);
        }
      }
    }
    const CVector psi = random_vector();
    const CVector phi = to_position(psi, WeightFunction::unit(), 1, g());
    double ek = 0.0, ex = 0.0;
    for (std::size_t i = 0; i < n(); ++i) {
      ek += g().delta_k() * std::norm(psi[i]);
      ex += g().delta_x() * std::norm(phi[i]);
    }
    const std::string anchor = "position amplitudes through a Fourier weight";
    add("grid.roundtrip", "momentum -> position -> momentum reproduces the input, all weights and s", anchor, round, 1e-12);
    add("grid.fast_transform", "FFT path agrees with direct summation", anchor, fast, 1e-12);
    add("grid.weight_duality", "to_position(psi, w) = to_position(psi / w^2, 1/w)", anchor, dual, 1e-12);
    add("grid.parseval", "sum dx |phi|^2 = sum dk |psi|^2 under the unit weight", anchor, std::abs(ek - ex) / ek, 1e-10);
  }

  void fock_checks() {
    const ModeLabel label(1, 1);
    std::vector<std::size_t> sample;
    for (std::size_t i = 0; i < std::min<std::size_t>(n(), 6); ++i) sample.push_back(index(n()));
    sample.push_back(0);
    sample.push_back(n() - 1);

    auto family_error = [&](auto make, double delta) {
      double err = 0.0;
      for (auto a : sample) {
        for (auto b : sample) {
          const cplx v = bio_inner(make(a), make(b)) * delta;
          err = std::max(err, std::abs(v - (a == b ? 1.0 : 0.0)));
        }
      }
      return err;
    };
    const std::string anchor = "generalised inner product orthonormality";
    add("fock.orthonormal_photon", "photon modes are orthonormal under the generalised product", anchor,
        family_error([&](std::size_t j) { return photon_mode(grid_, label, j); }, g().delta_k()), 1e-10);
    add("fock.orthonormal_local", "local deltas are orthonormal under the generalised product", anchor,
        family_error([&](std::size_t m) { return position_delta(grid_, BasisTag::local(), label, m); },
                     g().delta_x()),
        1e-10);
    add("fock.orthonormal_bio_local", "bio-local deltas are orthonormal under the generalised product", anchor,
        family_error([&](std::size_t m) { return position_delta(grid_, BasisTag::bio_local(), label, m); },
                     g().delta_x()),
        1e-10);

    double factor = 0.0;
    for (std::size_t j = 0; j < n(); ++j) {
      const auto mode = photon_mode(grid_, label, j);
      const double expected = std::abs(g().k(j));
      factor = std::max(factor, std::abs(eta_inv_inner(mode, mode) * g().delta_k() - expected) / expected);
    }
    add("fock.eta_inverse_photon", "eta^-1 product of photon modes carries the factor |k|",
        "eta-inverse inner product on photon modes", factor, 1e-12);

    double round = 0.0, invol = 0.0;
    for (const BasisTag& tag : {BasisTag::photon(), BasisTag::local(), BasisTag::bio_local(), BasisTag::blip()}) {
      const auto st = random_state(tag);
      double scale = 0.0;
      for (std::size_t b = 0; b < kBranchCount; ++b) scale = std::max(scale, max_abs(st.momentum(b)));
      round = std::max(round, max_abs_difference(eta_inv_apply(eta_apply(st)), st) / scale);
      invol = std::max(invol, max_abs_difference(bio_associate(bio_associate(st)), st) / scale);
    }
    add("fock.eta_roundtrip", "eta^-1 eta acts as the identity on single excitations",
        "eta and eta-inverse as mutual inverses", round, 1e-12);
    add("fock.s_involution", "the S map is its own inverse", "S map involution", invol, 1e-12);
  }

  void operator_checks() {
    const double inv_dx = 1.0 / g().delta_x();
    const std::size_t zero = n() / 2;
    auto delta_error = [&](const WeightFunction& a, const WeightFunction& b) {
      double err = 0.0;
      for (int s : {1, -1}) {
        const auto K = commutator_kernel(a, b, s, g());
        for (std::size_t i = 0; i < K.size(); ++i) {
          err = std::max(err, std::abs(K[i].value - (i == zero ? inv_dx : 0.0)) / inv_dx);
        }
      }
      return err;
    };
    const std::string kernel_anchor = "commutators of local, bio-local and blip operators";
    add("operators.kernel_local_bio_local", "[A^bio(x), A^dagger(x')] is a discrete delta", kernel_anchor,
        delta_error(WeightFunction::sqrt_abs_k(), WeightFunction::inv_sqrt_abs_k()), 1e-10);
    add("operators.kernel_blip", "[a(x), a^dagger(x')] is a discrete delta", kernel_anchor,
        delta_error(WeightFunction::unit(), WeightFunction::unit()), 1e-10);

    {
      // lattice closed form of (dk/2pi) sum |k_j| e^{i s k_j d dx}
      const auto K = commutator_kernel(WeightFunction::sqrt_abs_k(), WeightFunction::sqrt_abs_k(), 1, g());
      const double dk = g().delta_k();
      const double nn = static_cast<double>(n());
      double err = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < K.size(); ++i) {
        const long d = static_cast<long>(i) - static_cast<long>(zero);
        double expected = 0.0;
        if (d == 0) {
          expected = dk * dk * nn * nn / (8.0 * std::numbers::pi);
        } else if (d % 2 != 0) {
          const double a = std::numbers::pi * static_cast<double>(d) / nn;
          expected = -dk * dk / (2.0 * std::numbers::pi) * std::cos(a) / (std::sin(a) * std::sin(a));
        }
        scale = std::max(scale, std::abs(expected));
        err = std::max(err, std::abs(K[i].value - expected));
      }
      add("operators.kernel_local_local", "[A(x), A^dagger(x')] matches the lattice closed form (relative to peak)",
          "non-local commutator of the local operators", err / scale, 1e-10);
      add("operators.kernel_local_local_offsite",
          "nearest-neighbour [A, A^dagger] exceeds 1e-3 / dx (reported as 1e-3 / (|K(dx)| dx))",
          "non-local commutator of the local operators", 1e-3 * inv_dx / std::abs(K[zero + 1].value), 1.0);
    }

    const ModeLabel label(1, 1);
    {
      double err = 0.0;
      for (std::size_t j : {std::size_t{0}, index(n()), n() - 1}) {
        const cplx v = commutator(mode_annihilation(grid_, label, j), mode_creation(grid_, label, j));
        err = std::max(err, std::abs(v * g().delta_k() - 1.0));
      }
      add("operators.mode_commutator", "[a(k), a^dagger(k)] = 1/dk", "bosonic mode commutator", err, 1e-12);
    }
    {
      double err = 0.0;
      for (int i = 0; i < 4; ++i) {
        const std::size_t m = index(n());
        for (std::size_t mp = 0; mp < n(); mp += std::max<std::size_t>(1, n() / 32)) {
          const cplx lhs = commutator(bio_local_annihilation(grid_, label, m),
                                      positional_creation(grid_, WeightFunction::sqrt_abs_k(), label, mp));
          const cplx rhs = commutator(blip_annihilation(grid_, label, m),
                                      positional_creation(grid_, WeightFunction::unit(), label, mp));
          err = std::max(err, std::abs(lhs - rhs) * g().delta_x());
        }
      }
      add("operators.local_blip_correspondence", "[A^bio(x), A^dagger(x')] = [a(x), a^dagger(x')]",
          "one-to-one correspondence of blips and local modes", err, 1e-10);
    }
    {
      const std::size_t m = index(n());
      const auto op = local_annihilation(grid_, label, m) + positional_creation(grid_, WeightFunction::inv_sqrt_abs_k(), label, m);
      const double inv = max_abs_difference(bio_conjugate(bio_conjugate(op)), op);
      const auto blip = blip_annihilation(grid_, label, m) + mode_creation(grid_, label, index(n()));
      const double radj = max_abs_difference(apply_R(blip).adjoint(), apply_R(blip.adjoint()));
      add("operators.bio_conjugate_involution", "bio-conjugation is an involution", "reciprocal Fourier weight", inv, 1e-12);
      add("operators.R_adjoint", "R commutes with the adjoint", "R superoperator", radj, 1e-12);
    }
    {
      double err = 0.0;
      const std::size_t m = index(n());
      for (const auto& f : {electric_field_at(grid_, m, cfg_.context), magnetic_field_at(grid_, m, cfg_.context)}) {
        for (const auto& c : f.components) err = std::max(err, max_abs_difference(c, c.adjoint()));
      }
      add("operators.field_hermitian", "E(x) and B(x) equal their adjoints", "field observables from local operators", err, 1e-12);
    }
    {
      const std::size_t m0 = index(n());
      const CVector prof = blip_field_profile(grid_, m0, label, cfg_.context);
      std::size_t peak = 0;
      for (std::size_t m = 0; m < n(); ++m) {
        if (std::abs(prof[m]) > std::abs(prof[peak])) peak = m;
      }
      add("operators.blip_field_peak", "the field of a blip peaks at the blip position (index distance)",
          "field smeared around a blip", static_cast<double>(peak > m0 ? peak - m0 : m0 - peak), 0.0);
    }
    {
      const FieldContext& ctx = cfg_.context;
      const std::size_t j = n() / 2 - 3;  // k = -2.5 dk
      const auto mode = normalized(photon_mode(grid_, label, j));
      const double hk = ctx.hbar * ctx.c * std::abs(g().k(j));
      const double err = std::max(std::abs(hamiltonian_expectation(mode, ctx) + hk),
                                  std::abs(energy_expectation(mode, ctx) - hk)) / hk;
      add("operators.energy_negative_mode", "negative mode: <H> = -hbar c |k>, <H_eng> = +hbar c |k|",
          "positive energy observable versus dynamical Hamiltonian", err, 1e-12);

      CVector amps = random_vector();
      for (std::size_t i = 0; i < n() / 2; ++i) amps[i] = 0.0;
      const auto pos = normalized(make_state(grid_, BasisTag::photon(), label, amps));
      const double e = energy_expectation(pos, ctx);
      add("operators.energy_positive_support", "<H> = <H_eng> on positive-frequency states",
          "positive energy observable versus dynamical Hamiltonian", std::abs(e - hamiltonian_expectation(pos, ctx)) / e, 1e-10);
    }
    {
      const FieldContext& ctx = cfg_.context;
      const std::size_t j = n() / 2 + 2;
      const double a0 = 0.7;
      BranchAmplitudes alpha;
      alpha[label.index()] = CVector(n(), 0.0);
      alpha[label.index()][j] = a0 / g().delta_k();
      const double k = g().k(j);
      const double amp = 2.0 * ctx.field_prefactor() / std::sqrt(2.0 * std::numbers::pi) * std::sqrt(std::abs(k)) * a0;
      double err = 0.0;
      for (int i = 0; i < 8; ++i) {
        const double x = g().length() * gauss(), t = 3.0 * gauss();
        const auto f = coherent_field_expectation(g(), alpha, x, t, ctx);
        err = std::max(err, std::abs(f.electric[1] - amp * std::cos(k * (x - ctx.c * t))) / amp);
      }
      add("operators.coherent_cosine", "single-mode coherent field is the closed-form cosine",
          "coherent states oscillate like classical waves", err, 1e-12);
    }
  }

  void dynamics_checks() {
    const HamiltonianSpec spec{cfg_.context.c, Dispersion::Signed, std::nullopt};
    const ModeLabel label(1, 1);
    {
      double unit = 0.0, group = 0.0;
      for (const BasisTag& tag : {BasisTag::photon(), BasisTag::local(), BasisTag::bio_local(), BasisTag::blip()}) {
        const auto a = random_state(tag), b = random_state(tag);
        const auto side = required_side(a).value_or(EvolutionSide::UnderH);
        const double t1 = 1.3, t2 = -0.4;
        const cplx before = bio_inner(a, b);
        const cplx after = bio_inner(evolve_state(a, t1, side, spec), evolve_state(b, t1, side, spec));
        unit = std::max(unit, std::abs(after - before) / std::abs(before));
        const auto two = evolve_state(evolve_state(a, t1, side, spec), t2, side, spec);
        double scale = 0.0;
        for (std::size_t br = 0; br < kBranchCount; ++br) scale = std::max(scale, max_abs(a.momentum(br)));
        group = std::max(group, max_abs_difference(two, evolve_state(a, t1 + t2, side, spec)) / scale);
      }
      add("dynamics.unitarity", "generalised product preserved by tag-consistent evolution",
          "bio-Hermitian evolution", unit, 1e-12);
      add("dynamics.group_law", "evolve(evolve(psi, t1), t2) = evolve(psi, t1 + t2)", "bio-Hermitian evolution", group, 1e-12);
    }
    {
      double apply_err = 0.0, kernel_err = 0.0;
      for (const auto& w : {WeightFunction::unit(), WeightFunction::sqrt_abs_k(), WeightFunction::inv_sqrt_abs_k()}) {
        const auto st = random_state(BasisTag::positional(w));
        const auto lhs = apply_H_position(st, cfg_.context);
        const auto rhs = apply_H_momentum(st, cfg_.context);
        double scale = 0.0;
        for (std::size_t b = 0; b < kBranchCount; ++b) scale = std::max(scale, max_abs(rhs.momentum(b)));
        apply_err = std::max(apply_err, max_abs_difference(lhs, rhs) / scale);
        const ComplexMatrix G = position_kernel(g(), 1);
        kernel_err = std::max(kernel_err, (position_kernel(g(), 1, w) - G).cwiseAbs().maxCoeff() / G.cwiseAbs().maxCoeff());
      }
      const std::string anchor = "position-space Hamiltonian kernel";
      add("dynamics.position_hamiltonian", "position-kernel H equals diagonal k application, all named weights", anchor, apply_err, 1e-10);
      add("dynamics.position_kernel_weight_independence", "the position kernel does not depend on the weight", anchor, kernel_err, 1e-12);
    }
    {
      const long steps = static_cast<long>(n() / 8);
      const double t = static_cast<double>(steps) * g().delta_x() / spec.c;
      double err = 0.0;
      for (const BasisTag& tag : {BasisTag::blip(), BasisTag::local(), BasisTag::bio_local()}) {
        for (int s : {1, -1}) {
          const auto res = dispersion_free_check(packet(tag, ModeLabel(s, 1), steps), t, spec);
          err = std::max(err, res.max_error / res.scale);
        }
      }
      add("dynamics.dispersion_free", "single-sided packets translate rigidly by s c t, all named weights",
          "propagation at the speed of light", err, 1e-10);
    }
    {
      double err = 0.0, imag = 0.0;
      for (int trial = 0; trial < 10; ++trial) {
        const auto st = random_state(BasisTag::photon(), cgauss());
        const std::size_t m = index(n());
        LadderOperator op(grid_);
        for (const ModeLabel l : all_branches()) {
          const auto a = local_annihilation(grid_, l, m);
          op = op + a + a.adjoint();
        }
        const auto pair = expectation_consistency(op, st, 2.0 * gauss(), spec);
        const double scale = std::max(1.0, std::abs(pair.schrodinger));
        err = std::max(err, std::abs(pair.schrodinger - pair.heisenberg) / scale);
        imag = std::max({imag, std::abs(pair.schrodinger.imag()) / scale, std::abs(pair.heisenberg.imag()) / scale});
      }
      add("dynamics.expectation_consistency", "Schrodinger and Heisenberg values agree for photonic states",
          "validity of mixed-side expectation values", err, 1e-10);
      add("dynamics.expectation_real", "expectation of A(x) + A^dagger(x) is real for photonic states",
          "validity of mixed-side expectation values", imag, 1e-12);
    }
    {
      const std::size_t j = g().mode_index(2.0);
      HamiltonianSpec cs = spec;
      cs.bogoliubov = BogoliubovBlock{1.0, 0.0, {j}, 0.4};
      const double zero = bogoliubov_counterexample(grid_, cs, label, 0).norm;
      cs.bogoliubov = BogoliubovBlock{std::cosh(1.0), std::sinh(1.0), {j}, 0.4};
      const auto res = bogoliubov_counterexample(grid_, cs, label, index(n()));
      add("dynamics.counterexample_zero", "no mixing gives no discrepancy", "Bogoliubov counterexample", zero, 1e-12);
      add("dynamics.counterexample_closed_form", "discrepancy matches b2 |sqrt|k| - 1/sqrt|k|| (relative)",
          "Bogoliubov counterexample", std::abs(res.norm - res.closed_form) / res.closed_form, 1e-12);
    }
    {
      const FieldContext& ctx = cfg_.context;
      BranchAmplitudes alpha;
      const auto st = packet(BasisTag::local(), label, 0);
      alpha[label.index()].assign(st.momentum(label).begin(), st.momentum(label).end());
      const double steps = static_cast<double>(n() / 8);
      const double t = steps * g().delta_x() / ctx.c;
      double err = 0.0, scale = 0.0;
      for (std::size_t m = 0; m < n(); m += std::max<std::size_t>(1, n() / 64)) {
        const double x = g().x(m);
        const auto now = coherent_field_expectation(g(), alpha, x, t, ctx);
        const auto then = coherent_field_expectation(g(), alpha, x - ctx.c * t, 0.0, ctx);
        scale = std::max(scale, std::abs(then.electric[1]));
        err = std::max(err, std::abs(now.electric[1] - then.electric[1]));
      }
      add("dynamics.coherent_transport", "coherent field at (x, t) equals the field at (x - c t, 0)",
          "field evolves as predicted by Maxwell's equations", err / scale, 1e-10);
    }
  }
};

}  // namespace

VerificationReport run_verify_suite(const ScenarioConfig& config, std::uint64_t seed) {
  VerificationReport report;
  report.n_modes = config.n_modes;
  report.delta_k = config.delta_k;
  report.seed = seed;
  report.checks = Suite(config, seed).run();
  return report;
}

}  // namespace bifield::harness
