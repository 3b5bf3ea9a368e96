#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bifield/errors.hpp"
#include "bifield/grid.hpp"
#include "bifield/transforms.hpp"
#include "bifield/weight.hpp"
#include "oracles.hpp"

using namespace bifield;
using oracle::kPi;

TEST_CASE("make_grid lays out the half-integer wavenumber lattice") {
  const auto g = make_grid(4, 1.0);
  CHECK(g->size() == 4);
  const double expected[] = {-1.5, -0.5, 0.5, 1.5};
  for (std::size_t j = 0; j < 4; ++j) CHECK(g->k(j) == expected[j]);
  CHECK(g->delta_x() == doctest::Approx(kPi / 2).epsilon(1e-15));

  const auto h = make_grid(2, 0.5);
  CHECK(h->k(0) == -0.25);
  CHECK(h->k(1) == 0.25);
}

TEST_CASE("make_grid rejects bad sizes and spacings") {
  CHECK_THROWS_AS(make_grid(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, std::nan("")), std::invalid_argument);
}

TEST_CASE("grid invariants hold on random grids") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const long n = gen.even(2, 600);
    const double dk = std::exp(gen.uniform(-4.0, 3.0));
    const Grid g(n, dk);
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(g.k(j) != 0.0);
      CHECK(g.k(g.size() - 1 - j) == -g.k(j));
    }
    CHECK(g.delta_x() * g.delta_k() * static_cast<double>(n) ==
          doctest::Approx(2 * kPi).epsilon(1e-15));
    const auto x = oracle::positions(n, dk);
    for (std::size_t m = 0; m < g.size(); ++m) CHECK(g.x(m) == doctest::Approx(x[m]).epsilon(1e-14));
  }
}

TEST_CASE("plane_wave agrees with floating-point exponentials") {
  const Grid g(64, 0.37);
  double worst = 0.0;
  for (int s : {1, -1})
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t m = 0; m < g.size(); ++m)
        worst = std::max(worst, std::abs(g.plane_wave(s, j, m) - std::exp(oracle::cplx(0, s * g.k(j) * g.x(m)))));
  CHECK(worst < 1e-12);
  CHECK(std::abs(g.plane_wave_at(1, 5, g.x(7)) - g.plane_wave(1, 5, 7)) < 1e-13);
}

TEST_CASE("nearest_index, on_grid and mode_index") {
  const Grid g(8, 1.0);
  const double dx = g.delta_x();
  CHECK(g.nearest_index(3 * dx) == 3);
  CHECK(g.nearest_index(3.4 * dx) == 3);
  CHECK(g.nearest_index(-dx) == 7);
  CHECK(g.nearest_index(9 * dx) == 1);
  CHECK(g.on_grid(5 * dx));
  CHECK_FALSE(g.on_grid(5.5 * dx));
  CHECK(g.mode_index(0.5) == 4);
  CHECK(g.mode_index(-3.5) == 0);
  CHECK(g.mode_index(100.0) == 7);
}

TEST_CASE("field context derives mu0 and the field prefactor") {
  FieldContext ctx{1.3, 2.0, 0.7, 4.0};
  CHECK(ctx.mu0() * ctx.epsilon * ctx.c * ctx.c == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ctx.field_prefactor() == doctest::Approx(std::sqrt(1.3 * 2.0 / (2 * 0.7 * 4.0))));
  ctx.c = 0.0;
  CHECK_THROWS_AS(ctx.validate(), std::invalid_argument);
  CHECK_THROWS_AS(check_direction(0), std::invalid_argument);
}

TEST_CASE("weight evaluation") {
  CHECK(WeightFunction::sqrt_abs_k()(-4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(WeightFunction::inv_sqrt_abs_k()(0.25) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(WeightFunction::unit()(17.3) == 1.0);
  CHECK(WeightFunction::unit()(0.0) == 1.0);
  CHECK_THROWS_AS(WeightFunction::inv_sqrt_abs_k()(0.0), DegenerateModeError);
  CHECK_THROWS_AS(WeightFunction::sqrt_abs_k()(0.0), DegenerateModeError);
  CHECK(WeightFunction::unit().kind() == WeightKind::Unit);
  CHECK(WeightFunction::sqrt_abs_k().kind() == WeightKind::SqrtAbsK);
  CHECK(WeightFunction::inv_sqrt_abs_k().kind() == WeightKind::InvSqrtAbsK);
  CHECK(WeightFunction::abs_power(1.0).kind() == WeightKind::Custom);
}

TEST_CASE("custom weights must stay finite and positive") {
  const auto w = WeightFunction::custom("1+k^2", [](double k) { return 1.0 + k * k; });
  CHECK(w(2.0) == 5.0);
  CHECK(w.reciprocal()(2.0) == doctest::Approx(0.2));
  CHECK(w.reciprocal().reciprocal() == w);
  const auto bad = WeightFunction::custom("sign", [](double k) { return k; });
  CHECK_THROWS_AS(bad(-1.0), DegenerateModeError);
  CHECK_THROWS_AS(WeightFunction::custom("none", {}), std::invalid_argument);
}

TEST_CASE("reciprocal is an involution and products add exponents") {
  oracle::Gen gen(5);
  const auto named = {WeightFunction::unit(), WeightFunction::sqrt_abs_k(), WeightFunction::inv_sqrt_abs_k()};
  for (const auto& w : named) {
    CHECK(w.reciprocal().reciprocal() == w);
    for (int i = 0; i < 20; ++i) {
      const double k = gen.uniform(-50, 50);
      CHECK(w.reciprocal().reciprocal()(k) == w(k));
      CHECK(w(k) * w.reciprocal()(k) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  CHECK(WeightFunction::sqrt_abs_k().reciprocal() == WeightFunction::inv_sqrt_abs_k());
  CHECK(WeightFunction::sqrt_abs_k() * WeightFunction::inv_sqrt_abs_k() == WeightFunction::unit());
  CHECK((WeightFunction::sqrt_abs_k() * WeightFunction::sqrt_abs_k()).exponent() == 1.0);
  CHECK(WeightFunction::unit().self_reciprocal());
  CHECK_FALSE(WeightFunction::sqrt_abs_k().self_reciprocal());
  CHECK(WeightFunction::sqrt_abs_k().orientation() == 1);
  CHECK(WeightFunction::inv_sqrt_abs_k().orientation() == -1);
  CHECK(WeightFunction::unit().orientation() == 0);
}

TEST_CASE("weight names") {
  CHECK(weight_from_name("blip") == WeightFunction::unit());
  CHECK(weight_from_name("unit") == WeightFunction::unit());
  CHECK(weight_from_name("local") == WeightFunction::sqrt_abs_k());
  CHECK(weight_from_name("sqrt_abs_k") == WeightFunction::sqrt_abs_k());
  CHECK(weight_from_name("bio_local") == WeightFunction::inv_sqrt_abs_k());
  CHECK(weight_from_name("inv_sqrt_abs_k") == WeightFunction::inv_sqrt_abs_k());
  CHECK_THROWS(weight_from_name("cubic"));
}

TEST_CASE("to_position of a weighted plane-wave packet is a unit spike") {
  const Grid g(32, 0.4);
  const std::size_t m0 = 9;
  for (const auto& w : {WeightFunction::unit(), WeightFunction::sqrt_abs_k(), WeightFunction::inv_sqrt_abs_k()}) {
    for (int s : {1, -1}) {
      CVector psi(g.size());
      for (std::size_t j = 0; j < g.size(); ++j) {
        psi[j] = w(g.k(j)) * g.delta_x() / std::sqrt(2 * kPi) * std::exp(oracle::cplx(0, -s * g.k(j) * g.x(m0)));
      }
      const CVector phi = to_position(psi, w, s, g);
      for (std::size_t m = 0; m < g.size(); ++m) CHECK(std::abs(phi[m] - (m == m0 ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("to_position of zero and of a single mode") {
  const Grid g(16, 0.5);
  const CVector zero(g.size(), 0.0);
  for (auto v : to_position(zero, WeightFunction::sqrt_abs_k(), 1, g)) CHECK(v == oracle::cplx(0.0));
  for (auto v : to_momentum(zero, WeightFunction::sqrt_abs_k(), -1, g)) CHECK(v == oracle::cplx(0.0));

  const std::size_t j0 = 11;
  CVector psi(g.size(), 0.0);
  psi[j0] = 1.0 / g.delta_k();
  for (int s : {1, -1}) {
    const CVector phi = to_position(psi, WeightFunction::unit(), s, g);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const auto expected = std::exp(oracle::cplx(0, s * g.k(j0) * g.x(m))) / std::sqrt(2 * kPi);
      CHECK(std::abs(phi[m] - expected) < 1e-13);
    }
  }
}

TEST_CASE("transforms match the naive summation oracle") {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 12; ++trial) {
    const long n = gen.even(2, 80);
    const double dk = gen.uniform(0.05, 3.0);
    const Grid g(n, dk);
    const int s = gen.sign();
    const double p = std::vector<double>{0.0, 0.5, -0.5, 1.3}[static_cast<std::size_t>(trial % 4)];
    const auto w = WeightFunction::abs_power(p);
    const auto wf = [p](double k) { return std::pow(std::abs(k), p); };
    const CVector psi = gen.cvector(g.size());
    const CVector phi = to_position(psi, w, s, g);
    const CVector ref = oracle::naive_to_position(psi, wf, s, n, dk);
    CHECK(oracle::max_abs_diff(phi, ref) <= 1e-11 * oracle::max_abs(ref));
    const CVector back = to_momentum(ref, w, s, g);
    const CVector ref_back = oracle::naive_to_momentum(ref, wf, s, n, dk);
    CHECK(oracle::max_abs_diff(back, ref_back) <= 1e-11 * oracle::max_abs(ref_back));
  }
}

TEST_CASE("Gaussian profile transforms to the analytic Gaussian") {
  const Grid g(256, 0.1);
  const double center = g.length() / 2, sigma = g.length() / 30;
  CVector phi(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) phi[m] = std::exp(-0.5 * std::pow((g.x(m) - center) / sigma, 2));
  for (int s : {1, -1}) {
    const CVector psi = to_momentum(phi, WeightFunction::sqrt_abs_k(), s, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto expected = std::sqrt(std::abs(g.k(j))) * oracle::gaussian_transform(g.k(j), s, center, sigma);
      CHECK(std::abs(psi[j] - expected) < 1e-12);
    }
  }
}

TEST_CASE("round trip, Parseval and weight duality on random grids") {
  oracle::Gen gen(99);
  for (int trial = 0; trial < 30; ++trial) {
    const Grid g(gen.even(2, 300), gen.uniform(0.01, 5.0));
    const int s = gen.sign();
    const CVector psi = gen.cvector(g.size());
    for (const auto& w : {WeightFunction::unit(), WeightFunction::sqrt_abs_k(), WeightFunction::inv_sqrt_abs_k(),
                          WeightFunction::custom("c", [](double k) { return 2.0 + std::sin(k); })}) {
      const CVector back = to_momentum(to_position(psi, w, s, g), w, s, g);
      CHECK(oracle::max_abs_diff(back, psi) <= 1e-12 * oracle::max_abs(psi));

      CVector scaled = psi;
      for (std::size_t j = 0; j < g.size(); ++j) scaled[j] /= w(g.k(j)) * w(g.k(j));
      const CVector a = to_position(psi, w, s, g);
      const CVector b = to_position(scaled, w.reciprocal(), s, g);
      CHECK(oracle::max_abs_diff(a, b) <= 1e-12 * oracle::max_abs(a));
    }
    const CVector phi = to_position(psi, WeightFunction::unit(), s, g);
    double ek = 0, ex = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      ek += g.delta_k() * std::norm(psi[i]);
      ex += g.delta_x() * std::norm(phi[i]);
    }
    CHECK(std::abs(ek - ex) <= 1e-10 * ek);
  }
}

TEST_CASE("fast transforms agree with direct summation") {
  oracle::Gen gen(3);
  for (long n : {2L, 4L, 6L, 30L, 64L, 250L, 1024L}) {
    const Grid g(n, gen.uniform(0.1, 2.0));
    for (int s : {1, -1}) {
      for (const auto& w : {WeightFunction::unit(), WeightFunction::sqrt_abs_k(), WeightFunction::inv_sqrt_abs_k()}) {
        const CVector psi = gen.cvector(g.size());
        const CVector direct = to_position(psi, w, s, g);
        const CVector fast = to_position(psi, w, s, g, TransformMethod::Fast);
        CHECK(oracle::max_abs_diff(direct, fast) <= 1e-12 * oracle::max_abs(direct));
        const CVector dm = to_momentum(direct, w, s, g);
        const CVector fm = to_momentum(direct, w, s, g, TransformMethod::Fast);
        CHECK(oracle::max_abs_diff(dm, fm) <= 1e-12 * oracle::max_abs(dm));
      }
    }
  }
}

TEST_CASE("transforms reject length mismatches") {
  const Grid g(8, 1.0);
  const CVector wrong(7, 0.0);
  CHECK_THROWS_AS(to_position(wrong, WeightFunction::unit(), 1, g), std::invalid_argument);
  CHECK_THROWS_AS(to_momentum(wrong, WeightFunction::unit(), 1, g), std::invalid_argument);
  CHECK_THROWS_AS(to_position(CVector(8), WeightFunction::unit(), 2, g), std::invalid_argument);
}

TEST_CASE("the position domain is antiperiodic") {
  const Grid g(16, 0.5);
  oracle::Gen gen(1);
  const CVector psi = gen.cvector(g.size());
  for (int s : {1, -1}) {
    const CVector phi = to_position(psi, WeightFunction::sqrt_abs_k(), s, g);
    // band-limited evaluation one period away flips sign
    for (std::size_t m = 0; m < g.size(); ++m) {
      const auto shifted = position_amplitude_at(psi, WeightFunction::sqrt_abs_k(), s, g, g.x(m) + g.length());
      CHECK(std::abs(shifted + phi[m]) < 1e-11 * oracle::max_abs(phi));
      const auto at = position_amplitude_at(psi, WeightFunction::sqrt_abs_k(), s, g, g.x(m));
      CHECK(std::abs(at - phi[m]) < 1e-11 * oracle::max_abs(phi));
    }
    const CVector rotated = shift_on_lattice(phi, 3);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const auto expected = position_amplitude_at(psi, WeightFunction::sqrt_abs_k(), s, g, g.x(m) - 3 * g.delta_x());
      CHECK(std::abs(rotated[m] - expected) < 1e-11 * oracle::max_abs(phi));
    }
  }
  const CVector v{1.0, 2.0, 3.0, 4.0};
  const CVector r = shift_on_lattice(v, 1);
  CHECK(r[0] == oracle::cplx(-4.0));
  CHECK(r[1] == oracle::cplx(1.0));
  CHECK(shift_on_lattice(v, 4)[2] == oracle::cplx(-3.0));
  CHECK(shift_on_lattice(v, 8)[2] == oracle::cplx(3.0));
  CHECK(shift_on_lattice(v, -1)[3] == oracle::cplx(-1.0));
}
