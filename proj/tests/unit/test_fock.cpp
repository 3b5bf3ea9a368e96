#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bifield/biortho.hpp"
#include "bifield/errors.hpp"
#include "bifield/fock.hpp"
#include "bifield/state_io.hpp"
#include "bifield/transforms.hpp"
#include "oracles.hpp"

using namespace bifield;
namespace bo = bifield::biortho;

namespace {

const ModeLabel kLabel(1, 1);

SingleExcitationState random_state(const GridPtr& g, const BasisTag& tag, oracle::Gen& gen) {
  BranchAmplitudes amps;
  for (auto& b : amps) b = gen.cvector(g->size());
  return make_state(g, tag, std::move(amps));
}

}  // namespace

TEST_CASE("mode labels") {
  CHECK_THROWS_AS(ModeLabel(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModeLabel(1, 3), std::invalid_argument);
  const auto all = all_branches();
  for (std::size_t i = 0; i < kBranchCount; ++i) {
    CHECK(all[i].index() == i);
    CHECK(ModeLabel::from_index(i) == all[i]);
  }
  CHECK_THROWS_AS(ModeLabel::from_index(4), std::out_of_range);
}

TEST_CASE("basis tags") {
  CHECK(BasisTag::photon().is_photon());
  CHECK(BasisTag::local().name() == "local");
  CHECK(BasisTag::bio_local().name() == "bio_local");
  CHECK(BasisTag::blip().name() == "blip");
  CHECK(BasisTag::local().associate() == BasisTag::bio_local());
  CHECK(BasisTag::blip().associate() == BasisTag::blip());
  CHECK(BasisTag::photon().associate() == BasisTag::photon());
  CHECK(BasisTag::blip().self_associate());
  CHECK_FALSE(BasisTag::local().self_associate());
  CHECK_THROWS_AS(BasisTag::photon().weight(), std::logic_error);
}

TEST_CASE("make_state examples and errors") {
  const auto g = make_grid(16, 0.5);
  const auto mode = photon_mode(g, kLabel, 3);
  CHECK(mode.momentum(kLabel)[3] == oracle::cplx(1.0 / 0.5));
  CHECK(mode.uniform_tag()->is_photon());

  const auto local = position_delta(g, BasisTag::local(), kLabel, 5);
  const auto phi = local.position_amplitudes(kLabel);
  CHECK(phi[5] == oracle::cplx(1.0 / g->delta_x()));
  // canonical amplitudes of A^dagger(x_5)|0>: sqrt|k| e^{-i k x_5} / sqrt(2 pi)
  for (std::size_t j = 0; j < g->size(); ++j) {
    const auto expected = std::sqrt(std::abs(g->k(j))) * std::exp(oracle::cplx(0, -g->k(j) * g->x(5))) / std::sqrt(2 * oracle::kPi);
    CHECK(std::abs(local.momentum(kLabel)[j] - expected) < 1e-13);
  }
  const auto blip = make_state(g, BasisTag::blip(), kLabel, gaussian_profile(*g, 6.0, 1.0));
  CHECK(blip.uniform_tag() == BasisTag::blip());
  CHECK(blip.momentum(ModeLabel(-1, 2))[0] == oracle::cplx(0.0));

  CHECK_THROWS_AS(make_state(g, BasisTag::photon(), kLabel, CVector(15)), std::invalid_argument);
  CVector bad(16, 0.0);
  bad[2] = std::nan("");
  CHECK_THROWS_AS(make_state(g, BasisTag::photon(), kLabel, bad), std::invalid_argument);
  CHECK_THROWS_AS(photon_mode(g, kLabel, 16), std::out_of_range);
  CHECK_THROWS_AS(position_delta(g, BasisTag::photon(), kLabel, 0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_profile(*g, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("components with equal tags merge, different tags are kept") {
  const auto g = make_grid(8, 1.0);
  const auto a = position_delta(g, BasisTag::local(), kLabel, 1);
  const auto b = position_delta(g, BasisTag::local(), kLabel, 2);
  const auto c = position_delta(g, BasisTag::bio_local(), kLabel, 2);
  CHECK((a + b).components().size() == 1);
  CHECK_FALSE((a + b).mixed_provenance());
  CHECK((a + c).components().size() == 2);
  CHECK((a + c).mixed_provenance());
  CHECK_FALSE((a + c).uniform_tag());
  CHECK(((a + photon_mode(g, kLabel, 0))).components().size() == 2);
  CHECK_FALSE((a + photon_mode(g, kLabel, 0)).mixed_provenance());
  CHECK_THROWS_AS(a + position_delta(make_grid(8, 2.0), BasisTag::local(), kLabel, 1), GridMismatchError);
}

TEST_CASE("the S map") {
  const auto g = make_grid(32, 0.3);
  oracle::Gen gen(2);
  const auto mode = photon_mode(g, kLabel, 7);
  CHECK(max_abs_difference(bio_associate(mode), mode) == 0.0);

  const auto local = position_delta(g, BasisTag::local(), kLabel, 4);
  const auto s_local = bio_associate(local);
  CHECK(s_local.uniform_tag() == BasisTag::bio_local());
  CHECK(max_abs_difference(s_local, position_delta(g, BasisTag::bio_local(), kLabel, 4)) < 1e-14);

  for (const auto& tag : {BasisTag::photon(), BasisTag::local(), BasisTag::bio_local(), BasisTag::blip(),
                          BasisTag::positional(WeightFunction::custom("c", [](double k) { return 1 + k * k; }))}) {
    const auto st = random_state(g, tag, gen);
    CHECK(max_abs_difference(bio_associate(bio_associate(st)), st) == 0.0);
  }
  const auto mixed = random_state(g, BasisTag::local(), gen) + random_state(g, BasisTag::bio_local(), gen) +
                     random_state(g, BasisTag::photon(), gen);
  const auto sm = bio_associate(mixed);
  CHECK(max_abs_difference(bio_associate(sm), mixed) < 1e-12);
}

TEST_CASE("generalised inner product examples") {
  const auto g = make_grid(64, 0.25);
  const double dk = g->delta_k(), dx = g->delta_x();
  CHECK(std::abs(bio_inner(photon_mode(g, kLabel, 3), photon_mode(g, kLabel, 9))) < 1e-14);
  CHECK(std::abs(bio_inner(photon_mode(g, kLabel, 3), photon_mode(g, kLabel, 3)) - 1.0 / dk) < 1e-12);
  CHECK(std::abs(bio_inner(photon_mode(g, kLabel, 3), photon_mode(g, ModeLabel(-1, 1), 3))) == 0.0);
  for (const auto& tag : {BasisTag::local(), BasisTag::bio_local(), BasisTag::blip()}) {
    const auto a = position_delta(g, tag, kLabel, 10), b = position_delta(g, tag, kLabel, 11);
    CHECK(std::abs(bio_inner(a, b)) < 1e-12 / dx);
    CHECK(std::abs(bio_inner(a, a) - 1.0 / dx) < 1e-12 / dx);
  }
}

TEST_CASE("cross-family overlaps are weighted kernels, not deltas") {
  const auto g = make_grid(64, 0.25);
  const std::size_t m = 20, mp = 21;
  // <<local(x_m), bio-local(x_m')>>^bio = standard product of local(x_m) and local(x_m')
  const auto val = bio_inner(position_delta(g, BasisTag::local(), kLabel, m),
                             position_delta(g, BasisTag::bio_local(), kLabel, mp));
  oracle::cplx expected = 0.0;
  for (std::size_t j = 0; j < g->size(); ++j) {
    expected += g->delta_k() * std::abs(g->k(j)) * std::exp(oracle::cplx(0, g->k(j) * (g->x(mp) - g->x(m)))) / (2 * oracle::kPi);
  }
  CHECK(std::abs(val - expected) < 1e-12);
  CHECK(std::abs(val) > 1e-3);
}

TEST_CASE("inner product algebra") {
  const auto g = make_grid(24, 0.7);
  oracle::Gen gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_state(g, BasisTag::local(), gen);
    const auto b = random_state(g, BasisTag::local(), gen);
    const auto c = random_state(g, BasisTag::local(), gen);
    const oracle::cplx z = gen.cnormal();
    // linear in the first argument, antilinear in the second
    CHECK(std::abs(bio_inner(a.scaled(z) + b, c) - (z * bio_inner(a, c) + bio_inner(b, c))) < 1e-10 * std::abs(bio_inner(a, c)));
    CHECK(std::abs(bio_inner(a, b.scaled(z)) - std::conj(z) * bio_inner(a, b)) < 1e-10 * std::abs(bio_inner(a, b)));
    // conjugate symmetry between a state and an associate
    CHECK(std::abs(bio_inner(a, b) - std::conj(bio_inner(bio_associate(b), bio_associate(a)))) < 1e-10 * std::abs(bio_inner(a, b)));
    CHECK(bio_inner(a, a).real() > 0.0);
    CHECK(std::abs(bio_inner(a, a) - eta_inner(a, a)) < 1e-10 * std::abs(bio_inner(a, a)));
    const auto bl = bio_associate(a);
    CHECK(std::abs(bio_inner(bl, bl) - eta_inv_inner(bl, bl)) < 1e-10 * std::abs(bio_inner(bl, bl)));
  }
}

TEST_CASE("eta actions") {
  const auto g = make_grid(32, 0.4);
  oracle::Gen gen(77);
  const std::size_t j0 = 5;
  const auto mode = photon_mode(g, kLabel, j0);
  const auto scaled = eta_apply(mode);
  CHECK(std::abs(scaled.momentum(kLabel)[j0] - mode.momentum(kLabel)[j0] / std::abs(g->k(j0))) < 1e-14);

  const auto local = position_delta(g, BasisTag::local(), kLabel, 3);
  const auto eta_local = eta_apply(local);
  CHECK(max_abs_difference(eta_local, position_delta(g, BasisTag::bio_local(), kLabel, 3)) < 1e-13);
  CHECK(eta_local.uniform_tag() == BasisTag::bio_local());
  CHECK(eta_inv_apply(eta_local).uniform_tag() == BasisTag::local());

  for (const auto& tag : {BasisTag::photon(), BasisTag::local(), BasisTag::bio_local(), BasisTag::blip()}) {
    const auto st = random_state(g, tag, gen);
    CHECK(max_abs_difference(eta_inv_apply(eta_apply(st)), st) < 1e-12 * 10);
    CHECK(max_abs_difference(eta_apply(eta_inv_apply(st)), st) < 1e-12 * 10);
  }
}

TEST_CASE("eta and eta-inverse products") {
  const auto g = make_grid(40, 0.3);
  const double dx = g->delta_x();
  const auto l1 = position_delta(g, BasisTag::local(), kLabel, 7), l2 = position_delta(g, BasisTag::local(), kLabel, 8);
  CHECK(std::abs(eta_inner(l1, l1) - 1.0 / dx) < 1e-12 / dx);
  CHECK(std::abs(eta_inner(l1, l2)) < 1e-12 / dx);
  const auto b1 = position_delta(g, BasisTag::bio_local(), kLabel, 7), b2 = position_delta(g, BasisTag::bio_local(), kLabel, 8);
  CHECK(std::abs(eta_inv_inner(b1, b1) - 1.0 / dx) < 1e-12 / dx);
  CHECK(std::abs(eta_inv_inner(b1, b2)) < 1e-12 / dx);
  for (std::size_t j = 0; j < g->size(); ++j) {
    const auto m = photon_mode(g, kLabel, j);
    CHECK(std::abs(eta_inv_inner(m, m) * g->delta_k() - std::abs(g->k(j))) <= 1e-12 * std::abs(g->k(j)));
  }
  CHECK(inner(InnerProduct::Standard, l1, l2) == standard_inner(l1, l2));
  CHECK(inner(InnerProduct::EtaInverse, b1, b2) == eta_inv_inner(b1, b2));
}

TEST_CASE("norms default to the generalised product") {
  const auto g = make_grid(16, 0.5);
  const auto local = position_delta(g, BasisTag::local(), kLabel, 2);
  CHECK(norm(local) == doctest::Approx(std::sqrt(1.0 / g->delta_x())));
  CHECK(norm(normalized(local)) == doctest::Approx(1.0));
  CHECK(norm(normalized(local, InnerProduct::Standard), InnerProduct::Standard) == doctest::Approx(1.0));
  const auto zero = make_state(g, BasisTag::photon(), kLabel, CVector(16, 0.0));
  CHECK_THROWS_AS(norm(zero), NormalizationError);
}

TEST_CASE("inner products agree with the finite-dimensional engine on tiny grids") {
  oracle::Gen gen(123);
  for (long n : {2L, 4L, 6L, 8L}) {
    for (int s : {1, -1}) {
      const double dk = gen.uniform(0.2, 2.0);
      const auto g = make_grid(n, dk);
      const ModeLabel label(s, 2);
      const bo::FiniteBasis alpha(oracle::local_vectors(n, dk, s, 0.5));
      const bo::DualBasis beta = bo::dual_basis(alpha);
      // the dual vectors are the bio-local deltas
      CHECK((beta.vectors() - oracle::local_vectors(n, dk, s, -0.5)).cwiseAbs().maxCoeff() < 1e-10);
      const bo::MetricOperator eta = bo::metric_from_dual(beta);

      auto coords = [&](const SingleExcitationState& st) {
        bo::Vector v(n);
        for (long j = 0; j < n; ++j) v(j) = std::sqrt(dk) * st.momentum(label)[static_cast<std::size_t>(j)];
        return v;
      };
      for (int trial = 0; trial < 5; ++trial) {
        const auto a = make_state(g, BasisTag::local(), label, gen.cvector(g->size()));
        const auto b = make_state(g, BasisTag::local(), label, gen.cvector(g->size()));
        const auto va = coords(a), vb = coords(b);
        CHECK(std::abs(eta_inner(a, b) - bo::eta_inner(va, vb, eta)) < 1e-10);
        CHECK(std::abs(eta_inv_inner(a, b) - bo::eta_inner(va, vb, bo::MetricOperator(eta.inverse()))) < 1e-10);
        CHECK(std::abs(bio_inner(a, b) - bo::bqm_inner(va, vb, alpha, beta)) < 1e-10);
        CHECK((coords(eta_apply(a)) - eta.matrix() * va).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((coords(eta_inv_apply(a)) - eta.inverse() * va).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("state JSON round trip") {
  const auto g = make_grid(8, 1.0);
  oracle::Gen gen(8);
  const auto st = make_state(g, BasisTag::local(), ModeLabel(-1, 2), gen.cvector(8));
  const auto doc = state_to_json(st);
  CHECK(doc.is_object());
  CHECK(doc["tag"] == "local");
  CHECK(doc["basis"] == "x");
  CHECK(doc["s"] == -1);
  CHECK(doc["lambda"] == 2);
  const auto back = state_from_json(doc, g);
  CHECK(max_abs_difference(back, st) == 0.0);
  CHECK(back.uniform_tag() == BasisTag::local());

  const auto two = photon_mode(g, ModeLabel(1, 1), 2) + st;
  const auto arr = state_to_json(two);
  CHECK(arr.is_array());
  CHECK(arr.size() == 2);
  CHECK(max_abs_difference(state_from_json(arr, g), two) == 0.0);
}

TEST_CASE("state JSON rejects malformed documents") {
  const auto g = make_grid(4, 1.0);
  using nlohmann::json;
  const json good = {{"tag", "photon"}, {"s", 1}, {"lambda", 1}, {"basis", "k"}, {"re", {1, 0, 0, 0}}, {"im", {0, 0, 0, 0}}};
  CHECK_NOTHROW(state_from_json(good, g));
  auto bad = good;
  bad["basis"] = "x";
  CHECK_THROWS_AS(state_from_json(bad, g), std::invalid_argument);
  bad = good;
  bad["tag"] = "mystery";
  CHECK_THROWS_AS(state_from_json(bad, g), std::invalid_argument);
  bad = good;
  bad.erase("im");
  CHECK_THROWS_AS(state_from_json(bad, g), std::invalid_argument);
  bad = good;
  bad["re"] = {1, 2};
  CHECK_THROWS_AS(state_from_json(bad, g), std::invalid_argument);
  bad = good;
  bad["s"] = "up";
  CHECK_THROWS_AS(state_from_json(bad, g), std::invalid_argument);
  bad = good;
  bad["lambda"] = 3;
  CHECK_THROWS_AS(state_from_json(bad, g), std::invalid_argument);
  CHECK_THROWS_AS(state_to_json(make_state(g, BasisTag::photon(), BranchAmplitudes{}, 1.0)), std::invalid_argument);
}
