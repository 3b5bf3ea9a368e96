#include <cmath>
#include <map>
#include <ostream>

#include "bifield/errors.hpp"
#include "bifield/harness.hpp"

namespace bifield::harness {

namespace {

using Outputs = std::map<std::string, std::string>;
using nlohmann::json;

SingleExcitationState packet_state(const ScenarioConfig& cfg, const GridPtr& grid) {
  const PacketSpec& p = *cfg.packet;
  const BasisTag tag = BasisTag::positional(weight_from_name(p.weight));
  const CVector profile = gaussian_profile(*grid, p.center, p.width);
  BranchAmplitudes amps;
  amps[ModeLabel(p.s, p.lambda).index()] = profile;
  if (p.two_sided) amps[ModeLabel(-p.s, p.lambda).index()] = profile;
  return make_state(grid, tag, std::move(amps));
}

int propagate(const ScenarioConfig& cfg, Outputs& files, std::ostream& out) {
  const GridPtr grid = make_grid(cfg.n_modes, cfg.delta_k);
  const auto st = packet_state(cfg, grid);
  const HamiltonianSpec spec{cfg.context.c, Dispersion::Signed, std::nullopt};
  std::vector<TraceRow> rows;
  json checks = json::array();
  for (double t : cfg.times) {
    const auto ev = evolve_state_auto(st, t, spec);
    for (const ModeLabel l : all_branches()) {
      const CVector phi = ev.state.position_amplitudes(l);
      if (st.position_amplitudes(l) == CVector(grid->size(), 0.0)) continue;
      for (std::size_t m = 0; m < grid->size(); ++m) rows.push_back({t, grid->x(m), l.s(), l.lambda(), phi[m]});
    }
    const ShapeCheck sc = dispersion_free_check(st, t, spec, cfg.interpolate);
    json entry = {{"t", t},
                  {"side", side_name(sc.side)},
                  {"max_error", sc.max_error},
                  {"relative_error", sc.max_error / sc.scale},
                  {"interpolated", sc.interpolated},
                  {"two_sided", sc.two_sided},
                  {"combined_error", sc.combined_error}};
    if (sc.warning) {
      entry["warning"] = *sc.warning;
      out << "warning (t = " << t << "): " << *sc.warning << "\n";
    }
    checks.push_back(entry);
  }
  files["trace.csv"] = trace_csv(rows);
  files["propagate.json"] = json{{"engine", kEngine},
                                 {"grid", {{"n_modes", cfg.n_modes}, {"delta_k", cfg.delta_k}}},
                                 {"tag", st.components().front().tag.name()},
                                 {"shape_checks", checks}}
                                .dump(2) + "\n";
  return 0;
}

int kernel(const ScenarioConfig& cfg, Outputs& files) {
  const GridPtr grid = make_grid(cfg.n_modes, cfg.delta_k);
  files["kernel.csv"] = kernel_csv(
      commutator_kernel(weight_from_name(cfg.weight1), weight_from_name(cfg.weight2), cfg.s, *grid));
  return 0;
}

int blipfield(const ScenarioConfig& cfg, Outputs& files) {
  const GridPtr grid = make_grid(cfg.n_modes, cfg.delta_k);
  const std::size_t m0 = grid->nearest_index(cfg.x0);
  const CVector prof = blip_field_profile(grid, m0, ModeLabel(cfg.s, cfg.lambda), cfg.context);
  const long n = static_cast<long>(grid->size());
  std::vector<KernelSample> samples;
  for (long d = -n / 2; d < n / 2; ++d) {
    const long m = static_cast<long>(m0) + d;
    const long wrapped = ((m % n) + n) % n;
    // a point reached across the domain edge sits one antiperiodic length away
    const double sign = (m == wrapped) ? 1.0 : -1.0;
    samples.push_back({static_cast<double>(d) * grid->delta_x(), sign * prof[static_cast<std::size_t>(wrapped)]});
  }
  files["blipfield.csv"] = kernel_csv(samples);
  return 0;
}

int energy(const ScenarioConfig& cfg, Outputs& files) {
  const GridPtr grid = make_grid(cfg.n_modes, cfg.delta_k);
  json entries = json::array();
  auto record = [&](const std::string& name, const SingleExcitationState& st) {
    const auto normed = normalized(st);
    entries.push_back({{"state", name},
                       {"energy", energy_expectation(normed, cfg.context)},
                       {"hamiltonian", hamiltonian_expectation(normed, cfg.context)}});
  };
  for (auto j : cfg.photon_modes) {
    record("photon k=" + format_double(grid->k(j)), photon_mode(grid, ModeLabel(1, 1), j));
  }
  if (cfg.packet) record("packet " + cfg.packet->weight, packet_state(cfg, grid));
  files["energy.json"] = json{{"engine", kEngine}, {"states", entries}}.dump(2) + "\n";
  return 0;
}

int counterexample(const ScenarioConfig& cfg, Outputs& files) {
  const GridPtr grid = make_grid(cfg.n_modes, cfg.delta_k);
  HamiltonianSpec spec{cfg.context.c, Dispersion::Signed, BogoliubovBlock{cfg.b1, cfg.b2, cfg.modes, cfg.t1}};
  const auto res = bogoliubov_counterexample(grid, spec, ModeLabel(cfg.s, cfg.lambda), grid->nearest_index(cfg.x0));
  std::vector<double> ks;
  for (auto j : cfg.modes) ks.push_back(grid->k(j));
  files["counterexample.json"] = json{{"engine", kEngine},
                                      {"b1", cfg.b1},
                                      {"b2", cfg.b2},
                                      {"modes", cfg.modes},
                                      {"k", ks},
                                      {"norm", res.norm},
                                      {"closed_form", res.closed_form}}
                                     .dump(2) + "\n";
  return 0;
}

}  // namespace

int run(ScenarioKind kind, const std::filesystem::path& config_path,
        const std::filesystem::path& out_dir, std::uint64_t seed, std::ostream& out,
        std::ostream& err) {
  Outputs files;
  int status = 0;
  try {
    const ScenarioConfig cfg = load_config(config_path, kind);
    switch (kind) {
      case ScenarioKind::Verify: {
        const VerificationReport report = run_verify_suite(cfg, seed);
        files["report.json"] = report_to_string(report);
        for (const auto& c : report.checks) {
          if (!c.pass) out << "FAIL " << c.check_id << ": error " << c.max_error << " > " << c.tolerance << "\n";
        }
        out << report.checks.size() - report.failed() << "/" << report.checks.size() << " checks passed\n";
        status = report.failed() == 0 ? 0 : 1;
        break;
      }
      case ScenarioKind::Propagate: status = propagate(cfg, files, out); break;
      case ScenarioKind::Kernel: status = kernel(cfg, files); break;
      case ScenarioKind::Blipfield: status = blipfield(cfg, files); break;
      case ScenarioKind::Energy: status = energy(cfg, files); break;
      case ScenarioKind::Counterexample: status = counterexample(cfg, files); break;
    }
  } catch (const ConfigError& e) {
    err << "bifield: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // anything raised while computing depends only on the configuration
    err << "bifield: invalid scenario: " << e.what() << "\n";
    return 2;
  }

  try {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw WriteError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
    for (const auto& [name, text] : files) write_text(out_dir / name, text);
  } catch (const WriteError& e) {
    err << "bifield: write error: " << e.what() << "\n";
    return 3;
  }
  for (const auto& [name, text] : files) out << "wrote " << (out_dir / name).string() << "\n";
  return status;
}

}  // namespace bifield::harness
