#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bifield/dynamics.hpp"
#include "bifield/grid.hpp"
#include "bifield/operators.hpp"

namespace bifield::harness {

inline constexpr const char* kEngine = "bifield 1.0.0";

/// Bad or unreadable configuration. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An output file or directory could not be written. Maps to exit status 3.
class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Verify, Propagate, Kernel, Blipfield, Energy, Counterexample };

ScenarioKind kind_from_name(const std::string& name);
std::string kind_name(ScenarioKind kind);

struct PacketSpec {
  double center = 0.0;
  double width = 1.0;
  int s = 1;
  int lambda = 1;
  std::string weight = "blip";
  /// Populate the opposite direction as well (mirror packet).
  bool two_sided = false;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Verify;
  long n_modes = 256;
  double delta_k = 0.1;
  FieldContext context;

  std::optional<PacketSpec> packet;
  std::vector<double> times;
  bool interpolate = false;

  std::string weight1 = "local";
  std::string weight2 = "local";
  int s = 1;
  int lambda = 1;
  double x0 = 0.0;

  double b1 = 1.0;
  double b2 = 0.0;
  std::vector<std::size_t> modes;
  double t1 = 0.0;

  std::vector<std::size_t> photon_modes;
};

/// Parses and validates a scenario document; every problem is a ConfigError.
ScenarioConfig parse_config(const nlohmann::json& doc, ScenarioKind kind);
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioKind kind);

struct Check {
  std::string check_id;
  std::string description;
  std::string anchor;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check make_check(std::string id, std::string description, std::string anchor, double max_error,
                 double tolerance);

struct VerificationReport {
  std::string engine = kEngine;
  long n_modes = 0;
  double delta_k = 0.0;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  std::size_t failed() const;
};

/// Runs the invariant suites of every module on the configured grid.
VerificationReport run_verify_suite(const ScenarioConfig& config, std::uint64_t seed);

/// Deterministic JSON text: checks sorted by check_id, object keys sorted.
std::string report_to_string(VerificationReport report);
void emit_report(const VerificationReport& report, const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

std::string kernel_csv(const std::vector<KernelSample>& samples);

struct TraceRow {
  double t;
  double x;
  int s;
  int lambda;
  cplx value;
};
std::string trace_csv(const std::vector<TraceRow>& rows);

/// Writes text to path, throwing WriteError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Executes one CLI command. Returns 0 on success, 1 when a verification
/// check fails, 2 on configuration errors (nothing is written), 3 when
/// output cannot be written.
int run(ScenarioKind kind, const std::filesystem::path& config_path,
        const std::filesystem::path& out_dir, std::uint64_t seed, std::ostream& out,
        std::ostream& err);

}  // namespace bifield::harness
