#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "bifield/harness.hpp"

namespace bifield::harness {

Check make_check(std::string id, std::string description, std::string anchor, double max_error,
                 double tolerance) {
  const bool pass = std::isfinite(max_error) && max_error <= tolerance;
  return {std::move(id), std::move(description), std::move(anchor), max_error, tolerance, pass};
}

std::size_t VerificationReport::failed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

std::string report_to_string(VerificationReport report) {
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const Check& a, const Check& b) { return a.check_id < b.check_id; });
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"check_id", c.check_id},
                      {"description", c.description},
                      {"paper_anchor", c.anchor},
                      {"max_error", c.max_error},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  const nlohmann::json doc = {
      {"engine", report.engine},
      {"grid", {{"n_modes", report.n_modes}, {"delta_k", report.delta_k}}},
      {"seed", report.seed},
      {"checks", checks},
      {"summary", {{"total", report.checks.size()}, {"failed", report.failed()}}}};
  return doc.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw WriteError("failed while writing '" + path.string() + "'");
}

void emit_report(const VerificationReport& report, const std::filesystem::path& path) {
  write_text(path, report_to_string(report));
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string kernel_csv(const std::vector<KernelSample>& samples) {
  std::string out = "displacement,re,im,abs\n";
  for (const auto& s : samples) {
    out += format_double(s.displacement) + "," + format_double(s.value.real()) + "," +
           format_double(s.value.imag()) + "," + format_double(std::abs(s.value)) + "\n";
  }
  return out;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = "t,x,s,lambda,re,im,abs2\n";
  for (const auto& r : rows) {
    out += format_double(r.t) + "," + format_double(r.x) + "," + std::to_string(r.s) + "," +
           std::to_string(r.lambda) + "," + format_double(r.value.real()) + "," +
           format_double(r.value.imag()) + "," + format_double(std::norm(r.value)) + "\n";
  }
  return out;
}

}  // namespace bifield::harness
