#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dhtk/linalg.hpp"
#include "dhtk/pl_density.hpp"
#include "dhtk/xray.hpp"

namespace dhtk {

struct McParams {
  std::uint64_t samples = 0;
  int bins = 0;
  std::uint64_t seed = 0;
};

/// Everything a command run produces. Reports serialize bit-exactly except
/// for `timing_ms`; inputs are recorded as (path, content digest) pairs so a
/// report pins down exactly what it was computed from.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::optional<PLDensity> density;
  std::vector<SlopeJump> jumps;
  std::optional<LogConcavityVerdict> verdict;
  std::vector<std::pair<std::string, Rational>> residuals;
  std::optional<bool> equal;              // crossval: routes agree bit-exactly
  std::optional<long long> vertex_order;  // crossval: max vertex order d
  std::optional<LineSelection> selection;
  std::optional<bool> regular;
  std::optional<SubtorusSplit> subtorus;
  std::optional<McParams> mc;
  long long timing_ms = 0;
  int status = 0;
  std::string message;
};

std::string report_to_json(const RunReport& report);

RunReport cmd_s1_build(const std::string& input_path, const std::string& output_path);

RunReport cmd_slice(const std::string& polytope_path, const Direction& direction,
                    const std::string& output_path,
                    const std::optional<McParams>& mc = std::nullopt);

RunReport cmd_crossval(const std::string& polytope_path, const Direction& direction);

RunReport cmd_xray_line(const std::string& xray_path, const RVec& x0, const RVec& x1,
                        const Rational& epsilon, std::uint64_t seed);

RunReport cmd_plot(const std::string& density_path, const std::string& svg_path);

/// Exit-status contract: 0 success, 2 input/parse error, 3 inconsistency,
/// 4 selection failure. Runs `body`, captures the report (or the error
/// message) and returns the status. Single source of truth for the mapping.
int run_command(const std::function<RunReport()>& body, std::string& report_json,
                std::string& message);

}  // namespace dhtk
