#include "dhtk/commands.hpp"

#include <chrono>

#include <json.hpp>

#include "dhtk/errors.hpp"
#include "dhtk/io.hpp"
#include "dhtk/mc.hpp"
#include "dhtk/s1_orbifold.hpp"
#include "dhtk/slicing.hpp"
#include "dhtk/toric.hpp"

namespace dhtk {

namespace {

using json = nlohmann::ordered_json;

class Stopwatch {
 public:
  long long elapsed_ms() const {
    auto now = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::milliseconds>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json embed(const std::string& serialized) { return json::parse(serialized); }

json jump_to_json(const SlopeJump& j) {
  json out;
  out["location"] = to_string(j.location);
  out["left_slope"] = to_string(j.left_slope);
  out["right_slope"] = to_string(j.right_slope);
  out["jump"] = to_string(j.jump);
  return out;
}

void record_input(RunReport& report, const std::string& path) {
  report.inputs.emplace_back(path, file_digest(path));
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  json out;
  out["command"] = report.command;
  out["inputs"] = json::object();
  for (const auto& [path, digest] : report.inputs) out["inputs"][path] = digest;
  if (report.density) out["density"] = embed(density_to_json(*report.density));
  if (!report.jumps.empty()) {
    out["jumps"] = json::array();
    for (const SlopeJump& j : report.jumps) out["jumps"].push_back(jump_to_json(j));
  }
  if (report.verdict) {
    json v;
    v["is_log_concave"] = report.verdict->is_log_concave;
    if (report.verdict->witness) v["witness"] = jump_to_json(*report.verdict->witness);
    out["verdict"] = v;
  }
  if (!report.residuals.empty()) {
    out["residuals"] = json::object();
    for (const auto& [name, value] : report.residuals)
      out["residuals"][name] = to_string(value);
  }
  if (report.equal) out["equal"] = *report.equal;
  if (report.vertex_order) out["vertex_order"] = *report.vertex_order;
  if (report.selection) out["selection"] = embed(selection_to_json(*report.selection));
  if (report.regular) out["regular"] = *report.regular;
  if (report.subtorus) out["subtorus"] = embed(subtorus_to_json(*report.subtorus));
  if (report.mc) {
    json m;
    m["samples"] = report.mc->samples;
    m["bins"] = report.mc->bins;
    m["seed"] = report.mc->seed;
    out["mc"] = m;
  }
  out["status"] = report.status;
  out["message"] = report.message;
  out["timing_ms"] = report.timing_ms;
  return out.dump(2) + "\n";
}

RunReport cmd_s1_build(const std::string& input_path, const std::string& output_path) {
  Stopwatch watch;
  RunReport report;
  report.command = "s1-build";
  record_input(report, input_path);

  S1FixedPointData data = s1data_from_json(read_file(input_path));
  Rational residual = closure_check(data);
  report.residuals.emplace_back("closure_residual", residual);
  if (!residual.is_zero()) {
    report.status = 3;
    report.message = "localization closure violated: residual " + to_string(residual);
    report.timing_ms = watch.elapsed_ms();
    return report;
  }

  PLDensity density = build_dh(data);
  report.density = density;
  report.jumps = slope_jumps(density);
  report.verdict = is_log_concave(density);
  report.status = report.verdict->is_log_concave ? 0 : 3;
  report.message = report.verdict->is_log_concave
                       ? "log-concave; closure residual 0"
                       : "log-concavity violated at t = " +
                             to_string(report.verdict->witness->location);
  if (!output_path.empty()) write_file(output_path, density_to_json(density));
  report.timing_ms = watch.elapsed_ms();
  return report;
}

RunReport cmd_slice(const std::string& polytope_path, const Direction& direction,
                    const std::string& output_path, const std::optional<McParams>& mc) {
  Stopwatch watch;
  RunReport report;
  report.command = "slice";
  record_input(report, polytope_path);

  Polytope polygon = polytope_from_json(read_file(polytope_path));
  PLDensity density = slice_density(polygon, direction);
  report.density = density;
  report.jumps = slope_jumps(density);
  report.verdict = is_log_concave(density);

  if (mc) {
    report.mc = mc;
    Histogram hist = mc_pushforward(polygon, direction, mc->samples, mc->bins, mc->seed);
    Rational supnorm = histogram_supnorm(hist, density);
    report.residuals.emplace_back("mc_supnorm", supnorm);
    if (!output_path.empty())
      write_file(output_path + ".hist.csv", histogram_to_csv(hist, density.integral()));
  }

  report.status = report.verdict->is_log_concave ? 0 : 3;
  report.message = report.verdict->is_log_concave
                       ? "log-concave slice density"
                       : "log-concavity violated at t = " +
                             to_string(report.verdict->witness->location);
  if (!output_path.empty()) write_file(output_path, density_to_json(density));
  report.timing_ms = watch.elapsed_ms();
  return report;
}

RunReport cmd_crossval(const std::string& polytope_path, const Direction& direction) {
  Stopwatch watch;
  RunReport report;
  report.command = "crossval";
  record_input(report, polytope_path);

  Polytope polygon = polytope_from_json(read_file(polytope_path));
  Int order = max_vertex_order(polygon);
  report.vertex_order = static_cast<long long>(order);

  S1FixedPointData data = delzant_to_s1data(polygon, direction);
  PLDensity from_fixed_points = build_dh(data);
  PLDensity from_slicing = slice_density(polygon, direction);

  bool equal = (from_fixed_points == from_slicing);
  report.equal = equal;
  report.density = from_slicing;
  report.jumps = slope_jumps(from_slicing);
  report.verdict = is_log_concave(from_slicing);

  if (order == 1) {
    report.status = equal ? 0 : 3;
    report.message = equal ? "routes agree bit-exactly (d = 1)"
                           : "route disagreement on a Delzant polygon";
  } else {
    // Orbifold corners: comparison is informational, completing it is success.
    report.status = 0;
    report.message = std::string("comparison completed (d = ") +
                     std::to_string(static_cast<long long>(order)) +
                     "); routes " + (equal ? "agree" : "differ");
  }
  report.timing_ms = watch.elapsed_ms();
  return report;
}

RunReport cmd_xray_line(const std::string& xray_path, const RVec& x0, const RVec& x1,
                        const Rational& epsilon, std::uint64_t seed) {
  Stopwatch watch;
  RunReport report;
  report.command = "xray-line";
  record_input(report, xray_path);

  if (x0 == x1) throw InputError("coincident endpoints");
  if (epsilon.sign() <= 0) throw InputError("epsilon must be positive");

  XRay xray = xray_from_json(read_file(xray_path));
  LineSelection selection = select_line(xray, x0, x1, epsilon, /*max_attempts=*/8, seed);
  report.selection = selection;
  report.regular = regularity_check(selection, xray);
  report.subtorus = split_subtorus(selection.direction);
  report.status = 0;
  report.message = *report.regular
                       ? "transversal line selected; all crossings regular"
                       : "line selected but a crossing fails the regularity test";
  report.timing_ms = watch.elapsed_ms();
  return report;
}

RunReport cmd_plot(const std::string& density_path, const std::string& svg_path) {
  Stopwatch watch;
  RunReport report;
  report.command = "plot";
  record_input(report, density_path);

  PLDensity density = density_from_json(read_file(density_path)).canonical();
  write_file(svg_path, density_to_svg(density));
  report.density = density;
  report.status = 0;
  report.message = "plot written to " + svg_path;
  report.timing_ms = watch.elapsed_ms();
  return report;
}

int run_command(const std::function<RunReport()>& body, std::string& report_json,
                std::string& message) {
  try {
    RunReport report = body();
    report_json = report_to_json(report);
    message = report.message;
    return report.status;
  } catch (const ParseError& e) {
    message = std::string("input error: ") + e.what();
    return 2;
  } catch (const InputError& e) {
    message = std::string("input error: ") + e.what();
    return 2;
  } catch (const InconsistencyError& e) {
    message = std::string("inconsistency: ") + e.what();
    return 3;
  } catch (const SelectionError& e) {
    message = std::string("selection failure: ") + e.what();
    return 4;
  }
}

}  // namespace dhtk
