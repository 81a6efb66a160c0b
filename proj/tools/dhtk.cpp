#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dhtk/commands.hpp"
#include "dhtk/errors.hpp"
#include "dhtk/io.hpp"
#include "dhtk/rational.hpp"

namespace {

using namespace dhtk;

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

RVec parse_point(const std::string& text) {
  std::vector<std::string> parts = split_commas(text);
  RVec v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = parse_rational(parts[i]);
  return v;
}

Direction parse_direction(const std::string& text) {
  RVec v = parse_point(text);
  if (!is_integer_vector(v)) throw InputError("direction coordinates must be integers");
  return Direction(v);
}

int emit(const std::function<RunReport()>& body) {
  std::string report_json, message;
  int status = run_command(body, report_json, message);
  if (!report_json.empty()) std::cout << report_json;
  if (status != 0) std::cerr << message << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Duistermaat-Heckman densities: fixed-point data, polytope "
               "slices, cross-validation, x-ray line selection."};
  app.require_subcommand(1);

  std::string out_path;
  std::vector<std::string> mc_args;
  std::string epsilon_text = "1/16";
  std::uint64_t seed = 0;

  auto* s1 = app.add_subcommand("s1-build", "Density from S1 fixed-point data");
  std::string s1_input;
  s1->add_option("input", s1_input, "fixed-point data file")->required();
  s1->add_option("--out", out_path, "write the density here");

  auto* slice = app.add_subcommand("slice", "Exact slice density of a polygon");
  std::string slice_input, slice_dir;
  slice->add_option("polytope", slice_input, "polytope file")->required();
  slice->add_option("direction", slice_dir, "integer direction, comma-separated")->required();
  slice->add_option("--out", out_path, "write the density here");
  slice->add_option("--mc", mc_args, "Monte-Carlo check: samples bins seed")->expected(3);

  auto* crossval = app.add_subcommand("crossval", "Fixed-point route vs slicing route");
  std::string cv_input, cv_dir;
  crossval->add_option("polytope", cv_input, "polytope file")->required();
  crossval->add_option("direction", cv_dir, "integer direction, comma-separated")->required();

  auto* xray = app.add_subcommand("xray-line", "Select a transversal line on an x-ray");
  std::string xray_input, x0_text, x1_text;
  xray->add_option("xray", xray_input, "x-ray file")->required();
  xray->add_option("x0", x0_text, "first endpoint, comma-separated rationals")->required();
  xray->add_option("x1", x1_text, "second endpoint, comma-separated rationals")->required();
  xray->add_option("--epsilon", epsilon_text, "perturbation radius as p/q (default 1/16)");
  xray->add_option("--seed", seed, "perturbation seed (default 0)");
  xray->add_option("--out", out_path, "write the line selection here");

  auto* plot = app.add_subcommand("plot", "Render a density file as SVG");
  std::string plot_input;
  plot->add_option("density", plot_input, "density file")->required();
  plot->add_option("--out", out_path, "SVG path (default: <density>.svg)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (s1->parsed()) return emit([&] { return cmd_s1_build(s1_input, out_path); });

    if (slice->parsed())
      return emit([&] {
        std::optional<McParams> mc;
        if (!mc_args.empty())
          mc = McParams{std::stoull(mc_args[0]),
                        static_cast<int>(std::stol(mc_args[1])),
                        std::stoull(mc_args[2])};
        return cmd_slice(slice_input, parse_direction(slice_dir), out_path, mc);
      });

    if (crossval->parsed())
      return emit([&] { return cmd_crossval(cv_input, parse_direction(cv_dir)); });

    if (xray->parsed())
      return emit([&] {
        RunReport report = cmd_xray_line(xray_input, parse_point(x0_text),
                                         parse_point(x1_text),
                                         parse_rational(epsilon_text), seed);
        if (!out_path.empty() && report.selection)
          write_file(out_path, selection_to_json(*report.selection));
        return report;
      });

    if (plot->parsed()) {
      std::string svg = out_path.empty() ? plot_input + ".svg" : out_path;
      return emit([&] { return cmd_plot(plot_input, svg); });
    }
  } catch (const std::exception& e) {
    // Argument-level failures (bad numbers in --mc, etc.) are input errors.
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
