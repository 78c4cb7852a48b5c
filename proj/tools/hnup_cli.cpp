#include <fmt/format.h>

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "hnup/commands.hpp"

namespace {

void add_spec_options(CLI::App& app, hnup::RunConfig& cfg) {
  app.add_option("--m", cfg.m, "branching count m >= 2");
  app.add_option("--variant", cfg.variant, "constant | sparse-power | geometric-power | explicit | random");
  app.add_option("--a", cfg.a, "ratio as p/q");
  app.add_option("--ratios", cfg.ratios, "explicit ratio list (p/q ...), extended periodically");
  app.add_option("--seed", cfg.seed, "seed for the random variant and sampled points");
  app.add_option("--precision-bits", cfg.precision_bits, "dyadic precision of random ratios");
  app.add_flag("--relaxed", cfg.relaxed, "admit ratios up to 1/m (gaps may stop decreasing)");
  app.add_option("--depth", cfg.depth, "depth k (or K for sequences)");
  app.add_option("--budget-bits", cfg.budget_bits, "bit budget for exact rationals");
  app.add_option("--tol", cfg.tol, "tolerance recorded with log-space values");
  app.add_option("--out", cfg.out, "output directory (default $HNUP_OUTPUT_DIR or .)");
  app.add_option("--format", cfg.format, "json | csv | svg");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cantor-like sets, uniform perfectness, capacity and dimension experiments"};
  app.require_subcommand(1);
  hnup::RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with RunConfig fields (flags override it)");

  auto* build = app.add_subcommand("build", "write the depth-k approximation (intervals.csv, endpoints.csv, build.json)");
  add_spec_options(*build, cfg);

  auto* analyze = app.add_subcommand("analyze", "run one analysis and write <name>.json");
  std::string which;
  analyze->add_option("analysis", which, "dim | cap | up | porosity | assembly")
      ->required()
      ->check(CLI::IsMember({"dim", "cap", "up", "porosity", "assembly"}));
  add_spec_options(*analyze, cfg);
  analyze->add_option("--window", cfg.window, "tail fraction searched for the liminf estimate");
  analyze->add_option("--target-ratio", cfg.target_ratio, "target R/r for witness searches");
  analyze->add_option("--M-max", cfg.M_max, "largest component index of the assembly");
  analyze->add_option("--dims", cfg.dims, "assembly dimension: 2 (planar E) or 1 (linear W)");
  analyze->add_option("--samples", cfg.samples, "number of sampled points");

  auto* table1 = app.add_subcommand("table1", "verify the implication table");
  table1->add_option("--out", cfg.out, "output directory");

  auto* render = app.add_subcommand("render", "SVG/CSV figures from a saved report");
  std::string report_path;
  render->add_option("--report", report_path, "report JSON to render")->required();
  render->add_option("--out", cfg.out, "output directory");

  // Parse once to find --config, then apply file values and re-parse so flags win.
  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      hnup::RunConfig from_file;
      hnup::merge_json(from_file, hnup::read_json(config_path));
      cfg = from_file;
      app.parse(argc, argv);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(hnup::ExitCode::usage);
  } catch (const hnup::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  }

  try {
    if (*build) {
      const auto report = hnup::cmd_build(cfg);
      for (const auto& w : report.at("warnings")) std::cerr << "warning: " << w.get<std::string>() << "\n";
      fmt::print("build: {} intervals at depth {} -> {}\n", report.at("count").get<std::uint64_t>(),
                 report.at("depth").get<int>(), cfg.output_dir());
    } else if (*analyze) {
      hnup::cmd_analyze(cfg, which);
      fmt::print("analyze {}: wrote {}/{}.json\n", which, cfg.output_dir(), which);
    } else if (*table1) {
      const auto report = hnup::cmd_table1(cfg);
      const auto& s = report.at("summary");
      fmt::print("table1: {} verified-at-depth, {} cited-not-computed, {} out-of-scope, {} trivial\n",
                 s.at("verified-at-depth").get<int>(), s.at("cited-not-computed").get<int>(),
                 s.at("out-of-scope").get<int>(), s.at("trivial").get<int>());
    } else if (*render) {
      for (const auto& path : hnup::cmd_render(report_path, cfg)) fmt::print("render: {}\n", path);
    }
  } catch (const hnup::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(hnup::ExitCode::usage);
  }
  return 0;
}
