#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "chemotaxis/cli/run_config.hpp"
#include "chemotaxis/error.hpp"

using namespace chemotaxis;

int main(int argc, char** argv) {
  CLI::App app{"Transformed logarithmic-sensitivity chemotaxis solver"};

  std::string config_path;
  std::string scenario;
  std::string output;
  std::optional<double> t_end;
  std::optional<std::size_t> n_cells;
  bool all_presets = false;
  std::string mms_mode;

  auto* config_opt = app.add_option("--config", config_path, "YAML run configuration")->check(CLI::ExistingFile);
  auto* scenario_opt = app.add_option("--scenario", scenario, "Preset name");
  app.add_option("--output", output, "Output directory");
  app.add_option("--t-end", t_end, "Override the horizon");
  app.add_option("--n-cells", n_cells, "Override the number of cells");
  auto* all_opt = app.add_flag("--all-presets", all_presets, "Run every preset");
  auto* mms_opt = app.add_option("--mms", mms_mode, "Convergence study (eps_positive, eps_zero or both)")
                      ->check(CLI::IsMember({"eps_positive", "eps_zero", "both"}));
  config_opt->excludes(scenario_opt)->excludes(all_opt)->excludes(mms_opt);
  scenario_opt->excludes(all_opt)->excludes(mms_opt);
  all_opt->excludes(mms_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!mms_mode.empty()) {
      const std::filesystem::path dir = output.empty() ? "output/mms" : output;
      int worst = cli::kSuccess;
      for (Mode m : {Mode::eps_positive, Mode::eps_zero}) {
        if (mms_mode != "both" && mms_mode != to_string(m)) continue;
        const int status = cli::execute_mms(m, mms_mode == "both" ? dir / to_string(m) : dir, std::cout);
        worst = std::max(worst, status);
      }
      return worst;
    }
    if (all_presets) {
      return cli::execute_all_presets(output.empty() ? "output" : output, std::cout);
    }

    cli::RunConfig rc;
    if (!config_path.empty()) {
      rc = cli::load_config(config_path);
    } else if (!scenario.empty()) {
      rc.scenario = paper_preset(scenario);
      rc.preset = scenario;
      rc.output_dir = std::filesystem::path("output") / scenario;
    } else {
      std::cerr << "one of --config, --scenario, --all-presets or --mms is required\n" << app.help();
      return cli::kAborted;
    }
    if (!output.empty()) rc.output_dir = output;
    if (n_cells) rc.scenario = with_n_cells(rc.scenario, *n_cells);
    if (t_end) rc.scenario = with_t_end(rc.scenario, *t_end);
    return cli::execute(rc, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kAborted;
  }
}
