// Scenario runner: qharm <command> --config FILE [--out DIR] [--refine] [--seed N] [--svg on|off]

#include <CLI11.hpp>

#include "qharm/scenario.hpp"

int main(int argc, char** argv) {
  using namespace qharm::scenario;
  CLI::App app{"Numerical evidence for quasiharmonic uniqueness"};
  app.require_subcommand(1);

  std::string config, out = ".", svg = "on";
  bool refine = false;
  std::optional<std::uint64_t> seed;
  for (const auto& name : commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "scenario JSON")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_flag("--refine", refine, "halve every sampling mesh");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--svg", svg, "write SVG plots")->check(CLI::IsMember({"on", "off"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  Options opt;
  opt.out_dir = out;
  opt.refine = refine;
  opt.seed = seed;
  opt.svg = svg == "on";
  return run(app.get_subcommands().front()->get_name(), config, opt);
}
