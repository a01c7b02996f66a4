#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "halfline/error.hpp"
#include "halfline_cli/commands.hpp"

namespace {

using halfline::cli::ExperimentConfig;

nlohmann::json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw halfline::InvalidInput("cannot read config '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw halfline::InvalidInput("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Schroedinger operators: bands, Dirichlet eigenvalues, finite sections"};
  app.require_subcommand(1);

  std::string config_path, out_dir, expect, name;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", config_path, "JSON experiment config");
    if (config_required) c->required();
    sub->add_option("--out", out_dir, "output directory (default: config 'out' or .)");
    sub->add_option("--seed", seed, "seed overriding the config");
  };
  auto* bands = app.add_subcommand("bands", "band set, Dirichlet eigenvalues, pollution table");
  add_common(bands, true);
  auto* reproduce = app.add_subcommand("reproduce", "run a named reproduction with pass/fail checks");
  add_common(reproduce, false);
  reproduce->add_option("--name", name, "example-4-1 | example-4-2 | fibonacci-prefix | integer-avoidance");
  auto* fsm = app.add_subcommand("fsm", "finite section run with stability scan");
  add_common(fsm, true);
  fsm->add_option("--expect", expect, "expected verdict; exit 1 on mismatch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : halfline::cli::kUsage;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = ExperimentConfig::from_json(read_config(config_path));
    cfg.command = app.get_subcommands().front()->get_name();
    if (!out_dir.empty()) cfg.out = out_dir;
    if (app.get_subcommands().front()->count("--seed") > 0) cfg.seed = seed;
    if (!expect.empty()) cfg.expect = expect;
    if (!name.empty()) cfg.name = name;

    halfline::cli::CommandResult res = halfline::cli::run_command(cfg);
    for (const auto& c : res.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    for (const auto& f : res.files) std::cout << "wrote " << f.string() << "\n";
    (res.exit_code == halfline::cli::kPass ? std::cout : std::cerr) << res.message << "\n";
    return res.exit_code;
  } catch (const halfline::InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return halfline::cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return halfline::cli::kCheckFailed;
  }
}
