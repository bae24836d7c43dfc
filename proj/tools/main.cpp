#include "commands.hpp"
#include "config.hpp"

#include "beatty/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

int main(int argc, char** argv) {
  using namespace beatty::cli;
  CLI::App app{"Beatty-prime representation experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> limit;
  app.add_option("--config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (default: output_dir from the config)");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", seed, "Seed for sampled scans");
  app.add_option("--limit", limit, "Override the config limit");
  for (const auto& name : command_names()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    ExperimentConfig cfg = parse_config(config_path);
    if (limit) cfg.limit = *limit;
    validate(cfg);
    RunOptions opts;
    opts.out_dir = out_dir.empty() ? cfg.output_dir : out_dir;
    opts.threads = threads;
    opts.seed = seed;
    return run_command(command, cfg, opts, std::cout);
  } catch (const beatty::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const beatty::ValidationError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
  }
  return kExitError;
}
