#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <sstream>

#include "bgkmix/app/acceptance.hpp"
#include "bgkmix/app/config.hpp"
#include "bgkmix/app/runner.hpp"
#include "bgkmix/core/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::set<int> parse_only(const std::string& text) {
  std::set<int> ids;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || id < 1 || id > bgkmix::app::kCriterionCount)
      throw bgkmix::ConfigError("--only expects criterion ids 1-9 separated by commas, got '" + item + "'");
    ids.insert(id);
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-velocity solver and verification harness for BGK models of polyatomic gas mixtures"};
  app.require_subcommand(1);

  std::string config_path, out_dir, checkpoint_path, only;
  int threads = 0;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run the scenario of a config file");
  run->add_option("config", config_path, "YAML config")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--threads", threads, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);
  run->add_flag("--quiet", quiet, "No progress output");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite and print a pass/fail table");
  verify->add_option("config", config_path, "YAML config")->required();
  verify->add_option("--threads", threads, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);
  verify->add_option("--only", only, "Comma-separated criterion ids");
  verify->add_flag("--quiet", quiet, "Print only the table");

  auto* resume = app.add_subcommand("resume", "Continue a run from one of its checkpoints");
  resume->add_option("checkpoint", checkpoint_path, "Checkpoint file")->required();
  resume->add_option("--out", out_dir, "Output directory (default: the run directory of the checkpoint)");
  resume->add_option("--threads", threads, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);
  resume->add_flag("--quiet", quiet, "No progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run || *resume) {
      bgkmix::app::RunOverrides ro;
      ro.threads = threads;
      ro.log = quiet ? nullptr : &std::cerr;
      const bgkmix::app::RunResult r =
          *run ? bgkmix::app::run_scenario(bgkmix::app::load_config(config_path), out_dir, ro)
               : bgkmix::app::resume_scenario(checkpoint_path, out_dir, ro);
      std::cout << "finished at t=" << r.time << " after " << r.steps << " steps; outputs in " << r.out.string()
                << "\n";
      return kExitOk;
    }
    const bgkmix::app::RunConfig config = bgkmix::app::load_config(config_path);
    bgkmix::app::AcceptanceOptions opt;
    opt.threads = threads;
    opt.only = parse_only(only);
    opt.log = quiet ? nullptr : &std::cerr;
    const auto results = bgkmix::app::run_acceptance(config, opt);
    bool all = true;
    for (const auto& r : results) {
      std::cout << bgkmix::app::format_line(r) << "\n";
      all = all && r.pass;
    }
    std::cout << (all ? "all criteria passed" : "acceptance FAILED") << "\n";
    return all ? kExitOk : kExitAcceptance;
  } catch (const bgkmix::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bgkmix::TruncationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bgkmix::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const bgkmix::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}
