#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ucp/cli/commands.hpp"
#include "ucp/error.hpp"
#include "ucp/parallel.hpp"

namespace {

enum Exit { kOk = 0, kInternal = 1, kSchema = 2, kDomain = 3 };

int exit_code(ucp::ErrorKind kind) {
  using ucp::ErrorKind;
  switch (kind) {
    case ErrorKind::Schema: return kSchema;
    case ErrorKind::Domain:
    case ErrorKind::Configuration:
    case ErrorKind::Precondition:
    case ErrorKind::Resolution:
    case ErrorKind::Unsupported:
    case ErrorKind::InsufficientData: return kDomain;
    default: return kInternal;
  }
}

struct Options {
  std::string scenario;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
};

int report(const std::vector<ucp::cli::CommandResult>& results) {
  int code = kOk;
  for (const auto& r : results) {
    for (const auto& a : r.assertions) {
      if (a.pass) continue;
      std::fprintf(stderr, "ucplab: [%s] assertion failed: %s%s%s\n", r.command.c_str(), a.name.c_str(),
                   a.detail.empty() ? "" : " (", a.detail.empty() ? "" : (a.detail + ")").c_str());
      code = kInternal;
    }
    std::printf("%s: %s\n", r.command.c_str(), r.ok() ? "ok" : "failed");
  }
  return code;
}

int run(const std::string& command, const Options& opt) {
  std::string stage = "scenario";
  try {
    auto sc = ucp::cli::load_scenario(opt.scenario);
    if (opt.out) sc.output_dir = *opt.out;
    if (opt.seed) sc.seed = *opt.seed;
    if (opt.jobs > 0) ucp::set_default_jobs(opt.jobs);
    if (command == "run-all") {
      stage = "run-all";
      return report(ucp::cli::run_all(sc, opt.jobs));
    }
    stage = "preflight";
    ucp::cli::preflight(sc, {command});
    stage = command;
    return report({ucp::cli::run_command(command, sc, opt.jobs)});
  } catch (const ucp::Error& e) {
    std::fprintf(stderr, "ucplab: [%s] %s\n", stage.c_str(), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ucplab: [%s] internal error: %s\n", stage.c_str(), e.what());
    return kInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative unique continuation experiments"};
  app.require_subcommand(1);
  Options opt;
  std::string chosen;
  const char* commands[] = {"validate-fields", "kernel-table", "lift-report", "carleman-probe", "stability-run",
                            "run-all"};
  const char* help[] = {"check the coefficient hypotheses on sample points",
                        "kernel normalisation and boundary magnitudes per k",
                        "elliptic lift defects, bounds and residuals per k",
                        "Carleman ratio over bump families, tau and grids",
                        "stability experiment, delta sweep and rescaling checks",
                        "every command listed in the scenario"};
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i], help[i]);
    sub->add_option("--scenario", opt.scenario, "scenario JSON file")->required();
    sub->add_option("--out", opt.out, "output directory (overrides output_dir)");
    sub->add_option("--seed", opt.seed, "seed for sample points (overrides seed)");
    sub->add_option("--jobs", opt.jobs, "worker threads, 0 for one")->check(CLI::NonNegativeNumber);
    sub->callback([&chosen, name = std::string(commands[i])] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kSchema;
  }
  return run(chosen, opt);
}
