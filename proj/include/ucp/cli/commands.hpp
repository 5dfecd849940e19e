#pragma once

#include <string>
#include <vector>

#include "ucp/cli/scenario.hpp"

namespace ucp::cli {

struct Assertion {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CommandResult {
  std::string command;
  std::vector<std::string> files;
  std::vector<Assertion> assertions;

  bool ok() const;
};

/// Cheap domain checks for the listed commands, run before any computation.
/// Throws the same errors the computation would (Configuration, Domain, ...).
void preflight(const Scenario& sc, const std::vector<std::string>& commands);

/// Runs one of kCommands and writes <out>/<command>.csv and <command>.json
/// (stability-run adds _table, _rescaling and _sucp tables). Every JSON report
/// embeds to_json(sc). Output does not depend on `jobs`.
CommandResult run_command(const std::string& command, const Scenario& sc, int jobs = 0);

/// Preflight, then every command of sc.commands in order (stability-run is
/// skipped when disabled), then <out>/run-all.json.
std::vector<CommandResult> run_all(const Scenario& sc, int jobs = 0);

}  // namespace ucp::cli
