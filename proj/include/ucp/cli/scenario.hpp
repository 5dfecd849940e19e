#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucp/carleman.hpp"
#include "ucp/fields.hpp"
#include "ucp/stability.hpp"

namespace ucp::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string> kCommands = {"validate-fields", "kernel-table", "lift-report", "carleman-probe",
                                                   "stability-run"};

struct KernelSection {
  std::vector<int> k{2, 4};
  int sup_grid = 201;
};

struct LiftSection {
  std::vector<int> k{2, 4, 8};
  int ny = 33;
  double tolerance = 1e-8;
  double r0 = 0.25;
};

struct CarlemanSection {
  double C_star = 4.0;
  double tau0 = 4.0;
  double tau_factor = 4.0;  // tau sweeps [tau0, tau_factor * tau0]
  int tau_points = 8;
  std::vector<BumpFamily> families{BumpFamily::Radial, BumpFamily::Dipole, BumpFamily::Vortex};
  std::vector<int> grids{65, 129};  // nodes per axis of the (x, y) grid
  double inner = 0.25;
  double outer = 0.75;
  double r0 = 0.5;  // for the cutoff report
};

struct SucpSection {
  std::vector<int> N{2, 4, 8, 16, 32};
  std::vector<double> r0{1e-2, 1e-3, 1e-4};
  std::vector<double> alphas{0.1, 0.25, 0.4};
};

struct StabilitySection {
  bool enabled = true;
  double t0 = 0.0;
  double r0 = 0.01;
  double rho = 0.05;
  double H = 0.0;  // declared a priori bound; 0 means measured
  double C = 10.0;
  double s0 = 0.1;
  int k0 = 4;
  double C3 = 4.0;
  double alpha = 0.25;
  double C2 = 0.0;
  std::vector<int> k_table{4, 8, 16};
  std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  std::vector<double> t0_list{0.0, 0.25, 0.5};
  SucpSection sucp;
  bool assert_margin = false;
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  std::vector<std::string> commands = kCommands;
  PresetSpec coefficients;
  std::size_t validation_samples = 256;
  SolutionSpec solution;
  KernelSection kernel;
  LiftSection lift;
  CarlemanSection carleman;
  StabilitySection stability;
};

/// Throws Error(Schema) naming the JSON path of the first offending field.
Scenario parse_scenario(const Json& j);
/// Reads and parses a scenario file. Io for unreadable files, Schema for invalid JSON.
Scenario load_scenario(const std::string& path);
/// Every field, defaults included.
Json to_json(const Scenario& s);

/// Experiment spec of the stability section at amplitude 1.
ExperimentSpec experiment_spec(const Scenario& s);

}  // namespace ucp::cli
