#include "ucp/cli/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>

#include "ucp/error.hpp"

namespace ucp::cli {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::Schema, "cli", path + ": " + message);
}

std::string join(const std::string& path, const std::string& key) { return path + "." + key; }
std::string join(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// Walks one JSON object, rejecting unknown keys.
class Section {
 public:
  Section(const Json& j, std::string path, std::set<std::string> allowed) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) schema_error(path_, "expected an object");
    for (const auto& [key, value] : j.items())
      if (!allowed.count(key)) schema_error(join(path_, key), "unknown field");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const std::string& path() const { return path_; }
  const Json& at(const std::string& key) const { return j_.at(key); }

  void number(const std::string& key, double& out, double lo = -std::numeric_limits<double>::infinity(),
              bool lo_open = false) const {
    if (!has(key)) return;
    const Json& v = j_.at(key);
    if (!v.is_number()) schema_error(join(path_, key), "expected a number");
    const double x = v.get<double>();
    if (x < lo || (lo_open && x == lo))
      schema_error(join(path_, key), std::string("must be ") + (lo_open ? "> " : ">= ") + std::to_string(lo));
    out = x;
  }

  void integer(const std::string& key, int& out, int lo) const {
    if (!has(key)) return;
    out = read_int(j_.at(key), join(path_, key), lo);
  }

  void boolean(const std::string& key, bool& out) const {
    if (!has(key)) return;
    if (!j_.at(key).is_boolean()) schema_error(join(path_, key), "expected true or false");
    out = j_.at(key).get<bool>();
  }

  void string(const std::string& key, std::string& out) const {
    if (!has(key)) return;
    if (!j_.at(key).is_string()) schema_error(join(path_, key), "expected a string");
    out = j_.at(key).get<std::string>();
  }

  void int_list(const std::string& key, std::vector<int>& out, int lo, bool nonempty = true) const {
    if (!has(key)) return;
    const Json& v = j_.at(key);
    const std::string p = join(path_, key);
    if (!v.is_array()) schema_error(p, "expected an array");
    if (nonempty && v.empty()) schema_error(p, "must not be empty");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_int(v[i], join(p, i), lo));
  }

  void number_list(const std::string& key, std::vector<double>& out, double lo, bool lo_open,
                   bool nonempty = true) const {
    if (!has(key)) return;
    const Json& v = j_.at(key);
    const std::string p = join(path_, key);
    if (!v.is_array()) schema_error(p, "expected an array");
    if (nonempty && v.empty()) schema_error(p, "must not be empty");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) schema_error(join(p, i), "expected a number");
      const double x = v[i].get<double>();
      if (x < lo || (lo_open && x == lo))
        schema_error(join(p, i), std::string("must be ") + (lo_open ? "> " : ">= ") + std::to_string(lo));
      out.push_back(x);
    }
  }

 private:
  static int read_int(const Json& v, const std::string& p, int lo) {
    if (!v.is_number_integer()) schema_error(p, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > std::numeric_limits<int>::max()) schema_error(p, "must be an integer >= " + std::to_string(lo));
    return static_cast<int>(x);
  }

  const Json& j_;
  std::string path_;
};

template <typename T, typename Parse>
T enum_value(const Json& v, const std::string& path, const std::vector<std::string>& names, Parse parse) {
  if (!v.is_string()) schema_error(path, "expected a string");
  const auto s = v.get<std::string>();
  if (std::find(names.begin(), names.end(), s) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    schema_error(path, "unknown value '" + s + "' (expected one of " + list + ")");
  }
  return parse(s);
}

void parse_coefficients(const Json& j, PresetSpec& c) {
  const Section s(j, "$.coefficients",
                  {"preset", "dim", "diag", "kappa", "slope", "a", "b", "c", "lambda", "Lambda", "Lambda1", "rho0", "T"});
  if (s.has("preset"))
    c.preset = enum_value<FieldPreset>(s.at("preset"), join(s.path(), "preset"), {"identity", "diag", "lipschitz-bump"},
                                       parse_field_preset);
  if (s.has("dim")) {
    s.integer("dim", c.dim, 1);
    if (c.dim > 2) schema_error(join(s.path(), "dim"), "must be 1 or 2");
  }
  s.number_list("diag", c.diag, -std::numeric_limits<double>::infinity(), false, false);
  s.number("kappa", c.kappa);
  s.number("slope", c.slope);
  s.number("a", c.a);
  if (s.has("b")) {
    std::vector<double> b;
    s.number_list("b", b, -std::numeric_limits<double>::infinity(), false);
    if (b.size() > 2) schema_error(join(s.path(), "b"), "at most 2 components");
    c.b = Point{};
    for (std::size_t i = 0; i < b.size(); ++i) c.b[i] = b[i];
  }
  s.number("c", c.c);
  s.number("lambda", c.lambda);
  s.number("Lambda", c.Lambda);
  s.number("Lambda1", c.Lambda1);
  s.number("rho0", c.rho0);
  s.number("T", c.T);
}

void parse_solution(const Json& j, SolutionSpec& sol) {
  const Section s(j, "$.solution", {"family", "source", "mode", "amplitude", "nx", "nt", "cfl"});
  if (s.has("family"))
    sol.family = enum_value<SolutionFamily>(s.at("family"), join(s.path(), "family"), {"standing-wave", "zero"},
                                            parse_solution_family);
  if (s.has("source"))
    sol.source = enum_value<SolutionSource>(s.at("source"), join(s.path(), "source"), {"analytic", "fd"},
                                            parse_solution_source);
  s.integer("mode", sol.mode, 1);
  s.number("amplitude", sol.amplitude);
  s.integer("nx", sol.nx, 3);
  s.integer("nt", sol.nt, 0);
  s.number("cfl", sol.cfl, 0.0, true);
}

void parse_carleman(const Json& j, CarlemanSection& c) {
  const Section s(j, "$.carleman",
                  {"C_star", "tau0", "tau_factor", "tau_points", "families", "grids", "inner", "outer", "r0"});
  s.number("C_star", c.C_star);
  s.number("tau0", c.tau0, 0.0, true);
  s.number("tau_factor", c.tau_factor, 1.0);
  s.integer("tau_points", c.tau_points, 1);
  if (s.has("families")) {
    const Json& v = s.at("families");
    const std::string p = join(s.path(), "families");
    if (!v.is_array() || v.empty()) schema_error(p, "expected a non-empty array");
    c.families.clear();
    for (std::size_t i = 0; i < v.size(); ++i)
      c.families.push_back(
          enum_value<BumpFamily>(v[i], join(p, i), {"radial", "dipole", "vortex"}, parse_bump_family));
  }
  s.int_list("grids", c.grids, 5);
  s.number("inner", c.inner, 0.0);
  s.number("outer", c.outer, 0.0, true);
  s.number("r0", c.r0, 0.0, true);
}

void parse_stability(const Json& j, StabilitySection& st) {
  const Section s(j, "$.stability",
                  {"enabled", "t0", "r0", "rho", "H", "constants", "k_table", "deltas", "t0_list", "sucp",
                   "assert_margin"});
  s.boolean("enabled", st.enabled);
  s.number("t0", st.t0);
  s.number("r0", st.r0, 0.0, true);
  s.number("rho", st.rho, 0.0, true);
  s.number("H", st.H, 0.0);
  if (s.has("constants")) {
    const Section c(s.at("constants"), join(s.path(), "constants"), {"C", "s0", "k0", "C3", "alpha", "C2"});
    c.number("C", st.C, 0.0, true);
    c.number("s0", st.s0, 0.0, true);
    c.integer("k0", st.k0, 1);
    c.number("C3", st.C3, 0.0, true);
    c.number("alpha", st.alpha, 0.0, true);
    c.number("C2", st.C2, 0.0);
  }
  s.int_list("k_table", st.k_table, 1, false);
  s.number_list("deltas", st.deltas, 0.0, true);
  s.number_list("t0_list", st.t0_list, -std::numeric_limits<double>::infinity(), false, false);
  if (s.has("sucp")) {
    const Section u(s.at("sucp"), join(s.path(), "sucp"), {"N", "r0", "alphas"});
    u.int_list("N", st.sucp.N, 1);
    u.number_list("r0", st.sucp.r0, 0.0, true);
    u.number_list("alphas", st.sucp.alphas, 0.0, true);
  }
  s.boolean("assert_margin", st.assert_margin);
}

Json number_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json int_array(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

}  // namespace

Scenario parse_scenario(const Json& j) {
  Scenario sc;
  const Section s(j, "$",
                  {"name", "seed", "output_dir", "commands", "coefficients", "validation", "solution", "kernel", "lift",
                   "carleman", "stability"});
  s.string("name", sc.name);
  if (s.has("seed")) {
    const Json& v = s.at("seed");
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      schema_error("$.seed", "expected a non-negative integer");
    sc.seed = v.get<std::uint64_t>();
  }
  s.string("output_dir", sc.output_dir);
  if (s.has("commands")) {
    const Json& v = s.at("commands");
    if (!v.is_array() || v.empty()) schema_error("$.commands", "expected a non-empty array");
    sc.commands.clear();
    for (std::size_t i = 0; i < v.size(); ++i)
      sc.commands.push_back(
          enum_value<std::string>(v[i], join("$.commands", i), kCommands, [](const std::string& x) { return x; }));
  }
  if (s.has("coefficients")) parse_coefficients(s.at("coefficients"), sc.coefficients);
  if (s.has("validation")) {
    const Section v(s.at("validation"), "$.validation", {"samples"});
    int n = static_cast<int>(sc.validation_samples);
    v.integer("samples", n, 2);
    sc.validation_samples = static_cast<std::size_t>(n);
  }
  if (s.has("solution")) parse_solution(s.at("solution"), sc.solution);
  if (s.has("kernel")) {
    const Section k(s.at("kernel"), "$.kernel", {"k", "sup_grid"});
    k.int_list("k", sc.kernel.k, 1, false);
    k.integer("sup_grid", sc.kernel.sup_grid, 2);
  }
  if (s.has("lift")) {
    const Section l(s.at("lift"), "$.lift", {"k", "ny", "tolerance", "r0"});
    l.int_list("k", sc.lift.k, 1, false);
    l.integer("ny", sc.lift.ny, 2);
    l.number("tolerance", sc.lift.tolerance, 0.0, true);
    l.number("r0", sc.lift.r0, 0.0, true);
  }
  if (s.has("carleman")) parse_carleman(s.at("carleman"), sc.carleman);
  if (s.has("stability")) parse_stability(s.at("stability"), sc.stability);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cli", "cannot open scenario file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    schema_error("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(j);
}

Json to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["seed"] = s.seed;
  j["output_dir"] = s.output_dir;
  j["commands"] = s.commands;
  const auto& c = s.coefficients;
  j["coefficients"] = {{"preset", to_string(c.preset)},
                       {"dim", c.dim},
                       {"diag", number_array(c.diag)},
                       {"kappa", c.kappa},
                       {"slope", c.slope},
                       {"a", c.a},
                       {"b", number_array({c.b[0], c.b[1]})},
                       {"c", c.c},
                       {"lambda", c.lambda},
                       {"Lambda", c.Lambda},
                       {"Lambda1", c.Lambda1},
                       {"rho0", c.rho0},
                       {"T", c.T}};
  j["validation"] = {{"samples", s.validation_samples}};
  const auto& u = s.solution;
  j["solution"] = {{"family", to_string(u.family)},
                   {"source", to_string(u.source)},
                   {"mode", u.mode},
                   {"amplitude", u.amplitude},
                   {"nx", u.nx},
                   {"nt", u.nt},
                   {"cfl", u.cfl}};
  j["kernel"] = {{"k", int_array(s.kernel.k)}, {"sup_grid", s.kernel.sup_grid}};
  j["lift"] = {{"k", int_array(s.lift.k)}, {"ny", s.lift.ny}, {"tolerance", s.lift.tolerance}, {"r0", s.lift.r0}};
  const auto& cm = s.carleman;
  Json fams = Json::array();
  for (auto f : cm.families) fams.push_back(to_string(f));
  j["carleman"] = {{"C_star", cm.C_star}, {"tau0", cm.tau0},   {"tau_factor", cm.tau_factor},
                   {"tau_points", cm.tau_points}, {"families", fams}, {"grids", int_array(cm.grids)},
                   {"inner", cm.inner},   {"outer", cm.outer}, {"r0", cm.r0}};
  const auto& st = s.stability;
  j["stability"] = {{"enabled", st.enabled},
                    {"t0", st.t0},
                    {"r0", st.r0},
                    {"rho", st.rho},
                    {"H", st.H},
                    {"constants",
                     {{"C", st.C}, {"s0", st.s0}, {"k0", st.k0}, {"C3", st.C3}, {"alpha", st.alpha}, {"C2", st.C2}}},
                    {"k_table", int_array(st.k_table)},
                    {"deltas", number_array(st.deltas)},
                    {"t0_list", number_array(st.t0_list)},
                    {"sucp",
                     {{"N", int_array(st.sucp.N)}, {"r0", number_array(st.sucp.r0)},
                      {"alphas", number_array(st.sucp.alphas)}}},
                    {"assert_margin", st.assert_margin}};
  return j;
}

ExperimentSpec experiment_spec(const Scenario& s) {
  ExperimentSpec e;
  e.coefficients = s.coefficients;
  e.solution = s.solution;
  e.t0 = s.stability.t0;
  e.r0 = s.stability.r0;
  e.rho = s.stability.rho;
  e.H_declared = s.stability.H;
  e.constants.C = s.stability.C;
  e.constants.s0 = s.stability.s0;
  e.constants.k0 = s.stability.k0;
  e.constants.C3 = s.stability.C3;
  e.constants.alpha = s.stability.alpha;
  e.constants.C2 = s.stability.C2;
  e.constants.C_star = s.carleman.C_star;
  e.constants.tau0 = s.carleman.tau0;
  e.k_table = s.stability.k_table;
  return e;
}

}  // namespace ucp::cli
