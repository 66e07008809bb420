// cosserat_cli: runs the verification suites and the worldline simulation.
//
//   cosserat_cli --suite all --json report.json
//   cosserat_cli simulate weyssenhoff-worldline --config samples/generic.ini --output traj.csv

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "cosserat/suites.hpp"

namespace {

using namespace cosserat;
namespace fs = std::filesystem;

constexpr int kUsageError = 2;

struct Options {
  std::string suite;
  std::string config;
  std::string json;
  std::string output;
  std::string kind;
  std::optional<std::uint64_t> seed;
  std::vector<int> grid;
  std::optional<int> steps;
  std::optional<double> dtau;
};

suites::Config resolve_config(const Options& o) {
  std::string path = o.config;
  if (const char* env = std::getenv("COSSERAT_CONFIG"); env && *env) path = env;
  suites::Config cfg = path.empty() ? suites::Config{} : suites::load_config(path);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.grid.empty()) suites::set_grids(cfg, o.grid);
  if (o.steps) cfg.steps = *o.steps;
  if (o.dtau) cfg.dtau = *o.dtau;
  suites::validate(cfg);
  return cfg;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw suites::ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

nlohmann::json vec_json(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

int run_suite(const Options& o) {
  const suites::Config cfg = resolve_config(o);
  const suites::SuiteReport report = suites::run_suite(o.suite, cfg);
  std::cout << std::setprecision(6) << report.to_text();
  if (!o.json.empty()) write_json(o.json, report.to_json());
  return report.passed() ? 0 : 1;
}

void write_trajectory(const std::string& path, const weyssenhoff::Trajectory& tr) {
  std::ofstream out(path);
  if (!out) throw suites::ConfigError("cannot write '" + path + "'");
  if (fs::path(path).extension() == ".json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : tr.records) {
      const auto s = weyssenhoff::spin_components(r.s);
      rows.push_back({{"tau", r.tau},
                      {"x", vec_json(r.x)},
                      {"u", vec_json(r.u)},
                      {"s", s},
                      {"drift_u2", r.drift_u2},
                      {"drift_su", r.drift_su},
                      {"drift_spin", r.drift_spin},
                      {"drift_g", r.drift_g}});
    }
    out << rows.dump(1) << '\n';
    return;
  }
  out << "tau,x0,x1,x2,x3,u0,u1,u2,u3,s01,s02,s03,s12,s13,s23,drift_u2,drift_su,drift_spin,drift_g\n";
  out << std::setprecision(17);
  for (const auto& r : tr.records) {
    out << r.tau;
    for (int i = 0; i < 4; ++i) out << ',' << r.x[i];
    for (int i = 0; i < 4; ++i) out << ',' << r.u[i];
    for (double v : weyssenhoff::spin_components(r.s)) out << ',' << v;
    out << ',' << r.drift_u2 << ',' << r.drift_su << ',' << r.drift_spin << ',' << r.drift_g << '\n';
  }
}

int simulate(const Options& o) {
  if (o.kind != "weyssenhoff-worldline") {
    std::cerr << "simulate: unknown kind '" << o.kind << "' (expected weyssenhoff-worldline)\n";
    return kUsageError;
  }
  const suites::Config cfg = resolve_config(o);
  weyssenhoff::Trajectory tr;
  try {
    tr = weyssenhoff::integrate_worldline(suites::initial_element(cfg), cfg.steps, cfg.dtau, cfg.units, cfg.worldline);
  } catch (const std::invalid_argument& e) {
    std::cerr << "simulate: initial data refused\n  " << e.what() << '\n';
    return kUsageError;
  } catch (const std::runtime_error& e) {
    std::cerr << "simulate: integration stopped\n  " << e.what() << '\n';
    return 1;
  }
  write_trajectory(o.output, tr);

  const auto& d = tr.diagnostics;
  const nlohmann::json summary{{"kind", o.kind},
                               {"steps", cfg.steps},
                               {"dtau", cfg.dtau},
                               {"records", tr.records.size()},
                               {"output", o.output},
                               {"final", {{"x", vec_json(tr.final_state.x)}, {"u", vec_json(tr.final_state.u)}}},
                               {"diagnostics",
                                {{"max_u2_drift", d.max_u2},
                                 {"max_su_drift", d.max_su},
                                 {"max_spin_drift", d.max_spin},
                                 {"max_g_drift", d.max_g},
                                 {"max_closure_residual", d.max_closure},
                                 {"max_velocity_change", d.max_velocity_change}}}};
  std::cout << summary.dump(2) << '\n';
  if (!o.json.empty()) write_json(o.json, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic Cosserat verification suites and worldline simulation"};
  Options o;
  app.add_option("--suite", o.suite, "algebra | forms | cosserat | dirac | weyssenhoff | all")
      ->check(CLI::IsMember(suites::suite_names()));
  app.add_option("--config", o.config, "INI config (COSSERAT_CONFIG overrides)");
  app.add_option("--json", o.json, "write the JSON report here");
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--grid", o.grid, "coarse[,fine] grid sizes, fine = 2*coarse-1")->delimiter(',');
  app.add_option("--steps", o.steps, "worldline steps");
  app.add_option("--dtau", o.dtau, "worldline proper-time step");

  auto* sim = app.add_subcommand("simulate", "integrate a single spinning element");
  sim->add_option("kind", o.kind, "weyssenhoff-worldline")->required();
  sim->add_option("--output", o.output, "trajectory file (.csv or .json)")->required();
  sim->add_option("--config", o.config, "INI config with an [initial] block");
  sim->add_option("--json", o.json, "write the summary here");
  sim->add_option("--steps", o.steps, "worldline steps");
  sim->add_option("--dtau", o.dtau, "worldline proper-time step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (sim->parsed()) return simulate(o);
    if (o.suite.empty()) {
      std::cerr << app.help();
      return kUsageError;
    }
    return run_suite(o);
  } catch (const suites::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kUsageError;
  }
}
