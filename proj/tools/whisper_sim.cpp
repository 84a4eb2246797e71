#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "whisper/acceptance.hpp"
#include "whisper/report.hpp"
#include "whisper/scenario.hpp"

namespace {

std::uint64_t resolve_seed(const whisper::ScenarioSpec& spec, bool seed_given,
                           std::uint64_t cli_seed) {
  if (seed_given) return cli_seed;
  if (const char* env = std::getenv("WHISPER_SIM_SEED")) return std::stoull(env);
  return spec.seed;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir, bool seed_given,
            std::uint64_t seed, int floods_override, int reps_override) {
  whisper::ScenarioSpec spec;
  try {
    spec = whisper::ScenarioSpec::parse_file(scenario_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  spec.seed = resolve_seed(spec, seed_given, seed);
  if (floods_override > 0) spec.floods = floods_override;
  if (reps_override > 0) spec.reps = reps_override;

  whisper::ExperimentConfig cfg;
  try {
    cfg = whisper::build_experiment(spec);
  } catch (const std::exception& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    if (what.rfind("unknown scenario name", 0) == 0) return 2;
    if (what.rfind("cannot open topology file", 0) == 0) return 3;
    return 1;
  }

  const whisper::MetricsReport report = whisper::run_experiment(cfg);
  std::filesystem::create_directories(out_dir);
  const std::vector<whisper::MetricsReport> reports{report};
  const std::vector<std::string> powers{spec.power};
  {
    std::ofstream out(out_dir + "/summary.csv");
    whisper::write_summary_csv(out, reports, powers);
  }
  {
    std::ofstream out(out_dir + "/per_node.csv");
    whisper::write_per_node_csv(out, reports);
  }
  {
    std::ofstream out(out_dir + "/first_counter_by_hop.csv");
    whisper::write_hop_histogram_csv(out, report);
  }
  whisper::write_summary_csv(std::cout, reports, powers);
  return 0;
}

int cmd_check(const std::string& suite) {
  try {
    const auto results = whisper::run_acceptance_suite(suite);
    const int failures = whisper::print_check_results(std::cout, results);
    std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " failed")
              << "\n";
    return failures == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_topo_info(const std::string& path) {
  whisper::Topology topo;
  try {
    topo = whisper::Topology::load_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::vector<int> disconnected;
  const int source = topo.node_ids().empty() ? 0 : topo.node_ids().front();
  const int diameter = topo.compute_diameter(source, 0.5, &disconnected);
  std::cout << "nodes: " << topo.node_count() << "\n"
            << "links: " << topo.links().size() << "\n"
            << "diameter from node " << source << ": " << diameter << "\n";
  if (!disconnected.empty()) {
    std::cout << "disconnected:";
    for (int id : disconnected) std::cout << " " << id;
    std::cout << "\n";
  }
  return 0;
}

int cmd_topo_export(const std::string& name, const std::string& path) {
  whisper::Topology topo;
  if (name == "flocklab-0dbm") {
    topo = whisper::make_flocklab_like_topology(whisper::TxPower::ZeroDbm);
  } else if (name == "flocklab-minus10dbm") {
    topo = whisper::make_flocklab_like_topology(whisper::TxPower::MinusTenDbm);
  } else if (name == "flocklab-0dbm-ideal") {
    topo = whisper::make_flocklab_like_topology(whisper::TxPower::ZeroDbm, true);
  } else if (name.rfind("line-", 0) == 0) {
    topo = whisper::make_line_topology(std::stoi(name.substr(5)));
  } else {
    std::cerr << "error: unknown builtin topology: " << name << "\n";
    return 1;
  }
  try {
    topo.save_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whisper/Glossy flooding simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int floods = 0;
  int reps = 0;
  auto* run = app.add_subcommand("run", "run a scenario file and emit CSV metrics");
  run->add_option("scenario", scenario_path, "scenario file path")->required();
  run->add_option("--out", out_dir, "output directory");
  auto* seed_opt = run->add_option("--seed", seed, "seed override");
  run->add_option("--floods", floods, "flood count override");
  run->add_option("--reps", reps, "repetition count override");

  std::string suite = "all";
  auto* check = app.add_subcommand("check", "run an acceptance suite");
  check->add_option("suite", suite, "timing|codec|ratio|idle|concurrent|compliant|preamble|all");

  auto* topo = app.add_subcommand("topo", "topology utilities");
  topo->require_subcommand(1);
  std::string topo_path;
  auto* info = topo->add_subcommand("info", "print node count, link count and diameter");
  info->add_option("file", topo_path, "topology file")->required();
  std::string export_name;
  std::string export_path;
  auto* exp = topo->add_subcommand("export", "write a builtin topology to a file");
  exp->add_option("name", export_name,
                  "flocklab-0dbm|flocklab-minus10dbm|flocklab-0dbm-ideal|line-N")
      ->required();
  exp->add_option("file", export_path, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return cmd_run(scenario_path, out_dir, seed_opt->count() > 0, seed, floods, reps);
  }
  if (check->parsed()) return cmd_check(suite);
  if (info->parsed()) return cmd_topo_info(topo_path);
  if (exp->parsed()) return cmd_topo_export(export_name, export_path);
  return 1;
}
