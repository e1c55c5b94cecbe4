// wlanmab: run learning experiments, sweep the max-min oracle, list scenarios.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wlanmab/error.hpp"
#include "wlanmab/format.hpp"
#include "wlanmab/oracle.hpp"
#include "wlanmab/runner.hpp"
#include "wlanmab/scenario.hpp"

namespace {

using namespace wlanmab;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<std::size_t> parse_active(const Scenario& scenario, const std::string& ids) {
  if (ids == "all") return oracle::all_wlans(scenario);
  std::vector<std::size_t> active;
  for (const auto& id : split(ids, ',')) active.push_back(scenario.index_of(id));
  return active;
}

std::string describe(const Scenario& scenario, const ctmn::JointProfile& profile) {
  std::string out;
  for (std::size_t w = 0; w < profile.actions.size(); ++w) {
    if (profile.actions[w] == ctmn::kInactive) continue;
    if (!out.empty()) out += ' ';
    out += scenario.wlans[w].id + "=" + std::to_string(profile.actions[w]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralised WLAN spatial reuse and channel bonding with Thompson sampling"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run Thompson-sampling (or static) experiments over seeds");
  std::string run_scenario = "overlap2";
  std::size_t iterations = 0;
  std::size_t seed_count = 100;
  std::string seed_list;
  std::uint64_t master_seed = 0;
  std::string policy = "ts";
  std::string out_path;
  std::string format = "csv";
  std::size_t window = 100;
  run->add_option("--scenario", run_scenario, "Built-in scenario name or scenario file");
  run->add_option("--iterations", iterations, "Iterations per run (default 500, 1000 for grid4)")
      ->check(CLI::PositiveNumber);
  run->add_option("--seeds", seed_count, "Number of seeds, run as 1..N")->check(CLI::PositiveNumber);
  run->add_option("--seed-list", seed_list, "Explicit comma-separated seeds (overrides --seeds)");
  run->add_option("--master-seed", master_seed, "Master seed mixed into every agent stream");
  run->add_option("--policy", policy, "ts | static:k, or a comma-separated list with one per WLAN");
  run->add_option("--out", out_path, "Raw records output path")->required();
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--window", window, "Final-iteration window for action frequencies");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exhaustive max-min sweep over joint profiles");
  std::string oracle_scenario = "overlap2";
  std::string active_ids = "all";
  std::string oracle_out;
  orc->add_option("--scenario", oracle_scenario, "Built-in scenario name or scenario file");
  orc->add_option("--active", active_ids, "Comma-separated WLAN ids, or 'all'");
  orc->add_option("--out", oracle_out, "Per-profile CSV output path")->required();

  // scenarios
  auto* scen = app.add_subcommand("scenarios", "Inspect built-in scenarios");
  scen->require_subcommand(1);
  auto* scen_list = scen->add_subcommand("list", "List built-in scenario names");
  auto* scen_dump = scen->add_subcommand("dump", "Print a scenario in file form");
  std::string dump_name;
  scen_dump->add_option("name", dump_name, "Scenario name or file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) {
      runner::ExperimentConfig config;
      config.scenario = run_scenario;
      config.iterations = iterations > 0 ? iterations : runner::default_iterations(run_scenario);
      if (!seed_list.empty()) {
        for (const auto& s : split(seed_list, ',')) config.seeds.push_back(std::stoull(s));
      } else {
        config.seeds = runner::seed_range(seed_count);
      }
      config.master_seed = master_seed;
      for (const auto& p : split(policy, ',')) config.policies.push_back(bandits::parse_policy(p));
      config.out = out_path;
      config.format = format == "json" ? runner::OutputFormat::Json : runner::OutputFormat::Csv;
      config.final_window = window;
      const auto result = runner::run_experiment(config);
      for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
    } else if (orc->parsed()) {
      const Scenario scenario = resolve_scenario(oracle_scenario);
      const auto result = oracle::exhaustive_maxmin(scenario, parse_active(scenario, active_ids));
      std::ofstream out(oracle_out, std::ios::binary);
      if (!out) throw Error("cannot write " + oracle_out);
      out << oracle::to_csv(scenario, result);
      if (!out) throw Error("failed writing " + oracle_out);
      std::cout << "profiles: " << result.table.size() << '\n'
                << "best min throughput (bps): " << format_double(result.best_minmax) << '\n';
      for (const auto& p : result.best_profiles) std::cout << "optimal: " << describe(scenario, p) << '\n';
    } else if (scen_list->parsed()) {
      for (const auto& name : builtin_scenario_names()) std::cout << name << '\n';
    } else if (scen_dump->parsed()) {
      std::cout << serialize_scenario(resolve_scenario(dump_name));
    }
  } catch (const std::exception& e) {
    std::cerr << "wlanmab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
