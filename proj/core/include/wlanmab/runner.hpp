#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wlanmab/bandits.hpp"
#include "wlanmab/ctmn.hpp"
#include "wlanmab/scenario.hpp"

namespace wlanmab::runner {

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  std::string scenario = "overlap2";  // built-in name or scenario file
  std::size_t iterations = 500;
  std::vector<std::uint64_t> seeds;   // one run per entry
  std::uint64_t master_seed = 0;
  // Empty: Thompson sampling everywhere. One entry: applied to every WLAN.
  std::vector<bandits::Policy> policies;
  std::filesystem::path out;
  OutputFormat format = OutputFormat::Csv;
  std::size_t final_window = 100;
};

/// Default iteration count for a built-in scenario (1000 for grid4, else 500).
std::size_t default_iterations(std::string_view scenario);

std::vector<std::uint64_t> seed_range(std::size_t count);

void validate(const ExperimentConfig& config);

struct RunRecord {
  std::uint64_t seed = 0;
  std::size_t iteration = 0;
  std::size_t wlan = 0;  // scenario index
  int action = 0;
  double throughput_bps = 0.0;
  double reward = 0.0;
  double min_throughput_bps = 0.0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Called once per iteration, after activations (and any reset) and before selection.
using IterationObserver =
    std::function<void(std::size_t iteration, bool reset, std::span<const bandits::Agent> agents)>;

/// Iterated select -> simulate -> reward -> update loop. Throughput per joint
/// profile is memoised, so one Simulator can serve many seeds.
class Simulator {
 public:
  Simulator(Scenario scenario, std::vector<bandits::Policy> policies, std::uint64_t master_seed = 0);

  std::vector<RunRecord> run(std::size_t iterations, std::uint64_t seed, const IterationObserver& observer = {});

  const Scenario& scenario() const { return scenario_; }
  const std::vector<double>& caps() const { return caps_; }
  const ctmn::ThroughputReport& report(const ctmn::JointProfile& profile);

 private:
  Scenario scenario_;
  std::vector<bandits::Policy> policies_;
  std::uint64_t master_seed_;
  std::vector<double> caps_;
  std::map<std::vector<int>, ctmn::ThroughputReport> memo_;
};

std::vector<RunRecord> run_single(const Scenario& scenario, const ExperimentConfig& config, std::uint64_t seed);

struct EvolutionRow {
  std::size_t iteration = 0;
  double mean_min_bps = 0.0;
  double p25_min_bps = 0.0;
  double median_min_bps = 0.0;
  double p75_min_bps = 0.0;
  double mean_reward = 0.0;
};

struct ActionFrequency {
  std::size_t wlan = 0;
  int action = 0;
  double frequency = 0.0;
};

struct Summary {
  std::vector<EvolutionRow> evolution;
  std::vector<ActionFrequency> action_frequencies;  // K rows per WLAN
};

/// Per-iteration statistics of min-throughput across seeds, and per-WLAN
/// action frequencies over iterations (T - window, T].
Summary summarize(const Scenario& scenario, std::span<const RunRecord> records, std::size_t iterations,
                  std::size_t window);

/// Most frequent joint profile of one seed's records over iterations [first, last].
/// Ties go to the lexicographically smallest profile.
ctmn::JointProfile modal_profile(const Scenario& scenario, std::span<const RunRecord> records, std::uint64_t seed,
                                 std::size_t first, std::size_t last);

std::string records_csv(const Scenario& scenario, std::span<const RunRecord> records);
std::string records_json(const Scenario& scenario, std::span<const RunRecord> records);
std::string evolution_csv(const Summary& summary);
std::string actions_csv(const Scenario& scenario, const Summary& summary);
std::string summary_json(const Scenario& scenario, const Summary& summary);

struct ExperimentOutput {
  Summary summary;
  std::vector<std::filesystem::path> files;
};

/// Runs every seed in ascending order and writes the raw records plus summary files.
ExperimentOutput run_experiment(const ExperimentConfig& config);

}  // namespace wlanmab::runner
