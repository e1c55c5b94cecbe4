#include "wlanmab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wlanmab/error.hpp"
#include "wlanmab/format.hpp"

namespace wlanmab::runner {

using nlohmann::ordered_json;

std::size_t default_iterations(std::string_view scenario) { return scenario == "grid4" ? 1000 : 500; }

std::vector<std::uint64_t> seed_range(std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = i + 1;
  return seeds;
}

void validate(const ExperimentConfig& config) {
  if (config.iterations < 1) throw Error("iterations must be at least 1");
  if (config.seeds.empty()) throw Error("at least one seed is required");
  if (std::set<std::uint64_t>(config.seeds.begin(), config.seeds.end()).size() != config.seeds.size()) {
    throw Error("seeds must be distinct");
  }
}

namespace {

std::vector<bandits::Policy> expand_policies(const Scenario& scenario, std::vector<bandits::Policy> policies) {
  const std::size_t n = scenario.wlans.size();
  if (policies.empty()) {
    policies.assign(n, bandits::ThompsonSampling{});
  } else if (policies.size() == 1) {
    policies.assign(n, policies.front());
  } else if (policies.size() != n) {
    throw Error("expected 1 or " + std::to_string(n) + " policies, got " + std::to_string(policies.size()));
  }
  for (const auto& p : policies) {
    if (const auto* s = std::get_if<bandits::Static>(&p)) {
      scenario.action(s->arm);
    }
  }
  return policies;
}

bool is_active(const Wlan& w, std::size_t t) { return static_cast<std::size_t>(w.activation_iteration) <= t; }

}  // namespace

Simulator::Simulator(Scenario scenario, std::vector<bandits::Policy> policies, std::uint64_t master_seed)
    : scenario_(std::move(scenario)), master_seed_(master_seed) {
  validate(scenario_);
  policies_ = expand_policies(scenario_, std::move(policies));
  caps_ = ctmn::standalone_caps(scenario_);
}

const ctmn::ThroughputReport& Simulator::report(const ctmn::JointProfile& profile) {
  auto it = memo_.find(profile.actions);
  if (it == memo_.end()) {
    it = memo_.emplace(profile.actions, ctmn::throughput(scenario_, profile)).first;
  }
  return it->second;
}

std::vector<RunRecord> Simulator::run(std::size_t iterations, std::uint64_t seed, const IterationObserver& observer) {
  const std::size_t n = scenario_.wlans.size();
  std::vector<bandits::Agent> agents;
  agents.reserve(n);
  for (std::size_t w = 0; w < n; ++w) {
    agents.emplace_back(scenario_.num_actions(), bandits::derive_stream_seed(master_seed_, seed, w));
  }

  std::vector<RunRecord> records;
  ctmn::JointProfile profile{std::vector<int>(n, ctmn::kInactive)};
  std::vector<std::size_t> active;

  for (std::size_t t = 1; t <= iterations; ++t) {
    bool activated = false;
    active.clear();
    for (std::size_t w = 0; w < n; ++w) {
      const Wlan& wlan = scenario_.wlans[w];
      if (static_cast<std::size_t>(wlan.activation_iteration) == t) activated = true;
      if (is_active(wlan, t)) active.push_back(w);
    }
    if (activated) {
      for (auto& agent : agents) agent.reset();
    }
    if (observer) observer(t, activated, agents);
    if (active.empty()) continue;

    std::fill(profile.actions.begin(), profile.actions.end(), ctmn::kInactive);
    for (std::size_t w : active) {
      profile.actions[w] = bandits::select(policies_[w], agents[w]);
    }
    const ctmn::ThroughputReport& tput = report(profile);
    const double reward = bandits::shared_reward(tput, caps_, active);
    const double min_bps = tput.min_over(active);
    for (std::size_t w : active) {
      if (std::holds_alternative<bandits::ThompsonSampling>(policies_[w])) {
        agents[w].update(profile.actions[w], reward);
      }
      records.push_back({seed, t, w, profile.actions[w], tput.bps[w], reward, min_bps});
    }
  }
  return records;
}

std::vector<RunRecord> run_single(const Scenario& scenario, const ExperimentConfig& config, std::uint64_t seed) {
  if (config.iterations < 1) throw Error("iterations must be at least 1");
  Simulator sim(scenario, config.policies, config.master_seed);
  return sim.run(config.iterations, seed);
}

namespace {

// Linear interpolation between closest ranks.
double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

Summary summarize(const Scenario& scenario, std::span<const RunRecord> records, std::size_t iterations,
                  std::size_t window) {
  Summary summary;
  const std::size_t k = scenario.num_actions();
  const std::size_t n = scenario.wlans.size();

  // One min-throughput and reward sample per (seed, iteration).
  std::vector<std::vector<double>> mins(iterations + 1);
  std::vector<std::vector<double>> rewards(iterations + 1);
  std::set<std::pair<std::uint64_t, std::size_t>> seen;
  std::vector<std::vector<std::size_t>> counts(n, std::vector<std::size_t>(k, 0));
  const std::size_t first_counted = iterations > window ? iterations - window + 1 : 1;

  for (const RunRecord& r : records) {
    if (r.iteration < 1 || r.iteration > iterations) continue;
    if (seen.emplace(r.seed, r.iteration).second) {
      mins[r.iteration].push_back(r.min_throughput_bps);
      rewards[r.iteration].push_back(r.reward);
    }
    if (r.iteration >= first_counted) {
      counts.at(r.wlan).at(static_cast<std::size_t>(r.action - 1)) += 1;
    }
  }

  for (std::size_t t = 1; t <= iterations; ++t) {
    if (mins[t].empty()) continue;
    EvolutionRow row;
    row.iteration = t;
    double sum = 0.0;
    for (double v : mins[t]) sum += v;
    row.mean_min_bps = sum / static_cast<double>(mins[t].size());
    row.p25_min_bps = percentile(mins[t], 0.25);
    row.median_min_bps = percentile(mins[t], 0.5);
    row.p75_min_bps = percentile(mins[t], 0.75);
    double rsum = 0.0;
    for (double v : rewards[t]) rsum += v;
    row.mean_reward = rsum / static_cast<double>(rewards[t].size());
    summary.evolution.push_back(row);
  }

  for (std::size_t w = 0; w < n; ++w) {
    std::size_t total = 0;
    for (std::size_t c : counts[w]) total += c;
    for (std::size_t a = 0; a < k; ++a) {
      const double f = total == 0 ? 0.0 : static_cast<double>(counts[w][a]) / static_cast<double>(total);
      summary.action_frequencies.push_back({w, static_cast<int>(a + 1), f});
    }
  }
  return summary;
}

ctmn::JointProfile modal_profile(const Scenario& scenario, std::span<const RunRecord> records, std::uint64_t seed,
                                 std::size_t first, std::size_t last) {
  std::map<std::size_t, std::vector<int>> per_iteration;
  for (const RunRecord& r : records) {
    if (r.seed != seed || r.iteration < first || r.iteration > last) continue;
    auto [it, inserted] = per_iteration.try_emplace(r.iteration, scenario.wlans.size(), ctmn::kInactive);
    it->second.at(r.wlan) = r.action;
  }
  std::map<std::vector<int>, std::size_t> tally;
  for (const auto& [t, actions] : per_iteration) tally[actions] += 1;
  if (tally.empty()) {
    throw Error("no records for seed " + std::to_string(seed) + " in the requested window");
  }
  auto best = tally.begin();
  for (auto it = tally.begin(); it != tally.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return ctmn::JointProfile{best->first};
}

std::string records_csv(const Scenario& scenario, std::span<const RunRecord> records) {
  std::ostringstream out;
  out << "#schema=1\n";
  out << "seed,iteration,wlan,action,throughput_bps,reward,min_throughput_bps\n";
  for (const RunRecord& r : records) {
    out << r.seed << ',' << r.iteration << ',' << scenario.wlans.at(r.wlan).id << ',' << r.action << ','
        << format_double(r.throughput_bps) << ',' << format_double(r.reward) << ','
        << format_double(r.min_throughput_bps) << '\n';
  }
  return out.str();
}

std::string records_json(const Scenario& scenario, std::span<const RunRecord> records) {
  ordered_json rows = ordered_json::array();
  for (const RunRecord& r : records) {
    rows.push_back({{"seed", r.seed},
                    {"iteration", r.iteration},
                    {"wlan", scenario.wlans.at(r.wlan).id},
                    {"action", r.action},
                    {"throughput_bps", r.throughput_bps},
                    {"reward", r.reward},
                    {"min_throughput_bps", r.min_throughput_bps}});
  }
  ordered_json doc = {{"schema", 1}, {"scenario", scenario.name}, {"records", rows}};
  return doc.dump() + "\n";
}

std::string evolution_csv(const Summary& summary) {
  std::ostringstream out;
  out << "#schema=1\n";
  out << "iteration,mean_min_throughput_bps,p25_min_throughput_bps,median_min_throughput_bps,"
         "p75_min_throughput_bps,mean_reward\n";
  for (const EvolutionRow& r : summary.evolution) {
    out << r.iteration << ',' << format_double(r.mean_min_bps) << ',' << format_double(r.p25_min_bps) << ','
        << format_double(r.median_min_bps) << ',' << format_double(r.p75_min_bps) << ','
        << format_double(r.mean_reward) << '\n';
  }
  return out.str();
}

std::string actions_csv(const Scenario& scenario, const Summary& summary) {
  std::ostringstream out;
  out << "#schema=1\n";
  out << "wlan,action,frequency\n";
  for (const ActionFrequency& f : summary.action_frequencies) {
    out << scenario.wlans.at(f.wlan).id << ',' << f.action << ',' << format_double(f.frequency) << '\n';
  }
  return out.str();
}

std::string summary_json(const Scenario& scenario, const Summary& summary) {
  ordered_json evolution = ordered_json::array();
  for (const EvolutionRow& r : summary.evolution) {
    evolution.push_back({{"iteration", r.iteration},
                         {"mean_min_throughput_bps", r.mean_min_bps},
                         {"p25_min_throughput_bps", r.p25_min_bps},
                         {"median_min_throughput_bps", r.median_min_bps},
                         {"p75_min_throughput_bps", r.p75_min_bps},
                         {"mean_reward", r.mean_reward}});
  }
  ordered_json freqs = ordered_json::array();
  for (const ActionFrequency& f : summary.action_frequencies) {
    freqs.push_back({{"wlan", scenario.wlans.at(f.wlan).id}, {"action", f.action}, {"frequency", f.frequency}});
  }
  ordered_json doc = {{"schema", 1}, {"evolution", evolution}, {"action_frequencies", freqs}};
  return doc.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

std::filesystem::path sibling(const std::filesystem::path& out, const std::string& suffix) {
  std::filesystem::path p = out;
  p.replace_extension();
  p += suffix;
  return p;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  validate(config);
  if (config.out.empty()) throw Error("an output path is required");

  const Scenario scenario = resolve_scenario(config.scenario);
  Simulator sim(scenario, config.policies, config.master_seed);

  std::vector<std::uint64_t> seeds = config.seeds;
  std::sort(seeds.begin(), seeds.end());
  std::vector<RunRecord> records;
  for (std::uint64_t seed : seeds) {
    auto run = sim.run(config.iterations, seed);
    records.insert(records.end(), run.begin(), run.end());
  }

  ExperimentOutput result;
  result.summary = summarize(scenario, records, config.iterations, config.final_window);
  if (config.format == OutputFormat::Csv) {
    write_file(config.out, records_csv(scenario, records));
    const auto evo = sibling(config.out, ".evolution.csv");
    const auto act = sibling(config.out, ".actions.csv");
    write_file(evo, evolution_csv(result.summary));
    write_file(act, actions_csv(scenario, result.summary));
    result.files = {config.out, evo, act};
  } else {
    write_file(config.out, records_json(scenario, records));
    const auto sum = sibling(config.out, ".summary.json");
    write_file(sum, summary_json(scenario, result.summary));
    result.files = {config.out, sum};
  }
  return result;
}

}  // namespace wlanmab::runner
