#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobles/agents.hpp"
#include "mobles/gridworld.hpp"

namespace mobles {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AgentEntry {
    AgentConfig config;
    // Overrides the experiment's sensor mode for this agent.
    std::optional<SensorMode> sensors;
};

struct ExperimentConfig {
    std::string env_id;
    std::filesystem::path map_path;
    SensorMode sensors = SensorMode::Two;
    std::vector<AgentEntry> agents;
    int episodes = 100;
    int runs = 15;
    std::uint64_t seed = 1;
    int max_steps = 2000;
    double slip_prob = kDefaultSlipProb;
    std::filesystem::path out_dir = "results";
    int parallel = 1;

    void validate() const;
};

// JSON document; relative map paths resolve against `base_dir`.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);
SensorMode parse_sensor_mode(int sensors);

struct RunRecord {
    std::string env;
    std::string agent;
    int run = 0;
    int episode = 0;
    double total_reward = 0.0;
    int steps = 0;
    bool reached_goal = false;
    bool truncated = false;
};

struct WeightRecord {
    std::string env;
    std::string agent;
    int run = 0;
    int episode = 0;
    std::string space;
    double weight = 0.0;
};

struct ExperimentResult {
    std::vector<RunRecord> returns;
    std::vector<WeightRecord> weights;
};

// Seed of run r.
inline std::uint64_t run_seed(std::uint64_t base_seed, int run) { return base_seed + static_cast<std::uint64_t>(run); }

// Runs every (agent, run) pair on a pool of config.parallel workers. Records
// are sorted by (agent order, run, episode, space order).
ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, const GridMaze& maze);

// One agent, one run: the unit of work run_experiment distributes.
void run_single(const AgentEntry& entry, const ExperimentConfig& config, const GridMaze& maze, int run,
                std::vector<RunRecord>& returns, std::vector<WeightRecord>& weights);

inline constexpr const char* kReturnsHeader = "env,agent,run,episode,return,steps,reached_goal,truncated";
inline constexpr const char* kWeightsHeader = "env,agent,run,episode,space,weight";

void write_returns_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_weights_csv(std::ostream& out, const std::vector<WeightRecord>& records);
// Writes returns.csv and weights.csv into `dir`; nothing is left behind on failure.
void write_results(const ExperimentResult& result, const std::filesystem::path& dir);

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<RunRecord> read_returns_csv(std::istream& in);
std::vector<WeightRecord> read_weights_csv(std::istream& in);
ExperimentResult read_results(const std::filesystem::path& dir);

struct Curve {
    std::string env;
    std::string agent;
    std::string space;  // empty for return curves
    std::vector<double> mean;
    std::vector<double> sem;
    int runs = 0;
    // SEM is reported as 0 when only one run exists.
    bool single_run = false;
};

// Per-episode mean and standard error (sample stddev / sqrt(runs)) for each
// (env, agent), in first-appearance order.
std::vector<Curve> aggregate(const std::vector<RunRecord>& records);
// Same for weights, one curve per (env, agent, space).
std::vector<Curve> aggregate(const std::vector<WeightRecord>& records);

// Centered moving average; the window shrinks symmetrically near the ends.
std::vector<double> smooth_rect(const std::vector<double>& series, int window);

// Mean of values[first-1 .. last-1] (1-based, inclusive).
double episode_mean(const std::vector<double>& values, int first, int last);

struct SweepPoint {
    AgentConfig config;
    double score = 0.0;  // mean return over all runs and episodes
};

struct SweepReport {
    std::vector<SweepPoint> points;
    // Index into points of the best setting per baseline agent entry.
    std::vector<std::size_t> best;
};

// Grid search for every baseline entry in the config: (lambda, alpha) for
// qlambda and qslambda, beta for ql-tile. Other agents are skipped.
SweepReport sweep(const ExperimentConfig& config);
void write_sweep_csv(std::ostream& out, const SweepReport& report);

}  // namespace mobles
