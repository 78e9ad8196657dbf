#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mobles/cdm.hpp"
#include "mobles/gridworld.hpp"
#include "mobles/model.hpp"
#include "mobles/planner.hpp"
#include "mobles/spaces.hpp"

namespace mobles {

enum class AgentKind { Mobles, MoblesThr, Mb, QLambda, QsLambda, QlTile };

const char* to_string(AgentKind kind);
AgentKind parse_agent_kind(const std::string& text);

inline constexpr int kNoThreshold = std::numeric_limits<int>::max();

// Step-size schedules. Alpha ids 1..7 (n is the number of earlier visits of
// the pair being updated); beta ids 1..5.
double alpha_schedule_value(int id, std::uint64_t n_sa, int episode);
double beta_schedule_value(int id, std::size_t num_subspaces, int episode);
inline constexpr int kNumAlphaSchedules = 7;
inline constexpr int kNumBetaSchedules = 5;
inline constexpr double kLambdaGrid[] = {1.0, 0.9, 0.5, 0.0};

struct AgentConfig {
    std::string name;
    AgentKind kind = AgentKind::Mobles;
    double epsilon = 0.1;
    double gamma = 0.9;
    double theta0 = 0.01;
    double delta_r = 0.1;
    double delta_p = 0.1;
    double lambda = 0.9;
    int alpha_schedule = 7;
    int beta_schedule = 1;
    // Constant step sizes that bypass the schedules (used by tests and sweeps).
    std::optional<double> alpha_value;
    std::optional<double> beta_value;
    // MoBLeS-Thr: subspaces are ignored for a pair once n_full(s,a) reaches this.
    int visit_threshold = 5;
    // Feature-name groups; unset means the default family for the sensor mode.
    std::optional<std::vector<std::vector<std::string>>> subspaces;
    // Run a full sweep of every table after each step instead of the single
    // backup at the visited pair.
    bool full_sweep_in_episode = false;
    // When false, every confidence degree is forced to zero.
    bool fusion = true;

    void validate() const;
    std::string display_name() const { return name.empty() ? to_string(kind) : name; }
};

// False once the full-space pair has been visited `threshold` times.
bool mobles_thr_gate(std::uint64_t n_full, int threshold);

struct Environment {
    const GridMaze* maze = nullptr;
    SensorMode mode = SensorMode::Two;
    int max_steps = 2000;
};

struct StepRecord {
    Cell state;
    int action = 0;
    double reward = 0.0;
    Cell next;
    DecisionWeights weights;
};

struct EpisodeLog {
    double total_reward = 0.0;
    int steps = 0;
    bool reached_goal = false;
    bool truncated = false;
    // Per-space mean decision weight over the episode: full space first.
    std::vector<double> mean_weights;
    std::vector<StepRecord> trace;
};

class Agent {
public:
    virtual ~Agent() = default;

    // Episodes are numbered from 1.
    EpisodeLog run_episode(const Environment& env, Rng& env_rng, Rng& agent_rng, int episode);

    // "full" followed by one name per subspace that takes part in decisions.
    virtual std::vector<std::string> space_names() const { return {"full"}; }
    virtual bool fuses_subspaces() const { return false; }

    void set_record_trace(bool on) { record_trace_ = on; }
    // Called after every learning step, with the 1-based step number.
    void set_step_hook(std::function<void(const Agent&, int)> hook) { step_hook_ = std::move(hook); }

protected:
    struct Decision {
        int action = 0;
        DecisionWeights weights;
    };

    virtual void begin_episode(int /*episode*/) {}
    virtual Decision act(Cell state, Rng& agent_rng) = 0;
    virtual void learn(Cell state, int action, const StepResult& result) = 0;
    virtual void end_episode(int /*episode*/) {}

    // Samples an index from a probability vector with one uniform draw.
    static int sample_action(std::span<const double> probs, Rng& rng);

private:
    bool record_trace_ = false;
    std::function<void(const Agent&, int)> step_hook_;
};

// Largest reward-interval length among the maze's reward laws.
double max_reward_len(const GridMaze& maze);

// Full-space model: one state per free cell, successors = the cell itself
// plus its free neighbours, goal terminal.
TabularModel make_full_model(const GridMaze& maze, const SpaceFamily& family, SensorMode mode);
// Subspace model: projected successor sets plus one terminal sink (the last
// state) standing for "episode ended".
TabularModel make_sub_model(const GridMaze& maze, const SpaceFamily& family, std::size_t sub, SensorMode mode);

// MoBLeS, MoBLeS-Thr and the plain model-based baseline (no subspaces, no
// bound tables).
class ModelBasedAgent final : public Agent {
public:
    ModelBasedAgent(const AgentConfig& config, const GridMaze& maze, SensorMode mode);

    std::vector<std::string> space_names() const override;
    bool fuses_subspaces() const override { return !subs_.empty(); }

    const SpaceFamily& family() const { return family_; }
    const TabularModel& full_model() const { return full_; }
    const std::vector<TabularModel>& sub_models() const { return subs_; }
    bool computes_bounds() const { return with_bounds_; }
    std::size_t full_index(Cell c) const;
    std::size_t sub_index(std::size_t sub, Cell c) const;
    std::size_t sink_index(std::size_t sub) const { return subs_[sub].num_states() - 1; }

    // Confidence degrees cds[x][a] for the current tables at `state`.
    std::vector<std::vector<double>> confidence_degrees(Cell state) const;

protected:
    Decision act(Cell state, Rng& agent_rng) override;
    void learn(Cell state, int action, const StepResult& result) override;
    void end_episode(int episode) override;

private:
    void local_update(TabularModel& model, std::size_t s, int a, const PlannerParams& params);

    AgentConfig config_;
    const GridMaze* maze_;
    SensorMode mode_;
    SpaceFamily family_;
    bool with_bounds_;
    int threshold_;
    TabularModel full_;
    std::vector<TabularModel> subs_;
    PlannerParams full_params_;
    PlannerParams sub_params_;
    // Indices cached per cell: [cell_key] -> full index, [sub][cell_key] -> sub index.
    std::vector<std::size_t> cell_full_;
    std::vector<std::vector<std::size_t>> cell_sub_;
    std::vector<double> full_probs_;
    std::vector<std::vector<double>> sub_probs_;
};

// Tables of a Watkins Q(lambda) learner over a dense state index.
struct QLambdaTables {
    QLambdaTables() = default;
    QLambdaTables(std::size_t num_states, int num_actions);

    ActionValues q;
    ActionValues trace;
    std::vector<std::uint64_t> visits;
    // Pairs whose trace may be nonzero.
    std::vector<std::size_t> live;
    std::vector<bool> is_live;

    void cut_traces();
};

struct QLambdaParams {
    double gamma = 0.9;
    double lambda = 0.9;
    int alpha_schedule = 7;
    std::optional<double> alpha_value;
    int episode = 1;
};

// delta = r + gamma max_a' Q(s', a') - Q(s, a) (no bootstrap when `next` is
// empty); e(s,a) += 1; Q += alpha delta e; e *= gamma lambda. Exploratory
// actions cut the traces through QLambdaTables::cut_traces before the step.
void qlambda_step(QLambdaTables& tables, std::size_t s, int a, double reward, std::optional<std::size_t> next,
                  const QLambdaParams& params);

class QLambdaAgent final : public Agent {
public:
    QLambdaAgent(const AgentConfig& config, const GridMaze& maze, SensorMode mode);
    const QLambdaTables& tables() const { return tables_; }

protected:
    void begin_episode(int episode) override;
    Decision act(Cell state, Rng& agent_rng) override;
    void learn(Cell state, int action, const StepResult& result) override;

private:
    AgentConfig config_;
    const GridMaze* maze_;
    SensorMode mode_;
    StateIndexer indexer_;
    QLambdaTables tables_;
    QLambdaParams params_;
    std::vector<double> probs_;
};

// Range of first-visit discounted returns within an episode of at most
// `horizon` steps whose rewards lie in [r_lo, r_hi].
ConfidenceInterval return_range(double r_lo, double r_hi, double gamma, int horizon);

// Q(lambda) in the full space and every subspace, with Hoeffding intervals
// over first-visit Monte-Carlo returns feeding the confidence-degree fusion.
class QsLambdaAgent final : public Agent {
public:
    QsLambdaAgent(const AgentConfig& config, const GridMaze& maze, SensorMode mode, int horizon);

    std::vector<std::string> space_names() const override;
    bool fuses_subspaces() const override { return !subs_.empty(); }

    ConfidenceInterval return_interval(std::size_t space, std::size_t s, int a) const;
    const ConfidenceInterval& range() const { return range_; }
    // Every first-visit return observed so far, per space (testing aid).
    const std::vector<std::vector<double>>& observed_returns() const { return observed_; }

protected:
    void begin_episode(int episode) override;
    Decision act(Cell state, Rng& agent_rng) override;
    void learn(Cell state, int action, const StepResult& result) override;
    void end_episode(int episode) override;

private:
    struct ReturnStats {
        std::vector<std::uint64_t> count;
        std::vector<double> mean;
    };
    std::size_t index_in(std::size_t space, Cell c) const;

    AgentConfig config_;
    const GridMaze* maze_;
    SensorMode mode_;
    SpaceFamily family_;
    std::vector<SubspaceDef> subs_;
    // Space 0 is the full space.
    std::vector<QLambdaTables> tables_;
    std::vector<ReturnStats> stats_;
    std::vector<std::vector<double>> observed_;
    ConfidenceInterval range_;
    QLambdaParams params_;
    struct Visit {
        Cell state;
        int action;
        double reward;
    };
    std::vector<Visit> episode_;
    std::vector<double> full_probs_;
    std::vector<std::vector<double>> sub_probs_;
};

// Linear Q-learning over tile features; every subspace and the full space is
// one tiling with one active tile per state.
struct TileWeights {
    std::vector<SubspaceDef> tilings;
    std::vector<ActionValues> weights;

    double value(std::span<const int> obs, int a) const;
};

void ql_tile_step(TileWeights& w, std::span<const int> obs, int a, double reward,
                  std::optional<std::vector<int>> next_obs, double gamma, double beta);

class QlTileAgent final : public Agent {
public:
    QlTileAgent(const AgentConfig& config, const GridMaze& maze, SensorMode mode);
    const TileWeights& weights() const { return weights_; }
    double q_value(Cell c, int a) const;

protected:
    void begin_episode(int episode) override;
    Decision act(Cell state, Rng& agent_rng) override;
    void learn(Cell state, int action, const StepResult& result) override;

private:
    AgentConfig config_;
    const GridMaze* maze_;
    SensorMode mode_;
    TileWeights weights_;
    double beta_ = 0.0;
    std::vector<double> q_row_;
    std::vector<double> probs_;
};

std::unique_ptr<Agent> make_agent(const AgentConfig& config, const GridMaze& maze, SensorMode mode, int max_steps);

// Resolves the subspace family an agent config asks for.
SpaceFamily resolve_family(const AgentConfig& config, const GridMaze& maze, SensorMode mode);

}  // namespace mobles
