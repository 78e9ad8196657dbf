#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace mobles {

// Dense (state, action) table.
class ActionValues {
public:
    ActionValues() = default;
    ActionValues(std::size_t num_states, int num_actions, double init = 0.0)
        : num_states_(num_states), num_actions_(num_actions),
          data_(num_states * static_cast<std::size_t>(num_actions), init) {}

    double& operator()(std::size_t s, int a) { return data_[s * static_cast<std::size_t>(num_actions_) + a]; }
    double operator()(std::size_t s, int a) const { return data_[s * static_cast<std::size_t>(num_actions_) + a]; }

    std::span<const double> row(std::size_t s) const {
        return {data_.data() + s * static_cast<std::size_t>(num_actions_), static_cast<std::size_t>(num_actions_)};
    }
    double max_over_actions(std::size_t s) const;

    std::size_t num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t num_states_ = 0;
    int num_actions_ = 0;
    std::vector<double> data_;
};

enum class SpaceKind { Full, Subspace };

// Empirical MDP for one space (the full space or a subspace).
//
// States with an empty successor list and no terminal flag are inactive:
// they never appear in planning sweeps. Terminal states have value 0.
// Successor sets are per state and shared by all actions.
class TabularModel {
public:
    TabularModel() = default;
    TabularModel(std::size_t num_states, int num_actions, std::vector<std::vector<std::size_t>> successors,
                 std::vector<bool> terminal, double prior_reward_len);

    std::size_t num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    bool terminal(std::size_t s) const { return terminal_[s]; }
    bool active(std::size_t s) const { return !terminal_[s] && !successors_[s].empty(); }
    // Active states in ascending order; planning sweeps visit them in this order.
    const std::vector<std::size_t>& active_states() const { return active_; }
    std::span<const std::size_t> successors(std::size_t s) const { return successors_[s]; }

    // R_hat <- (R_hat n + r) / (n + 1); n(s,a,s') += 1; sum_sq_len += len^2.
    // A successor outside the declared set is appended (with a warning).
    void update(std::size_t s, int a, std::size_t next, double reward, double reward_len);

    std::uint64_t count(std::size_t s, int a) const { return visits_[sa(s, a)]; }
    std::uint64_t count(std::size_t s, int a, std::size_t next) const;
    std::span<const std::uint64_t> successor_counts(std::size_t s, int a) const { return counts_[sa(s, a)]; }
    double reward_mean(std::size_t s, int a) const { return reward_mean_[sa(s, a)]; }
    double sum_sq_len(std::size_t s, int a) const { return sum_sq_len_[sa(s, a)]; }
    // Largest reward-interval length seen at (s, a), or the prior when unvisited.
    double reward_len(std::size_t s, int a) const;
    double prior_reward_len() const { return prior_reward_len_; }
    std::size_t unexpected_successors() const { return unexpected_successors_; }

    // Maximum-likelihood ratio; uniform over successors(s) while n(s,a) = 0.
    double estimated_prob(std::size_t s, int a, std::size_t next) const;
    // Probabilities aligned with successors(s).
    void estimated_probs(std::size_t s, int a, std::vector<double>& out) const;

    ActionValues q;
    ActionValues q_upper;
    ActionValues q_lower;

private:
    std::size_t sa(std::size_t s, int a) const { return s * static_cast<std::size_t>(num_actions_) + a; }

    std::size_t num_states_ = 0;
    int num_actions_ = 0;
    double prior_reward_len_ = 1.0;
    std::vector<std::vector<std::size_t>> successors_;
    std::vector<bool> terminal_;
    std::vector<std::size_t> active_;
    std::vector<std::vector<std::uint64_t>> counts_;
    std::vector<std::uint64_t> visits_;
    std::vector<double> reward_mean_;
    std::vector<double> sum_sq_len_;
    std::vector<double> max_len_;
    std::size_t unexpected_successors_ = 0;
};

// Hoeffding half-width for a mean of n samples sharing one interval length.
double hoeffding_radius_uniform(double len, double n, double delta_r);
// Hoeffding half-width for n samples whose interval lengths have squared sum sum_sq_len.
double hoeffding_radius(double sum_sq_len, double n, double delta_r);
// L1 radius for an empirical distribution over m outcomes, clamped to [0, 2].
double weissman_radius(std::size_t m, double n, double delta_p);

// Both use the effective count max{1, n(s,a)}. Unvisited subspace pairs
// count the prior interval length as a single pseudo-sample.
double reward_radius(const TabularModel& model, std::size_t s, int a, double delta_r, SpaceKind kind);
double transition_radius(const TabularModel& model, std::size_t s, int a, double delta_p);

// Rows "space,s,a,s_next,count,r_hat" for every observed transition.
void write_snapshot_csv(std::ostream& out, std::string_view space, const TabularModel& model, bool header = true);

}  // namespace mobles
