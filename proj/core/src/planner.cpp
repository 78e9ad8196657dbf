#include "mobles/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mobles {

namespace {

struct Scratch {
    std::vector<double> p_hat;
    std::vector<double> values;
    std::vector<double> p_tilde;
    std::vector<std::size_t> order;
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

double state_value(const TabularModel& model, const ActionValues& table, std::size_t s) {
    return model.terminal(s) ? 0.0 : table.max_over_actions(s);
}

double point_backup(const TabularModel& model, const ActionValues& table, std::size_t s, int a, double gamma) {
    auto& w = scratch();
    model.estimated_probs(s, a, w.p_hat);
    const auto succ = model.successors(s);
    double future = 0.0;
    for (std::size_t k = 0; k < succ.size(); ++k) future += w.p_hat[k] * gamma * state_value(model, table, succ[k]);
    return model.reward_mean(s, a) + future;
}

double bound_backup(const TabularModel& model, const ActionValues& table, std::size_t s, int a,
                    const PlannerParams& params, Direction dir) {
    auto& w = scratch();
    model.estimated_probs(s, a, w.p_hat);
    const auto succ = model.successors(s);
    w.values.resize(succ.size());
    for (std::size_t k = 0; k < succ.size(); ++k) w.values[k] = params.gamma * state_value(model, table, succ[k]);
    const double eps_p = transition_radius(model, s, a, params.delta_p);
    inner_extreme_L1(w.values, w.p_hat, eps_p, dir, w.p_tilde, w.order);
    double future = 0.0;
    for (std::size_t k = 0; k < succ.size(); ++k) future += w.p_tilde[k] * w.values[k];
    const double eps_r = reward_radius(model, s, a, params.delta_r, params.kind);
    const double reward = dir == Direction::Max ? model.reward_mean(s, a) + eps_r : model.reward_mean(s, a) - eps_r;
    return reward + future;
}

enum class Table { Point, Upper, Lower };

double backup(const TabularModel& model, const ActionValues& table, std::size_t s, int a,
              const PlannerParams& params, Table which) {
    switch (which) {
        case Table::Point: return point_backup(model, table, s, a, params.gamma);
        case Table::Upper: return bound_backup(model, table, s, a, params, Direction::Max);
        case Table::Lower: return bound_backup(model, table, s, a, params, Direction::Min);
    }
    return 0.0;
}

// Gauss-Seidel sweep of one table; returns the largest absolute change.
double sweep_table(const TabularModel& model, ActionValues& table, const PlannerParams& params, Table which) {
    double change = 0.0;
    for (std::size_t s : model.active_states()) {
        for (int a = 0; a < model.num_actions(); ++a) {
            const double updated = backup(model, table, s, a, params, which);
            change = std::max(change, std::abs(updated - table(s, a)));
            table(s, a) = updated;
        }
    }
    return change;
}

ActionValues iterate_from_zero(const TabularModel& model, const PlannerParams& params, Table which,
                               SweepTrace* trace) {
    params.validate();
    ActionValues table(model.num_states(), model.num_actions());
    for (std::size_t sweep = 0; sweep < params.max_sweeps; ++sweep) {
        const double change = sweep_table(model, table, params, which);
        if (trace) trace->max_change.push_back(change);
        if (change <= params.theta) return table;
    }
    throw PlanningError("value iteration did not converge within " + std::to_string(params.max_sweeps) + " sweeps");
}

}  // namespace

void PlannerParams::validate() const {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
    if (!(delta_r > 0.0 && delta_r < 1.0)) throw std::invalid_argument("delta_R must lie in (0, 1)");
    if (!(delta_p > 0.0 && delta_p < 1.0)) throw std::invalid_argument("delta_p must lie in (0, 1)");
    if (max_sweeps == 0) throw std::invalid_argument("max_sweeps must be positive");
}

double theta_schedule(int episode, double theta0) {
    if (episode < 1) throw std::invalid_argument("episodes are numbered from 1");
    return theta0 / (1.0 + std::log(static_cast<double>(episode)));
}

void inner_extreme_L1(std::span<const double> values, std::span<const double> p_hat, double eps_p,
                      Direction direction, std::vector<double>& out, std::vector<std::size_t>& order) {
    const std::size_t m = p_hat.size();
    if (m == 0 || values.size() != m) throw std::invalid_argument("inner_extreme_L1: size mismatch");
    double total = 0.0;
    for (double p : p_hat) {
        if (!(p >= 0.0)) throw std::invalid_argument("inner_extreme_L1: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("inner_extreme_L1: p_hat does not sum to 1");
    if (!(eps_p >= 0.0)) throw std::invalid_argument("inner_extreme_L1: negative radius");

    out.assign(p_hat.begin(), p_hat.end());
    order.resize(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (direction == Direction::Max) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
    } else {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    }

    const std::size_t best = order.front();
    const double added = std::min(eps_p / 2.0, 1.0 - out[best]);
    if (added <= 0.0) return;
    out[best] += added;

    // Strip the added mass from the least favourable successors.
    double excess = added;
    for (std::size_t j = m; j-- > 1 && excess > 0.0;) {
        const std::size_t i = order[j];
        const double taken = std::min(out[i], excess);
        out[i] -= taken;
        excess -= taken;
    }
}

std::vector<double> inner_extreme_L1(std::span<const double> values, std::span<const double> p_hat, double eps_p,
                                     Direction direction) {
    std::vector<double> out;
    std::vector<std::size_t> order;
    inner_extreme_L1(values, p_hat, eps_p, direction, out, order);
    return out;
}

ActionValues policy_evaluation(const TabularModel& model, const PlannerParams& params, SweepTrace* trace) {
    return iterate_from_zero(model, params, Table::Point, trace);
}

ActionValues optimistic_values(const TabularModel& model, const PlannerParams& params, SweepTrace* trace) {
    return iterate_from_zero(model, params, Table::Upper, trace);
}

ActionValues pessimistic_values(const TabularModel& model, const PlannerParams& params, SweepTrace* trace) {
    return iterate_from_zero(model, params, Table::Lower, trace);
}

double one_step_backup(TabularModel& model, std::size_t s, int a, const PlannerParams& params) {
    return model.q(s, a) = point_backup(model, model.q, s, a, params.gamma);
}

double optimistic_backup(TabularModel& model, std::size_t s, int a, const PlannerParams& params) {
    return model.q_upper(s, a) = bound_backup(model, model.q_upper, s, a, params, Direction::Max);
}

double pessimistic_backup(TabularModel& model, std::size_t s, int a, const PlannerParams& params) {
    return model.q_lower(s, a) = bound_backup(model, model.q_lower, s, a, params, Direction::Min);
}

double sweep_once(TabularModel& model, const PlannerParams& params, bool with_bounds) {
    double change = sweep_table(model, model.q, params, Table::Point);
    if (with_bounds) {
        change = std::max(change, sweep_table(model, model.q_upper, params, Table::Upper));
        change = std::max(change, sweep_table(model, model.q_lower, params, Table::Lower));
    }
    return change;
}

void plan_all(TabularModel& model, const PlannerParams& params, bool with_bounds, SweepTrace* trace) {
    params.validate();
    for (std::size_t sweep = 0; sweep < params.max_sweeps; ++sweep) {
        const double change = sweep_once(model, params, with_bounds);
        if (trace) trace->max_change.push_back(change);
        if (change <= params.theta) return;
    }
    throw PlanningError("planning did not converge within " + std::to_string(params.max_sweeps) + " sweeps");
}

}  // namespace mobles
