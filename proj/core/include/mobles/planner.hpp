#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mobles/model.hpp"

namespace mobles {

struct PlannerParams {
    double gamma = 0.9;
    // Sweeps stop once the largest change in a sweep is <= theta.
    double theta = 0.01;
    double delta_r = 0.1;
    double delta_p = 0.1;
    SpaceKind kind = SpaceKind::Full;
    std::size_t max_sweeps = 100000;

    void validate() const;
};

// theta0 / (1 + ln(episode)), episodes numbered from 1.
double theta_schedule(int episode, double theta0 = 0.01);

class PlanningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Direction { Max, Min };

// Maximises (or minimises) sum_i p_i * values_i over probability vectors p
// with ||p - p_hat||_1 <= eps_p. Mass eps_p / 2 moves onto the best
// successor and is stripped from the worst ones. Ties are broken by
// successor position.
std::vector<double> inner_extreme_L1(std::span<const double> values, std::span<const double> p_hat, double eps_p,
                                     Direction direction);

// Allocation-free form used inside the planners; `order` is scratch space.
void inner_extreme_L1(std::span<const double> values, std::span<const double> p_hat, double eps_p,
                      Direction direction, std::vector<double>& out, std::vector<std::size_t>& order);

struct SweepTrace {
    std::vector<double> max_change;
};

// Value iteration on the estimated model from Q = 0.
ActionValues policy_evaluation(const TabularModel& model, const PlannerParams& params, SweepTrace* trace = nullptr);
// Extended value iteration from zero using R_hat +/- eps_R and the inner
// max/min over the L1 ball.
ActionValues optimistic_values(const TabularModel& model, const PlannerParams& params, SweepTrace* trace = nullptr);
ActionValues pessimistic_values(const TabularModel& model, const PlannerParams& params, SweepTrace* trace = nullptr);

// Single Bellman backups at (s, a), written into the model's tables.
double one_step_backup(TabularModel& model, std::size_t s, int a, const PlannerParams& params);
double optimistic_backup(TabularModel& model, std::size_t s, int a, const PlannerParams& params);
double pessimistic_backup(TabularModel& model, std::size_t s, int a, const PlannerParams& params);

// One Gauss-Seidel sweep over every active pair of q (and the bound tables
// when with_bounds is set). Returns the largest change.
double sweep_once(TabularModel& model, const PlannerParams& params, bool with_bounds);

// Iterates q, q_upper and q_lower in lockstep, starting from their current
// contents, until every table's sweep change is <= theta. Because the three
// operators are ordered and monotone, q_lower <= q <= q_upper is preserved
// whenever it holds on entry.
void plan_all(TabularModel& model, const PlannerParams& params, bool with_bounds = true, SweepTrace* trace = nullptr);

}  // namespace mobles
