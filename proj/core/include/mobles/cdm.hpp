#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace mobles {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
};

// Length of the intersection, or a negative number when the intervals are disjoint.
double overlap_length(const ConfidenceInterval& a, const ConfidenceInterval& b);

// Inverse error function. |x| >= 1 maps to a signed infinity.
double erfinv(double x);

// f(t) = 0 for t <= 1, t otherwise.
double default_length_fn(double t);
// g(t) = -erfinv(2t - 1) for t <= 1/2, 0 otherwise; g(0) = +inf.
double default_overlap_fn(double t);

struct CdmFunctions {
    std::function<double(double)> f = default_length_fn;
    std::function<double(double)> g = default_overlap_fn;
};

double length_quantity(const ConfidenceInterval& ci_full, const ConfidenceInterval& ci_sub,
                       const CdmFunctions& fns = {});
// Callers must check the intervals overlap first.
double overlap_distance_quantity(double q_full, double q_sub, const ConfidenceInterval& ci_full,
                                 const ConfidenceInterval& ci_sub, const CdmFunctions& fns = {});
// f * g when the intervals intersect, else 0. 0 * inf is 0.
double confidence_degree(double q_full, double q_sub, const ConfidenceInterval& ci_full,
                         const ConfidenceInterval& ci_sub, const CdmFunctions& fns = {});

// Greedy actions share 1 - epsilon; every action gets epsilon / |A| on top.
std::vector<double> epsilon_greedy_probs(std::span<const double> q_row, double epsilon);
void epsilon_greedy_probs(std::span<const double> q_row, double epsilon, std::vector<double>& out);

// Per action, takes the probability from the subspace with the largest
// confidence degree when that degree exceeds 1, else from the full space;
// then normalizes. Ties go to the earlier subspace.
// sub_probs[x][a] and cds[x][a] are indexed by subspace then action.
std::vector<double> fuse(std::span<const double> full_probs, const std::vector<std::vector<double>>& sub_probs,
                         const std::vector<std::vector<double>>& cds);

// Index of the winning subspace for an action, or -1 when the full space decides.
int fusion_source(const std::vector<std::vector<double>>& cds, int action);

struct DecisionWeights {
    double full = 1.0;
    std::vector<double> subspaces;
};

// Fraction of actions whose probability came from each space.
DecisionWeights decision_weights(const std::vector<std::vector<double>>& cds, int num_actions);

}  // namespace mobles
