#include "mobles/cdm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mobles {

double overlap_length(const ConfidenceInterval& a, const ConfidenceInterval& b) {
    return std::min(a.hi, b.hi) - std::max(a.lo, b.lo);
}

double erfinv(double x) {
    if (std::isnan(x)) return x;
    if (x >= 1.0) return kUnbounded;
    if (x <= -1.0) return -kUnbounded;
    if (x == 0.0) return 0.0;

    // Single-precision rational start (Giles 2010), polished by Newton steps.
    double w = -std::log((1.0 - x) * (1.0 + x));
    double p;
    if (w < 5.0) {
        w -= 2.5;
        p = 2.81022636e-08;
        p = 3.43273939e-07 + p * w;
        p = -3.5233877e-06 + p * w;
        p = -4.39150654e-06 + p * w;
        p = 0.00021858087 + p * w;
        p = -0.00125372503 + p * w;
        p = -0.00417768164 + p * w;
        p = 0.246640727 + p * w;
        p = 1.50140941 + p * w;
    } else {
        w = std::sqrt(w) - 3.0;
        p = -0.000200214257;
        p = 0.000100950558 + p * w;
        p = 0.00134934322 + p * w;
        p = -0.00367342844 + p * w;
        p = 0.00573950773 + p * w;
        p = -0.0076224613 + p * w;
        p = 0.00943887047 + p * w;
        p = 1.00167406 + p * w;
        p = 2.83297682 + p * w;
    }
    double y = p * x;

    // Residual via erfc in the tails, where erf(y) rounds to +-1.
    const double ax = std::abs(x);
    const double sign = x < 0.0 ? -1.0 : 1.0;
    double ay = std::abs(y);
    for (int it = 0; it < 3; ++it) {
        const double resid = ax > 0.5 ? (1.0 - ax) - std::erfc(ay) : std::erf(ay) - ax;
        const double deriv = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-ay * ay);
        if (deriv == 0.0) break;
        ay -= resid / deriv;
    }
    return sign * ay;
}

double default_length_fn(double t) { return t <= 1.0 ? 0.0 : t; }

double default_overlap_fn(double t) {
    if (t > 0.5) return 0.0;
    return -erfinv(2.0 * t - 1.0);
}

double length_quantity(const ConfidenceInterval& ci_full, const ConfidenceInterval& ci_sub, const CdmFunctions& fns) {
    const double full = ci_full.length();
    const double sub = ci_sub.length();
    if (sub <= 0.0) return full > 0.0 ? fns.f(kUnbounded) : 0.0;
    return fns.f(full / sub);
}

double overlap_distance_quantity(double q_full, double q_sub, const ConfidenceInterval& ci_full,
                                 const ConfidenceInterval& ci_sub, const CdmFunctions& fns) {
    const double distance = std::abs(q_full - q_sub);
    const double overlap = std::max(0.0, overlap_length(ci_full, ci_sub));
    if (overlap == 0.0) return distance == 0.0 ? kUnbounded : fns.g(kUnbounded);
    return fns.g(distance / overlap);
}

double confidence_degree(double q_full, double q_sub, const ConfidenceInterval& ci_full,
                         const ConfidenceInterval& ci_sub, const CdmFunctions& fns) {
    if (overlap_length(ci_full, ci_sub) < 0.0) return 0.0;
    const double f = length_quantity(ci_full, ci_sub, fns);
    if (f == 0.0) return 0.0;
    const double g = overlap_distance_quantity(q_full, q_sub, ci_full, ci_sub, fns);
    if (g == 0.0) return 0.0;
    return f * g;
}

void epsilon_greedy_probs(std::span<const double> q_row, double epsilon, std::vector<double>& out) {
    if (q_row.empty()) throw std::invalid_argument("epsilon-greedy over an empty action set");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
    const double best = *std::max_element(q_row.begin(), q_row.end());
    const auto greedy = static_cast<double>(std::count(q_row.begin(), q_row.end(), best));
    const double explore = epsilon / static_cast<double>(q_row.size());
    out.resize(q_row.size());
    for (std::size_t a = 0; a < q_row.size(); ++a) {
        out[a] = explore + (q_row[a] == best ? (1.0 - epsilon) / greedy : 0.0);
    }
}

std::vector<double> epsilon_greedy_probs(std::span<const double> q_row, double epsilon) {
    std::vector<double> out;
    epsilon_greedy_probs(q_row, epsilon, out);
    return out;
}

int fusion_source(const std::vector<std::vector<double>>& cds, int action) {
    int best = -1;
    double best_cd = 0.0;
    for (std::size_t x = 0; x < cds.size(); ++x) {
        const double cd = cds[x][static_cast<std::size_t>(action)];
        if (best < 0 || cd > best_cd) {
            best = static_cast<int>(x);
            best_cd = cd;
        }
    }
    return (best >= 0 && best_cd > 1.0) ? best : -1;
}

std::vector<double> fuse(std::span<const double> full_probs, const std::vector<std::vector<double>>& sub_probs,
                         const std::vector<std::vector<double>>& cds) {
    const std::size_t n = full_probs.size();
    if (sub_probs.size() != cds.size()) throw std::invalid_argument("fuse: one CD row is needed per subspace");
    for (std::size_t x = 0; x < cds.size(); ++x) {
        if (sub_probs[x].size() != n || cds[x].size() != n)
            throw std::invalid_argument("fuse: all rows need the same action count");
    }
    std::vector<double> out(n);
    double total = 0.0;
    bool substituted = false;
    for (std::size_t a = 0; a < n; ++a) {
        const int src = fusion_source(cds, static_cast<int>(a));
        substituted |= src >= 0;
        out[a] = src < 0 ? full_probs[a] : sub_probs[static_cast<std::size_t>(src)][a];
        total += out[a];
    }
    // Pure full-space decisions are returned untouched.
    if (!substituted) return out;
    if (!(total > 0.0)) throw std::domain_error("fuse: fused action weights sum to zero");
    for (double& p : out) p /= total;
    return out;
}

DecisionWeights decision_weights(const std::vector<std::vector<double>>& cds, int num_actions) {
    DecisionWeights w;
    w.subspaces.assign(cds.size(), 0.0);
    const double share = 1.0 / static_cast<double>(num_actions);
    double used = 0.0;
    for (int a = 0; a < num_actions; ++a) {
        const int src = fusion_source(cds, a);
        if (src >= 0) {
            w.subspaces[static_cast<std::size_t>(src)] += share;
            used += share;
        }
    }
    w.full = 1.0 - used;
    return w;
}

}  // namespace mobles
