#include "mobles/model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mobles {

double ActionValues::max_over_actions(std::size_t s) const {
    const auto r = row(s);
    return *std::max_element(r.begin(), r.end());
}

TabularModel::TabularModel(std::size_t num_states, int num_actions, std::vector<std::vector<std::size_t>> successors,
                           std::vector<bool> terminal, double prior_reward_len)
    : num_states_(num_states),
      num_actions_(num_actions),
      prior_reward_len_(prior_reward_len),
      successors_(std::move(successors)),
      terminal_(std::move(terminal)) {
    if (num_actions_ < 1) throw std::invalid_argument("model needs at least one action");
    if (successors_.size() != num_states_ || terminal_.size() != num_states_)
        throw std::invalid_argument("successor/terminal tables do not match the state count");
    if (!(prior_reward_len_ > 0.0)) throw std::invalid_argument("prior reward interval length must be positive");
    for (std::size_t s = 0; s < num_states_; ++s) {
        for (std::size_t n : successors_[s]) {
            if (n >= num_states_) throw std::invalid_argument("successor index out of range");
        }
        if (active(s)) active_.push_back(s);
    }
    const std::size_t n_sa = num_states_ * static_cast<std::size_t>(num_actions_);
    counts_.resize(n_sa);
    for (std::size_t s = 0; s < num_states_; ++s) {
        for (int a = 0; a < num_actions_; ++a) counts_[sa(s, a)].assign(successors_[s].size(), 0);
    }
    visits_.assign(n_sa, 0);
    reward_mean_.assign(n_sa, 0.0);
    sum_sq_len_.assign(n_sa, 0.0);
    max_len_.assign(n_sa, 0.0);
    q = ActionValues(num_states_, num_actions_);
    q_upper = ActionValues(num_states_, num_actions_);
    q_lower = ActionValues(num_states_, num_actions_);
}

void TabularModel::update(std::size_t s, int a, std::size_t next, double reward, double reward_len) {
    if (!(reward_len > 0.0)) throw std::invalid_argument("reward interval length must be positive");
    if (s >= num_states_ || next >= num_states_ || a < 0 || a >= num_actions_)
        throw std::out_of_range("transition outside the model");

    auto& succ = successors_[s];
    auto it = std::find(succ.begin(), succ.end(), next);
    std::size_t k = static_cast<std::size_t>(it - succ.begin());
    if (it == succ.end()) {
        if (unexpected_successors_++ == 0) {
            std::clog << "warning: transition " << s << " -> " << next
                      << " is outside the declared successor set; extending it\n";
        }
        const bool was_active = active(s);
        succ.push_back(next);
        for (int b = 0; b < num_actions_; ++b) counts_[sa(s, b)].push_back(0);
        if (!was_active && active(s)) {
            active_.insert(std::lower_bound(active_.begin(), active_.end(), s), s);
        }
    }

    const auto i = sa(s, a);
    const auto n = static_cast<double>(visits_[i]);
    reward_mean_[i] = (reward_mean_[i] * n + reward) / (n + 1.0);
    ++visits_[i];
    ++counts_[i][k];
    sum_sq_len_[i] += reward_len * reward_len;
    max_len_[i] = std::max(max_len_[i], reward_len);
}

std::uint64_t TabularModel::count(std::size_t s, int a, std::size_t next) const {
    const auto& succ = successors_[s];
    const auto it = std::find(succ.begin(), succ.end(), next);
    if (it == succ.end()) return 0;
    return counts_[sa(s, a)][static_cast<std::size_t>(it - succ.begin())];
}

double TabularModel::reward_len(std::size_t s, int a) const {
    return visits_[sa(s, a)] == 0 ? prior_reward_len_ : max_len_[sa(s, a)];
}

double TabularModel::estimated_prob(std::size_t s, int a, std::size_t next) const {
    const auto& succ = successors_[s];
    const auto it = std::find(succ.begin(), succ.end(), next);
    if (it == succ.end()) return 0.0;
    const auto n = visits_[sa(s, a)];
    if (n == 0) return 1.0 / static_cast<double>(succ.size());
    return static_cast<double>(counts_[sa(s, a)][static_cast<std::size_t>(it - succ.begin())]) /
           static_cast<double>(n);
}

void TabularModel::estimated_probs(std::size_t s, int a, std::vector<double>& out) const {
    const auto m = successors_[s].size();
    out.resize(m);
    const auto n = visits_[sa(s, a)];
    if (n == 0) {
        std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(m));
        return;
    }
    const auto& c = counts_[sa(s, a)];
    for (std::size_t k = 0; k < m; ++k) out[k] = static_cast<double>(c[k]) / static_cast<double>(n);
}

double hoeffding_radius_uniform(double len, double n, double delta_r) {
    const double eff = std::max(1.0, n);
    return std::sqrt(len * len * std::log(2.0 / delta_r) / (2.0 * eff));
}

double hoeffding_radius(double sum_sq_len, double n, double delta_r) {
    const double eff = std::max(1.0, n);
    return std::sqrt(sum_sq_len * std::log(2.0 / delta_r) / (2.0 * eff * eff));
}

double weissman_radius(std::size_t m, double n, double delta_p) {
    if (m <= 1) return 0.0;
    // log(2^m - 2) = log 2 + log(2^(m-1) - 1), stable for large m.
    const double log_states = m < 1000 ? std::numbers::ln2 + std::log(std::ldexp(1.0, static_cast<int>(m) - 1) - 1.0)
                                       : static_cast<double>(m) * std::numbers::ln2;
    const double arg = 2.0 * (log_states - std::log(delta_p)) / std::max(1.0, n);
    if (arg <= 0.0) return 0.0;
    return std::min(2.0, std::sqrt(arg));
}

double reward_radius(const TabularModel& model, std::size_t s, int a, double delta_r, SpaceKind kind) {
    if (!(delta_r > 0.0 && delta_r < 1.0)) throw std::invalid_argument("delta_R must lie in (0, 1)");
    const auto n = static_cast<double>(model.count(s, a));
    if (kind == SpaceKind::Full) return hoeffding_radius_uniform(model.reward_len(s, a), n, delta_r);
    const double sum_sq =
        model.count(s, a) == 0 ? model.prior_reward_len() * model.prior_reward_len() : model.sum_sq_len(s, a);
    return hoeffding_radius(sum_sq, n, delta_r);
}

double transition_radius(const TabularModel& model, std::size_t s, int a, double delta_p) {
    if (!(delta_p > 0.0 && delta_p < 1.0)) throw std::invalid_argument("delta_p must lie in (0, 1)");
    return weissman_radius(model.successors(s).size(), static_cast<double>(model.count(s, a)), delta_p);
}

void write_snapshot_csv(std::ostream& out, std::string_view space, const TabularModel& model, bool header) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    if (header) out << "space,s,a,s_next,count,r_hat\n";
    for (std::size_t s = 0; s < model.num_states(); ++s) {
        const auto succ = model.successors(s);
        for (int a = 0; a < model.num_actions(); ++a) {
            const auto counts = model.successor_counts(s, a);
            for (std::size_t k = 0; k < succ.size(); ++k) {
                if (counts[k] == 0) continue;
                out << space << ',' << s << ',' << a << ',' << succ[k] << ',' << counts[k] << ','
                    << model.reward_mean(s, a) << '\n';
            }
        }
    }
    out.precision(old_precision);
}

}  // namespace mobles
