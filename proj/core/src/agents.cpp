#include "mobles/agents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mobles {

namespace {

std::size_t cell_key(const GridMaze& maze, Cell c) {
    return static_cast<std::size_t>((c.y - 1) * maze.width() + (c.x - 1));
}

// The cell itself followed by its free neighbours, in action order.
std::vector<Cell> reachable_cells(const GridMaze& maze, Cell c) {
    std::vector<Cell> out{c};
    for (Action a : kAllActions) {
        const Cell n = neighbor(c, a);
        if (!maze.is_wall(n)) out.push_back(n);
    }
    return out;
}

void push_unique(std::vector<std::size_t>& v, std::size_t x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

bool is_greedy(std::span<const double> row, int a) {
    return row[static_cast<std::size_t>(a)] == *std::max_element(row.begin(), row.end());
}

}  // namespace

const char* to_string(AgentKind kind) {
    switch (kind) {
        case AgentKind::Mobles: return "mobles";
        case AgentKind::MoblesThr: return "mobles-thr";
        case AgentKind::Mb: return "mb";
        case AgentKind::QLambda: return "qlambda";
        case AgentKind::QsLambda: return "qslambda";
        case AgentKind::QlTile: return "ql-tile";
    }
    return "?";
}

AgentKind parse_agent_kind(const std::string& text) {
    for (AgentKind k : {AgentKind::Mobles, AgentKind::MoblesThr, AgentKind::Mb, AgentKind::QLambda,
                        AgentKind::QsLambda, AgentKind::QlTile}) {
        if (text == to_string(k)) return k;
    }
    throw std::invalid_argument("unknown agent kind '" + text + "'");
}

double alpha_schedule_value(int id, std::uint64_t n_sa, int episode) {
    const auto n = static_cast<double>(n_sa);
    const auto e = static_cast<double>(episode);
    switch (id) {
        case 1: return 1.0 / (1.0 + n);
        case 2: return std::sqrt(1.0 / (1.0 + n));
        case 3: return 1.0 / (1.0 + std::sqrt(n));
        case 4: return 1.0 / (1.0 + e);
        case 5: return std::sqrt(1.0 / (1.0 + e));
        case 6: return 1.0 / (1.0 + std::sqrt(e));
        case 7: return 0.1;
        default: throw std::invalid_argument("alpha schedule id must be 1..7");
    }
}

double beta_schedule_value(int id, std::size_t num_subspaces, int episode) {
    const auto k = static_cast<double>(num_subspaces);
    const auto e = static_cast<double>(episode);
    switch (id) {
        case 1: return 1.0 / (1.0 + k);
        case 2: return 1.0 / (1.0 + 10.0 * k);
        case 3: return 1.0 / (1.0 + e);
        case 4: return std::sqrt(1.0 / (1.0 + e));
        case 5: return 1.0 / (1.0 + std::sqrt(e));
        default: throw std::invalid_argument("beta schedule id must be 1..5");
    }
}

void AgentConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
    if (!(theta0 > 0.0)) throw std::invalid_argument("theta must be positive");
    if (!(delta_r > 0.0 && delta_r < 1.0)) throw std::invalid_argument("delta_R must lie in (0, 1)");
    if (!(delta_p > 0.0 && delta_p < 1.0)) throw std::invalid_argument("delta_p must lie in (0, 1)");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
    if (alpha_schedule < 1 || alpha_schedule > kNumAlphaSchedules)
        throw std::invalid_argument("alpha schedule id must be 1..7");
    if (beta_schedule < 1 || beta_schedule > kNumBetaSchedules)
        throw std::invalid_argument("beta schedule id must be 1..5");
    if (alpha_value && !(*alpha_value >= 0.0 && *alpha_value <= 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1]");
    if (beta_value && !(*beta_value >= 0.0 && *beta_value <= 1.0))
        throw std::invalid_argument("beta must lie in [0, 1]");
    if (visit_threshold < 1) throw std::invalid_argument("visit threshold must be >= 1");
}

bool mobles_thr_gate(std::uint64_t n_full, int threshold) {
    if (threshold < 1) throw std::invalid_argument("visit threshold must be >= 1");
    if (threshold == kNoThreshold) return true;
    return n_full < static_cast<std::uint64_t>(threshold);
}

// ---------------------------------------------------------------------------
// Episode protocol

int Agent::sample_action(std::span<const double> probs, Rng& rng) {
    double u = uniform01(rng);
    for (std::size_t a = 0; a + 1 < probs.size(); ++a) {
        if (u < probs[a]) return static_cast<int>(a);
        u -= probs[a];
    }
    return static_cast<int>(probs.size()) - 1;
}

EpisodeLog Agent::run_episode(const Environment& env, Rng& env_rng, Rng& agent_rng, int episode) {
    if (env.maze == nullptr) throw std::invalid_argument("environment has no maze");
    if (env.max_steps < 1) throw std::invalid_argument("max_steps must be positive");
    const GridMaze& maze = *env.maze;

    EpisodeLog log;
    log.mean_weights.assign(space_names().size(), 0.0);
    begin_episode(episode);
    Cell state = reset(maze, env_rng);
    while (log.steps < env.max_steps) {
        const Decision d = act(state, agent_rng);
        const StepResult r = step(maze, state, static_cast<Action>(d.action), env_rng);
        learn(state, d.action, r);

        ++log.steps;
        log.total_reward += r.reward;
        log.mean_weights[0] += d.weights.full;
        for (std::size_t x = 0; x < d.weights.subspaces.size() && x + 1 < log.mean_weights.size(); ++x)
            log.mean_weights[x + 1] += d.weights.subspaces[x];
        if (record_trace_) log.trace.push_back({state, d.action, r.reward, r.next, d.weights});
        if (step_hook_) step_hook_(*this, log.steps);

        state = r.next;
        if (r.done) {
            log.reached_goal = true;
            break;
        }
    }
    log.truncated = !log.reached_goal;
    for (double& w : log.mean_weights) w /= static_cast<double>(log.steps);
    end_episode(episode);
    return log;
}

double max_reward_len(const GridMaze& maze) {
    const auto& t = maze.rewards();
    return std::max({t.collision.length(), t.goal.length(), t.step.length()});
}

TabularModel make_full_model(const GridMaze& maze, const SpaceFamily& family, SensorMode mode) {
    const SubspaceDef& full = family.full();
    const std::size_t n = full.state_count();
    std::vector<std::vector<std::size_t>> successors(n);
    std::vector<bool> terminal(n, false);
    for (Cell c : maze.free_cells()) {
        const std::size_t s = full.project(observe(maze, c, mode));
        if (maze.is_goal(c)) {
            terminal[s] = true;
            continue;
        }
        for (Cell r : reachable_cells(maze, c)) push_unique(successors[s], full.project(observe(maze, r, mode)));
    }
    return TabularModel(n, kNumActions, std::move(successors), std::move(terminal), max_reward_len(maze));
}

TabularModel make_sub_model(const GridMaze& maze, const SpaceFamily& family, std::size_t sub, SensorMode mode) {
    const SubspaceDef& def = family.subs().at(sub);
    const std::size_t sink = def.state_count();
    std::vector<std::vector<std::size_t>> successors(sink + 1);
    std::vector<bool> terminal(sink + 1, false);
    terminal[sink] = true;
    for (Cell c : maze.start_cells()) {
        const std::size_t s = def.project(observe(maze, c, mode));
        for (Cell r : reachable_cells(maze, c)) {
            push_unique(successors[s], maze.is_goal(r) ? sink : def.project(observe(maze, r, mode)));
        }
    }
    for (auto& list : successors) std::sort(list.begin(), list.end());
    return TabularModel(sink + 1, kNumActions, std::move(successors), std::move(terminal), max_reward_len(maze));
}

SpaceFamily resolve_family(const AgentConfig& config, const GridMaze& maze, SensorMode mode) {
    SpaceFamily fam = default_family(maze, mode);
    switch (config.kind) {
        case AgentKind::Mb:
        case AgentKind::QLambda: return fam.with_subspaces({});
        default: break;
    }
    if (config.subspaces) return fam.with_named_subspaces(*config.subspaces);
    return fam;
}

// ---------------------------------------------------------------------------
// Model-based agents

ModelBasedAgent::ModelBasedAgent(const AgentConfig& config, const GridMaze& maze, SensorMode mode)
    : config_(config),
      maze_(&maze),
      mode_(mode),
      family_(resolve_family(config, maze, mode)),
      with_bounds_(config.kind != AgentKind::Mb),
      threshold_(config.kind == AgentKind::MoblesThr ? config.visit_threshold : kNoThreshold) {
    config_.validate();
    if (config.kind != AgentKind::Mobles && config.kind != AgentKind::MoblesThr && config.kind != AgentKind::Mb)
        throw std::invalid_argument("ModelBasedAgent handles mobles, mobles-thr and mb only");

    full_ = make_full_model(maze, family_, mode);
    for (std::size_t x = 0; x < family_.subs().size(); ++x) subs_.push_back(make_sub_model(maze, family_, x, mode));

    full_params_ = {config.gamma, config.theta0, config.delta_r, config.delta_p, SpaceKind::Full};
    sub_params_ = full_params_;
    sub_params_.kind = SpaceKind::Subspace;

    const auto cells = static_cast<std::size_t>(maze.width() * maze.height());
    cell_full_.assign(cells, 0);
    cell_sub_.assign(subs_.size(), std::vector<std::size_t>(cells, 0));
    for (Cell c : maze.free_cells()) {
        const auto obs = observe(maze, c, mode);
        cell_full_[cell_key(maze, c)] = family_.full().project(obs);
        for (std::size_t x = 0; x < subs_.size(); ++x) cell_sub_[x][cell_key(maze, c)] = family_.subs()[x].project(obs);
    }
    sub_probs_.resize(subs_.size());
}

std::vector<std::string> ModelBasedAgent::space_names() const {
    std::vector<std::string> names{"full"};
    for (const auto& s : family_.subs()) names.push_back(s.name());
    return names;
}

std::size_t ModelBasedAgent::full_index(Cell c) const { return cell_full_[cell_key(*maze_, c)]; }

std::size_t ModelBasedAgent::sub_index(std::size_t sub, Cell c) const { return cell_sub_[sub][cell_key(*maze_, c)]; }

std::vector<std::vector<double>> ModelBasedAgent::confidence_degrees(Cell state) const {
    const std::size_t j = full_index(state);
    std::vector<std::vector<double>> cds(subs_.size(), std::vector<double>(kNumActions, 0.0));
    if (!config_.fusion) return cds;
    for (int a = 0; a < kNumActions; ++a) {
        if (!mobles_thr_gate(full_.count(j, a), threshold_)) continue;
        const ConfidenceInterval ci_full{full_.q_lower(j, a), full_.q_upper(j, a)};
        for (std::size_t x = 0; x < subs_.size(); ++x) {
            const TabularModel& m = subs_[x];
            const std::size_t sx = sub_index(x, state);
            const ConfidenceInterval ci_sub{m.q_lower(sx, a), m.q_upper(sx, a)};
            cds[x][static_cast<std::size_t>(a)] = confidence_degree(full_.q(j, a), m.q(sx, a), ci_full, ci_sub);
        }
    }
    return cds;
}

Agent::Decision ModelBasedAgent::act(Cell state, Rng& agent_rng) {
    const std::size_t j = full_index(state);
    epsilon_greedy_probs(full_.q.row(j), config_.epsilon, full_probs_);
    Decision d;
    if (subs_.empty()) {
        d.action = sample_action(full_probs_, agent_rng);
        return d;
    }
    for (std::size_t x = 0; x < subs_.size(); ++x)
        epsilon_greedy_probs(subs_[x].q.row(sub_index(x, state)), config_.epsilon, sub_probs_[x]);
    const auto cds = confidence_degrees(state);
    const auto probs = fuse(full_probs_, sub_probs_, cds);
    d.weights = decision_weights(cds, kNumActions);
    d.action = sample_action(probs, agent_rng);
    return d;
}

void ModelBasedAgent::local_update(TabularModel& model, std::size_t s, int a, const PlannerParams& params) {
    one_step_backup(model, s, a, params);
    if (with_bounds_) {
        optimistic_backup(model, s, a, params);
        pessimistic_backup(model, s, a, params);
    }
}

void ModelBasedAgent::learn(Cell state, int action, const StepResult& result) {
    const std::size_t j = full_index(state);
    full_.update(j, action, full_index(result.next), result.reward, result.reward_len);
    for (std::size_t x = 0; x < subs_.size(); ++x) {
        const std::size_t next = result.done ? sink_index(x) : sub_index(x, result.next);
        subs_[x].update(sub_index(x, state), action, next, result.reward, result.reward_len);
    }

    if (config_.full_sweep_in_episode) {
        sweep_once(full_, full_params_, with_bounds_);
        for (auto& m : subs_) sweep_once(m, sub_params_, with_bounds_);
        return;
    }
    local_update(full_, j, action, full_params_);
    for (std::size_t x = 0; x < subs_.size(); ++x) local_update(subs_[x], sub_index(x, state), action, sub_params_);
}

void ModelBasedAgent::end_episode(int episode) {
    PlannerParams fp = full_params_;
    fp.theta = theta_schedule(episode, config_.theta0);
    plan_all(full_, fp, with_bounds_);
    PlannerParams sp = sub_params_;
    sp.theta = fp.theta;
    for (auto& m : subs_) plan_all(m, sp, with_bounds_);
}

// ---------------------------------------------------------------------------
// Q(lambda)

QLambdaTables::QLambdaTables(std::size_t num_states, int num_actions)
    : q(num_states, num_actions),
      trace(num_states, num_actions),
      visits(num_states * static_cast<std::size_t>(num_actions), 0),
      is_live(num_states * static_cast<std::size_t>(num_actions), false) {}

void QLambdaTables::cut_traces() {
    const auto na = static_cast<std::size_t>(q.num_actions());
    for (std::size_t i : live) {
        trace(i / na, static_cast<int>(i % na)) = 0.0;
        is_live[i] = false;
    }
    live.clear();
}

void qlambda_step(QLambdaTables& t, std::size_t s, int a, double reward, std::optional<std::size_t> next,
                  const QLambdaParams& params) {
    const auto na = static_cast<std::size_t>(t.q.num_actions());
    const double target = reward + (next ? params.gamma * t.q.max_over_actions(*next) : 0.0);
    const double delta = target - t.q(s, a);

    const std::size_t i = s * na + static_cast<std::size_t>(a);
    t.trace(s, a) += 1.0;
    if (!t.is_live[i]) {
        t.is_live[i] = true;
        t.live.push_back(i);
    }
    for (std::size_t k : t.live) {
        const std::size_t ks = k / na;
        const int ka = static_cast<int>(k % na);
        const double alpha =
            params.alpha_value ? *params.alpha_value : alpha_schedule_value(params.alpha_schedule, t.visits[k], params.episode);
        t.q(ks, ka) += alpha * delta * t.trace(ks, ka);
    }
    ++t.visits[i];

    const double decay = params.gamma * params.lambda;
    if (decay == 0.0) {
        t.cut_traces();
        return;
    }
    for (std::size_t k : t.live) t.trace(k / na, static_cast<int>(k % na)) *= decay;
}

QLambdaAgent::QLambdaAgent(const AgentConfig& config, const GridMaze& maze, SensorMode mode)
    : config_(config), maze_(&maze), mode_(mode), indexer_(maze_features(maze, mode)) {
    config_.validate();
    tables_ = QLambdaTables(indexer_.size(), kNumActions);
    params_ = {config.gamma, config.lambda, config.alpha_schedule, config.alpha_value, 1};
}

void QLambdaAgent::begin_episode(int episode) {
    params_.episode = episode;
    tables_.cut_traces();
}

Agent::Decision QLambdaAgent::act(Cell state, Rng& agent_rng) {
    const std::size_t s = indexer_.index(observe(*maze_, state, mode_));
    epsilon_greedy_probs(tables_.q.row(s), config_.epsilon, probs_);
    Decision d;
    d.action = sample_action(probs_, agent_rng);
    if (!is_greedy(tables_.q.row(s), d.action)) tables_.cut_traces();
    return d;
}

void QLambdaAgent::learn(Cell state, int action, const StepResult& result) {
    const std::size_t s = indexer_.index(observe(*maze_, state, mode_));
    std::optional<std::size_t> next;
    if (!result.done) next = indexer_.index(observe(*maze_, result.next, mode_));
    qlambda_step(tables_, s, action, result.reward, next, params_);
}

// ---------------------------------------------------------------------------
// QS(lambda)

ConfidenceInterval return_range(double r_lo, double r_hi, double gamma, int horizon) {
    const double geom = (1.0 - std::pow(gamma, horizon)) / (1.0 - gamma);
    return {r_lo < 0.0 ? r_lo * geom : r_lo, r_hi > 0.0 ? r_hi * geom : r_hi};
}

QsLambdaAgent::QsLambdaAgent(const AgentConfig& config, const GridMaze& maze, SensorMode mode, int horizon)
    : config_(config), maze_(&maze), mode_(mode), family_(resolve_family(config, maze, mode)) {
    config_.validate();
    subs_ = family_.subs();
    const auto& t = maze.rewards();
    range_ = return_range(std::min({t.collision.lo(), t.goal.lo(), t.step.lo()}),
                          std::max({t.collision.hi(), t.goal.hi(), t.step.hi()}), config.gamma, horizon);
    tables_.emplace_back(family_.full().state_count(), kNumActions);
    for (const auto& d : subs_) tables_.emplace_back(d.state_count(), kNumActions);
    for (const auto& tb : tables_) {
        stats_.push_back({std::vector<std::uint64_t>(tb.q.data().size(), 0), std::vector<double>(tb.q.data().size(), 0.0)});
    }
    observed_.resize(tables_.size());
    params_ = {config.gamma, config.lambda, config.alpha_schedule, config.alpha_value, 1};
    sub_probs_.resize(subs_.size());
}

std::vector<std::string> QsLambdaAgent::space_names() const {
    std::vector<std::string> names{"full"};
    for (const auto& s : subs_) names.push_back(s.name());
    return names;
}

std::size_t QsLambdaAgent::index_in(std::size_t space, Cell c) const {
    const auto obs = observe(*maze_, c, mode_);
    return space == 0 ? family_.full().project(obs) : subs_[space - 1].project(obs);
}

ConfidenceInterval QsLambdaAgent::return_interval(std::size_t space, std::size_t s, int a) const {
    const std::size_t i = s * kNumActions + static_cast<std::size_t>(a);
    const auto n = stats_[space].count[i];
    if (n == 0) return range_;
    const double eps = range_.length() * std::sqrt(std::log(2.0 / config_.delta_r) / (2.0 * static_cast<double>(n)));
    const double m = stats_[space].mean[i];
    return {std::max(range_.lo, m - eps), std::min(range_.hi, m + eps)};
}

void QsLambdaAgent::begin_episode(int episode) {
    params_.episode = episode;
    for (auto& t : tables_) t.cut_traces();
    episode_.clear();
}

Agent::Decision QsLambdaAgent::act(Cell state, Rng& agent_rng) {
    const std::size_t j = index_in(0, state);
    epsilon_greedy_probs(tables_[0].q.row(j), config_.epsilon, full_probs_);
    std::vector<std::vector<double>> cds(subs_.size(), std::vector<double>(kNumActions, 0.0));
    for (std::size_t x = 0; x < subs_.size(); ++x) {
        const std::size_t sx = index_in(x + 1, state);
        epsilon_greedy_probs(tables_[x + 1].q.row(sx), config_.epsilon, sub_probs_[x]);
        if (!config_.fusion) continue;
        for (int a = 0; a < kNumActions; ++a) {
            cds[x][static_cast<std::size_t>(a)] = confidence_degree(
                tables_[0].q(j, a), tables_[x + 1].q(sx, a), return_interval(0, j, a), return_interval(x + 1, sx, a));
        }
    }
    Decision d;
    const auto probs = subs_.empty() ? full_probs_ : fuse(full_probs_, sub_probs_, cds);
    d.weights = decision_weights(cds, kNumActions);
    d.action = sample_action(probs, agent_rng);
    for (std::size_t sp = 0; sp < tables_.size(); ++sp) {
        if (!is_greedy(tables_[sp].q.row(index_in(sp, state)), d.action)) tables_[sp].cut_traces();
    }
    return d;
}

void QsLambdaAgent::learn(Cell state, int action, const StepResult& result) {
    for (std::size_t sp = 0; sp < tables_.size(); ++sp) {
        std::optional<std::size_t> next;
        if (!result.done) next = index_in(sp, result.next);
        qlambda_step(tables_[sp], index_in(sp, state), action, result.reward, next, params_);
    }
    episode_.push_back({state, action, result.reward});
}

void QsLambdaAgent::end_episode(int /*episode*/) {
    // Discounted return from every step, accumulated backwards.
    std::vector<double> returns(episode_.size());
    double g = 0.0;
    for (std::size_t t = episode_.size(); t-- > 0;) {
        g = episode_[t].reward + config_.gamma * g;
        returns[t] = g;
    }
    for (std::size_t sp = 0; sp < tables_.size(); ++sp) {
        std::vector<bool> seen(stats_[sp].count.size(), false);
        for (std::size_t t = 0; t < episode_.size(); ++t) {
            const std::size_t i = index_in(sp, episode_[t].state) * kNumActions + static_cast<std::size_t>(episode_[t].action);
            if (seen[i]) continue;
            seen[i] = true;
            auto& n = stats_[sp].count[i];
            auto& mean = stats_[sp].mean[i];
            mean = (mean * static_cast<double>(n) + returns[t]) / static_cast<double>(n + 1);
            ++n;
            observed_[sp].push_back(returns[t]);
        }
    }
}

// ---------------------------------------------------------------------------
// Tile-coded linear Q-learning

double TileWeights::value(std::span<const int> obs, int a) const {
    double q = 0.0;
    for (std::size_t t = 0; t < tilings.size(); ++t) q += weights[t](tilings[t].project(obs), a);
    return q;
}

void ql_tile_step(TileWeights& w, std::span<const int> obs, int a, double reward,
                  std::optional<std::vector<int>> next_obs, double gamma, double beta) {
    double target = reward;
    if (next_obs) {
        double best = w.value(*next_obs, 0);
        for (int b = 1; b < kNumActions; ++b) best = std::max(best, w.value(*next_obs, b));
        target += gamma * best;
    }
    const double delta = target - w.value(obs, a);
    for (std::size_t t = 0; t < w.tilings.size(); ++t) w.weights[t](w.tilings[t].project(obs), a) += beta * delta;
}

QlTileAgent::QlTileAgent(const AgentConfig& config, const GridMaze& maze, SensorMode mode)
    : config_(config), maze_(&maze), mode_(mode) {
    config_.validate();
    const SpaceFamily fam = resolve_family(config, maze, mode);
    weights_.tilings.push_back(fam.full());
    for (const auto& s : fam.subs()) weights_.tilings.push_back(s);
    for (const auto& t : weights_.tilings) weights_.weights.emplace_back(t.state_count(), kNumActions);
    q_row_.resize(kNumActions);
}

double QlTileAgent::q_value(Cell c, int a) const { return weights_.value(observe(*maze_, c, mode_), a); }

void QlTileAgent::begin_episode(int episode) {
    beta_ = config_.beta_value ? *config_.beta_value
                               : beta_schedule_value(config_.beta_schedule, weights_.tilings.size() - 1, episode);
}

Agent::Decision QlTileAgent::act(Cell state, Rng& agent_rng) {
    const auto obs = observe(*maze_, state, mode_);
    for (int a = 0; a < kNumActions; ++a) q_row_[static_cast<std::size_t>(a)] = weights_.value(obs, a);
    epsilon_greedy_probs(q_row_, config_.epsilon, probs_);
    Decision d;
    d.action = sample_action(probs_, agent_rng);
    return d;
}

void QlTileAgent::learn(Cell state, int action, const StepResult& result) {
    std::optional<std::vector<int>> next;
    if (!result.done) next = observe(*maze_, result.next, mode_);
    ql_tile_step(weights_, observe(*maze_, state, mode_), action, result.reward, std::move(next), config_.gamma, beta_);
}

std::unique_ptr<Agent> make_agent(const AgentConfig& config, const GridMaze& maze, SensorMode mode, int max_steps) {
    switch (config.kind) {
        case AgentKind::Mobles:
        case AgentKind::MoblesThr:
        case AgentKind::Mb: return std::make_unique<ModelBasedAgent>(config, maze, mode);
        case AgentKind::QLambda: return std::make_unique<QLambdaAgent>(config, maze, mode);
        case AgentKind::QsLambda: return std::make_unique<QsLambdaAgent>(config, maze, mode, max_steps);
        case AgentKind::QlTile: return std::make_unique<QlTileAgent>(config, maze, mode);
    }
    throw std::invalid_argument("unknown agent kind");
}

}  // namespace mobles
