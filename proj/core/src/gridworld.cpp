#include "mobles/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace mobles {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

constexpr double kMinMassInside = 1e-3;

}  // namespace

const char* action_name(Action a) {
    switch (a) {
        case Action::Up: return "up";
        case Action::Down: return "down";
        case Action::Right: return "right";
        case Action::Left: return "left";
    }
    return "?";
}

Cell neighbor(Cell c, Action a) {
    switch (a) {
        case Action::Up: return {c.x, c.y + 1};
        case Action::Down: return {c.x, c.y - 1};
        case Action::Right: return {c.x + 1, c.y};
        case Action::Left: return {c.x - 1, c.y};
    }
    return c;
}

RewardSpec::RewardSpec(std::vector<RewardComponent> components, double lo, double hi)
    : components_(std::move(components)), lo_(lo), hi_(hi) {
    if (components_.empty()) throw std::invalid_argument("reward spec: no mixture components");
    double total = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight >= 0.0)) throw std::invalid_argument("reward spec: negative weight");
        if (!(c.stddev > 0.0)) throw std::invalid_argument("reward spec: stddev must be positive");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("reward spec: weights must sum to 1");
    if (!(lo_ < hi_)) throw std::invalid_argument("reward spec: empty truncation interval");
    if (mass_inside() < kMinMassInside)
        throw std::invalid_argument("reward spec: truncation interval holds too little mixture mass");
}

double RewardSpec::mass_inside() const {
    double mass = 0.0;
    for (const auto& c : components_) {
        mass += c.weight * (normal_cdf((hi_ - c.mean) / c.stddev) - normal_cdf((lo_ - c.mean) / c.stddev));
    }
    return mass;
}

double RewardSpec::truncated_mean() const {
    double num = 0.0;
    double den = 0.0;
    for (const auto& c : components_) {
        const double a = (lo_ - c.mean) / c.stddev;
        const double b = (hi_ - c.mean) / c.stddev;
        const double z = normal_cdf(b) - normal_cdf(a);
        num += c.weight * (c.mean * z + c.stddev * (normal_pdf(a) - normal_pdf(b)));
        den += c.weight * z;
    }
    return num / den;
}

double sample_reward(const RewardSpec& spec, Rng& rng) {
    const auto& comps = spec.components();
    for (;;) {
        double u = uniform01(rng);
        std::size_t k = 0;
        while (k + 1 < comps.size() && u >= comps[k].weight) {
            u -= comps[k].weight;
            ++k;
        }
        std::normal_distribution<double> gauss(comps[k].mean, comps[k].stddev);
        const double r = gauss(rng);
        if (r >= spec.lo() && r <= spec.hi()) return r;
    }
}

const RewardSpec& RewardTable::at(Outcome o) const {
    switch (o) {
        case Outcome::Collision: return collision;
        case Outcome::Goal: return goal;
        case Outcome::Step: return step;
    }
    return step;
}

RewardTable RewardTable::standard() {
    RewardTable t;
    t.collision = RewardSpec({{1.0 / 3.0, -11.5, 0.2}, {2.0 / 3.0, -10.5, 0.3}}, -12.0, -10.0);
    t.goal = RewardSpec({{1.0, 10.0, 0.02}}, 9.5, 11.5);
    t.step = RewardSpec({{1.0 / 3.0, -1.5, 0.2}, {2.0 / 3.0, -0.5, 0.3}}, -2.0, 0.0);
    return t;
}

GridMaze::GridMaze(int width, int height, std::vector<bool> walls, Cell goal, double slip_prob,
                   RewardTable rewards)
    : width_(width),
      height_(height),
      walls_(std::move(walls)),
      goal_(goal),
      slip_prob_(slip_prob),
      rewards_(std::move(rewards)) {
    if (width_ < 3 || height_ < 3) throw MapError("map must be at least 3x3");
    if (walls_.size() != static_cast<std::size_t>(width_ * height_)) throw MapError("wall grid size mismatch");
    if (!(slip_prob_ >= 0.0 && slip_prob_ <= 1.0)) throw MapError("slip probability outside [0, 1]");
    for (int x = 1; x <= width_; ++x) {
        if (!is_wall({x, 1}) || !is_wall({x, height_})) throw MapError("map is not fully bordered by walls");
    }
    for (int y = 1; y <= height_; ++y) {
        if (!is_wall({1, y}) || !is_wall({width_, y})) throw MapError("map is not fully bordered by walls");
    }
    if (!in_bounds(goal_) || is_wall(goal_)) throw MapError("goal must be a free cell");
}

bool GridMaze::is_wall(Cell c) const {
    if (!in_bounds(c)) return true;
    return walls_[static_cast<std::size_t>((c.y - 1) * width_ + (c.x - 1))];
}

std::vector<Cell> GridMaze::free_cells() const {
    std::vector<Cell> out;
    for (int y = 1; y <= height_; ++y) {
        for (int x = 1; x <= width_; ++x) {
            if (!is_wall({x, y})) out.push_back({x, y});
        }
    }
    return out;
}

std::vector<Cell> GridMaze::start_cells() const {
    auto cells = free_cells();
    std::erase(cells, goal_);
    return cells;
}

GridMaze GridMaze::with_slip(double p) const {
    return GridMaze(width_, height_, walls_, goal_, p, rewards_);
}

GridMaze load_map(std::string_view text, double slip_prob, RewardTable rewards) {
    std::vector<std::string> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(line);
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) throw MapError("empty map");

    const std::size_t width = rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != width) throw MapError("map is not rectangular");
    }
    const int w = static_cast<int>(width);
    const int h = static_cast<int>(rows.size());
    if (w < 3 || h < 3) throw MapError("map must be at least 3x3");

    std::vector<bool> walls(static_cast<std::size_t>(w * h), false);
    int goals = 0;
    Cell goal;
    for (int row = 0; row < h; ++row) {
        const int y = h - row;
        for (int col = 0; col < w; ++col) {
            const int x = col + 1;
            const char ch = rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            switch (ch) {
                case '#': walls[static_cast<std::size_t>((y - 1) * w + col)] = true; break;
                case '.': break;
                case 'G':
                    ++goals;
                    goal = {x, y};
                    break;
                default: throw MapError(std::string("unknown character '") + ch + "' in map");
            }
        }
    }
    if (goals == 0) throw MapError("map has no goal");
    if (goals > 1) throw MapError("map has multiple goals");
    return GridMaze(w, h, std::move(walls), goal, slip_prob, std::move(rewards));
}

GridMaze load_map_file(const std::filesystem::path& path, double slip_prob) {
    std::ifstream f(path);
    if (!f) throw MapError("cannot open map file " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_map(ss.str(), slip_prob);
}

std::string render_map(const GridMaze& maze) {
    std::string out;
    for (int y = maze.height(); y >= 1; --y) {
        for (int x = 1; x <= maze.width(); ++x) {
            const Cell c{x, y};
            out += maze.is_wall(c) ? '#' : (maze.is_goal(c) ? 'G' : '.');
        }
        out += '\n';
    }
    return out;
}

Cell reset(const GridMaze& maze, Rng& rng) {
    const auto cells = maze.start_cells();
    if (cells.empty()) throw MapError("map has no free non-goal cell to start from");
    const auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(cells.size()));
    return cells[std::min(k, cells.size() - 1)];
}

StepResult step(const GridMaze& maze, Cell state, Action action, Rng& rng) {
    if (maze.is_wall(state)) throw std::invalid_argument("step: state is a wall");
    if (maze.is_goal(state)) throw std::invalid_argument("step: state is the goal");

    Action taken = action;
    if (uniform01(rng) < maze.slip_prob()) {
        const auto k = static_cast<std::size_t>(uniform01(rng) * kNumActions);
        taken = kAllActions[std::min<std::size_t>(k, kNumActions - 1)];
    }
    const Cell target = neighbor(state, taken);

    StepResult r;
    if (maze.is_wall(target)) {
        r.next = state;
        r.outcome = Outcome::Collision;
    } else if (maze.is_goal(target)) {
        r.next = target;
        r.outcome = Outcome::Goal;
        r.done = true;
    } else {
        r.next = target;
        r.outcome = Outcome::Step;
    }
    const RewardSpec& spec = maze.rewards().at(r.outcome);
    r.reward = sample_reward(spec, rng);
    r.reward_len = spec.length();
    return r;
}

std::array<int, 4> ir_sensors(const GridMaze& maze, Cell state) {
    return {maze.is_wall(neighbor(state, Action::Up)) ? 1 : 0, maze.is_wall(neighbor(state, Action::Right)) ? 1 : 0,
            maze.is_wall(neighbor(state, Action::Down)) ? 1 : 0, maze.is_wall(neighbor(state, Action::Left)) ? 1 : 0};
}

int feature_count(SensorMode mode) { return mode == SensorMode::Two ? 2 : 6; }

std::vector<int> observe(const GridMaze& maze, Cell state, SensorMode mode) {
    std::vector<int> f{state.x, state.y};
    if (mode == SensorMode::Six) {
        const auto ir = ir_sensors(maze, state);
        f.insert(f.end(), ir.begin(), ir.end());
    }
    return f;
}

std::size_t ExactMdp::index_of(Cell c) const {
    const auto it = std::find(cells.begin(), cells.end(), c);
    if (it == cells.end()) throw std::out_of_range("cell is not a state of this MDP");
    return static_cast<std::size_t>(it - cells.begin());
}

ExactMdp true_model(const GridMaze& maze, SensorMode mode) {
    ExactMdp mdp;
    mdp.cells = maze.free_cells();
    const std::size_t n = mdp.cells.size();
    mdp.terminal.resize(n);
    mdp.transitions.resize(n * kNumActions);
    mdp.expected_reward.assign(n * kNumActions, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        mdp.features.push_back(observe(maze, mdp.cells[s], mode));
        mdp.terminal[s] = maze.is_goal(mdp.cells[s]);
    }

    const double p = maze.slip_prob();
    for (std::size_t s = 0; s < n; ++s) {
        const Cell here = mdp.cells[s];
        for (Action a : kAllActions) {
            const auto sa = s * kNumActions + static_cast<std::size_t>(a);
            auto& row = mdp.transitions[sa];
            if (mdp.terminal[s]) {
                row.push_back({s, 1.0});
                continue;
            }
            double reward = 0.0;
            for (Action d : kAllActions) {
                const double prob = (d == a ? 1.0 - p : 0.0) + p / kNumActions;
                if (prob == 0.0) continue;
                const Cell target = neighbor(here, d);
                Cell next = target;
                Outcome o = Outcome::Step;
                if (maze.is_wall(target)) {
                    next = here;
                    o = Outcome::Collision;
                } else if (maze.is_goal(target)) {
                    o = Outcome::Goal;
                }
                reward += prob * maze.rewards().at(o).truncated_mean();
                const std::size_t ni = mdp.index_of(next);
                auto it = std::find_if(row.begin(), row.end(), [&](const auto& t) { return t.next == ni; });
                if (it == row.end()) {
                    row.push_back({ni, prob});
                } else {
                    it->prob += prob;
                }
            }
            mdp.expected_reward[sa] = reward;
        }
    }
    return mdp;
}

}  // namespace mobles
