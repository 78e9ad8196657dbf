#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mobles/rng.hpp"

namespace mobles {

enum class Action : int { Up = 0, Down = 1, Right = 2, Left = 3 };
inline constexpr int kNumActions = 4;
inline constexpr std::array<Action, kNumActions> kAllActions{Action::Up, Action::Down, Action::Right,
                                                             Action::Left};

const char* action_name(Action a);

// x grows to the right, y grows upwards; both 1-based.
struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

Cell neighbor(Cell c, Action a);

class MapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RewardComponent {
    double weight = 1.0;
    double mean = 0.0;
    double stddev = 1.0;
};

// Mixture of Gaussians truncated to [lo, hi].
class RewardSpec {
public:
    RewardSpec() = default;
    RewardSpec(std::vector<RewardComponent> components, double lo, double hi);

    const std::vector<RewardComponent>& components() const { return components_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double length() const { return hi_ - lo_; }

    // Untruncated mixture probability of landing in [lo, hi].
    double mass_inside() const;
    // Mean of the truncated mixture (closed form).
    double truncated_mean() const;

private:
    std::vector<RewardComponent> components_;
    double lo_ = 0.0;
    double hi_ = 1.0;
};

double sample_reward(const RewardSpec& spec, Rng& rng);

enum class Outcome { Collision, Goal, Step };

struct RewardTable {
    RewardSpec collision;
    RewardSpec goal;
    RewardSpec step;

    const RewardSpec& at(Outcome o) const;
    // Collision / goal / step laws used by all shipped experiments.
    static RewardTable standard();
};

inline constexpr double kDefaultSlipProb = 0.1;

class GridMaze {
public:
    GridMaze(int width, int height, std::vector<bool> walls, Cell goal, double slip_prob = kDefaultSlipProb,
             RewardTable rewards = RewardTable::standard());

    int width() const { return width_; }
    int height() const { return height_; }
    Cell goal() const { return goal_; }
    double slip_prob() const { return slip_prob_; }
    const RewardTable& rewards() const { return rewards_; }

    bool in_bounds(Cell c) const { return c.x >= 1 && c.x <= width_ && c.y >= 1 && c.y <= height_; }
    // Out-of-bounds cells read as walls.
    bool is_wall(Cell c) const;
    bool is_goal(Cell c) const { return c == goal_; }
    bool is_free(Cell c) const { return !is_wall(c); }

    // Free cells in row-major order (y ascending, then x ascending).
    std::vector<Cell> free_cells() const;
    // Free cells excluding the goal; the start distribution is uniform over these.
    std::vector<Cell> start_cells() const;

    GridMaze with_slip(double p) const;

private:
    int width_;
    int height_;
    std::vector<bool> walls_;
    Cell goal_;
    double slip_prob_;
    RewardTable rewards_;
};

// '#' wall, '.' free, 'G' goal; first text line is the top row.
GridMaze load_map(std::string_view text, double slip_prob = kDefaultSlipProb,
                  RewardTable rewards = RewardTable::standard());
GridMaze load_map_file(const std::filesystem::path& path, double slip_prob = kDefaultSlipProb);
std::string render_map(const GridMaze& maze);

Cell reset(const GridMaze& maze, Rng& rng);

struct StepResult {
    Cell next;
    double reward = 0.0;
    bool done = false;
    Outcome outcome = Outcome::Step;
    double reward_len = 0.0;
};

StepResult step(const GridMaze& maze, Cell state, Action action, Rng& rng);

// Bits in order (up, right, down, left); 1 means the adjacent cell is a wall.
std::array<int, 4> ir_sensors(const GridMaze& maze, Cell state);

enum class SensorMode { Two, Six };

int feature_count(SensorMode mode);
// (x, y) or (x, y, ir_up, ir_right, ir_down, ir_left).
std::vector<int> observe(const GridMaze& maze, Cell state, SensorMode mode);

// Exact MDP induced by a maze. States are the free cells (goal included,
// absorbing, value 0).
struct ExactMdp {
    struct Transition {
        std::size_t next;
        double prob;
    };

    std::vector<Cell> cells;
    std::vector<std::vector<int>> features;
    std::vector<bool> terminal;
    // [state * kNumActions + action]
    std::vector<std::vector<Transition>> transitions;
    std::vector<double> expected_reward;

    std::size_t num_states() const { return cells.size(); }
    std::size_t index_of(Cell c) const;
};

ExactMdp true_model(const GridMaze& maze, SensorMode mode);

}  // namespace mobles
