#include "mobles/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace mobles {

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& obj, const char* key, T fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

AgentEntry parse_agent(const json& obj) {
    if (!obj.is_object()) throw ConfigError("agent entries must be objects");
    reject_unknown(obj,
                   {"name", "kind", "epsilon", "gamma", "theta", "delta_r", "delta_p", "lambda", "alpha_schedule",
                    "beta_schedule", "alpha", "beta", "visit_threshold", "subspaces", "full_sweep_in_episode",
                    "fusion", "sensors"},
                   "agent");
    AgentEntry e;
    AgentConfig& c = e.config;
    try {
        c.kind = parse_agent_kind(get_field<std::string>(obj, "kind", "mobles"));
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    c.name = get_field<std::string>(obj, "name", to_string(c.kind));
    c.epsilon = get_field(obj, "epsilon", c.epsilon);
    c.gamma = get_field(obj, "gamma", c.gamma);
    c.theta0 = get_field(obj, "theta", c.theta0);
    c.delta_r = get_field(obj, "delta_r", c.delta_r);
    c.delta_p = get_field(obj, "delta_p", c.delta_p);
    c.lambda = get_field(obj, "lambda", c.lambda);
    c.alpha_schedule = get_field(obj, "alpha_schedule", c.alpha_schedule);
    c.beta_schedule = get_field(obj, "beta_schedule", c.beta_schedule);
    if (obj.contains("alpha")) c.alpha_value = get_field(obj, "alpha", 0.0);
    if (obj.contains("beta")) c.beta_value = get_field(obj, "beta", 0.0);
    c.visit_threshold = get_field(obj, "visit_threshold", c.visit_threshold);
    if (obj.contains("subspaces"))
        c.subspaces = get_field<std::vector<std::vector<std::string>>>(obj, "subspaces", {});
    c.full_sweep_in_episode = get_field(obj, "full_sweep_in_episode", c.full_sweep_in_episode);
    c.fusion = get_field(obj, "fusion", c.fusion);
    if (obj.contains("sensors")) e.sensors = parse_sensor_mode(get_field(obj, "sensors", 2));
    return e;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

template <typename T>
T parse_number(const std::string& text, const char* column) {
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw SchemaError(std::string("bad value '") + text + "' in column " + column);
    return value;
}

bool parse_flag(const std::string& text, const char* column) {
    if (text == "1") return true;
    if (text == "0") return false;
    throw SchemaError(std::string("bad flag '") + text + "' in column " + column);
}

template <typename Row>
std::vector<Row> read_csv(std::istream& in, const char* header, std::size_t columns,
                          const std::function<Row(const std::vector<std::string>&)>& parse_row) {
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw SchemaError(std::string("expected header '") + header + "'");
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != columns) throw SchemaError("wrong number of columns in row '" + line + "'");
        rows.push_back(parse_row(cells));
    }
    return rows;
}

Curve summarize(const std::string& env, const std::string& agent, const std::string& space,
                const std::map<int, std::vector<double>>& by_episode) {
    Curve c{env, agent, space, {}, {}, 0, false};
    std::size_t runs = 0;
    for (const auto& [episode, values] : by_episode) {
        const auto n = static_cast<double>(values.size());
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= n;
        double sem = 0.0;
        if (values.size() > 1) {
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            sem = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        }
        c.mean.push_back(mean);
        c.sem.push_back(sem);
        runs = std::max(runs, values.size());
    }
    c.runs = static_cast<int>(runs);
    c.single_run = runs == 1;
    return c;
}

void write_file_atomically(const std::filesystem::path& target, const std::string& contents) {
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace

SensorMode parse_sensor_mode(int sensors) {
    if (sensors == 2) return SensorMode::Two;
    if (sensors == 6) return SensorMode::Six;
    throw ConfigError("sensors must be 2 or 6");
}

void ExperimentConfig::validate() const {
    if (episodes < 1) throw ConfigError("episodes must be >= 1");
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
    if (parallel < 1) throw ConfigError("parallel must be >= 1");
    if (!(slip_prob >= 0.0 && slip_prob <= 1.0)) throw ConfigError("slip_prob must lie in [0, 1]");
    if (agents.empty()) throw ConfigError("at least one agent is required");
    if (env_id.empty() || env_id.find_first_of(",\n\r\"") != std::string::npos)
        throw ConfigError("env id must be nonempty and free of commas, quotes and newlines");
    if (!std::filesystem::is_regular_file(map_path)) throw ConfigError("map file not found: " + map_path.string());
    std::set<std::string> names;
    for (const auto& a : agents) {
        const std::string name = a.config.display_name();
        if (name.find_first_of(",\n\r\"") != std::string::npos)
            throw ConfigError("agent name '" + name + "' contains a comma, quote or newline");
        if (!names.insert(name).second) throw ConfigError("duplicate agent name '" + name + "'");
        try {
            a.config.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("agent '" + name + "': " + e.what());
        }
    }
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(doc,
                   {"env_id", "map", "sensors", "agents", "episodes", "runs", "seed", "max_steps", "slip_prob",
                    "out", "parallel"},
                   "config");
    if (!doc.contains("map")) throw ConfigError("config needs a 'map' path");

    ExperimentConfig c;
    c.map_path = get_field<std::string>(doc, "map", "");
    if (c.map_path.is_relative() && !base_dir.empty()) c.map_path = base_dir / c.map_path;
    c.env_id = get_field<std::string>(doc, "env_id", c.map_path.stem().string());
    c.sensors = parse_sensor_mode(get_field(doc, "sensors", 2));
    c.episodes = get_field(doc, "episodes", c.episodes);
    c.runs = get_field(doc, "runs", c.runs);
    c.seed = get_field(doc, "seed", c.seed);
    c.max_steps = get_field(doc, "max_steps", c.max_steps);
    c.slip_prob = get_field(doc, "slip_prob", c.slip_prob);
    c.out_dir = get_field<std::string>(doc, "out", c.out_dir.string());
    c.parallel = get_field(doc, "parallel", c.parallel);
    const auto agents = doc.find("agents");
    if (agents == doc.end() || !agents->is_array()) throw ConfigError("config needs an 'agents' array");
    for (const auto& a : *agents) c.agents.push_back(parse_agent(a));
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.parent_path());
}

void run_single(const AgentEntry& entry, const ExperimentConfig& config, const GridMaze& maze, int run,
                std::vector<RunRecord>& returns, std::vector<WeightRecord>& weights) {
    const SensorMode mode = entry.sensors.value_or(config.sensors);
    auto agent = make_agent(entry.config, maze, mode, config.max_steps);
    const std::uint64_t seed = run_seed(config.seed, run);
    Rng env_rng = make_stream(seed, Stream::Environment);
    Rng agent_rng = make_stream(seed, Stream::Agent);
    const Environment env{&maze, mode, config.max_steps};
    const std::string name = entry.config.display_name();
    const auto spaces = agent->space_names();
    const bool log_weights = agent->fuses_subspaces();

    for (int episode = 1; episode <= config.episodes; ++episode) {
        const EpisodeLog log = agent->run_episode(env, env_rng, agent_rng, episode);
        returns.push_back({config.env_id, name, run, episode, log.total_reward, log.steps, log.reached_goal,
                           log.truncated});
        if (!log_weights) continue;
        for (std::size_t x = 0; x < spaces.size(); ++x)
            weights.push_back({config.env_id, name, run, episode, spaces[x], log.mean_weights[x]});
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const GridMaze maze = load_map_file(config.map_path, config.slip_prob);
    return run_experiment(config, maze);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const GridMaze& maze) {
    struct Slot {
        std::vector<RunRecord> returns;
        std::vector<WeightRecord> weights;
    };
    const std::size_t runs = static_cast<std::size_t>(config.runs);
    const std::size_t tasks = config.agents.size() * runs;
    std::vector<Slot> slots(tasks);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (std::size_t t = next++; t < tasks && !failed; t = next++) {
            try {
                run_single(config.agents[t / runs], config, maze, static_cast<int>(t % runs), slots[t].returns,
                           slots[t].weights);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, config.parallel)), tasks);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    ExperimentResult result;
    for (auto& s : slots) {
        result.returns.insert(result.returns.end(), s.returns.begin(), s.returns.end());
        result.weights.insert(result.weights.end(), s.weights.begin(), s.weights.end());
    }
    return result;
}

void write_returns_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << kReturnsHeader << '\n';
    for (const auto& r : records) {
        out << r.env << ',' << r.agent << ',' << r.run << ',' << r.episode << ',' << format_double(r.total_reward)
            << ',' << r.steps << ',' << (r.reached_goal ? 1 : 0) << ',' << (r.truncated ? 1 : 0) << '\n';
    }
}

void write_weights_csv(std::ostream& out, const std::vector<WeightRecord>& records) {
    out << kWeightsHeader << '\n';
    for (const auto& w : records) {
        out << w.env << ',' << w.agent << ',' << w.run << ',' << w.episode << ',' << w.space << ','
            << format_double(w.weight) << '\n';
    }
}

void write_results(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ostringstream returns;
    std::ostringstream weights;
    write_returns_csv(returns, result.returns);
    write_weights_csv(weights, result.weights);
    write_file_atomically(dir / "returns.csv", returns.str());
    try {
        write_file_atomically(dir / "weights.csv", weights.str());
    } catch (...) {
        std::filesystem::remove(dir / "returns.csv");
        throw;
    }
}

std::vector<RunRecord> read_returns_csv(std::istream& in) {
    return read_csv<RunRecord>(in, kReturnsHeader, 8, [](const std::vector<std::string>& c) {
        return RunRecord{c[0],
                         c[1],
                         parse_number<int>(c[2], "run"),
                         parse_number<int>(c[3], "episode"),
                         parse_number<double>(c[4], "return"),
                         parse_number<int>(c[5], "steps"),
                         parse_flag(c[6], "reached_goal"),
                         parse_flag(c[7], "truncated")};
    });
}

std::vector<WeightRecord> read_weights_csv(std::istream& in) {
    return read_csv<WeightRecord>(in, kWeightsHeader, 6, [](const std::vector<std::string>& c) {
        return WeightRecord{c[0], c[1], parse_number<int>(c[2], "run"), parse_number<int>(c[3], "episode"), c[4],
                            parse_number<double>(c[5], "weight")};
    });
}

ExperimentResult read_results(const std::filesystem::path& dir) {
    ExperimentResult r;
    std::ifstream returns(dir / "returns.csv");
    if (!returns) throw SchemaError("missing " + (dir / "returns.csv").string());
    r.returns = read_returns_csv(returns);
    std::ifstream weights(dir / "weights.csv");
    if (weights) r.weights = read_weights_csv(weights);
    return r;
}

std::vector<Curve> aggregate(const std::vector<RunRecord>& records) {
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::map<int, std::vector<double>>> groups;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.env, r.agent);
        if (!groups.count(key)) order.push_back(key);
        groups[key][r.episode].push_back(r.total_reward);
    }
    std::vector<Curve> curves;
    for (const auto& key : order) curves.push_back(summarize(key.first, key.second, "", groups[key]));
    return curves;
}

std::vector<Curve> aggregate(const std::vector<WeightRecord>& records) {
    using Key = std::tuple<std::string, std::string, std::string>;
    std::vector<Key> order;
    std::map<Key, std::map<int, std::vector<double>>> groups;
    for (const auto& w : records) {
        const Key key{w.env, w.agent, w.space};
        if (!groups.count(key)) order.push_back(key);
        groups[key][w.episode].push_back(w.weight);
    }
    std::vector<Curve> curves;
    for (const auto& key : order)
        curves.push_back(summarize(std::get<0>(key), std::get<1>(key), std::get<2>(key), groups[key]));
    return curves;
}

std::vector<double> smooth_rect(const std::vector<double>& series, int window) {
    if (window < 1 || window % 2 == 0) throw std::invalid_argument("smoothing window must be odd and >= 1");
    const auto n = static_cast<std::ptrdiff_t>(series.size());
    const std::ptrdiff_t half = window / 2;
    std::vector<double> out(series.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t h = std::min({half, i, n - 1 - i});
        double sum = 0.0;
        for (std::ptrdiff_t j = i - h; j <= i + h; ++j) sum += series[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = sum / static_cast<double>(2 * h + 1);
    }
    return out;
}

double episode_mean(const std::vector<double>& values, int first, int last) {
    if (first < 1 || last < first || static_cast<std::size_t>(last) > values.size())
        throw std::out_of_range("episode range outside the series");
    double sum = 0.0;
    for (int e = first; e <= last; ++e) sum += values[static_cast<std::size_t>(e - 1)];
    return sum / static_cast<double>(last - first + 1);
}

SweepReport sweep(const ExperimentConfig& config) {
    config.validate();
    const GridMaze maze = load_map_file(config.map_path, config.slip_prob);
    SweepReport report;
    for (const auto& entry : config.agents) {
        const AgentKind kind = entry.config.kind;
        std::vector<AgentConfig> grid;
        if (kind == AgentKind::QLambda || kind == AgentKind::QsLambda) {
            for (double lambda : kLambdaGrid) {
                for (int a = 1; a <= kNumAlphaSchedules; ++a) {
                    AgentConfig c = entry.config;
                    c.lambda = lambda;
                    c.alpha_schedule = a;
                    c.alpha_value.reset();
                    grid.push_back(c);
                }
            }
        } else if (kind == AgentKind::QlTile) {
            for (int b = 1; b <= kNumBetaSchedules; ++b) {
                AgentConfig c = entry.config;
                c.beta_schedule = b;
                c.beta_value.reset();
                grid.push_back(c);
            }
        } else {
            continue;
        }

        std::size_t best = report.points.size();
        for (const auto& c : grid) {
            ExperimentConfig single = config;
            single.agents = {AgentEntry{c, entry.sensors}};
            const auto result = run_experiment(single, maze);
            double total = 0.0;
            for (const auto& r : result.returns) total += r.total_reward;
            report.points.push_back({c, total / static_cast<double>(result.returns.size())});
            if (report.points.back().score > report.points[best].score) best = report.points.size() - 1;
        }
        report.best.push_back(best);
    }
    return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
    out << "agent,kind,lambda,alpha_schedule,beta_schedule,score,best\n";
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const auto& p = report.points[i];
        const bool best = std::find(report.best.begin(), report.best.end(), i) != report.best.end();
        out << p.config.display_name() << ',' << to_string(p.config.kind) << ',' << format_double(p.config.lambda)
            << ',' << p.config.alpha_schedule << ',' << p.config.beta_schedule << ',' << format_double(p.score)
            << ',' << (best ? 1 : 0) << '\n';
    }
}

}  // namespace mobles
