#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mobles/experiment.hpp"
#include "mobles/gridworld.hpp"
#include "mobles/plot.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

int run_command(const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed,
                std::optional<int> parallel) {
    auto config = mobles::load_config(config_path);
    if (!out.empty()) config.out_dir = out;
    if (seed) config.seed = *seed;
    if (parallel) config.parallel = *parallel;
    config.validate();
    const auto result = mobles::run_experiment(config);
    mobles::write_results(result, config.out_dir);
    std::cout << "wrote " << result.returns.size() << " return rows and " << result.weights.size()
              << " weight rows to " << config.out_dir.string() << '\n';
    return kOk;
}

int plot_command(const std::string& in, const std::string& out) {
    const auto result = mobles::read_results(in);
    for (const auto& path : mobles::plot_results(result, out)) std::cout << path.string() << '\n';
    return kOk;
}

int validate_map_command(const std::string& path) {
    const auto maze = mobles::load_map_file(path);
    std::cout << path << ": " << maze.width() << "x" << maze.height() << ", " << maze.free_cells().size()
              << " free cells, goal at (" << maze.goal().x << "," << maze.goal().y << ")\n";
    return kOk;
}

int sweep_command(const std::string& config_path, const std::string& out) {
    const auto config = mobles::load_config(config_path);
    const auto report = mobles::sweep(config);
    if (out.empty()) {
        mobles::write_sweep_csv(std::cout, report);
    } else {
        std::ofstream file(out);
        if (!file) throw std::runtime_error("cannot write " + out);
        mobles::write_sweep_csv(file, report);
    }
    for (std::size_t i : report.best) {
        const auto& p = report.points[i];
        std::cerr << "best " << p.config.display_name() << ": lambda=" << p.config.lambda
                  << " alpha_schedule=" << p.config.alpha_schedule << " beta_schedule=" << p.config.beta_schedule
                  << " score=" << p.score << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MoBLeS gridworld experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir, in_dir, map_path, sweep_out;
    std::optional<std::uint64_t> seed;
    std::optional<int> parallel;

    auto* run = app.add_subcommand("run", "Run an experiment config and write returns.csv / weights.csv");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory (overrides the config)");
    run->add_option("--seed", seed, "Base seed (overrides the config)");
    run->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

    auto* plot = app.add_subcommand("plot", "Render SVG learning curves and weight curves");
    plot->add_option("--in", in_dir, "Directory holding returns.csv and weights.csv")->required();
    plot->add_option("--out", out_dir, "Directory for the SVG files")->required();

    auto* validate = app.add_subcommand("validate-map", "Parse a map file and print a summary");
    validate->add_option("file", map_path, "Map file")->required();

    auto* sweep = app.add_subcommand("sweep", "Grid search over lambda/alpha and beta for baseline agents");
    sweep->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_out, "CSV file for the sweep table (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*run) return run_command(config_path, out_dir, seed, parallel);
        if (*plot) return plot_command(in_dir, out_dir);
        if (*validate) return validate_map_command(map_path);
        if (*sweep) return sweep_command(config_path, sweep_out);
    } catch (const mobles::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const mobles::MapError& e) {
        std::cerr << "map error: " << e.what() << '\n';
        return kConfigError;
    } catch (const mobles::SchemaError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kRuntimeError;
}
