#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobles/experiment.hpp"

namespace mobles {

class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
};

// [lo, hi] widened by 5% of its span on each side; a zero span widens by 0.5.
AxisRange padded_range(double lo, double hi);

// Mean curves with shaded mean +- SEM bands, one per agent. The root element
// carries data-x-min/max and data-y-min/max with the axis ranges.
std::string learning_curve_svg(const std::string& title, const std::vector<Curve>& curves);
// Smoothed mean weight per space for one agent.
std::string weight_curve_svg(const std::string& title, const std::vector<Curve>& curves, int window = 5);

// Writes returns_<env>.svg per environment and weights_<env>_<agent>.svg per
// fusing agent; returns the written paths.
std::vector<std::filesystem::path> plot_results(const ExperimentResult& result, const std::filesystem::path& out_dir,
                                                int window = 5);

}  // namespace mobles
