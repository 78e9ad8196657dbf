#include <gtest/gtest.h>

#include <filesystem>
#include <regex>

#include "mobles/plot.hpp"

using namespace mobles;

namespace {

double attr(const std::string& svg, const std::string& name) {
    const std::regex re(name + "=\"([-0-9.e+]+)\"");
    std::smatch m;
    if (!std::regex_search(svg, m, re)) throw std::runtime_error("missing attribute " + name);
    return std::stod(m[1].str());
}

Curve curve(std::string agent, std::vector<double> mean, std::vector<double> sem) {
    Curve c;
    c.env = "env";
    c.agent = std::move(agent);
    c.mean = std::move(mean);
    c.sem = std::move(sem);
    c.runs = 2;
    return c;
}

}  // namespace

TEST(PaddedRange, FivePercentMargin) {
    const auto r = padded_range(-10.0, 10.0);
    EXPECT_DOUBLE_EQ(r.lo, -11.0);
    EXPECT_DOUBLE_EQ(r.hi, 11.0);
    const auto flat = padded_range(3.0, 3.0);
    EXPECT_DOUBLE_EQ(flat.lo, 2.5);
    EXPECT_DOUBLE_EQ(flat.hi, 3.5);
    EXPECT_THROW(padded_range(1.0, 0.0), PlotError);
}

TEST(LearningCurve, AxesCoverDataWithMargin) {
    const auto svg = learning_curve_svg("t", {curve("a", {-50, -20, -5}, {2, 1, 0.5}), curve("b", {-30, -10, 4}, {1, 1, 1})});
    const double lo = -52.0, hi = 5.0, span = hi - lo;
    EXPECT_NEAR(attr(svg, "data-y-min"), lo - 0.05 * span, 1e-6);
    EXPECT_NEAR(attr(svg, "data-y-max"), hi + 0.05 * span, 1e-6);
    EXPECT_NEAR(attr(svg, "data-x-min"), 1 - 0.05 * 2, 1e-9);
    EXPECT_NEAR(attr(svg, "data-x-max"), 3 + 0.05 * 2, 1e-9);
    EXPECT_NE(svg.find("class=\"sem\""), std::string::npos);
    EXPECT_NE(svg.find("data-label=\"b\""), std::string::npos);
}

TEST(LearningCurve, EmptyAgentSetIsAnError) {
    EXPECT_THROW(learning_curve_svg("t", {}), PlotError);
    EXPECT_THROW(weight_curve_svg("t", {}), PlotError);
}

TEST(LearningCurve, SingleRunCurveIsRawReturns) {
    ExperimentResult r;
    r.returns = {{"env", "mb", 0, 1, -40.0, 30, true, false}, {"env", "mb", 0, 2, -12.0, 10, true, false}};
    const auto curves = aggregate(r.returns);
    ASSERT_EQ(curves.size(), 1u);
    EXPECT_EQ(curves[0].mean, (std::vector<double>{-40.0, -12.0}));
    const auto svg = learning_curve_svg("env", curves);
    EXPECT_NEAR(attr(svg, "data-y-min"), -40.0 - 0.05 * 28.0, 1e-9);
    EXPECT_NEAR(attr(svg, "data-y-max"), -12.0 + 0.05 * 28.0, 1e-9);
}

TEST(PlotResults, WritesOneFilePerEnvironmentAndFusingAgent) {
    ExperimentResult r;
    for (int e = 1; e <= 6; ++e) {
        r.returns.push_back({"four", "MoBLeS", 0, e, -10.0 * e, 10, true, false});
        r.returns.push_back({"four", "MB", 0, e, -9.0 * e, 10, true, false});
        r.weights.push_back({"four", "MoBLeS", 0, e, "full", 0.5});
        r.weights.push_back({"four", "MoBLeS", 0, e, "x", 0.5});
    }
    const auto dir = std::filesystem::temp_directory_path() / "mobles_test_plot";
    std::filesystem::remove_all(dir);
    const auto files = plot_results(r, dir);
    ASSERT_EQ(files.size(), 2u);
    EXPECT_TRUE(std::filesystem::exists(dir / "returns_four.svg"));
    EXPECT_TRUE(std::filesystem::exists(dir / "weights_four_MoBLeS.svg"));
    std::filesystem::remove_all(dir);
}

TEST(PlotResults, NoAgentsWritesNothing) {
    const auto dir = std::filesystem::temp_directory_path() / "mobles_test_plot_empty";
    std::filesystem::remove_all(dir);
    EXPECT_THROW(plot_results(ExperimentResult{}, dir), PlotError);
    EXPECT_FALSE(std::filesystem::exists(dir));
}
