#include "mobles/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace mobles {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string file_safe(const std::string& text) {
    std::string out;
    for (char c : text) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out;
}

struct Series {
    std::string label;
    std::vector<double> y;
    std::vector<double> band;  // half-width; empty for no band
};

class Canvas {
public:
    Canvas(AxisRange x, AxisRange y) : x_(x), y_(y) {}

    double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

private:
    AxisRange x_;
    AxisRange y_;
};

std::string render(const std::string& title, const std::string& y_label, const std::vector<Series>& series) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t episodes = 0;
    for (const auto& s : series) {
        episodes = std::max(episodes, s.y.size());
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            const double b = s.band.empty() ? 0.0 : s.band[i];
            lo = std::min(lo, s.y[i] - b);
            hi = std::max(hi, s.y[i] + b);
        }
    }
    if (episodes == 0) throw PlotError("nothing to plot");
    const AxisRange xr = padded_range(1.0, static_cast<double>(episodes));
    const AxisRange yr = padded_range(lo, hi);
    const Canvas cv(xr, yr);

    std::ostringstream svg;
    svg.precision(10);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" data-x-min=\"" << xr.lo << "\" data-x-max=\""
        << xr.hi << "\" data-y-min=\"" << yr.lo << "\" data-y-max=\"" << yr.hi << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
        << "</text>\n";

    // Axes and ticks.
    const double x0 = cv.px(xr.lo), x1 = cv.px(xr.hi), y0 = cv.py(yr.lo), y1 = cv.py(yr.hi);
    svg << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double yv = yr.lo + (yr.hi - yr.lo) * t / 4.0;
        const double xv = xr.lo + (xr.hi - xr.lo) * t / 4.0;
        svg << "<text x=\"" << x0 - 6 << "\" y=\"" << cv.py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
            << std::round(yv * 100.0) / 100.0 << "</text>\n";
        svg << "<text x=\"" << cv.px(xv) << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << std::round(xv * 10.0) / 10.0 << "</text>\n";
    }
    svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-size=\"13\">episode</text>\n";
    svg << "<text x=\"16\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << (y0 + y1) / 2 << ")\">" << escape(y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        if (!s.band.empty()) {
            svg << "<polygon class=\"sem\" fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
            for (std::size_t i = 0; i < s.y.size(); ++i)
                svg << cv.px(static_cast<double>(i + 1)) << ',' << cv.py(s.y[i] + s.band[i]) << ' ';
            for (std::size_t i = s.y.size(); i-- > 0;)
                svg << cv.px(static_cast<double>(i + 1)) << ',' << cv.py(s.y[i] - s.band[i]) << ' ';
            svg << "\"/>\n";
        }
        svg << "<path class=\"mean\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" data-label=\""
            << escape(s.label) << "\" d=\"";
        for (std::size_t i = 0; i < s.y.size(); ++i)
            svg << (i == 0 ? 'M' : 'L') << cv.px(static_cast<double>(i + 1)) << ',' << cv.py(s.y[i]) << ' ';
        svg << "\"/>\n";
        const double ly = kTop + 20.0 * static_cast<double>(k);
        svg << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 40
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << kWidth - kRight + 46 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
            << escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) throw PlotError("cannot write " + path.string());
}

}  // namespace

AxisRange padded_range(double lo, double hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || hi < lo) throw PlotError("invalid data range");
    const double span = hi - lo;
    if (span == 0.0) return {lo - 0.5, hi + 0.5};
    return {lo - 0.05 * span, hi + 0.05 * span};
}

std::string learning_curve_svg(const std::string& title, const std::vector<Curve>& curves) {
    if (curves.empty()) throw PlotError("no agents to plot");
    std::vector<Series> series;
    for (const auto& c : curves) series.push_back({c.agent, c.mean, c.sem});
    return render(title, "accumulated reward", series);
}

std::string weight_curve_svg(const std::string& title, const std::vector<Curve>& curves, int window) {
    if (curves.empty()) throw PlotError("no weights to plot");
    std::vector<Series> series;
    for (const auto& c : curves) series.push_back({c.space, smooth_rect(c.mean, window), {}});
    return render(title, "mean weight", series);
}

std::vector<std::filesystem::path> plot_results(const ExperimentResult& result, const std::filesystem::path& out_dir,
                                                int window) {
    const auto returns = aggregate(result.returns);
    if (returns.empty()) throw PlotError("no agents to plot");
    const auto weights = aggregate(result.weights);

    // Render everything before touching the filesystem.
    std::vector<std::pair<std::filesystem::path, std::string>> docs;
    std::vector<std::string> envs;
    for (const auto& c : returns)
        if (std::find(envs.begin(), envs.end(), c.env) == envs.end()) envs.push_back(c.env);
    for (const auto& env : envs) {
        std::vector<Curve> curves;
        for (const auto& c : returns)
            if (c.env == env) curves.push_back(c);
        docs.emplace_back(out_dir / ("returns_" + file_safe(env) + ".svg"), learning_curve_svg(env, curves));

        std::vector<std::string> agents;
        for (const auto& c : weights)
            if (c.env == env && std::find(agents.begin(), agents.end(), c.agent) == agents.end())
                agents.push_back(c.agent);
        for (const auto& agent : agents) {
            std::vector<Curve> curves_w;
            for (const auto& c : weights)
                if (c.env == env && c.agent == agent) curves_w.push_back(c);
            docs.emplace_back(out_dir / ("weights_" + file_safe(env) + "_" + file_safe(agent) + ".svg"),
                              weight_curve_svg(env + " / " + agent, curves_w, window));
        }
    }

    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& [path, text] : docs) {
        write_text(path, text);
        written.push_back(path);
    }
    return written;
}

}  // namespace mobles
