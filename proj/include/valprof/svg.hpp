#pragma once

#include <optional>
#include <string>
#include <vector>

namespace valprof {

// Minimal self-contained SVG line plots; enough for the figure panels and
// nothing more. Numbers are formatted through the shared fmt6 path.
namespace svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb2";
    std::vector<double> band_lo;  // optional shaded band (same length as x)
    std::vector<double> band_hi;
};

struct VLine {
    double x = 0.0;
    std::string color = "#999999";
    bool dashed = true;
};

struct HLine {
    double y = 0.0;
    std::string color = "#999999";
    bool dashed = true;
};

struct LinePlot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;
    std::vector<VLine> vlines;
    std::vector<HLine> hlines;
    int width = 760;
    int height = 430;

    std::string render() const;
    void write(const std::string& path) const;
};

// Grouped bar chart for the context-conditional panels.
struct BarGroup {
    std::string label;             // x-axis group label
    std::vector<double> values;    // one per series
};

struct BarPlot {
    std::string title;
    std::string ylabel;
    std::vector<std::string> series_labels;
    std::vector<std::string> series_colors;
    std::vector<BarGroup> groups;
    int width = 560;
    int height = 400;

    std::string render() const;
    void write(const std::string& path) const;
};

}  // namespace svg
}  // namespace valprof
