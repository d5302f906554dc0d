#include "valprof/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "valprof/errors.hpp"
#include "valprof/report.hpp"

namespace valprof {
namespace svg {

namespace {

struct Bounds {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

    void include(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 52;

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw RuntimeError("cannot write SVG: " + path);
    out << body;
    if (!out.good()) throw RuntimeError("failed writing SVG: " + path);
}

}  // namespace

std::string LinePlot::render() const {
    Bounds b;
    bool first = true;
    for (const Series& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                b = Bounds{s.x[i], s.x[i], s.y[i], s.y[i]};
                first = false;
            }
            b.include(s.x[i], s.y[i]);
            if (s.band_lo.size() == s.x.size() && s.band_hi.size() == s.x.size()) {
                b.include(s.x[i], s.band_lo[i]);
                b.include(s.x[i], s.band_hi[i]);
            }
        }
    for (const HLine& h : hlines) b.include(b.xmin, h.y);
    if (b.xmax == b.xmin) b.xmax = b.xmin + 1;
    if (b.ymax == b.ymin) b.ymax = b.ymin + 1;
    const double ypad = 0.06 * (b.ymax - b.ymin);
    b.ymin -= ypad;
    b.ymax += ypad;

    const double pw = width - kMarginLeft - kMarginRight;
    const double ph = height - kMarginTop - kMarginBottom;
    auto px = [&](double x) {
        return kMarginLeft + pw * (x - b.xmin) / (b.xmax - b.xmin);
    };
    auto py = [&](double y) {
        return kMarginTop + ph * (1.0 - (y - b.ymin) / (b.ymax - b.ymin));
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << width / 2 << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\""
      << " text-anchor=\"middle\">" << esc(title) << "</text>\n";

    // axes + ticks
    o << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = b.xmin + (b.xmax - b.xmin) * i / 4.0;
        const double fy = b.ymin + (b.ymax - b.ymin) * i / 4.0;
        o << "<line x1=\"" << fmt6(px(fx)) << "\" y1=\"" << kMarginTop + ph << "\" x2=\""
          << fmt6(px(fx)) << "\" y2=\"" << kMarginTop + ph + 4 << "\" stroke=\"#222\"/>\n";
        o << "<text x=\"" << fmt6(px(fx)) << "\" y=\"" << kMarginTop + ph + 16
          << "\" text-anchor=\"middle\">" << fmt6(fx) << "</text>\n";
        o << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << fmt6(py(fy)) << "\" x2=\""
          << kMarginLeft << "\" y2=\"" << fmt6(py(fy)) << "\" stroke=\"#222\"/>\n";
        o << "<text x=\"" << kMarginLeft - 7 << "\" y=\"" << fmt6(py(fy) + 4)
          << "\" text-anchor=\"end\">" << fmt6(fy) << "</text>\n";
    }
    o << "</g>\n";
    o << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + ph << "\" x2=\""
      << kMarginLeft + pw << "\" y2=\"" << kMarginTop + ph << "\" stroke=\"#222\"/>\n";
    o << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kMarginTop + ph << "\" stroke=\"#222\"/>\n";
    o << "<text x=\"" << kMarginLeft + pw / 2 << "\" y=\"" << height - 10
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << esc(xlabel)
      << "</text>\n";
    o << "<text x=\"16\" y=\"" << kMarginTop + ph / 2
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 16 " << kMarginTop + ph / 2 << ")\">" << esc(ylabel)
      << "</text>\n";

    for (const VLine& v : vlines) {
        if (v.x < b.xmin || v.x > b.xmax) continue;
        o << "<line x1=\"" << fmt6(px(v.x)) << "\" y1=\"" << kMarginTop << "\" x2=\""
          << fmt6(px(v.x)) << "\" y2=\"" << kMarginTop + ph << "\" stroke=\"" << v.color
          << "\"" << (v.dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
    }
    for (const HLine& h : hlines) {
        o << "<line x1=\"" << kMarginLeft << "\" y1=\"" << fmt6(py(h.y)) << "\" x2=\""
          << kMarginLeft + pw << "\" y2=\"" << fmt6(py(h.y)) << "\" stroke=\"" << h.color
          << "\"" << (h.dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
    }

    for (const Series& s : series) {
        if (s.band_lo.size() == s.x.size() && s.band_hi.size() == s.x.size() && !s.x.empty()) {
            o << "<polygon fill=\"" << s.color << "\" fill-opacity=\"0.15\" stroke=\"none\""
              << " points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                o << fmt6(px(s.x[i])) << "," << fmt6(py(s.band_hi[i])) << " ";
            for (std::size_t i = s.x.size(); i-- > 0;)
                o << fmt6(px(s.x[i])) << "," << fmt6(py(s.band_lo[i])) << " ";
            o << "\"/>\n";
        }
        o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\""
          << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            o << fmt6(px(s.x[i])) << "," << fmt6(py(s.y[i])) << " ";
        o << "\"/>\n";
    }

    // legend
    int ly = kMarginTop + 8;
    for (const Series& s : series) {
        const int lx = kMarginLeft + static_cast<int>(pw) - 150;
        o << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 22 << "\" y2=\""
          << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 4
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << esc(s.label) << "</text>\n";
        ly += 16;
    }

    o << "</svg>\n";
    return o.str();
}

void LinePlot::write(const std::string& path) const { write_file(path, render()); }

std::string BarPlot::render() const {
    double ymax = 0.0, ymin = 0.0;
    for (const BarGroup& g : groups)
        for (double v : g.values) {
            ymax = std::max(ymax, v);
            ymin = std::min(ymin, v);
        }
    if (ymax == ymin) ymax = ymin + 1;
    ymax *= 1.12;

    const double pw = width - kMarginLeft - kMarginRight;
    const double ph = height - kMarginTop - kMarginBottom;
    auto py = [&](double y) {
        return kMarginTop + ph * (1.0 - (y - ymin) / (ymax - ymin));
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << width / 2 << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\""
      << " text-anchor=\"middle\">" << esc(title) << "</text>\n";

    o << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        o << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << fmt6(py(fy)) << "\" x2=\""
          << kMarginLeft << "\" y2=\"" << fmt6(py(fy)) << "\" stroke=\"#222\"/>\n";
        o << "<text x=\"" << kMarginLeft - 7 << "\" y=\"" << fmt6(py(fy) + 4)
          << "\" text-anchor=\"end\">" << fmt6(fy) << "</text>\n";
    }
    o << "</g>\n";
    o << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kMarginTop + ph << "\" stroke=\"#222\"/>\n";
    o << "<line x1=\"" << kMarginLeft << "\" y1=\"" << fmt6(py(std::max(0.0, ymin)))
      << "\" x2=\"" << kMarginLeft + pw << "\" y2=\"" << fmt6(py(std::max(0.0, ymin)))
      << "\" stroke=\"#222\"/>\n";
    o << "<text x=\"16\" y=\"" << kMarginTop + ph / 2
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 16 " << kMarginTop + ph / 2 << ")\">" << esc(ylabel)
      << "</text>\n";

    const std::size_t n_series = series_labels.size();
    const double group_w = pw / std::max<std::size_t>(groups.size(), 1);
    const double bar_w = group_w * 0.7 / std::max<std::size_t>(n_series, 1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double gx = kMarginLeft + group_w * g + group_w * 0.15;
        for (std::size_t s = 0; s < groups[g].values.size() && s < n_series; ++s) {
            const double v = groups[g].values[s];
            const double y0 = py(std::max(0.0, v));
            const double h = std::abs(py(v) - py(0.0));
            const std::string color = s < series_colors.size() ? series_colors[s] : "#1f6fb2";
            o << "<rect x=\"" << fmt6(gx + bar_w * s) << "\" y=\"" << fmt6(y0) << "\" width=\""
              << fmt6(bar_w * 0.92) << "\" height=\"" << fmt6(h) << "\" fill=\"" << color
              << "\"/>\n";
            o << "<text x=\"" << fmt6(gx + bar_w * s + bar_w * 0.46) << "\" y=\""
              << fmt6(y0 - 4) << "\" font-family=\"sans-serif\" font-size=\"10\""
              << " text-anchor=\"middle\">" << fmt6(v) << "</text>\n";
        }
        o << "<text x=\"" << fmt6(kMarginLeft + group_w * g + group_w / 2) << "\" y=\""
          << kMarginTop + ph + 16 << "\" font-family=\"sans-serif\" font-size=\"12\""
          << " text-anchor=\"middle\">" << esc(groups[g].label) << "</text>\n";
    }

    int ly = kMarginTop + 8;
    for (std::size_t s = 0; s < n_series; ++s) {
        const int lx = kMarginLeft + static_cast<int>(pw) - 130;
        const std::string color = s < series_colors.size() ? series_colors[s] : "#1f6fb2";
        o << "<rect x=\"" << lx << "\" y=\"" << ly - 8 << "\" width=\"12\" height=\"12\""
          << " fill=\"" << color << "\"/>\n";
        o << "<text x=\"" << lx + 18 << "\" y=\"" << ly + 2
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << esc(series_labels[s])
          << "</text>\n";
        ly += 16;
    }

    o << "</svg>\n";
    return o.str();
}

void BarPlot::write(const std::string& path) const { write_file(path, render()); }

}  // namespace svg
}  // namespace valprof
