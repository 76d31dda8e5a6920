#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "cavitychain/csv.hpp"
#include "cavitychain/errors.hpp"

namespace cavitychain {

struct PlotSeries {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal static SVG line plot. Derived artifact only; never an input.
inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<PlotSeries>& series) {
    const double width = 720, height = 480;
    const double ml = 80, mr = 20, mt = 40, mb = 55;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmin < xmax)) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (!(ymin < ymax)) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes with 5 ticks each
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = xmin + (xmax - xmin) * i / 5.0;
        const double y = ymin + (ymax - ymin) * i / 5.0;
        out << "<line x1=\"" << px(x) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(x)
            << "\" y2=\"" << py(ymax) << "\" stroke=\"#ddd\"/>\n";
        out << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(y) << "\" x2=\"" << px(xmax)
            << "\" y2=\"" << py(y) << "\" stroke=\"#ddd\"/>\n";
        char xb[32], yb[32];
        std::snprintf(xb, sizeof(xb), "%.4g", x);
        std::snprintf(yb, sizeof(yb), "%.4g", y);
        out << "<text x=\"" << px(x) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\">" << xb << "</text>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\">" << yb << "</text>\n";
    }
    out << "</g>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
        << "\" height=\"" << height - mt - mb
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << height / 2 << ")\">" << y_label
        << "</text>\n";

    int li = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        bool open = false;
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                open = false;
                continue;
            }
            out << (open ? " " : "") << px(s.x[i]) << ',' << py(s.y[i]);
            open = true;
        }
        out << "\"/>\n";
        if (!s.label.empty()) {
            out << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 16 + 16 * li
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
                << s.color << "\">" << s.label << "</text>\n";
        }
        ++li;
    }
    out << "</svg>\n";
}

}  // namespace cavitychain
