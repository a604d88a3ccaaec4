#ifndef COINRUNS_TOOLS_SVG_HPP
#define COINRUNS_TOOLS_SVG_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace coinruns::tools {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Minimal static plot: polylines plus axis ticks, no external dependency.
inline void write_svg(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series,
                      const std::vector<double>& vertical_markers = {}) {
    const double width = 640, height = 480;
    const double ml = 60, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    for (double m : vertical_markers) {
        xmin = std::min(xmin, m);
        xmax = std::max(xmax, m);
    }
    if (xmin >= xmax) xmax = xmin + 1;
    if (ymin >= ymax) ymax = ymin + 1;
    auto tx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto ty = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b"};
    std::ofstream out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 5;
        const double yv = ymin + (ymax - ymin) * k / 5;
        out << "<line x1=\"" << tx(xv) << "\" y1=\"" << height - mb << "\" x2=\"" << tx(xv)
            << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << tx(xv) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"10\">" << xv << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << ty(yv) << "\" x2=\"" << ml << "\" y2=\""
            << ty(yv) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << ty(yv) + 3
            << "\" text-anchor=\"end\" font-size=\"10\">" << yv << "</text>\n";
    }
    for (double m : vertical_markers)
        out << "<line x1=\"" << tx(m) << "\" y1=\"" << mt << "\" x2=\"" << tx(m) << "\" y2=\""
            << height - mb << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    int ci = 0;
    for (const auto& s : series) {
        const char* color = colors[ci % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : s.points) out << tx(x) << "," << ty(y) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << width - mr - 4 << "\" y=\"" << mt + 14 * (ci + 1)
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

}  // namespace coinruns::tools

#endif
