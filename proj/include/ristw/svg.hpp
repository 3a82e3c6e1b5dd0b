// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ristw/errors.hpp>
#include <ristw/sweep.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ristw {

enum class PlotKind {
    sweep_lines, // x = swept value, y = median weighted objective per scheme
    rate_region, // x = mean downlink rate, y = mean uplink rate per weight
};

namespace detail {

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline std::string svg_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

inline std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

} // namespace detail

/// Write one standalone SVG drawing: one polyline per scheme, labeled axes
/// with ticks, and a legend. No external resources are referenced.
inline void emit_plot(const std::vector<SweepRecord>& records, PlotKind kind,
                      const std::string& path) {
    if (records.empty()) throw domain_error("refusing to plot an empty record list");

    // aggregate records into one (x, y) series per scheme, in first-seen order
    std::vector<detail::Series> series;
    auto series_for = [&series](const std::string& name) -> detail::Series& {
        for (auto& s : series)
            if (s.name == name) return s;
        series.push_back({name, {}});
        return series.back();
    };
    if (kind == PlotKind::sweep_lines) {
        std::map<std::pair<std::string, double>, std::vector<double>> cells;
        for (const auto& r : records) cells[{r.scheme, r.value}].push_back(r.objective);
        for (const auto& [key, ys] : cells)
            series_for(key.first).points.emplace_back(key.second, detail::median_of(ys));
        for (auto& s : series) std::sort(s.points.begin(), s.points.end());
    } else {
        struct Acc {
            double rd = 0.0, ru = 0.0;
            int n = 0;
        };
        std::map<std::pair<std::string, double>, Acc> cells; // keyed by (scheme, eta)
        for (const auto& r : records) {
            Acc& a = cells[{r.scheme, r.eta}];
            a.rd += r.rate_down;
            a.ru += r.rate_up;
            ++a.n;
        }
        for (const auto& [key, acc] : cells)
            series_for(key.first).points.emplace_back(acc.rd / acc.n, acc.ru / acc.n);
        for (auto& s : series) std::sort(s.points.begin(), s.points.end());
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax - xmin < 1e-12) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    const double left = 70, right = 450, top = 20, bottom = 430;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    auto py = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

    std::string xlabel, ylabel;
    if (kind == PlotKind::sweep_lines) {
        const std::string& var = records.front().variable;
        if (var == "bs_ris_distance") xlabel = "BS-RIS horizontal distance (m)";
        else if (var == "eta") xlabel = "downlink weight";
        else if (var == "ris_elements") xlabel = "reflecting elements";
        else xlabel = var;
        ylabel = "weighted sum rate (bit/s/Hz)";
    } else {
        xlabel = "downlink rate (bit/s/Hz)";
        ylabel = "uplink rate (bit/s/Hz)";
    }

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b"};
    const int npal = 6;

    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";

    // frame
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks and grid labels
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double gx = px(fx);
        out << "<line x1=\"" << detail::svg_num(gx) << "\" y1=\"" << bottom << "\" x2=\""
            << detail::svg_num(gx) << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << detail::svg_num(gx) << "\" y=\"" << bottom + 18
            << "\" text-anchor=\"middle\">" << detail::tick_label(fx) << "</text>\n";
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        const double gy = py(fy);
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::svg_num(gy) << "\" x2=\""
            << left << "\" y2=\"" << detail::svg_num(gy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << detail::svg_num(gy + 4)
            << "\" text-anchor=\"end\">" << detail::tick_label(fy) << "</text>\n";
    }

    // axis titles
    out << "<text x=\"" << detail::svg_num(0.5 * (left + right)) << "\" y=\"462\" "
        << "text-anchor=\"middle\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << detail::svg_num(0.5 * (top + bottom))
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << detail::svg_num(0.5 * (top + bottom)) << ")\">" << ylabel << "</text>\n";

    // curves
    int ci = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[ci % npal]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (i) out << ' ';
            out << detail::svg_num(px(s.points[i].first)) << ','
                << detail::svg_num(py(s.points[i].second));
        }
        out << "\"/>\n";
        for (const auto& [x, y] : s.points)
            out << "<circle cx=\"" << detail::svg_num(px(x)) << "\" cy=\""
                << detail::svg_num(py(y)) << "\" r=\"2.5\" fill=\"" << kPalette[ci % npal]
                << "\"/>\n";
        ++ci;
    }

    // legend
    ci = 0;
    for (const auto& s : series) {
        const double ly = top + 16 + 18 * ci;
        out << "<line x1=\"" << right + 14 << "\" y1=\"" << detail::svg_num(ly) << "\" x2=\""
            << right + 44 << "\" y2=\"" << detail::svg_num(ly) << "\" stroke=\""
            << kPalette[ci % npal] << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << right + 50 << "\" y=\"" << detail::svg_num(ly + 4) << "\">"
            << s.name << "</text>\n";
        ++ci;
    }

    out << "</svg>\n";
    if (!out.flush()) throw io_error("short write to '" + path + "'");
}

} // namespace ristw
