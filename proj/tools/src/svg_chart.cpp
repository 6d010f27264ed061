// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the comac authors

#include "comac_cli/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace comac::cli {

namespace {

const char* method_color(const std::string& m) {
    if (m == "a1") return "#d62728";
    if (m == "a2") return "#1f77b4";
    if (m == "a3") return "#2ca02c";
    return "#555555";
}

const char* dash_pattern(int config_index) {
    static const char* patterns[] = {"", "6,3", "2,2", "8,2,2,2", "4,4", "1,3"};
    return patterns[config_index % 6];
}

struct Rect {
    double x, y, w, h;
};

// y position for an MSE value on a log10 axis.
double log_y(const Rect& r, double v, double lo, double hi) {
    const double lv = std::log10(std::max(v, 1e-300));
    const double t = (lv - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    return r.y + r.h - t * r.h;
}

}  // namespace

void emit_chart(std::span<const ResultRow> rows, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("emit_chart: no rows to draw");

    std::set<std::pair<int, int>> configs;
    std::set<std::string> methods;
    double ebno_lo = rows[0].ebno_db, ebno_hi = rows[0].ebno_db;
    double mse_lo = rows[0].mse_mean, mse_hi = rows[0].mse_mean;
    for (const ResultRow& r : rows) {
        configs.insert({r.nodes, r.subcarriers});
        methods.insert(r.method);
        ebno_lo = std::min(ebno_lo, r.ebno_db);
        ebno_hi = std::max(ebno_hi, r.ebno_db);
        if (r.mse_mean > 0) {
            mse_lo = std::min(mse_lo, r.mse_mean);
            mse_hi = std::max(mse_hi, r.mse_mean);
        }
    }
    if (mse_lo <= 0 || mse_hi <= 0) {
        mse_lo = 1e-6;
        mse_hi = 1.0;
    }
    mse_lo /= 1.5;
    mse_hi *= 1.5;
    if (ebno_hi == ebno_lo) ebno_hi = ebno_lo + 1.0;

    const bool bars = [&] {
        std::set<double> grid;
        for (const ResultRow& r : rows) grid.insert(r.ebno_db);
        return grid.count(1.0) > 0 && grid.count(5.0) > 0;
    }();

    const double width = 860;
    const double height = bars ? 760 : 420;
    const Rect line_area{70, 30, 740, 330};
    const Rect bar_area{70, 430, 740, 280};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes and log grid for the line panel.
    svg << "<rect x=\"" << line_area.x << "\" y=\"" << line_area.y << "\" width=\"" << line_area.w
        << "\" height=\"" << line_area.h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int d = static_cast<int>(std::floor(std::log10(mse_lo)));
         d <= static_cast<int>(std::ceil(std::log10(mse_hi))); ++d) {
        const double v = std::pow(10.0, d);
        if (v < mse_lo || v > mse_hi) continue;
        const double y = log_y(line_area, v, mse_lo, mse_hi);
        svg << "<line x1=\"" << line_area.x << "\" y1=\"" << y << "\" x2=\""
            << line_area.x + line_area.w << "\" y2=\"" << y
            << "\" stroke=\"#ddd\" stroke-width=\"0.6\"/>\n";
        svg << "<text x=\"" << line_area.x - 6 << "\" y=\"" << y + 3
            << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    const int xticks = 6;
    for (int t = 0; t <= xticks; ++t) {
        const double db = ebno_lo + (ebno_hi - ebno_lo) * t / xticks;
        const double x = line_area.x + line_area.w * t / xticks;
        svg << "<text x=\"" << x << "\" y=\"" << line_area.y + line_area.h + 14
            << "\" text-anchor=\"middle\">" << db << "</text>\n";
    }
    svg << "<text x=\"" << line_area.x + line_area.w / 2 << "\" y=\""
        << line_area.y + line_area.h + 30 << "\" text-anchor=\"middle\">Eb/N0 (dB)</text>\n";
    svg << "<text x=\"16\" y=\"" << line_area.y + line_area.h / 2
        << "\" transform=\"rotate(-90 16 " << line_area.y + line_area.h / 2
        << ")\" text-anchor=\"middle\">MSE</text>\n";

    // One polyline per (method, K, N).
    double legend_y = line_area.y + 4;
    int config_index = 0;
    std::map<std::pair<int, int>, int> config_id;
    for (const auto& c : configs) config_id[c] = config_index++;
    for (const std::string& m : methods) {
        for (const auto& c : configs) {
            std::vector<std::pair<double, double>> pts;
            for (const ResultRow& r : rows) {
                if (r.method == m && r.nodes == c.first && r.subcarriers == c.second) {
                    pts.push_back({r.ebno_db, r.mse_mean});
                }
            }
            if (pts.empty()) continue;
            std::sort(pts.begin(), pts.end());
            svg << "<polyline fill=\"none\" stroke=\"" << method_color(m)
                << "\" stroke-width=\"1.5\"";
            if (const char* dash = dash_pattern(config_id[c]); dash[0] != '\0') {
                svg << " stroke-dasharray=\"" << dash << "\"";
            }
            svg << " points=\"";
            for (const auto& [db, v] : pts) {
                const double x =
                    line_area.x + (db - ebno_lo) / (ebno_hi - ebno_lo) * line_area.w;
                svg << x << ',' << log_y(line_area, v, mse_lo, mse_hi) << ' ';
            }
            svg << "\"/>\n";
            svg << "<text x=\"" << line_area.x + line_area.w + 6 << "\" y=\"" << legend_y
                << "\" fill=\"" << method_color(m) << "\">" << m << " K=" << c.first
                << " N=" << c.second << "</text>\n";
            legend_y += 14;
        }
    }

    if (bars) {
        // Six bars per (K, N): methods at 1 dB in front, 5 dB behind.
        svg << "<rect x=\"" << bar_area.x << "\" y=\"" << bar_area.y << "\" width=\"" << bar_area.w
            << "\" height=\"" << bar_area.h << "\" fill=\"none\" stroke=\"#333\"/>\n";
        std::map<std::tuple<std::string, int, int, int>, double> value;
        double bar_max = 0.0;
        for (const ResultRow& r : rows) {
            for (int db : {1, 5}) {
                if (r.ebno_db == db) {
                    value[{r.method, r.nodes, r.subcarriers, db}] = r.mse_mean;
                    bar_max = std::max(bar_max, r.mse_mean);
                }
            }
        }
        if (bar_max <= 0) bar_max = 1.0;
        const double group_w = bar_area.w / configs.size();
        int gi = 0;
        for (const auto& c : configs) {
            const double gx = bar_area.x + gi * group_w;
            int bi = 0;
            for (int db : {1, 5}) {
                for (const std::string& m : methods) {
                    const auto it = value.find({m, c.first, c.second, db});
                    if (it == value.end()) continue;
                    const double bw = group_w / 7.0;
                    const double h = it->second / bar_max * (bar_area.h - 20);
                    const double x = gx + bw * (0.5 + bi);
                    svg << "<rect x=\"" << x << "\" y=\"" << bar_area.y + bar_area.h - h
                        << "\" width=\"" << bw * 0.9 << "\" height=\"" << h << "\" fill=\""
                        << method_color(m) << "\" fill-opacity=\"" << (db == 1 ? 1.0 : 0.45)
                        << "\"/>\n";
                    ++bi;
                }
            }
            svg << "<text x=\"" << gx + group_w / 2 << "\" y=\""
                << bar_area.y + bar_area.h + 14 << "\" text-anchor=\"middle\">K=" << c.first
                << " N=" << c.second << "</text>\n";
            ++gi;
        }
        svg << "<text x=\"" << bar_area.x << "\" y=\"" << bar_area.y - 8
            << "\">MSE at 1 dB (solid) and 5 dB (faded)</text>\n";
    }

    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_chart: cannot open '" + path + "'");
    out << svg.str();
    if (!out) throw std::runtime_error("emit_chart: write failed for '" + path + "'");
}

}  // namespace comac::cli
