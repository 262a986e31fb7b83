#include "doa/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace doa {

namespace {

struct Series {
    const char* label;
    const char* color;
    bool right_axis;
    std::vector<std::pair<double, double>> points;  // (x, y), NaN-free
};

std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

void axis_range(double& lo, double& hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
}

}  // namespace

void emit_plot(const std::vector<SweepRow>& rows, const std::filesystem::path& path,
               const std::string& x_label) {
    if (rows.empty())
        throw std::invalid_argument("emit_plot: no rows to plot");

    Series series[] = {
        {"plain MUSIC RMSE (deg)", "#1f77b4", false, {}},
        {"refined RMSE (deg)", "#d62728", false, {}},
        {"mean reconstruction error", "#2ca02c", true, {}},
    };
    for (const SweepRow& row : rows) {
        if (std::isfinite(row.music_rmse))
            series[0].points.emplace_back(row.independent_var, row.music_rmse);
        if (std::isfinite(row.refined_rmse))
            series[1].points.emplace_back(row.independent_var, row.refined_rmse);
        if (std::isfinite(row.mean_recon_error))
            series[2].points.emplace_back(row.independent_var, row.mean_recon_error);
    }

    double x_lo = rows.front().independent_var, x_hi = rows.back().independent_var;
    double y_lo = 0.0, y_hi = 0.0, r_lo = 0.0, r_hi = 0.0;
    bool have_left = false, have_right = false;
    for (const Series& s : series)
        for (const auto& [x, y] : s.points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            if (s.right_axis) {
                r_lo = have_right ? std::min(r_lo, y) : y;
                r_hi = have_right ? std::max(r_hi, y) : y;
                have_right = true;
            } else {
                y_lo = have_left ? std::min(y_lo, y) : y;
                y_hi = have_left ? std::max(y_hi, y) : y;
                have_left = true;
            }
        }
    axis_range(x_lo, x_hi);
    axis_range(y_lo, y_hi);
    axis_range(r_lo, r_hi);

    constexpr double width = 900, height = 560;
    constexpr double ml = 70, mr = 70, mt = 40, mb = 60;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const auto sx = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
    const auto sy = [&](double y) { return mt + ph - (y - y_lo) / (y_hi - y_lo) * ph; };
    const auto sr = [&](double y) { return mt + ph - (y - r_lo) / (r_hi - r_lo) * ph; };

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("emit_plot: cannot open '" + path.string() + "' for writing");

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";

    constexpr int ticks = 6;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / ticks;
        const double fy = y_lo + (y_hi - y_lo) * i / ticks;
        const double fr = r_lo + (r_hi - r_lo) * i / ticks;
        out << "<line x1=\"" << num(sx(fx)) << "\" y1=\"" << mt + ph << "\" x2=\"" << num(sx(fx))
            << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << num(sx(fx)) << "\" y=\"" << mt + ph + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << num(fx) << "</text>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << num(sy(fy) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << num(fy) << "</text>\n";
        if (have_right)
            out << "<text x=\"" << ml + pw + 8 << "\" y=\"" << num(sr(fr) + 4)
                << "\" font-size=\"12\" text-anchor=\"start\" fill=\"#2ca02c\">" << num(fr)
                << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 16
        << "\" font-size=\"14\" text-anchor=\"middle\">" << x_label << "</text>\n"
        << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
        << ")\">RMSE (deg)</text>\n";

    for (const Series& s : series) {
        if (s.points.empty())
            continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\" points=\"";
        for (const auto& [x, y] : s.points)
            out << num(sx(x)) << ',' << num(s.right_axis ? sr(y) : sy(y)) << ' ';
        out << "\"/>\n";
    }

    double ly = mt + 16;
    for (const Series& s : series) {
        if (s.points.empty())
            continue;
        out << "<line x1=\"" << ml + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + 40 << "\" y2=\""
            << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"/>\n"
            << "<text x=\"" << ml + 46 << "\" y=\"" << ly << "\" font-size=\"12\">" << s.label
            << "</text>\n";
        ly += 18;
    }

    out << "</svg>\n";
    if (!out.flush())
        throw std::runtime_error("emit_plot: write to '" + path.string() + "' failed");
}

}  // namespace doa
