#include "epi/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace epi {

namespace {

std::string num(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

std::string tick_label(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4g", value);
    return buffer;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
    bool seen = false;

    void include(double v) {
        if (!seen) {
            lo = hi = v;
            seen = true;
            return;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void finish() {
        if (!seen) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi == lo) {
            // Flat data still needs a drawable extent.
            const double pad = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.1;
            lo -= pad;
            hi += pad;
        }
    }
};

} // namespace

std::string SvgChart::render() const {
    constexpr int kLeft = 62;
    constexpr int kRight = 18;
    constexpr int kTop = 34;
    constexpr int kBottom = 48;

    Range xr;
    Range yr;
    for (const auto& band : bands) {
        for (const double v : band.x) xr.include(v);
        for (const double v : band.lower) yr.include(v);
        for (const double v : band.upper) yr.include(v);
    }
    for (const auto& line : lines) {
        for (const double v : line.x) xr.include(v);
        for (const double v : line.y) yr.include(v);
    }
    for (const auto& dots : points) {
        for (const double v : dots.x) xr.include(v);
        for (const double v : dots.y) yr.include(v);
    }
    xr.finish();
    yr.finish();

    const double plot_w = width - kLeft - kRight;
    const double plot_h = height - kTop - kBottom;
    const auto px = [&](double x) {
        return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };
    const auto py = [&](double y) {
        return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";

    // Gridlines and tick labels, 5 per axis.
    out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        out << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << kTop
            << "\" x2=\"" << num(px(fx)) << "\" y2=\"" << num(kTop + plot_h)
            << "\"/>\n";
        out << "<line x1=\"" << kLeft << "\" y1=\"" << num(py(fy))
            << "\" x2=\"" << num(kLeft + plot_w) << "\" y2=\"" << num(py(fy))
            << "\"/>\n";
    }
    out << "</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        out << "<text x=\"" << num(px(fx)) << "\" y=\""
            << num(kTop + plot_h + 16) << "\" text-anchor=\"middle\">"
            << tick_label(fx) << "</text>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(fy) + 4)
            << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
    }
    out << "</g>\n";

    // Axis frame.
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"#888888\"/>\n";

    for (const auto& band : bands) {
        if (band.x.empty()) {
            continue;
        }
        out << "<path d=\"M";
        for (std::size_t i = 0; i < band.x.size(); ++i) {
            out << (i == 0 ? "" : " L") << num(px(band.x[i])) << " "
                << num(py(band.upper[i]));
        }
        for (std::size_t i = band.x.size(); i-- > 0;) {
            out << " L" << num(px(band.x[i])) << " " << num(py(band.lower[i]));
        }
        out << " Z\" fill=\"" << band.color
            << "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
    }

    for (const auto& line : lines) {
        if (line.x.empty()) {
            continue;
        }
        out << "<polyline fill=\"none\" stroke=\"" << line.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < line.x.size(); ++i) {
            if (i > 0) {
                out << " ";
            }
            out << num(px(line.x[i])) << "," << num(py(line.y[i]));
        }
        out << "\"/>\n";
    }

    for (const auto& dots : points) {
        out << "<g fill=\"" << dots.color << "\">\n";
        for (std::size_t i = 0; i < dots.x.size(); ++i) {
            out << "<circle cx=\"" << num(px(dots.x[i])) << "\" cy=\""
                << num(py(dots.y[i])) << "\" r=\"2\"/>\n";
        }
        out << "</g>\n";
    }

    if (!title.empty()) {
        out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\""
            << " font-family=\"sans-serif\" font-size=\"14\">" << title
            << "</text>\n";
    }
    if (!x_label.empty()) {
        out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\""
            << height - 10 << "\" text-anchor=\"middle\""
            << " font-family=\"sans-serif\" font-size=\"12\">" << x_label
            << "</text>\n";
    }
    if (!y_label.empty()) {
        out << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2)
            << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
            << num(kTop + plot_h / 2) << ")\""
            << " font-family=\"sans-serif\" font-size=\"12\">" << y_label
            << "</text>\n";
    }

    // Legend: one swatch per labeled line/point set, top-left of the plot.
    int legend_y = kTop + 14;
    out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (const auto& line : lines) {
        if (line.label.empty()) {
            continue;
        }
        out << "<rect x=\"" << kLeft + 8 << "\" y=\"" << legend_y - 8
            << "\" width=\"10\" height=\"10\" fill=\"" << line.color << "\"/>\n";
        out << "<text x=\"" << kLeft + 22 << "\" y=\"" << legend_y << "\">"
            << line.label << "</text>\n";
        legend_y += 15;
    }
    for (const auto& dots : points) {
        if (dots.label.empty()) {
            continue;
        }
        out << "<circle cx=\"" << kLeft + 13 << "\" cy=\"" << legend_y - 4
            << "\" r=\"3\" fill=\"" << dots.color << "\"/>\n";
        out << "<text x=\"" << kLeft + 22 << "\" y=\"" << legend_y << "\">"
            << dots.label << "</text>\n";
        legend_y += 15;
    }
    out << "</g>\n";

    out << "</svg>\n";
    return out.str();
}

std::string trajectory_svg(const Trajectory& trajectory) {
    static const char* kPalette[] = {"#4682b4", "#e69f00", "#d55e00",
                                     "#c44e52", "#8c1a1a", "#2e8b57",
                                     "#333333"};
    SvgChart chart;
    chart.title = "Compartment trajectories";
    chart.x_label = "day";
    chart.y_label = "population fraction";

    std::vector<double> days;
    days.reserve(trajectory.times.size());
    for (const int t : trajectory.times) {
        days.push_back(static_cast<double>(t));
    }

    const auto names = compartment_names(trajectory.family);
    for (std::size_t c = 0; c < names.size(); ++c) {
        SvgChart::Line line;
        line.x = days;
        line.y.reserve(trajectory.states.size());
        for (const auto& state : trajectory.states) {
            line.y.push_back(state.values[c]);
        }
        line.color = kPalette[c % std::size(kPalette)];
        line.label = names[c];
        chart.lines.push_back(std::move(line));
    }
    return chart.render();
}

std::string forecast_svg(const ForecastBands& bands,
                         const ObservedSeries* observed) {
    SvgChart chart;
    chart.title = "Reported cases: 90% forecast band";
    chart.x_label = "day";
    chart.y_label = "daily cases";

    std::vector<double> days;
    days.reserve(bands.days.size());
    for (const int d : bands.days) {
        days.push_back(static_cast<double>(d));
    }

    SvgChart::Band band;
    band.x = days;
    band.lower = bands.lower;
    band.upper = bands.upper;
    band.color = "#4682b4";
    chart.bands.push_back(std::move(band));

    SvgChart::Line median;
    median.x = days;
    median.y = bands.median;
    median.color = "#4682b4";
    median.label = "median";
    chart.lines.push_back(std::move(median));

    if (observed != nullptr) {
        SvgChart::Points dots;
        dots.color = "#333333";
        dots.label = "observed";
        const std::size_t n =
            std::min(observed->counts.size(), bands.days.size());
        for (std::size_t i = 0; i < n; ++i) {
            dots.x.push_back(static_cast<double>(bands.days[i]));
            dots.y.push_back(static_cast<double>(observed->counts[i]));
        }
        chart.points.push_back(std::move(dots));
    }
    return chart.render();
}

} // namespace epi
