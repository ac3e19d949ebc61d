#ifndef EPI_SVG_HPP
#define EPI_SVG_HPP

#include <string>
#include <vector>

#include "epi/forecast.hpp"
#include "epi/series.hpp"
#include "epi/simulate.hpp"

namespace epi {

/// Tiny self-contained SVG chart builder: shaded bands underneath polylines
/// on a single linear axis pair. Output is deterministic and needs no
/// external renderer or font metrics.
struct SvgChart {
    struct Line {
        std::vector<double> x;
        std::vector<double> y;
        std::string color = "#4682b4";
        std::string label;
    };

    struct Band {
        std::vector<double> x;
        std::vector<double> lower;
        std::vector<double> upper;
        std::string color = "#4682b4";
    };

    struct Points {
        std::vector<double> x;
        std::vector<double> y;
        std::string color = "#333333";
        std::string label;
    };

    int width = 800;
    int height = 450;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Band> bands;
    std::vector<Line> lines;
    std::vector<Points> points;

    /// Complete standalone <svg> document.
    std::string render() const;
};

/// One polyline per compartment over the day axis.
std::string trajectory_svg(const Trajectory& trajectory);

/// 5-95% shaded band with the median line; observed history drawn as dots
/// when a series is supplied.
std::string forecast_svg(const ForecastBands& bands,
                         const ObservedSeries* observed);

} // namespace epi

#endif
