#pragma once

#include <string>
#include <vector>

#include "sizedist/fitting.hpp"

namespace sizedist {

// Minimal deterministic SVG line charts: no external resources, fixed
// decimal formatting, so repeated renders are byte-identical.
struct ChartSeries {
    std::string label;
    std::vector<CurvePoint> points;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;  // base-10 log axis; requires positive coordinates
    bool log_y = false;
    std::vector<ChartSeries> series;
};

std::string render_line_chart(const ChartSpec& spec);

}  // namespace sizedist
