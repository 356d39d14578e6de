#include "sizedist/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sizedist/errors.hpp"

namespace sizedist {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 72;
constexpr double kMarginRight = 24;
constexpr double kMarginTop = 40;
constexpr double kMarginBottom = 56;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// Tick label with just enough digits; %g keeps 1024 as "1024" and 0.25 as "0.25".
std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double to_unit(double v) const {
        double a = lo, b = hi, x = v;
        if (log) {
            a = std::log10(a);
            b = std::log10(b);
            x = std::log10(x);
        }
        return b == a ? 0.5 : (x - a) / (b - a);
    }

    // Tick positions in data space: decades on log axes, 5 even steps otherwise.
    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            const int d0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
            const int d1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
            for (int d = d0; d <= d1; ++d) {
                t.push_back(std::pow(10.0, d));
            }
            if (t.empty()) {
                t = {lo, hi};
            }
        } else {
            for (int i = 0; i <= 4; ++i) {
                t.push_back(lo + (hi - lo) * i / 4.0);
            }
        }
        return t;
    }
};

}  // namespace

std::string render_line_chart(const ChartSpec& spec) {
    if (spec.series.empty()) {
        throw EmptySampleError("chart needs at least one series");
    }
    Axis x{.log = spec.log_x}, y{.log = spec.log_y};
    bool first = true;
    for (const auto& s : spec.series) {
        if (s.points.empty()) {
            throw EmptySampleError("chart series `" + s.label + "` is empty");
        }
        for (const auto& p : s.points) {
            if ((spec.log_x && !(p.x > 0.0)) || (spec.log_y && !(p.y > 0.0))) {
                throw DomainError("log axis requires positive coordinates");
            }
            if (first) {
                x.lo = x.hi = p.x;
                y.lo = y.hi = p.y;
                first = false;
            } else {
                x.lo = std::min(x.lo, p.x);
                x.hi = std::max(x.hi, p.x);
                y.lo = std::min(y.lo, p.y);
                y.hi = std::max(y.hi, p.y);
            }
        }
    }
    // a flat series still needs a visible band
    if (y.lo == y.hi) {
        y.hi = y.lo == 0.0 ? 1.0 : y.hi * (y.log ? 10.0 : 1.0) + (y.log ? 0.0 : 1.0);
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double v) { return kMarginLeft + x.to_unit(v) * plot_w; };
    auto py = [&](double v) { return kMarginTop + (1.0 - y.to_unit(v)) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fixed(kWidth / 2, 1) << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << escape_text(spec.title) << "</text>\n";

    // axes
    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n";

    for (double t : x.ticks()) {
        const double gx = px(t);
        svg << "<line x1=\"" << fixed(gx, 2) << "\" y1=\"" << y0 << "\" x2=\"" << fixed(gx, 2)
            << "\" y2=\"" << y0 + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fixed(gx, 2) << "\" y=\"" << y0 + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(t) << "</text>\n";
    }
    for (double t : y.ticks()) {
        const double gy = py(t);
        svg << "<line x1=\"" << x0 - 5 << "\" y1=\"" << fixed(gy, 2) << "\" x2=\"" << x0
            << "\" y2=\"" << fixed(gy, 2) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x0 - 8 << "\" y=\"" << fixed(gy + 4, 2)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(t) << "</text>\n";
    }

    svg << "<text x=\"" << fixed(kMarginLeft + plot_w / 2, 1) << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_text(spec.x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << fixed(kMarginTop + plot_h / 2, 1)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 18 "
        << fixed(kMarginTop + plot_h / 2, 1) << ")\">" << escape_text(spec.y_label)
        << "</text>\n";

    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (i > 0) {
                svg << ' ';
            }
            svg << fixed(px(s.points[i].x), 2) << ',' << fixed(py(s.points[i].y), 2);
        }
        svg << "\"/>\n";

        const double ly = kMarginTop + 14 + 18 * static_cast<double>(si);
        const double lx = kWidth - kMarginRight - 150;
        svg << "<line x1=\"" << lx << "\" y1=\"" << fixed(ly - 4, 1) << "\" x2=\"" << lx + 22
            << "\" y2=\"" << fixed(ly - 4, 1) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << lx + 28 << "\" y=\"" << fixed(ly, 1)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_text(s.label)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sizedist
