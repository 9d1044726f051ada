#include "mailgraph/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "mailgraph/text.hpp"

namespace mailgraph {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

} // namespace

void write_line_chart_svg(std::ostream& os, const ChartSpec& spec) {
    const int width = spec.width, height = spec.height;
    const double left = 64, right = width - 160.0, top = 40, bottom = height - 56.0;

    double lo = 0.0, hi = 1.0;
    bool any = false;
    for (const auto& s : spec.series) {
        for (const auto& v : s.values) {
            if (!v) continue;
            if (!any) {
                lo = hi = *v;
                any = true;
            } else {
                lo = std::min(lo, *v);
                hi = std::max(hi, *v);
            }
        }
    }
    if (!any) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        hi += 0.5;
        lo -= 0.5;
    }
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;

    const std::size_t nx = std::max<std::size_t>(spec.x_labels.size(), 1);
    auto x_at = [&](std::size_t i) {
        if (nx == 1) return (left + right) / 2.0;
        return left + (right - left) * static_cast<double>(i) / static_cast<double>(nx - 1);
    };
    auto y_at = [&](double v) {
        double t = (v - lo) / (hi - lo);
        if (spec.invert_y) t = 1.0 - t;
        return bottom - (bottom - top) * t;
    };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
       << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
       << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">"
       << xml_escape(spec.title) << "</text>\n";

    // Axes.
    os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
       << "\" y2=\"" << fmt(bottom) << "\" stroke=\"#333\"/>\n"
       << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\""
       << fmt(right) << "\" y2=\"" << fmt(bottom) << "\" stroke=\"#333\"/>\n";
    if (!spec.y_label.empty()) {
        os << "<text x=\"16\" y=\"" << fmt((top + bottom) / 2)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
              "transform=\"rotate(-90 16 "
           << fmt((top + bottom) / 2) << ")\">" << xml_escape(spec.y_label) << "</text>\n";
    }

    // Y ticks.
    constexpr int kTicks = 5;
    for (int t = 0; t <= kTicks; ++t) {
        double v = lo + (hi - lo) * t / kTicks;
        double y = y_at(v);
        os << "<line x1=\"" << fmt(left - 4) << "\" y1=\"" << fmt(y) << "\" x2=\""
           << fmt(left) << "\" y2=\"" << fmt(y) << "\" stroke=\"#333\"/>\n"
           << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(v) << "</text>\n";
    }

    // X labels, thinned when crowded.
    const std::size_t step = std::max<std::size_t>(1, nx / 16);
    for (std::size_t i = 0; i < spec.x_labels.size(); i += step) {
        os << "<text x=\"" << fmt(x_at(i)) << "\" y=\"" << fmt(bottom + 18)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
           << xml_escape(spec.x_labels[i]) << "</text>\n";
    }

    // Series polylines (split on gaps) + legend.
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& series = spec.series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                os << "<polyline fill=\"none\" stroke=\"" << color
                   << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
                points.clear();
            }
        };
        for (std::size_t i = 0; i < series.values.size() && i < nx; ++i) {
            if (!series.values[i]) {
                flush();
                continue;
            }
            double x = x_at(i), y = y_at(*series.values[i]);
            points += fmt(x) + "," + fmt(y) + " ";
            os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
               << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        flush();
        double ly = top + 16.0 * static_cast<double>(si);
        os << "<rect x=\"" << fmt(right + 12) << "\" y=\"" << fmt(ly - 8)
           << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n"
           << "<text x=\"" << fmt(right + 26) << "\" y=\"" << fmt(ly + 1)
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(series.label)
           << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace mailgraph
