#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mailgraph {

struct ChartSeries {
    std::string label;
    std::vector<std::optional<double>> values; // one per x label; nullopt = gap
};

struct ChartSpec {
    std::string title;
    std::string y_label;
    std::vector<std::string> x_labels;
    std::vector<ChartSeries> series;
    int width = 960;
    int height = 480;
    bool invert_y = false; // rank-style axis: smallest value on top
};

// Static deterministic line chart (no timestamps, fixed palette).
void write_line_chart_svg(std::ostream& os, const ChartSpec& spec);

} // namespace mailgraph
