#include "mailgraph/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "mailgraph/svg.hpp"
#include "mailgraph/text.hpp"

namespace mailgraph {

namespace {

CentralityReport compute_measure(const CommGraph& g, Measure m, double alpha) {
    switch (m) {
    case Measure::kInDegree: return degree_centrality(g).in;
    case Measure::kOutDegree: return degree_centrality(g).out;
    case Measure::kCloseness: return closeness_centrality(g);
    case Measure::kBetweenness: return betweenness_centrality(g);
    case Measure::kEigenvector: return eigenvector_centrality(g);
    case Measure::kPagerank: return pagerank(g, alpha);
    }
    throw std::logic_error("unknown measure");
}

} // namespace

SweepTable threshold_sweep(const CommGraph& g, std::span<const std::int64_t> thresholds,
                           std::span<const Measure> measures, std::size_t k,
                           double alpha) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw std::invalid_argument("thresholds must be sorted ascending");

    SweepTable table;
    table.thresholds.assign(thresholds.begin(), thresholds.end());
    table.measures.assign(measures.begin(), measures.end());
    table.top_k = k;

    // Nodes ranked at any lower threshold, per measure; once such a node
    // leaves the filtered graph it is reported as unranked.
    std::map<Measure, std::set<std::string>> ever_ranked;

    for (std::int64_t threshold : thresholds) {
        const CommGraph filtered = apply_threshold(g, threshold);
        for (Measure m : measures) {
            const bool computable = filtered.node_count() > 0 &&
                                    (m != Measure::kEigenvector || filtered.edge_count() > 0);
            std::set<std::string> in_top;
            if (computable) {
                const CentralityReport report = compute_measure(filtered, m, alpha);
                for (const auto& [node, score] : top_k(report, k)) {
                    SweepRow row;
                    row.threshold = threshold;
                    row.measure = m;
                    row.rank = static_cast<int>(in_top.size()) + 1;
                    row.node = filtered.name(node);
                    row.score = score;
                    in_top.insert(row.node);
                    table.rows.push_back(std::move(row));
                }
            }
            for (const std::string& node : ever_ranked[m]) {
                if (!filtered.index_of(node)) {
                    SweepRow row;
                    row.threshold = threshold;
                    row.measure = m;
                    row.rank = 0;
                    row.node = node;
                    row.score = std::nan("");
                    table.rows.push_back(std::move(row));
                }
            }
            ever_ranked[m].insert(in_top.begin(), in_top.end());
        }
    }
    return table;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
    os << "threshold,measure,rank,node,score\n";
    for (const SweepRow& row : table.rows) {
        os << row.threshold << ',' << measure_name(row.measure) << ',';
        if (row.rank == 0)
            os << "unranked";
        else
            os << row.rank;
        os << ',' << row.node << ',';
        if (!std::isnan(row.score)) os << format_double(row.score);
        os << '\n';
    }
}

void write_sweep_svg(std::ostream& os, const SweepTable& table, Measure measure,
                     std::string_view title) {
    ChartSpec spec;
    spec.title = std::string(title);
    spec.y_label = "rank";
    spec.invert_y = true;
    for (std::int64_t t : table.thresholds) spec.x_labels.push_back(std::to_string(t));

    std::map<std::string, ChartSeries> by_node;
    for (const SweepRow& row : table.rows) {
        if (row.measure != measure || row.rank == 0) continue;
        auto [it, inserted] = by_node.try_emplace(row.node);
        if (inserted) {
            it->second.label = row.node;
            it->second.values.assign(table.thresholds.size(), std::nullopt);
        }
        auto t_pos = std::find(table.thresholds.begin(), table.thresholds.end(),
                               row.threshold) -
                     table.thresholds.begin();
        it->second.values[static_cast<std::size_t>(t_pos)] = static_cast<double>(row.rank);
    }
    for (auto& [node, series] : by_node) spec.series.push_back(std::move(series));
    write_line_chart_svg(os, spec);
}

} // namespace mailgraph
