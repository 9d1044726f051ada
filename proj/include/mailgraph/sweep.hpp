#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mailgraph/centrality.hpp"
#include "mailgraph/graph.hpp"

namespace mailgraph {

// One sweep row. rank is 1-based; rank == 0 marks a node that was ranked at a
// lower threshold but no longer appears in the filtered graph ("unranked").
struct SweepRow {
    std::int64_t threshold = 0;
    Measure measure = Measure::kInDegree;
    int rank = 0;
    std::string node;
    double score = 0.0;
};

struct SweepTable {
    std::vector<std::int64_t> thresholds; // ascending
    std::vector<Measure> measures;
    std::size_t top_k = 0;
    std::vector<SweepRow> rows;
};

// Top-k rankings of the threshold-filtered graph for each (threshold,
// measure); previously-ranked nodes that drop out of the graph are emitted as
// unranked rows. Thresholds must be sorted ascending.
SweepTable threshold_sweep(const CommGraph& g, std::span<const std::int64_t> thresholds,
                           std::span<const Measure> measures, std::size_t top_k,
                           double alpha = 0.85);

// CSV `threshold,measure,rank,node,score`; unranked rows carry the literal
// rank `unranked` and an empty score.
void write_sweep_csv(std::ostream& os, const SweepTable& table);

// One rank-trajectory SVG per measure: x = threshold, y = rank (1 on top),
// one line per node, with gaps where a node is unranked.
void write_sweep_svg(std::ostream& os, const SweepTable& table, Measure measure,
                     std::string_view title);

} // namespace mailgraph
