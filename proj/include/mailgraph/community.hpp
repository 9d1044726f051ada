#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mailgraph/graph.hpp"

namespace mailgraph {

struct Partition {
    std::vector<std::int32_t> assignment; // community id per node index, dense from 0
    double q = 0.0;
    std::size_t community_count = 0;
};

// Newman modularity on the symmetrized weighted graph (W'_ij = W_ij + W_ji).
// resolution multiplies the null-model term. Throws std::invalid_argument on
// graphs without edges or incomplete assignments.
double modularity_score(const CommGraph& g, std::span<const std::int32_t> assignment,
                        double resolution = 1.0);

struct CommunityOptions {
    double resolution = 1.0;
    std::uint64_t seed = 0;
    int restarts = 1; // best q wins; run r uses seed + r
};

struct CommunityStats {
    int levels = 0;
    std::vector<double> pass_q; // q after each node sweep, never decreasing
};

// Louvain: seed-shuffled node sweeps moving nodes to the neighboring community
// with the best positive modularity gain (ties -> lowest community id), then
// aggregation into super-nodes, repeated until the gain per level drops below
// 1e-9. Returns the flattened assignment relabeled dense from 0 in node order.
Partition detect_communities(const CommGraph& g, const CommunityOptions& options = {},
                             CommunityStats* stats = nullptr);

// CSV `node,community`, node-sorted.
void write_community_csv(std::ostream& os, const CommGraph& g, const Partition& p);

} // namespace mailgraph
