#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mailgraph/graph.hpp"

namespace mailgraph {

enum class Measure {
    kInDegree,
    kOutDegree,
    kCloseness,
    kBetweenness,
    kEigenvector,
    kPagerank,
};

std::string_view measure_name(Measure m);
std::optional<Measure> measure_from_name(std::string_view name);
std::span<const Measure> all_measures();

// Scores indexed by node; ranking holds node indices in descending score
// order with ties broken lexicographically by node id (== index order).
struct CentralityReport {
    Measure measure = Measure::kInDegree;
    std::vector<double> scores;
    std::vector<std::int32_t> ranking;
    bool converged = true;
    int iterations = 0;
};

struct DegreeReports {
    CentralityReport in;
    CentralityReport out;
};

// Unweighted distinct-neighbor counts; edge weights never matter here.
DegreeReports degree_centrality(const CommGraph& g);

// C_i = (|R_i| / sum of d_ij over reachable j) * (|R_i| / (n-1)) with
// unweighted hop distances; 0 when nothing is reachable. The weighted variant
// uses edge weight as distance. Equals n/sum(d) up to a constant factor on a
// strongly connected graph, so rankings are unaffected by the correction.
CentralityReport closeness_centrality(const CommGraph& g, bool weighted = false,
                                      unsigned jobs = 1);

// Comparison-only variant: mean of inverse distances to reachable nodes.
CentralityReport harmonic_closeness(const CommGraph& g, bool weighted = false,
                                    unsigned jobs = 1);

// Unnormalized directed betweenness over ordered pairs (Brandes accumulation).
CentralityReport betweenness_centrality(const CommGraph& g, bool weighted = false,
                                        unsigned jobs = 1);

// Power iteration on in-neighbor sums, L2-normalized per step. Non-convergence
// after max_iterations leaves converged=false with the last iterate.
CentralityReport eigenvector_centrality(const CommGraph& g, bool weighted = false,
                                        double tolerance = 1e-8,
                                        int max_iterations = 1000);

// y_i = alpha * sum_j (A_ij / k_j) y_j + (1 - alpha), dangling mass spread
// uniformly over all nodes; scores sum to n at the fixed point.
CentralityReport pagerank(const CommGraph& g, double alpha = 0.85,
                          bool weighted = false, double tolerance = 1e-10,
                          int max_iterations = 10000);

struct ComponentReport {
    std::size_t component_count = 0;
    std::vector<std::int32_t> assignment; // dense ids from 0, by node index
    std::vector<std::size_t> sizes;       // by component id
};

// Weakly connected components (direction ignored). Component ids are assigned
// in order of each component's lowest node index.
ComponentReport weak_components(const CommGraph& g);

std::vector<std::pair<std::int32_t, double>> top_k(const CentralityReport& report,
                                                   std::size_t k);

// CSV `node,score,rank` in ranking order.
void write_centrality_csv(std::ostream& os, const CommGraph& g,
                          const CentralityReport& report);

} // namespace mailgraph
