#include "mailgraph/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace mailgraph {

namespace {

// Undirected weighted multigraph used across Louvain levels. self holds the
// intra-node loop weight produced by aggregation; degree counts it twice.
struct WorkGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::int32_t, double>>> adj;
    std::vector<double> self;
    std::vector<double> degree;
    double m2 = 0.0; // sum of degrees == 2m
};

WorkGraph symmetrize(const CommGraph& g) {
    WorkGraph w;
    w.n = g.node_count();
    w.adj.assign(w.n, {});
    w.self.assign(w.n, 0.0);
    w.degree.assign(w.n, 0.0);
    for (std::size_t i = 0; i < w.n; ++i) {
        auto idx = static_cast<std::int32_t>(i);
        std::map<std::int32_t, double> merged;
        for (const auto& arc : g.out(idx)) merged[arc.node] += static_cast<double>(arc.weight);
        for (const auto& arc : g.in(idx)) merged[arc.node] += static_cast<double>(arc.weight);
        for (const auto& [j, weight] : merged) {
            w.adj[i].emplace_back(j, weight);
            w.degree[i] += weight;
        }
        w.m2 += w.degree[i];
    }
    return w;
}

// Deterministic Fisher-Yates; std::shuffle's distribution is
// implementation-defined, this is not.
void shuffle_order(std::vector<std::int32_t>& order, std::mt19937_64& rng) {
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng() % i]);
}

constexpr double kMoveGainEpsilon = 1e-12;
constexpr double kLevelGainEpsilon = 1e-9;

struct LevelResult {
    std::vector<std::int32_t> community; // per work-graph node, relabeled dense
    std::size_t community_count = 0;
    bool any_move = false;
};

// One Louvain level: sweeps until a full pass makes no move. running_q is
// advanced by the exact accounting gain of each accepted move so the recorded
// per-pass trace is monotone by construction.
LevelResult run_level(const WorkGraph& w, double resolution, std::mt19937_64& rng,
                      double& running_q, std::vector<double>& pass_q) {
    const double m2 = w.m2;
    std::vector<std::int32_t> community(w.n);
    std::vector<double> sigma_tot(w.n), sigma_in(w.n);
    for (std::size_t i = 0; i < w.n; ++i) {
        community[i] = static_cast<std::int32_t>(i);
        sigma_tot[i] = w.degree[i];
        sigma_in[i] = 2.0 * w.self[i];
    }

    std::vector<std::int32_t> order(w.n);
    for (std::size_t i = 0; i < w.n; ++i) order[i] = static_cast<std::int32_t>(i);

    LevelResult result;
    std::unordered_map<std::int32_t, double> weight_to; // community -> k_{i,c}
    bool moved_in_pass = true;
    while (moved_in_pass) {
        moved_in_pass = false;
        shuffle_order(order, rng);
        for (std::int32_t i : order) {
            const std::int32_t c_old = community[i];
            weight_to.clear();
            weight_to[c_old] += 0.0; // candidate even when i has no intra links
            for (const auto& [j, weight] : w.adj[i]) weight_to[community[j]] += weight;

            // Remove i from its community.
            const double k_i = w.degree[i];
            sigma_tot[c_old] -= k_i;
            sigma_in[c_old] -= 2.0 * weight_to[c_old] + 2.0 * w.self[i];

            // Candidates sorted so equal gains resolve to the lowest id.
            std::vector<std::int32_t> candidates;
            candidates.reserve(weight_to.size());
            for (const auto& [c, _] : weight_to) candidates.push_back(c);
            std::sort(candidates.begin(), candidates.end());

            auto reduced_gain = [&](std::int32_t c) {
                return weight_to[c] - resolution * k_i * sigma_tot[c] / m2;
            };
            std::int32_t best_c = candidates.front();
            double best_r = reduced_gain(best_c);
            for (std::size_t ci = 1; ci < candidates.size(); ++ci) {
                double r = reduced_gain(candidates[ci]);
                if (r > best_r + kMoveGainEpsilon) {
                    best_r = r;
                    best_c = candidates[ci];
                }
            }

            const double gain = (2.0 / m2) * (best_r - reduced_gain(c_old));
            const std::int32_t target = (gain > kMoveGainEpsilon) ? best_c : c_old;
            sigma_tot[target] += k_i;
            sigma_in[target] += 2.0 * weight_to[target] + 2.0 * w.self[i];
            community[i] = target;
            if (target != c_old) {
                moved_in_pass = true;
                result.any_move = true;
                running_q += gain;
            }
        }
        pass_q.push_back(running_q);
    }

    // Relabel dense in node order.
    std::unordered_map<std::int32_t, std::int32_t> dense;
    result.community.resize(w.n);
    for (std::size_t i = 0; i < w.n; ++i) {
        auto [it, inserted] =
            dense.emplace(community[i], static_cast<std::int32_t>(dense.size()));
        result.community[i] = it->second;
    }
    result.community_count = dense.size();
    return result;
}

WorkGraph aggregate(const WorkGraph& w, const LevelResult& level) {
    WorkGraph out;
    out.n = level.community_count;
    out.adj.assign(out.n, {});
    out.self.assign(out.n, 0.0);
    out.degree.assign(out.n, 0.0);
    out.m2 = w.m2;

    std::map<std::pair<std::int32_t, std::int32_t>, double> cross;
    for (std::size_t i = 0; i < w.n; ++i) {
        const std::int32_t ci = level.community[i];
        out.self[ci] += w.self[i];
        for (const auto& [j, weight] : w.adj[i]) {
            const std::int32_t cj = level.community[j];
            if (ci == cj) {
                // Each undirected intra pair is seen from both ends.
                out.self[ci] += weight / 2.0;
            } else {
                cross[{ci, cj}] += weight;
            }
        }
    }
    for (const auto& [key, weight] : cross) {
        out.adj[key.first].emplace_back(key.second, weight);
        out.degree[key.first] += weight;
    }
    for (std::size_t c = 0; c < out.n; ++c) out.degree[c] += 2.0 * out.self[c];
    return out;
}

Partition run_louvain(const CommGraph& g, double resolution, std::uint64_t seed,
                      CommunityStats* stats) {
    WorkGraph work = symmetrize(g);
    std::mt19937_64 rng(seed);

    // Start from singleton communities on the original graph.
    double running_q = 0.0;
    for (std::size_t i = 0; i < work.n; ++i) {
        double frac = work.degree[i] / work.m2;
        running_q += 2.0 * work.self[i] / work.m2 - resolution * frac * frac;
    }

    std::vector<std::int32_t> flat(g.node_count());
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = static_cast<std::int32_t>(i);

    CommunityStats local;
    double level_start_q = running_q;
    for (;;) {
        LevelResult level = run_level(work, resolution, rng, running_q, local.pass_q);
        ++local.levels;
        for (auto& c : flat) c = level.community[c];
        if (!level.any_move || running_q - level_start_q < kLevelGainEpsilon) break;
        level_start_q = running_q;
        work = aggregate(work, level);
        if (work.n <= 1) break;
    }

    Partition p;
    p.assignment.resize(flat.size());
    std::unordered_map<std::int32_t, std::int32_t> dense;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        auto [it, inserted] = dense.emplace(flat[i], static_cast<std::int32_t>(dense.size()));
        p.assignment[i] = it->second;
    }
    p.community_count = dense.size();
    p.q = modularity_score(g, p.assignment, resolution);
    if (stats) *stats = std::move(local);
    return p;
}

} // namespace

double modularity_score(const CommGraph& g, std::span<const std::int32_t> assignment,
                        double resolution) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("modularity is undefined on a graph without edges");
    if (assignment.size() != g.node_count())
        throw std::invalid_argument("partition must assign every node");

    std::int32_t max_id = 0;
    for (std::int32_t c : assignment) {
        if (c < 0) throw std::invalid_argument("community ids must be >= 0");
        max_id = std::max(max_id, c);
    }

    const double m2 = 2.0 * static_cast<double>(g.total_weight());
    std::vector<double> sigma_tot(static_cast<std::size_t>(max_id) + 1, 0.0);
    std::vector<double> sigma_in(static_cast<std::size_t>(max_id) + 1, 0.0);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        auto idx = static_cast<std::int32_t>(i);
        double k_i = 0.0;
        for (const auto& arc : g.out(idx)) {
            const double w = static_cast<double>(arc.weight);
            k_i += w;
            if (assignment[i] == assignment[arc.node])
                sigma_in[assignment[i]] += 2.0 * w; // both symmetrized directions
        }
        for (const auto& arc : g.in(idx)) k_i += static_cast<double>(arc.weight);
        sigma_tot[assignment[i]] += k_i;
    }

    double q = 0.0;
    for (std::size_t c = 0; c < sigma_tot.size(); ++c) {
        const double frac = sigma_tot[c] / m2;
        q += sigma_in[c] / m2 - resolution * frac * frac;
    }
    return q;
}

Partition detect_communities(const CommGraph& g, const CommunityOptions& options,
                             CommunityStats* stats) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("community detection requires at least one edge");
    if (options.restarts < 1) throw std::invalid_argument("restarts must be >= 1");

    Partition best;
    CommunityStats best_stats;
    for (int r = 0; r < options.restarts; ++r) {
        CommunityStats run_stats;
        Partition p = run_louvain(g, options.resolution, options.seed + static_cast<std::uint64_t>(r),
                                  &run_stats);
        if (r == 0 || p.q > best.q) {
            best = std::move(p);
            best_stats = std::move(run_stats);
        }
    }
    if (stats) *stats = std::move(best_stats);
    return best;
}

void write_community_csv(std::ostream& os, const CommGraph& g, const Partition& p) {
    os << "node,community\n";
    for (std::size_t i = 0; i < g.node_count(); ++i)
        os << g.name(static_cast<std::int32_t>(i)) << ',' << p.assignment[i] << '\n';
}

} // namespace mailgraph
