#include "mailgraph/centrality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <thread>

#include "mailgraph/text.hpp"

namespace mailgraph {

namespace {

constexpr std::int64_t kUnreachable = -1;

void make_ranking(CentralityReport& report) {
    report.ranking.resize(report.scores.size());
    for (std::size_t i = 0; i < report.ranking.size(); ++i)
        report.ranking[i] = static_cast<std::int32_t>(i);
    std::stable_sort(report.ranking.begin(), report.ranking.end(),
                     [&](std::int32_t a, std::int32_t b) {
                         return report.scores[a] > report.scores[b];
                     });
}

// Runs fn(i) for i in [0, n); sequential when jobs <= 1 so results are
// bitwise-reproducible, chunked across threads otherwise.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    unsigned workers = std::min<std::size_t>(jobs, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

// Single-source distances; hop counts when weighted == false, else
// weight-as-distance Dijkstra.
void shortest_distances(const CommGraph& g, std::int32_t source, bool weighted,
                        std::vector<std::int64_t>& dist) {
    const std::size_t n = g.node_count();
    dist.assign(n, kUnreachable);
    dist[source] = 0;
    if (!weighted) {
        std::deque<std::int32_t> queue{source};
        while (!queue.empty()) {
            std::int32_t u = queue.front();
            queue.pop_front();
            for (const auto& arc : g.out(u)) {
                if (dist[arc.node] == kUnreachable) {
                    dist[arc.node] = dist[u] + 1;
                    queue.push_back(arc.node);
                }
            }
        }
        return;
    }
    using Item = std::pair<std::int64_t, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (dist[u] != kUnreachable && d > dist[u]) continue;
        for (const auto& arc : g.out(u)) {
            std::int64_t nd = d + arc.weight;
            if (dist[arc.node] == kUnreachable || nd < dist[arc.node]) {
                dist[arc.node] = nd;
                heap.push({nd, arc.node});
            }
        }
    }
}

} // namespace

std::string_view measure_name(Measure m) {
    switch (m) {
    case Measure::kInDegree: return "in_degree";
    case Measure::kOutDegree: return "out_degree";
    case Measure::kCloseness: return "closeness";
    case Measure::kBetweenness: return "betweenness";
    case Measure::kEigenvector: return "eigenvector";
    case Measure::kPagerank: return "pagerank";
    }
    return "unknown";
}

std::optional<Measure> measure_from_name(std::string_view name) {
    for (Measure m : all_measures())
        if (name == measure_name(m)) return m;
    return std::nullopt;
}

std::span<const Measure> all_measures() {
    static const Measure kAll[] = {Measure::kInDegree,    Measure::kOutDegree,
                                   Measure::kCloseness,   Measure::kBetweenness,
                                   Measure::kEigenvector, Measure::kPagerank};
    return kAll;
}

DegreeReports degree_centrality(const CommGraph& g) {
    DegreeReports reports;
    reports.in.measure = Measure::kInDegree;
    reports.out.measure = Measure::kOutDegree;
    const std::size_t n = g.node_count();
    reports.in.scores.resize(n);
    reports.out.scores.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = static_cast<std::int32_t>(i);
        reports.in.scores[i] = static_cast<double>(g.in(idx).size());
        reports.out.scores[i] = static_cast<double>(g.out(idx).size());
    }
    make_ranking(reports.in);
    make_ranking(reports.out);
    return reports;
}

CentralityReport closeness_centrality(const CommGraph& g, bool weighted, unsigned jobs) {
    CentralityReport report;
    report.measure = Measure::kCloseness;
    const std::size_t n = g.node_count();
    report.scores.assign(n, 0.0);

    parallel_for(n, jobs, [&](std::size_t i) {
        std::vector<std::int64_t> dist;
        shortest_distances(g, static_cast<std::int32_t>(i), weighted, dist);
        std::int64_t sum = 0;
        std::size_t reachable = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || dist[j] == kUnreachable) continue;
            sum += dist[j];
            ++reachable;
        }
        if (reachable > 0 && sum > 0) {
            double r = static_cast<double>(reachable);
            report.scores[i] =
                (r / static_cast<double>(sum)) * (r / static_cast<double>(n - 1));
        }
    });
    make_ranking(report);
    return report;
}

CentralityReport harmonic_closeness(const CommGraph& g, bool weighted, unsigned jobs) {
    CentralityReport report;
    report.measure = Measure::kCloseness;
    const std::size_t n = g.node_count();
    report.scores.assign(n, 0.0);
    if (n <= 1) return report;

    parallel_for(n, jobs, [&](std::size_t i) {
        std::vector<std::int64_t> dist;
        shortest_distances(g, static_cast<std::int32_t>(i), weighted, dist);
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || dist[j] == kUnreachable || dist[j] == 0) continue;
            sum += 1.0 / static_cast<double>(dist[j]);
        }
        report.scores[i] = sum / static_cast<double>(n - 1);
    });
    make_ranking(report);
    return report;
}

CentralityReport betweenness_centrality(const CommGraph& g, bool weighted, unsigned jobs) {
    CentralityReport report;
    report.measure = Measure::kBetweenness;
    const std::size_t n = g.node_count();
    report.scores.assign(n, 0.0);

    // Brandes: one backward dependency accumulation per source. Under jobs > 1
    // every worker owns a private accumulator merged at the end; sequential
    // mode stays bitwise-deterministic.
    const unsigned workers = (jobs > 1) ? static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1))) : 1;
    std::vector<std::vector<double>> partial(workers, std::vector<double>(n, 0.0));

    auto run_source = [&](std::size_t s_idx, std::vector<double>& delta_sink) {
        const auto s = static_cast<std::int32_t>(s_idx);
        std::vector<std::int64_t> dist(n, kUnreachable);
        std::vector<double> sigma(n, 0.0);
        std::vector<double> delta(n, 0.0);
        std::vector<std::vector<std::int32_t>> preds(n);
        std::vector<std::int32_t> order;
        order.reserve(n);

        dist[s] = 0;
        sigma[s] = 1.0;
        if (!weighted) {
            std::deque<std::int32_t> queue{s};
            while (!queue.empty()) {
                std::int32_t u = queue.front();
                queue.pop_front();
                order.push_back(u);
                for (const auto& arc : g.out(u)) {
                    std::int32_t v = arc.node;
                    if (dist[v] == kUnreachable) {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                    if (dist[v] == dist[u] + 1) {
                        sigma[v] += sigma[u];
                        preds[v].push_back(u);
                    }
                }
            }
        } else {
            using Item = std::pair<std::int64_t, std::int32_t>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
            std::vector<char> settled(n, 0);
            heap.push({0, s});
            while (!heap.empty()) {
                auto [d, u] = heap.top();
                heap.pop();
                if (settled[u]) continue;
                settled[u] = 1;
                order.push_back(u);
                for (const auto& arc : g.out(u)) {
                    std::int32_t v = arc.node;
                    std::int64_t nd = d + arc.weight;
                    if (dist[v] == kUnreachable || nd < dist[v]) {
                        dist[v] = nd;
                        sigma[v] = sigma[u];
                        preds[v].assign(1, u);
                        heap.push({nd, v});
                    } else if (nd == dist[v] && !settled[v]) {
                        sigma[v] += sigma[u];
                        preds[v].push_back(u);
                    }
                }
            }
        }

        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::int32_t w = *it;
            for (std::int32_t p : preds[w])
                delta[p] += (sigma[p] / sigma[w]) * (1.0 + delta[w]);
            if (w != s) delta_sink[w] += delta[w];
        }
    };

    if (workers == 1) {
        for (std::size_t s = 0; s < n; ++s) run_source(s, partial[0]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (;;) {
                    std::size_t s = next.fetch_add(1);
                    if (s >= n) break;
                    run_source(s, partial[w]);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& slice : partial)
        for (std::size_t i = 0; i < n; ++i) report.scores[i] += slice[i];
    make_ranking(report);
    return report;
}

CentralityReport eigenvector_centrality(const CommGraph& g, bool weighted,
                                        double tolerance, int max_iterations) {
    CentralityReport report;
    report.measure = Measure::kEigenvector;
    const std::size_t n = g.node_count();
    if (g.edge_count() == 0)
        throw std::invalid_argument("eigenvector centrality requires at least one edge");

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n, 0.0);
    report.converged = false;
    for (int it = 0; it < max_iterations; ++it) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (const auto& arc : g.in(static_cast<std::int32_t>(i)))
                sum += weighted ? static_cast<double>(arc.weight) * x[arc.node]
                                : x[arc.node];
            next[i] = sum;
            norm_sq += sum * sum;
        }
        report.iterations = it + 1;
        if (norm_sq == 0.0) break; // nilpotent structure exhausted; keep last iterate
        double inv = 1.0 / std::sqrt(norm_sq);
        double max_change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] *= inv;
            max_change = std::max(max_change, std::abs(next[i] - x[i]));
        }
        x.swap(next);
        if (max_change < tolerance) {
            report.converged = true;
            break;
        }
    }
    report.scores = std::move(x);
    make_ranking(report);
    return report;
}

CentralityReport pagerank(const CommGraph& g, double alpha, bool weighted,
                          double tolerance, int max_iterations) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("pagerank alpha must be in (0, 1)");
    CentralityReport report;
    report.measure = Measure::kPagerank;
    const std::size_t n = g.node_count();
    if (n == 0) return report;
    const double beta = 1.0 - alpha;

    std::vector<double> out_mass(n, 0.0); // out-degree (or out-weight)
    for (std::size_t j = 0; j < n; ++j) {
        auto idx = static_cast<std::int32_t>(j);
        out_mass[j] = weighted ? static_cast<double>(g.out_weight(idx))
                               : static_cast<double>(g.out(idx).size());
    }

    std::vector<double> y(n, 1.0);
    std::vector<double> next(n, 0.0);
    report.converged = false;
    for (int it = 0; it < max_iterations; ++it) {
        double dangling = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (out_mass[j] == 0.0) dangling += y[j];
        const double base = alpha * dangling / static_cast<double>(n) + beta;

        double l1_change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (const auto& arc : g.in(static_cast<std::int32_t>(i))) {
                double share = weighted ? static_cast<double>(arc.weight) : 1.0;
                sum += share * y[arc.node] / out_mass[arc.node];
            }
            next[i] = alpha * sum + base;
            l1_change += std::abs(next[i] - y[i]);
        }
        y.swap(next);
        report.iterations = it + 1;
        if (l1_change < tolerance) {
            report.converged = true;
            break;
        }
    }
    report.scores = std::move(y);
    make_ranking(report);
    return report;
}

ComponentReport weak_components(const CommGraph& g) {
    ComponentReport report;
    const std::size_t n = g.node_count();
    report.assignment.assign(n, -1);
    for (std::size_t start = 0; start < n; ++start) {
        if (report.assignment[start] != -1) continue;
        auto id = static_cast<std::int32_t>(report.component_count++);
        std::size_t size = 0;
        std::vector<std::int32_t> stack{static_cast<std::int32_t>(start)};
        report.assignment[start] = id;
        while (!stack.empty()) {
            std::int32_t u = stack.back();
            stack.pop_back();
            ++size;
            for (const auto& arc : g.out(u)) {
                if (report.assignment[arc.node] == -1) {
                    report.assignment[arc.node] = id;
                    stack.push_back(arc.node);
                }
            }
            for (const auto& arc : g.in(u)) {
                if (report.assignment[arc.node] == -1) {
                    report.assignment[arc.node] = id;
                    stack.push_back(arc.node);
                }
            }
        }
        report.sizes.push_back(size);
    }
    return report;
}

std::vector<std::pair<std::int32_t, double>> top_k(const CentralityReport& report,
                                                   std::size_t k) {
    std::vector<std::pair<std::int32_t, double>> out;
    const std::size_t count = std::min(k, report.ranking.size());
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.emplace_back(report.ranking[i], report.scores[report.ranking[i]]);
    return out;
}

void write_centrality_csv(std::ostream& os, const CommGraph& g,
                          const CentralityReport& report) {
    os << "node,score,rank\n";
    for (std::size_t r = 0; r < report.ranking.size(); ++r) {
        std::int32_t node = report.ranking[r];
        os << g.name(node) << ',' << format_double(report.scores[node]) << ','
           << (r + 1) << '\n';
    }
}

} // namespace mailgraph
