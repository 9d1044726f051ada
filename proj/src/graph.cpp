#include "mailgraph/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mailgraph/error.hpp"
#include "mailgraph/text.hpp"

namespace mailgraph {

CommGraph CommGraph::from_edges(std::vector<WeightedEdge> edges,
                                std::vector<std::string> isolates) {
    for (const auto& e : edges) {
        if (e.weight <= 0)
            throw std::invalid_argument("edge weight must be positive: " + e.source +
                                        " -> " + e.target);
    }

    CommGraph g;
    std::vector<std::string> names = std::move(isolates);
    for (const auto& e : edges) {
        if (e.source == e.target) continue;
        names.push_back(e.source);
        names.push_back(e.target);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    g.names_ = std::move(names);

    std::unordered_map<std::string_view, std::int32_t> index;
    index.reserve(g.names_.size());
    for (std::size_t i = 0; i < g.names_.size(); ++i)
        index.emplace(g.names_[i], static_cast<std::int32_t>(i));

    // Merge duplicates via an ordered map keyed by (src-index, dst-index).
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> merged;
    for (const auto& e : edges) {
        if (e.source == e.target) continue;
        merged[{index.at(e.source), index.at(e.target)}] += e.weight;
    }

    g.out_.assign(g.names_.size(), {});
    g.in_.assign(g.names_.size(), {});
    for (const auto& [key, weight] : merged) {
        g.out_[key.first].push_back({key.second, weight});
        g.in_[key.second].push_back({key.first, weight});
        ++g.edge_count_;
        g.total_weight_ += weight;
    }
    for (auto& arcs : g.in_)
        std::sort(arcs.begin(), arcs.end(),
                  [](const Arc& a, const Arc& b) { return a.node < b.node; });
    // out_ arcs are already sorted by destination via the ordered map.
    return g;
}

std::optional<std::int32_t> CommGraph::index_of(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<std::int32_t>(it - names_.begin());
}

std::span<const CommGraph::Arc> CommGraph::out(std::int32_t i) const { return out_[i]; }
std::span<const CommGraph::Arc> CommGraph::in(std::int32_t i) const { return in_[i]; }

std::int64_t CommGraph::out_weight(std::int32_t i) const {
    std::int64_t w = 0;
    for (const Arc& a : out_[i]) w += a.weight;
    return w;
}

std::vector<WeightedEdge> CommGraph::edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (const Arc& a : out_[static_cast<std::int32_t>(i)])
            out.push_back({names_[i], names_[a.node], a.weight});
    return out; // node order is lexicographic, so this is (source, target) sorted
}

CommGraph build_edge_list(std::span<const EmailMessage> messages, const Roster* roster,
                          bool internal_only, BuildStats* stats) {
    if (internal_only && !roster)
        throw std::invalid_argument("internal_only requires a roster");

    auto resolve = [&](const std::string& address) -> std::optional<std::string> {
        if (roster) {
            if (auto primary = roster->resolve(address)) return primary;
            if (internal_only) return std::nullopt;
        }
        return address;
    };

    BuildStats local;
    std::map<std::pair<std::string, std::string>, std::int64_t> weights;
    for (const EmailMessage& m : messages) {
        ++local.messages_consumed;
        auto sender = resolve(m.sender);
        if (!sender) {
            ++local.skipped_external_senders;
            continue;
        }
        std::set<std::string> recipients;
        for (const std::string& r : m.all_recipients()) {
            auto resolved = resolve(r);
            if (!resolved) {
                ++local.skipped_external_recipients;
                continue;
            }
            if (*resolved == *sender) continue; // self-loop
            recipients.insert(std::move(*resolved));
        }
        if (recipients.empty()) {
            ++local.messages_without_recipients;
            continue;
        }
        for (const std::string& r : recipients) {
            weights[{*sender, r}] += 1;
            ++local.recipient_pairs;
        }
    }

    std::vector<WeightedEdge> edges;
    edges.reserve(weights.size());
    for (auto& [key, w] : weights) edges.push_back({key.first, key.second, w});
    if (stats) *stats = local;
    return CommGraph::from_edges(std::move(edges));
}

CommGraph apply_threshold(const CommGraph& g, std::int64_t min_weight,
                          ThresholdStats* stats) {
    if (min_weight < 0) throw std::invalid_argument("threshold must be >= 0");
    const std::int64_t effective = std::max<std::int64_t>(min_weight, 1);

    ThresholdStats local;
    local.nodes_before = g.node_count();
    local.edges_before = g.edge_count();

    std::vector<WeightedEdge> kept;
    std::vector<char> has_edge(g.node_count(), 0);
    for (const auto& e : g.edges()) {
        if (e.weight >= effective) {
            kept.push_back(e);
        } else {
            ++local.edges_dropped;
        }
    }
    for (const auto& e : kept) {
        has_edge[static_cast<std::size_t>(*g.index_of(e.source))] = 1;
        has_edge[static_cast<std::size_t>(*g.index_of(e.target))] = 1;
    }
    local.isolated_nodes_dropped =
        g.node_count() - static_cast<std::size_t>(
                             std::count(has_edge.begin(), has_edge.end(), char(1)));

    if (stats) *stats = local;
    return CommGraph::from_edges(std::move(kept));
}

void write_edge_csv(std::ostream& os, const CommGraph& g) {
    os << "source,target,weight\n";
    for (const auto& e : g.edges())
        os << e.source << ',' << e.target << ',' << e.weight << '\n';
}

CommGraph read_edge_csv(std::istream& is, std::string_view source_name) {
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw DataError(std::string(source_name) + ":" + std::to_string(line_no) + ": " +
                        what);
    };

    if (!std::getline(is, line)) fail("empty edge file");
    ++line_no;
    if (trim(line) != "source,target,weight")
        fail("expected header 'source,target,weight'");

    std::vector<WeightedEdge> edges;
    while (std::getline(is, line)) {
        ++line_no;
        std::string_view trimmed = trim(line);
        if (trimmed.empty()) continue;
        auto fields = split(trimmed, ',');
        if (fields.size() != 3) fail("expected 3 fields");
        WeightedEdge e;
        e.source = std::string(trim(fields[0]));
        e.target = std::string(trim(fields[1]));
        if (e.source.empty() || e.target.empty()) fail("empty node id");
        try {
            std::size_t consumed = 0;
            e.weight = std::stoll(fields[2], &consumed);
            if (consumed != fields[2].size()) fail("bad weight '" + fields[2] + "'");
        } catch (const std::exception&) {
            fail("bad weight '" + fields[2] + "'");
        }
        if (e.weight < 1) fail("weight must be >= 1");
        edges.push_back(std::move(e));
    }
    return CommGraph::from_edges(std::move(edges));
}

CommGraph load_edge_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read edge file: " + path.string());
    return read_edge_csv(in, path.string());
}

void write_gexf(std::ostream& os, const CommGraph& g,
                std::span<const std::int32_t> communities) {
    const bool with_communities = !communities.empty();
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
       << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n";
    if (with_communities) {
        os << "    <attributes class=\"node\">\n"
           << "      <attribute id=\"0\" title=\"community\" type=\"integer\"/>\n"
           << "    </attributes>\n";
    }
    os << "    <nodes>\n";
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        std::string id = xml_escape(ensure_utf8(g.name(static_cast<std::int32_t>(i))));
        os << "      <node id=\"" << id << "\" label=\"" << id << "\"";
        if (with_communities) {
            os << ">\n        <attvalues><attvalue for=\"0\" value=\"" << communities[i]
               << "\"/></attvalues>\n      </node>\n";
        } else {
            os << "/>\n";
        }
    }
    os << "    </nodes>\n    <edges>\n";
    std::size_t edge_id = 0;
    for (const auto& e : g.edges()) {
        os << "      <edge id=\"" << edge_id++ << "\" source=\""
           << xml_escape(ensure_utf8(e.source)) << "\" target=\""
           << xml_escape(ensure_utf8(e.target)) << "\" weight=\"" << e.weight << "\"/>\n";
    }
    os << "    </edges>\n  </graph>\n</gexf>\n";
}

} // namespace mailgraph
