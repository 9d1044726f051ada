#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mailgraph/message.hpp"
#include "mailgraph/roster.hpp"

namespace mailgraph {

struct WeightedEdge {
    std::string source;
    std::string target;
    std::int64_t weight = 1;

    auto operator<=>(const WeightedEdge&) const = default;
};

// Immutable directed weighted graph over address-named nodes. Node indices
// follow the lexicographic order of node names, so index order doubles as the
// deterministic tie-break everywhere downstream. Self-loops are dropped at
// construction; duplicate (source,target) pairs are merged by summing.
class CommGraph {
public:
    struct Arc {
        std::int32_t node;
        std::int64_t weight;
    };

    CommGraph() = default;

    // Throws std::invalid_argument on non-positive weights.
    static CommGraph from_edges(std::vector<WeightedEdge> edges,
                                std::vector<std::string> isolates = {});

    std::size_t node_count() const { return names_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::int64_t total_weight() const { return total_weight_; }

    std::span<const std::string> node_names() const { return names_; }
    const std::string& name(std::int32_t i) const { return names_[i]; }
    std::optional<std::int32_t> index_of(std::string_view name) const;

    std::span<const Arc> out(std::int32_t i) const;
    std::span<const Arc> in(std::int32_t i) const;
    std::int64_t out_weight(std::int32_t i) const;

    // Edges sorted by (source, target) name.
    std::vector<WeightedEdge> edges() const;

private:
    std::vector<std::string> names_; // sorted
    std::vector<std::vector<Arc>> out_;
    std::vector<std::vector<Arc>> in_;
    std::size_t edge_count_ = 0;
    std::int64_t total_weight_ = 0;
};

struct BuildStats {
    std::size_t messages_consumed = 0;
    std::size_t recipient_pairs = 0; // == sum of edge weights
    std::size_t messages_without_recipients = 0;
    std::size_t skipped_external_senders = 0;
    std::size_t skipped_external_recipients = 0;
};

// Accumulates one edge (sender -> recipient) per distinct qualifying recipient
// per message. Recipients come from to+cc+bcc, alias-resolved through the
// roster when one is given, with the sender excluded. When internal_only is
// set, both endpoints must resolve through the roster.
CommGraph build_edge_list(std::span<const EmailMessage> messages, const Roster* roster,
                          bool internal_only, BuildStats* stats = nullptr);

struct ThresholdStats {
    std::size_t nodes_before = 0;
    std::size_t edges_before = 0;
    std::size_t edges_dropped = 0;
    std::size_t isolated_nodes_dropped = 0; // incl. pre-existing isolates
};

// Degree>=1 filter, then edges with weight >= max(min_weight, 1); nodes left
// without any edge are dropped and counted.
CommGraph apply_threshold(const CommGraph& g, std::int64_t min_weight,
                          ThresholdStats* stats = nullptr);

// Interchange CSV: header `source,target,weight`, LF line endings, edges
// sorted by (source, target).
void write_edge_csv(std::ostream& os, const CommGraph& g);

// Throws DataError naming the line on malformed rows. Duplicate edges are
// merged; self-loops are dropped.
CommGraph read_edge_csv(std::istream& is, std::string_view source_name = "<edges>");
CommGraph load_edge_csv(const std::filesystem::path& path);

// GEXF 1.2 static directed graph; communities, when given (one id per node
// index), are attached as an integer node attribute.
void write_gexf(std::ostream& os, const CommGraph& g,
                std::span<const std::int32_t> communities = {});

} // namespace mailgraph
