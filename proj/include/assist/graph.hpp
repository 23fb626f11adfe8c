#ifndef ASSIST_GRAPH_HPP
#define ASSIST_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace assist {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Malformed input document (bad JSON, wrong field types).
struct ParseError : Error {
    using Error::Error;
};
/// Structurally invalid graph (dangling endpoint, duplicate edge, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Dense index of a node within one graph. External string ids are kept
/// alongside for I/O; all internal addressing uses these indices.
using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::string;

enum class GraphRole { pattern, data };

struct Edge {
    NodeId source;
    NodeId target;
    std::optional<Label> label;
    bool directed = false;
    // Event time or partial-order rank; present only in temporal graphs.
    std::optional<double> timestamp;
};

enum class EdgeDir { out, in, undirected };

struct Neighbor {
    EdgeId edge;
    NodeId node;  // opposite endpoint
    EdgeDir dir;
};

struct GraphStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::map<Label, std::size_t> label_histogram;
    std::size_t max_degree = 0;
};

/// A labeled graph, immutable once fully built. Nodes carry exactly one
/// label; edges may be directed and/or timestamped. Self-loops and
/// duplicate edges over the same ordered pair are rejected; an undirected
/// edge occupies both ordered pairs.
class LabeledGraph {
public:
    explicit LabeledGraph(GraphRole role = GraphRole::data, bool default_directed = false)
        : role_(role), default_directed_(default_directed) {}

    NodeId add_node(std::string name, Label label);
    EdgeId add_edge(NodeId source, NodeId target, std::optional<Label> label = std::nullopt,
                    std::optional<bool> directed = std::nullopt,
                    std::optional<double> timestamp = std::nullopt);

    GraphRole role() const { return role_; }
    bool directed() const { return default_directed_; }
    bool temporal() const { return temporal_; }

    std::size_t node_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const Label& label(NodeId n) const { return labels_.at(n); }
    const std::string& name(NodeId n) const { return names_.at(n); }
    std::optional<NodeId> find(const std::string& name) const;
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge_between(NodeId a, NodeId b) const;

    /// All edges incident to n with the opposite endpoint and a direction
    /// tag. Throws ValidationError for an unknown node id.
    std::span<const Neighbor> neighbors(NodeId n) const;

    GraphStats stats() const;

    nlohmann::json to_document() const;

    bool operator==(const LabeledGraph& other) const;

private:
    void check_node(NodeId n, const char* what) const;

    GraphRole role_;
    bool default_directed_;
    bool temporal_ = false;
    std::vector<std::string> names_;
    std::vector<Label> labels_;
    std::map<std::string, NodeId> by_name_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::set<std::pair<NodeId, NodeId>> occupied_pairs_;
};

/// Parse and validate a graph document (see README for the schema).
LabeledGraph load_graph(const nlohmann::json& document, GraphRole role);
LabeledGraph load_graph_file(const std::string& path, GraphRole role);

nlohmann::json serialize_graph(const LabeledGraph& g);

}  // namespace assist

#endif
