#include "assist/graph.hpp"

#include <algorithm>
#include <fstream>

namespace assist {

NodeId LabeledGraph::add_node(std::string name, Label label) {
    if (label.empty()) {
        throw ValidationError("node '" + name + "': empty label");
    }
    if (by_name_.count(name)) {
        throw ValidationError("duplicate node id '" + name + "'");
    }
    NodeId id = static_cast<NodeId>(labels_.size());
    by_name_.emplace(name, id);
    names_.push_back(std::move(name));
    labels_.push_back(std::move(label));
    adjacency_.emplace_back();
    return id;
}

EdgeId LabeledGraph::add_edge(NodeId source, NodeId target, std::optional<Label> label,
                              std::optional<bool> directed, std::optional<double> timestamp) {
    check_node(source, "edge source");
    check_node(target, "edge target");
    if (source == target) {
        throw ValidationError("self-loop at node '" + names_[source] + "'");
    }
    bool dir = directed.value_or(default_directed_);
    auto conflict = [&](NodeId a, NodeId b) {
        if (occupied_pairs_.count({a, b})) {
            throw ValidationError("duplicate edge between '" + names_[source] + "' and '" +
                                  names_[target] + "'");
        }
    };
    conflict(source, target);
    if (!dir) conflict(target, source);

    if (timestamp && *timestamp < 0) {
        throw ValidationError("negative timestamp on edge '" + names_[source] + "'-'" +
                              names_[target] + "'");
    }
    if (edges_.empty()) {
        temporal_ = timestamp.has_value();
    } else if (timestamp.has_value() != temporal_) {
        throw ValidationError("mixed timestamped and untimestamped edges");
    }

    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{source, target, std::move(label), dir, timestamp});
    occupied_pairs_.insert({source, target});
    if (!dir) occupied_pairs_.insert({target, source});
    if (dir) {
        adjacency_[source].push_back({id, target, EdgeDir::out});
        adjacency_[target].push_back({id, source, EdgeDir::in});
    } else {
        adjacency_[source].push_back({id, target, EdgeDir::undirected});
        adjacency_[target].push_back({id, source, EdgeDir::undirected});
    }
    return id;
}

std::optional<NodeId> LabeledGraph::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

bool LabeledGraph::has_edge_between(NodeId a, NodeId b) const {
    return occupied_pairs_.count({a, b}) > 0;
}

std::span<const Neighbor> LabeledGraph::neighbors(NodeId n) const {
    check_node(n, "neighbors");
    return adjacency_[n];
}

GraphStats LabeledGraph::stats() const {
    GraphStats s;
    s.node_count = node_count();
    s.edge_count = edge_count();
    for (const Label& l : labels_) s.label_histogram[l]++;
    for (const auto& adj : adjacency_) s.max_degree = std::max(s.max_degree, adj.size());
    return s;
}

void LabeledGraph::check_node(NodeId n, const char* what) const {
    if (n >= labels_.size()) {
        throw ValidationError(std::string(what) + ": unknown node id " + std::to_string(n));
    }
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
    if (role_ != other.role_ || default_directed_ != other.default_directed_ ||
        temporal_ != other.temporal_ || names_ != other.names_ || labels_ != other.labels_) {
        return false;
    }
    if (edges_.size() != other.edges_.size()) return false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& a = edges_[i];
        const Edge& b = other.edges_[i];
        if (a.source != b.source || a.target != b.target || a.label != b.label ||
            a.directed != b.directed || a.timestamp != b.timestamp) {
            return false;
        }
    }
    return true;
}

namespace {

std::string id_field(const nlohmann::json& v, const char* ctx) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    throw ParseError(std::string(ctx) + ": id must be a string or integer");
}

}  // namespace

LabeledGraph load_graph(const nlohmann::json& document, GraphRole role) {
    if (!document.is_object()) throw ParseError("graph document must be an object");
    bool default_directed = false;
    if (auto it = document.find("directed"); it != document.end()) {
        if (!it->is_boolean()) throw ParseError("'directed' must be a boolean");
        default_directed = it->get<bool>();
    }
    LabeledGraph g(role, default_directed);

    auto nodes = document.find("nodes");
    if (nodes == document.end() || !nodes->is_array()) {
        throw ParseError("graph document needs a 'nodes' array");
    }
    for (const auto& n : *nodes) {
        if (!n.is_object() || !n.contains("id") || !n.contains("label")) {
            throw ParseError("node entries need 'id' and 'label'");
        }
        if (!n["label"].is_string()) throw ParseError("node label must be a string");
        g.add_node(id_field(n["id"], "node"), n["label"].get<std::string>());
    }

    if (auto edges = document.find("edges"); edges != document.end()) {
        if (!edges->is_array()) throw ParseError("'edges' must be an array");
        for (const auto& e : *edges) {
            if (!e.is_object() || !e.contains("source") || !e.contains("target")) {
                throw ParseError("edge entries need 'source' and 'target'");
            }
            auto endpoint = [&](const char* key) {
                std::string name = id_field(e[key], "edge endpoint");
                auto id = g.find(name);
                if (!id) throw ValidationError("dangling endpoint '" + name + "'");
                return *id;
            };
            NodeId src = endpoint("source");
            NodeId dst = endpoint("target");
            std::optional<Label> label;
            if (e.contains("label")) {
                if (!e["label"].is_string()) throw ParseError("edge label must be a string");
                label = e["label"].get<std::string>();
            }
            std::optional<bool> directed;
            if (e.contains("directed")) {
                if (!e["directed"].is_boolean()) throw ParseError("edge 'directed' must be a boolean");
                directed = e["directed"].get<bool>();
            }
            std::optional<double> t;
            if (e.contains("t")) {
                if (!e["t"].is_number()) throw ParseError("edge 't' must be a number");
                t = e["t"].get<double>();
            }
            g.add_edge(src, dst, std::move(label), directed, t);
        }
    }
    return g;
}

LabeledGraph load_graph_file(const std::string& path, GraphRole role) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    return load_graph(doc, role);
}

nlohmann::json LabeledGraph::to_document() const {
    nlohmann::json doc;
    doc["directed"] = default_directed_;
    auto& nodes = doc["nodes"] = nlohmann::json::array();
    for (NodeId n = 0; n < node_count(); ++n) {
        nodes.push_back({{"id", names_[n]}, {"label", labels_[n]}});
    }
    auto& edges = doc["edges"] = nlohmann::json::array();
    for (const Edge& e : edges_) {
        nlohmann::json j{{"source", names_[e.source]}, {"target", names_[e.target]}};
        if (e.label) j["label"] = *e.label;
        if (e.directed != default_directed_) j["directed"] = e.directed;
        if (e.timestamp) j["t"] = *e.timestamp;
        edges.push_back(std::move(j));
    }
    return doc;
}

nlohmann::json serialize_graph(const LabeledGraph& g) { return g.to_document(); }

}  // namespace assist
