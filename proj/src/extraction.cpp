#include "assist/extraction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace assist {

namespace {

std::vector<bool> threshold_nodes(const std::vector<double>& field, double theta) {
    double max = 0.0;
    for (double x : field) max = std::max(max, x);
    std::vector<bool> keep(field.size(), false);
    if (max <= 0.0) return keep;
    for (std::size_t i = 0; i < field.size(); ++i) keep[i] = field[i] >= theta * max;
    return keep;
}

Subgraph build_subgraph(const LabeledGraph& g, const std::vector<bool>& keep,
                        const std::vector<double>& edge_field) {
    Subgraph sub;
    for (NodeId n = 0; n < keep.size(); ++n) {
        if (keep[n]) sub.nodes.push_back(n);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (edge_field[e] > 0.0 && keep[ed.source] && keep[ed.target]) sub.edges.push_back(e);
    }
    return sub;
}

// Is there a data edge from x to y matching pattern edge f read from
// pattern node u outward? In missing mode a short directed path stands in
// for the edge.
bool image_exists(const LabeledGraph& data, NodeId x, NodeId y, const Edge& f, bool forward,
                  const Mode& mode) {
    NodeId from = forward ? x : y;
    NodeId to = forward ? y : x;
    for (const Neighbor& nb : data.neighbors(from)) {
        if (nb.node != to) continue;
        const Edge& de = data.edge(nb.edge);
        if (f.directed != de.directed) continue;
        if (f.directed && nb.dir != EdgeDir::out) continue;
        return true;
    }
    if (mode.missing) {
        return !bridge_path(data, from, to, mode.missing_radius).empty();
    }
    return false;
}

}  // namespace

MatchResult extract_matches(const PheromoneState& state, const LabeledGraph& pattern,
                            const LabeledGraph& data, const Params& params, const Mode& mode) {
    MatchResult result;
    double theta = params.extraction_threshold;
    std::vector<bool> keep_p = threshold_nodes(state.node_field[0], theta);
    std::vector<bool> keep_d = threshold_nodes(state.node_field[1], theta);
    result.pattern_subgraph = build_subgraph(pattern, keep_p, state.edge_field[0]);
    result.data_subgraph = build_subgraph(data, keep_d, state.edge_field[1]);

    // Correspondences carried by positive peer pheromone between surviving
    // nodes, normalized so the strongest scores 1.
    double max_peer = 0.0;
    if (state.peers) {
        for (std::size_t u = 0; u < state.peer_field.size(); ++u) {
            for (std::size_t k = 0; k < state.peer_field[u].size(); ++k) {
                double v = state.peer_field[u][k];
                NodeId x = state.peers->peers[u][k].data_node;
                if (v > 0.0 && keep_p[u] && keep_d[x]) max_peer = std::max(max_peer, v);
            }
        }
        if (max_peer > 0.0) {
            for (std::size_t u = 0; u < state.peer_field.size(); ++u) {
                for (std::size_t k = 0; k < state.peer_field[u].size(); ++k) {
                    double v = state.peer_field[u][k];
                    NodeId x = state.peers->peers[u][k].data_node;
                    if (v > 0.0 && keep_p[u] && keep_d[x]) {
                        result.pairs.push_back({static_cast<NodeId>(u), x, v / max_peer});
                    }
                }
            }
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end(), [](const MatchPair& a, const MatchPair& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.pattern_node != b.pattern_node) return a.pattern_node < b.pattern_node;
        return a.data_node < b.data_node;
    });

    // Greedy one-to-one: walk the ranked list, each pattern node takes its
    // strongest unclaimed data peer, skipping pairs that would leave a
    // mapped pattern edge without an image.
    std::set<NodeId> taken_p, taken_d;
    std::map<NodeId, NodeId> image;
    for (const MatchPair& p : result.pairs) {
        if (taken_p.count(p.pattern_node) || taken_d.count(p.data_node)) continue;
        bool consistent = true;
        for (const Neighbor& nb : pattern.neighbors(p.pattern_node)) {
            auto it = image.find(nb.node);
            if (it == image.end()) continue;
            const Edge& f = pattern.edge(nb.edge);
            bool forward = f.source == p.pattern_node;
            if (!image_exists(data, p.data_node, it->second, f, forward, mode)) {
                consistent = false;
                break;
            }
        }
        if (!consistent) continue;
        taken_p.insert(p.pattern_node);
        taken_d.insert(p.data_node);
        image.emplace(p.pattern_node, p.data_node);
        result.greedy.push_back(p);
    }

    // Matched edge pairs induced by the greedy mapping.
    std::map<NodeId, MatchPair> by_pattern;
    for (const MatchPair& p : result.greedy) by_pattern.emplace(p.pattern_node, p);
    for (EdgeId e : result.pattern_subgraph.edges) {
        const Edge& f = pattern.edge(e);
        auto a = by_pattern.find(f.source);
        auto b = by_pattern.find(f.target);
        if (a == by_pattern.end() || b == by_pattern.end()) continue;
        NodeId img_src = a->second.data_node;
        NodeId img_dst = b->second.data_node;
        for (const Neighbor& nb : data.neighbors(img_src)) {
            if (nb.node != img_dst) continue;
            const Edge& de = data.edge(nb.edge);
            if (f.directed != de.directed) continue;
            if (f.directed && !(de.source == img_src && nb.dir == EdgeDir::out)) continue;
            result.matched_edges.push_back(
                {e, nb.edge, std::min(a->second.score, b->second.score)});
            break;
        }
    }

    result.size = result.greedy.size();
    if (!result.greedy.empty()) {
        double sum = 0.0;
        for (const MatchPair& p : result.greedy) sum += p.score;
        result.mean_score = sum / static_cast<double>(result.greedy.size());
    }
    if (pattern.node_count() > 0) {
        result.coverage =
            static_cast<double>(result.size) / static_cast<double>(pattern.node_count());
    }
    return result;
}

MappingCheck validate_mapping(const LabeledGraph& pattern, const LabeledGraph& data,
                              const std::vector<MatchPair>& pairs, const Mode& mode,
                              const Ontology* ontology, double imprecise_quality) {
    MappingCheck check;
    std::map<NodeId, NodeId> image;
    std::set<NodeId> used_data;
    for (const MatchPair& p : pairs) {
        if (!image.emplace(p.pattern_node, p.data_node).second) {
            throw ValidationError("duplicate pattern node in mapping: " +
                                  pattern.name(p.pattern_node));
        }
        if (!used_data.insert(p.data_node).second) {
            throw ValidationError("duplicate data node in mapping: " + data.name(p.data_node));
        }
    }

    const Ontology* ont = mode.imprecise ? ontology : nullptr;
    for (const auto& [u, x] : image) {
        if (match_labels(pattern.label(u), data.label(x), ont, imprecise_quality) <= 0.0) {
            check.valid = false;
            check.violations.push_back("label mismatch: " + pattern.name(u) + " -> " +
                                       data.name(x));
        }
    }

    // Every pattern edge between mapped nodes needs an image edge with
    // compatible direction. Remember the image for the temporal check.
    std::vector<std::pair<EdgeId, EdgeId>> edge_images;
    for (EdgeId e = 0; e < pattern.edge_count(); ++e) {
        const Edge& f = pattern.edge(e);
        auto a = image.find(f.source);
        auto b = image.find(f.target);
        if (a == image.end() || b == image.end()) continue;
        bool found = false;
        for (const Neighbor& nb : data.neighbors(a->second)) {
            if (nb.node != b->second) continue;
            const Edge& de = data.edge(nb.edge);
            if (f.directed != de.directed) continue;
            if (f.directed && nb.dir != EdgeDir::out) continue;
            edge_images.emplace_back(e, nb.edge);
            found = true;
            break;
        }
        if (!found) {
            check.valid = false;
            check.violations.push_back("missing image edge: " + pattern.name(f.source) + "-" +
                                       pattern.name(f.target));
        }
    }

    if (mode.temporal) {
        for (std::size_t i = 0; i < edge_images.size(); ++i) {
            for (std::size_t j = i + 1; j < edge_images.size(); ++j) {
                const Edge& f1 = pattern.edge(edge_images[i].first);
                const Edge& f2 = pattern.edge(edge_images[j].first);
                const Edge& d1 = data.edge(edge_images[i].second);
                const Edge& d2 = data.edge(edge_images[j].second);
                if (!f1.timestamp || !f2.timestamp || !d1.timestamp || !d2.timestamp) continue;
                bool p_less = *f1.timestamp < *f2.timestamp;
                bool p_greater = *f1.timestamp > *f2.timestamp;
                bool d_less = *d1.timestamp < *d2.timestamp;
                bool d_greater = *d1.timestamp > *d2.timestamp;
                if ((p_less && d_greater) || (p_greater && d_less)) {
                    check.valid = false;
                    check.violations.push_back(
                        "edge order violation: " + pattern.name(f1.source) + "-" +
                        pattern.name(f1.target) + " vs " + pattern.name(f2.source) + "-" +
                        pattern.name(f2.target));
                }
            }
        }
    }
    return check;
}

}  // namespace assist
