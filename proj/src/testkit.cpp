#include "assist/testkit.hpp"

#include <algorithm>
#include <random>

#include "assist/swarm.hpp"

namespace assist {

namespace {

// Grow one side from the seed fragment. Returns the ids the seed nodes
// received (nullopt for deleted ones).
std::vector<std::optional<NodeId>> grow_side(LabeledGraph& g, const PlantSpec& spec, Rng& rng,
                                             bool data_side) {
    std::vector<std::optional<NodeId>> seed_ids(spec.seed.node_count());
    std::vector<Label> labels(spec.seed.node_count());
    for (NodeId n = 0; n < spec.seed.node_count(); ++n) {
        labels[n] = spec.seed.label(n);
    }
    if (data_side) {
        for (auto& l : labels) {
            if (spec.relabel_probability > 0.0 && uniform01(rng) < spec.relabel_probability &&
                !spec.alphabet.empty()) {
                l = spec.alphabet[static_cast<std::size_t>(uniform01(rng) *
                                                           spec.alphabet.size()) %
                                  spec.alphabet.size()];
            }
        }
    }
    for (NodeId n = 0; n < spec.seed.node_count(); ++n) {
        bool deleted = data_side && spec.delete_node_probability > 0.0 &&
                       uniform01(rng) < spec.delete_node_probability;
        if (deleted) continue;
        seed_ids[n] = g.add_node(spec.seed.name(n), labels[n]);
    }
    for (const Edge& e : spec.seed.edges()) {
        if (!seed_ids[e.source] || !seed_ids[e.target]) continue;
        g.add_edge(*seed_ids[e.source], *seed_ids[e.target], e.label, e.directed, e.timestamp);
    }

    std::string prefix = data_side ? "d" : "p";
    for (std::uint32_t i = 0; i < spec.extra_nodes; ++i) {
        Label l = spec.alphabet.empty()
                      ? Label("x")
                      : spec.alphabet[static_cast<std::size_t>(uniform01(rng) *
                                                               spec.alphabet.size()) %
                                      spec.alphabet.size()];
        NodeId fresh = g.add_node(prefix + std::to_string(i), l);
        if (fresh > 0) {
            // Uniform random attachment keeps the growth connected.
            auto anchor = static_cast<NodeId>(uniform01(rng) * fresh) % fresh;
            g.add_edge(anchor, fresh);
        }
    }
    std::uint32_t added = 0, attempts = 0;
    while (added < spec.extra_edges && attempts < 50 * (spec.extra_edges + 1)) {
        ++attempts;
        if (g.node_count() < 2) break;
        auto a = static_cast<NodeId>(uniform01(rng) * g.node_count()) % g.node_count();
        auto b = static_cast<NodeId>(uniform01(rng) * g.node_count()) % g.node_count();
        if (a == b || g.has_edge_between(a, b)) continue;
        g.add_edge(a, b);
        ++added;
    }
    return seed_ids;
}

}  // namespace

PlantedPair generate_pair(const PlantSpec& spec) {
    Rng rng(spec.rng_seed ^ 0x5eedULL);
    PlantedPair pair{LabeledGraph(GraphRole::pattern, spec.seed.directed()),
                     LabeledGraph(GraphRole::data, spec.seed.directed()),
                     {}};
    auto pattern_ids = grow_side(pair.pattern, spec, rng, /*data_side=*/false);
    auto data_ids = grow_side(pair.data, spec, rng, /*data_side=*/true);
    for (NodeId n = 0; n < spec.seed.node_count(); ++n) {
        if (pattern_ids[n] && data_ids[n]) {
            pair.planted_map.emplace_back(*pattern_ids[n], *data_ids[n]);
        }
    }
    return pair;
}

namespace {

struct McsSearch {
    const LabeledGraph& g1;
    const LabeledGraph& g2;
    std::vector<std::vector<NodeId>> candidates;  // label-compatible g2 nodes per g1 node
    std::vector<int> assigned;                    // g2 node or -1, per g1 node
    std::vector<bool> used;                       // g2 side
    McsResult best;

    // Nodes count only when touched by a matched edge; score a complete
    // assignment by dropping unsupported nodes.
    void score_leaf() {
        std::size_t edges = 0;
        std::vector<bool> supported(g1.node_count(), false);
        for (const Edge& e : g1.edges()) {
            int a = assigned[e.source];
            int b = assigned[e.target];
            if (a < 0 || b < 0) continue;
            bool found = false;
            for (const Neighbor& nb : g2.neighbors(static_cast<NodeId>(a))) {
                if (nb.node != static_cast<NodeId>(b)) continue;
                const Edge& de = g2.edge(nb.edge);
                if (e.directed != de.directed) continue;
                if (e.directed && nb.dir != EdgeDir::out) continue;
                found = true;
                break;
            }
            if (found) {
                ++edges;
                supported[e.source] = supported[e.target] = true;
            }
        }
        std::size_t size = 0;
        for (NodeId n = 0; n < g1.node_count(); ++n) {
            if (assigned[n] >= 0 && supported[n]) ++size;
        }
        if (size > best.size || (size == best.size && edges > best.matched_edges)) {
            best.size = size;
            best.matched_edges = edges;
            best.mapping.clear();
            for (NodeId n = 0; n < g1.node_count(); ++n) {
                if (assigned[n] >= 0 && supported[n]) {
                    best.mapping.emplace_back(n, static_cast<NodeId>(assigned[n]));
                }
            }
        }
    }

    void search(std::size_t depth, std::size_t assigned_count) {
        if (depth == g1.node_count()) {
            score_leaf();
            return;
        }
        // Even mapping every remaining node cannot beat the best found.
        std::size_t remaining = g1.node_count() - depth;
        if (assigned_count + remaining < best.size) return;

        for (NodeId x : candidates[depth]) {
            if (used[x]) continue;
            used[x] = true;
            assigned[depth] = static_cast<int>(x);
            search(depth + 1, assigned_count + 1);
            used[x] = false;
            assigned[depth] = -1;
        }
        search(depth + 1, assigned_count);  // leave this node unmapped
    }
};

}  // namespace

McsResult exact_mcs(const LabeledGraph& g1, const LabeledGraph& g2, std::size_t node_budget) {
    if (g1.node_count() > node_budget || g2.node_count() > node_budget) {
        throw std::invalid_argument("exact_mcs: node budget exceeded");
    }
    McsSearch s{g1, g2, {}, {}, {}, {}};
    s.candidates.resize(g1.node_count());
    for (NodeId u = 0; u < g1.node_count(); ++u) {
        for (NodeId x = 0; x < g2.node_count(); ++x) {
            if (g1.label(u) == g2.label(x)) s.candidates[u].push_back(x);
        }
    }
    s.assigned.assign(g1.node_count(), -1);
    s.used.assign(g2.node_count(), false);
    s.search(0, 0);
    return s.best;
}

OracleComparison compare_to_oracle(const MatchResult& result, const McsResult& oracle,
                                   const LabeledGraph& pattern, const LabeledGraph& data,
                                   const std::vector<std::pair<NodeId, NodeId>>* planted_map,
                                   const Mode& mode, const Ontology* ontology) {
    OracleComparison cmp;
    cmp.valid = validate_mapping(pattern, data, result.greedy, mode, ontology).valid;
    if (oracle.size == 0) {
        cmp.size_ratio = result.greedy.empty() ? 1.0 : 0.0;
    } else {
        cmp.size_ratio =
            static_cast<double>(result.greedy.size()) / static_cast<double>(oracle.size);
    }
    if (planted_map) {
        if (planted_map->empty()) {
            cmp.node_recall = 1.0;
        } else {
            std::size_t hit = 0;
            for (const auto& [u, x] : *planted_map) {
                for (const MatchPair& p : result.greedy) {
                    if (p.pattern_node == u && p.data_node == x) {
                        ++hit;
                        break;
                    }
                }
            }
            cmp.node_recall = static_cast<double>(hit) / static_cast<double>(planted_map->size());
        }
    }
    return cmp;
}

}  // namespace assist
