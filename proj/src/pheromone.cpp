#include "assist/pheromone.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace assist {

double PheromoneState::label_strength(Side s, NodeId n, const Label& l) const {
    const auto& vec = label_vectors[static_cast<int>(s)][n];
    auto it = vec.find(l);
    return it == vec.end() ? 0.0 : it->second;
}

double PheromoneState::peer_strength(NodeId pattern_node, NodeId data_node) const {
    if (!peers || pattern_node >= peer_field.size()) return 0.0;
    const auto& list = peers->peers[pattern_node];
    auto it = std::lower_bound(list.begin(), list.end(), data_node,
                               [](const PeerEntry& e, NodeId x) { return e.data_node < x; });
    if (it == list.end() || it->data_node != data_node) return 0.0;
    return peer_field[pattern_node][static_cast<std::size_t>(it - list.begin())];
}

PheromoneState init_fields(const LabeledGraph& pattern, const LabeledGraph& data,
                           PeerMap peer_map, const Params& params) {
    params.validate();
    PheromoneState st;
    st.peers = std::make_shared<const PeerMap>(std::move(peer_map));
    const PeerMap& pm = *st.peers;
    st.node_field[0].assign(pattern.node_count(), 0.0);
    st.node_field[1].assign(data.node_count(), 0.0);
    st.edge_field[0].assign(pattern.edge_count(), 0.0);
    st.edge_field[1].assign(data.edge_count(), 0.0);
    st.quorum_field[0].assign(pattern.node_count(), 0.0);
    st.quorum_field[1].assign(data.node_count(), 0.0);
    st.peer_field.resize(pm.peers.size());
    for (std::size_t u = 0; u < pm.peers.size(); ++u) {
        st.peer_field[u].assign(pm.peers[u].size(), 0.0);
    }

    for (NodeId u : pm.peered_pattern_nodes) {
        st.node(Side::pattern, u) = params.initial_pheromone;
    }
    for (NodeId x = 0; x < data.node_count(); ++x) {
        if (x < pm.reverse.size() && !pm.reverse[x].empty()) {
            st.node(Side::data, x) = params.initial_pheromone;
        }
    }

    st.label_vectors[0] = propagate_labels(pattern, params.propagation_radius,
                                           params.propagation_decay);
    st.label_vectors[1] = propagate_labels(data, params.propagation_radius,
                                           params.propagation_decay);
    return st;
}

namespace {

void check_cycle(const PheromoneState& state, const CycleRecord& c) {
    auto fail = [](const char* why) {
        throw std::logic_error(std::string("malformed cycle record: ") + why);
    };
    if (!state.peers) fail("state has no peer map");
    if (c.length < 4) fail("length below 4");
    if (!(c.quality > 0.0) || c.quality > 1.0) fail("quality outside (0,1]");
    if (c.pattern_path.empty()) fail("empty pattern path");
    if (c.data_path.empty() && c.bridge_edges.empty()) fail("empty data path");
    if (c.data_nodes.empty()) fail("no data nodes");
    if (state.peers->quality(c.pattern_start, c.data_entry) <= 0.0) {
        fail("entry jump is not a peer pair");
    }
    if (state.peers->quality(c.pattern_return, c.data_exit) <= 0.0) {
        fail("return jump is not a peer pair");
    }
}

void bump_peer(PheromoneState& state, NodeId pattern_node, NodeId data_node, double amount) {
    const auto& list = state.peers->peers[pattern_node];
    auto it = std::lower_bound(list.begin(), list.end(), data_node,
                               [](const PeerEntry& e, NodeId x) { return e.data_node < x; });
    state.peer_field[pattern_node][static_cast<std::size_t>(it - list.begin())] += amount;
}

}  // namespace

void deposit(PheromoneState& state, const CycleRecord& cycle, const Params& params) {
    check_cycle(state, cycle);
    double amount = params.deposit_constant * cycle.quality / cycle.length;

    state.node(Side::pattern, cycle.pattern_start) += amount;
    state.node(Side::pattern, cycle.pattern_return) += amount;
    for (NodeId x : cycle.data_nodes) state.node(Side::data, x) += amount;
    for (EdgeId e : cycle.data_path) state.edge(Side::data, e) += amount;
    for (EdgeId e : cycle.pattern_path) state.edge(Side::pattern, e) += amount;
    bump_peer(state, cycle.pattern_start, cycle.data_entry, amount);
    bump_peer(state, cycle.pattern_return, cycle.data_exit, amount);
}

void evaporate(PheromoneState& state, const Params& params) {
    double keep = 1.0 - params.evaporation_rate;
    auto decay = [&](std::vector<double>& v) {
        for (double& x : v) {
            x *= keep;
            if (x < Params::kFieldClamp) x = 0.0;
        }
    };
    decay(state.node_field[0]);
    decay(state.node_field[1]);
    decay(state.edge_field[0]);
    decay(state.edge_field[1]);
    for (auto& row : state.peer_field) decay(row);
    state.quorum_field[0].assign(state.quorum_field[0].size(), 0.0);
    state.quorum_field[1].assign(state.quorum_field[1].size(), 0.0);
}

std::vector<std::map<Label, double>> propagate_labels(const LabeledGraph& graph, int radius,
                                                      double decay) {
    std::vector<std::map<Label, double>> vectors(graph.node_count());
    std::vector<int> dist(graph.node_count());
    std::vector<NodeId> edge_stamp(graph.edge_count(), static_cast<NodeId>(-1));
    std::vector<double> decay_pow(radius + 1);
    decay_pow[0] = 1.0;
    for (int k = 1; k <= radius; ++k) decay_pow[k] = decay_pow[k - 1] * decay;

    for (NodeId start = 0; start < graph.node_count(); ++start) {
        // BFS within the radius; propagation ignores edge direction.
        std::fill(dist.begin(), dist.end(), -1);
        dist[start] = 0;
        std::deque<NodeId> queue{start};
        auto& vec = vectors[start];
        vec[graph.label(start)] += 1.0;
        while (!queue.empty()) {
            NodeId n = queue.front();
            queue.pop_front();
            for (const Neighbor& nb : graph.neighbors(n)) {
                // A labeled edge is sensed once, at the distance of its
                // nearer endpoint. Pops come in nondecreasing distance
                // order, so the first touch is from that endpoint.
                const Edge& e = graph.edge(nb.edge);
                if (e.label && edge_stamp[nb.edge] != start) {
                    edge_stamp[nb.edge] = start;
                    vec[*e.label] += decay_pow[dist[n]];
                }
                if (dist[nb.node] < 0 && dist[n] < radius) {
                    dist[nb.node] = dist[n] + 1;
                    vec[graph.label(nb.node)] += decay_pow[dist[nb.node]];
                    queue.push_back(nb.node);
                }
            }
        }
    }
    return vectors;
}

void propagate_quorum(PheromoneState& state, const LabeledGraph& pattern,
                      const LabeledGraph& data, const Params& params) {
    auto sweep_graph = [&](Side side, const LabeledGraph& g) {
        int s = static_cast<int>(side);
        std::vector<double> current(g.node_count(), 0.0);
        std::vector<double> next(g.node_count(), 0.0);
        for (int k = 0; k < params.quorum_sweeps; ++k) {
            for (NodeId n = 0; n < g.node_count(); ++n) {
                double sum = 0.0;
                for (const Neighbor& nb : g.neighbors(n)) {
                    if (state.edge_field[s][nb.edge] > 0.0) {
                        sum += state.node_field[s][nb.node] +
                               current[nb.node] * params.propagation_decay;
                    }
                }
                next[n] = sum;
            }
            current.swap(next);
        }
        state.quorum_field[s] = std::move(current);
    };
    sweep_graph(Side::pattern, pattern);
    sweep_graph(Side::data, data);
}

FieldTotals field_totals(const PheromoneState& state) {
    FieldTotals t;
    for (double x : state.node_field[0]) t.pattern_sum += x;
    for (double x : state.edge_field[0]) t.pattern_sum += x;
    for (double x : state.node_field[1]) t.data_sum += x;
    for (double x : state.edge_field[1]) t.data_sum += x;
    return t;
}

}  // namespace assist
