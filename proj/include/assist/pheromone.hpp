#ifndef ASSIST_PHEROMONE_HPP
#define ASSIST_PHEROMONE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "assist/graph.hpp"
#include "assist/params.hpp"
#include "assist/peering.hpp"

namespace assist {

enum class Side : int { pattern = 0, data = 1 };

/// One agent's completed loop through both graphs: jump to a data peer,
/// walk one or more data edges, jump back to a pattern neighbor of the
/// start, walk home. Completing it certifies one matching edge pair and
/// drives a deposit.
struct CycleRecord {
    NodeId pattern_start;                // u, where the loop opens and closes
    NodeId data_entry;                   // x, peer of u
    std::vector<EdgeId> data_path;       // matched data edges: 1, or 2 in temporal mode,
                                         // or none when a bridge stands in for the edge
    std::vector<NodeId> data_nodes;      // data nodes that earn node deposits (excludes bridge hops)
    std::vector<NodeId> bridge_nodes;    // intermediate bridge hops, logged only
    std::vector<EdgeId> bridge_edges;    // bridge edges walked, logged only (not matched)
    NodeId pattern_return;               // v, pattern neighbor reached by the return jump
    std::vector<EdgeId> pattern_path;    // edges walked home, ending at u
    NodeId data_exit;                    // last data node, peer of v
    double quality;                      // product of per-hop match qualities, in (0,1]
    std::uint32_t length;                // L: jumps + edges traversed
};

struct FieldTotals {
    double pattern_sum = 0.0;
    double data_sum = 0.0;
};

/// All scalar fields over both graphs plus the propagated label vectors.
/// node/edge/quorum fields are indexed [side][node or edge id];
/// peer_field parallels PeerMap::peers.
struct PheromoneState {
    std::array<std::vector<double>, 2> node_field;
    std::array<std::vector<double>, 2> edge_field;
    std::array<std::vector<double>, 2> quorum_field;
    std::array<std::vector<std::map<Label, double>>, 2> label_vectors;
    std::vector<std::vector<double>> peer_field;
    std::uint64_t wave_counter = 0;

    std::shared_ptr<const PeerMap> peers;  // set by init_fields

    std::vector<double>& field(Side s) { return node_field[static_cast<int>(s)]; }
    double& node(Side s, NodeId n) { return node_field[static_cast<int>(s)][n]; }
    double node(Side s, NodeId n) const { return node_field[static_cast<int>(s)][n]; }
    double& edge(Side s, EdgeId e) { return edge_field[static_cast<int>(s)][e]; }
    double edge(Side s, EdgeId e) const { return edge_field[static_cast<int>(s)][e]; }
    double& quorum(Side s, NodeId n) { return quorum_field[static_cast<int>(s)][n]; }
    double quorum(Side s, NodeId n) const { return quorum_field[static_cast<int>(s)][n]; }
    const std::map<Label, double>& labels_near(Side s, NodeId n) const {
        return label_vectors[static_cast<int>(s)][n];
    }
    double label_strength(Side s, NodeId n, const Label& l) const;
    /// Pheromone on the (pattern, data) correspondence; 0 if not a peer pair.
    double peer_strength(NodeId pattern_node, NodeId data_node) const;
};

/// Initial state: initial_pheromone on every peered node in both graphs,
/// everything else zero, label vectors propagated. The state keeps its own
/// share of the peer map (peer_field rows parallel its peer lists).
PheromoneState init_fields(const LabeledGraph& pattern, const LabeledGraph& data,
                           PeerMap peer_map, const Params& params);

/// Fold one completed cycle into the fields: every touched element gains
/// deposit_constant * quality / length. Node deposits go to the start, the
/// return node and the cycle's data nodes; edge deposits to every edge on
/// both paths; peer deposits to the two jump pairs. Throws on a record
/// that violates the cycle invariants (an agent-logic bug).
void deposit(PheromoneState& state, const CycleRecord& cycle, const Params& params);

/// Multiply node, edge and peer fields by (1 - evaporation_rate); clamp
/// entries below kFieldClamp to zero. Quorum is reset (it is recomputed
/// from scratch each wave).
void evaporate(PheromoneState& state, const Params& params);

/// Per-node label vectors: labels within `radius` hops contribute
/// decay^distance (a node's own label contributes 1). Labeled edges count
/// as resident on both endpoints.
std::vector<std::map<Label, double>> propagate_labels(const LabeledGraph& graph, int radius,
                                                      double decay);

/// Quorum field: sweeps of q[n] <- sum over neighbors m joined by an edge
/// with positive edge pheromone of (node_field[m] + decay * q_prev[m]).
/// Larger matched components feed their interior more quorum.
void propagate_quorum(PheromoneState& state, const LabeledGraph& pattern,
                      const LabeledGraph& data, const Params& params);

/// Sum of node + edge pheromone per graph (the termination signal).
FieldTotals field_totals(const PheromoneState& state);

}  // namespace assist

#endif
