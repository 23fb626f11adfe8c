#ifndef ASSIST_PEERING_HPP
#define ASSIST_PEERING_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "assist/graph.hpp"

namespace assist {

class Ontology;

/// Balanced label index over the data graph: one (label, node) entry per
/// data node, kept sorted so a lookup is a pair of binary searches over
/// the d entries. Every label comparison made while searching is counted,
/// which is what the bench reports as peering cost.
class LabelIndex {
public:
    static LabelIndex build(const LabeledGraph& data);

    /// Contiguous run of entries for `label` (possibly empty).
    std::span<const std::pair<Label, NodeId>> lookup(const Label& label) const;

    std::vector<NodeId> peers_of(const Label& label) const;

    /// Distinct labels present in the index, ascending.
    std::vector<Label> labels() const;

    std::size_t size() const { return entries_.size(); }
    std::uint64_t comparisons() const { return comparisons_; }
    void reset_comparisons() { comparisons_ = 0; }

private:
    std::vector<std::pair<Label, NodeId>> entries_;
    mutable std::uint64_t comparisons_ = 0;
};

struct PeerEntry {
    NodeId data_node;
    double quality;  // 1 exact, imprecise_quality via ontology subsumption
};

/// Pattern-node -> data-peers mapping plus its reverse. Peer lists are
/// sorted by node id; a pattern node with no peers is retained and flagged
/// rather than dropped.
struct PeerMap {
    std::vector<std::vector<PeerEntry>> peers;    // indexed by pattern node
    std::vector<std::vector<NodeId>> reverse;     // indexed by data node
    std::vector<NodeId> peered_pattern_nodes;     // sorted
    std::vector<NodeId> unpeered_pattern_nodes;   // sorted
    std::uint64_t comparisons = 0;                // index lookups spent building

    bool is_peered(NodeId pattern_node) const {
        return pattern_node < peers.size() && !peers[pattern_node].empty();
    }
    /// Match quality of the (pattern, data) pair; 0 if not a peer pair.
    double quality(NodeId pattern_node, NodeId data_node) const;
};

LabelIndex build_label_index(const LabeledGraph& data);

/// Peer every pattern node against the index. With an ontology, labels
/// related by subsumption (either direction, any number of hops) peer at
/// `imprecise_quality`; exact-label peers always win at quality 1.
PeerMap peer_all(const LabeledGraph& pattern, const LabelIndex& index,
                 const Ontology* ontology = nullptr, double imprecise_quality = 0.5);

}  // namespace assist

#endif
