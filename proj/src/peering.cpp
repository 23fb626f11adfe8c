#include "assist/peering.hpp"

#include <algorithm>

#include "assist/extensions.hpp"

namespace assist {

LabelIndex LabelIndex::build(const LabeledGraph& data) {
    LabelIndex idx;
    idx.entries_.reserve(data.node_count());
    for (NodeId n = 0; n < data.node_count(); ++n) {
        idx.entries_.emplace_back(data.label(n), n);
    }
    std::sort(idx.entries_.begin(), idx.entries_.end());
    return idx;
}

std::span<const std::pair<Label, NodeId>> LabelIndex::lookup(const Label& label) const {
    // Hand-rolled lower/upper bound so each probe counts as exactly one
    // label comparison; the span between them is the peer bucket.
    std::size_t lo = 0, hi = entries_.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        ++comparisons_;
        if (entries_[mid].first < label) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    std::size_t first = lo;
    hi = entries_.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        ++comparisons_;
        if (label < entries_[mid].first) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return {entries_.data() + first, lo - first};
}

std::vector<NodeId> LabelIndex::peers_of(const Label& label) const {
    std::vector<NodeId> out;
    for (const auto& [l, n] : lookup(label)) out.push_back(n);
    return out;
}

std::vector<Label> LabelIndex::labels() const {
    std::vector<Label> out;
    for (const auto& [l, n] : entries_) {
        if (out.empty() || out.back() != l) out.push_back(l);
    }
    return out;
}

LabelIndex build_label_index(const LabeledGraph& data) { return LabelIndex::build(data); }

double PeerMap::quality(NodeId pattern_node, NodeId data_node) const {
    if (pattern_node >= peers.size()) return 0.0;
    const auto& list = peers[pattern_node];
    auto it = std::lower_bound(list.begin(), list.end(), data_node,
                               [](const PeerEntry& e, NodeId x) { return e.data_node < x; });
    if (it != list.end() && it->data_node == data_node) return it->quality;
    return 0.0;
}

PeerMap peer_all(const LabeledGraph& pattern, const LabelIndex& index, const Ontology* ontology,
                 double imprecise_quality) {
    PeerMap map;
    map.peers.resize(pattern.node_count());
    map.reverse.resize(index.size());

    std::uint64_t before = index.comparisons();
    for (NodeId u = 0; u < pattern.node_count(); ++u) {
        const Label& want = pattern.label(u);
        auto& list = map.peers[u];
        for (const auto& [l, x] : index.lookup(want)) list.push_back({x, 1.0});
        if (ontology) {
            for (const Label& rel : ontology->related(want)) {
                for (const auto& [l, x] : index.lookup(rel)) {
                    list.push_back({x, imprecise_quality});
                }
            }
        }
        std::sort(list.begin(), list.end(), [](const PeerEntry& a, const PeerEntry& b) {
            return a.data_node < b.data_node;
        });
        if (list.empty()) {
            map.unpeered_pattern_nodes.push_back(u);
        } else {
            map.peered_pattern_nodes.push_back(u);
            for (const PeerEntry& e : list) {
                if (static_cast<std::size_t>(e.data_node) >= map.reverse.size()) {
                    map.reverse.resize(e.data_node + 1);
                }
                map.reverse[e.data_node].push_back(u);
            }
        }
    }
    map.comparisons = index.comparisons() - before;
    return map;
}

}  // namespace assist
