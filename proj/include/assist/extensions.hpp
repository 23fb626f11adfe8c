#ifndef ASSIST_EXTENSIONS_HPP
#define ASSIST_EXTENSIONS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "assist/graph.hpp"

namespace assist {

/// Label subsumption DAG ("person > Alice"). subsumes() is reflexive and
/// transitive; cycles are rejected at load.
class Ontology {
public:
    void add(const Label& parent, const Label& child);
    void finalize();  // cycle check + transitive closure

    bool subsumes(const Label& ancestor, const Label& descendant) const;

    /// Labels related to l by subsumption in either direction, excluding
    /// l itself. Sorted, deduplicated.
    std::vector<Label> related(const Label& l) const;

    std::size_t edge_count() const { return edge_count_; }

private:
    std::map<Label, std::set<Label>> children_;
    std::map<Label, std::set<Label>> descendants_;  // transitive closure
    std::map<Label, std::set<Label>> ancestors_;
    std::size_t edge_count_ = 0;
    bool finalized_ = false;
};

/// Parse ontology text: one `parent > child` pair per line, '#' comments
/// and blank lines ignored.
Ontology load_ontology(const std::string& text);
Ontology load_ontology_file(const std::string& path);

/// Which of the matching complications are active for a run.
struct Mode {
    bool imprecise = false;
    bool temporal = false;
    bool missing = false;
    int missing_radius = 2;

    /// Throws if the flags are inconsistent with the graphs (temporal mode
    /// needs both graphs timestamped or directed).
    void validate(const LabeledGraph& pattern, const LabeledGraph& data) const;
};

/// Match quality of two node labels: 1 exact, `imprecise_quality` when an
/// ontology relates them by subsumption (either direction), else 0.
/// Symmetric in its arguments.
double match_labels(const Label& a, const Label& b, const Ontology* ontology = nullptr,
                    double imprecise_quality = 0.5);

struct SenseHit {
    NodeId node;
    int hops;
    double gradient;  // decay^hops
};

/// Nodes within `radius` hops of `from` carrying `want`, ranked by the
/// propagation gradient decay^hops (ties by node id). `from` itself is
/// excluded. Used by missing mode to bridge over absent structure.
std::vector<SenseHit> multi_hop_sense(const LabeledGraph& graph, NodeId from, const Label& want,
                                      int radius, double decay);

/// Shortest path from `from` to `to` within `radius` hops, as edge ids,
/// deterministic under ties (smallest node id first). Empty if
/// unreachable. Directed edges are traversed in their direction only.
std::vector<EdgeId> bridge_path(const LabeledGraph& graph, NodeId from, NodeId to, int radius);

}  // namespace assist

#endif
