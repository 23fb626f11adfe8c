#ifndef ASSIST_TESTKIT_HPP
#define ASSIST_TESTKIT_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "assist/extraction.hpp"
#include "assist/graph.hpp"

namespace assist {

/// Recipe for a pattern/data pair sharing a planted fragment: both sides
/// grow independently from the seed by attaching fresh nodes to uniform
/// random endpoints, plus optional extra random edges; the data side can
/// relabel or delete seed nodes as noise.
struct PlantSpec {
    LabeledGraph seed;
    std::uint32_t extra_nodes = 0;       // per side
    std::uint32_t extra_edges = 0;       // per side, beyond the attachments
    std::vector<Label> alphabet;         // labels for grown nodes
    double relabel_probability = 0.0;    // data-side seed noise
    double delete_node_probability = 0.0;
    std::uint64_t rng_seed = 0;
};

struct PlantedPair {
    LabeledGraph pattern;
    LabeledGraph data;
    // Ground truth: surviving seed correspondences (pattern id, data id).
    std::vector<std::pair<NodeId, NodeId>> planted_map;
};

/// Deterministic for a given spec.
PlantedPair generate_pair(const PlantSpec& spec);

struct McsResult {
    std::size_t size = 0;  // mapped nodes, each supported by a matched edge
    std::size_t matched_edges = 0;
    std::vector<std::pair<NodeId, NodeId>> mapping;
};

/// Exhaustive maximum common subgraph under label equality: the largest
/// one-to-one label-preserving node mapping in which every mapped node is
/// an endpoint of some matched edge (a pattern edge between mapped nodes
/// whose image edge exists, direction respected). Node count first, then
/// matched edges. Throws when either graph exceeds node_budget.
McsResult exact_mcs(const LabeledGraph& g1, const LabeledGraph& g2, std::size_t node_budget = 12);

struct OracleComparison {
    bool valid = false;
    double size_ratio = 0.0;                // greedy size / oracle size
    std::optional<double> node_recall;      // vs planted truth, when known
};

OracleComparison compare_to_oracle(const MatchResult& result, const McsResult& oracle,
                                   const LabeledGraph& pattern, const LabeledGraph& data,
                                   const std::vector<std::pair<NodeId, NodeId>>* planted_map = nullptr,
                                   const Mode& mode = {}, const Ontology* ontology = nullptr);

}  // namespace assist

#endif
