#ifndef ASSIST_EXTRACTION_HPP
#define ASSIST_EXTRACTION_HPP

#include <string>
#include <vector>

#include "assist/extensions.hpp"
#include "assist/graph.hpp"
#include "assist/params.hpp"
#include "assist/pheromone.hpp"

namespace assist {

struct MatchPair {
    NodeId pattern_node;
    NodeId data_node;
    double score;  // peer pheromone, normalized so the best pair scores 1
};

struct MatchedEdge {
    EdgeId pattern_edge;
    EdgeId data_edge;
    double score;  // min of the endpoint pair scores
};

struct Subgraph {
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;
};

/// The user-facing answer read off a (usually converged) pheromone state:
/// ranked node correspondences, the strong region of each graph, and a
/// greedy one-to-one mapping for oracle comparison.
struct MatchResult {
    std::vector<MatchPair> pairs;          // descending score; only pairs whose
                                           // endpoints survive the threshold
    std::vector<MatchPair> greedy;         // one-to-one subset of pairs
    Subgraph pattern_subgraph;             // nodes >= threshold * max, positive edges
    Subgraph data_subgraph;
    std::vector<MatchedEdge> matched_edges;
    std::size_t size = 0;                  // greedy pair count
    double mean_score = 0.0;               // over greedy pairs
    double coverage = 0.0;                 // size / pattern node count

    bool empty() const { return pairs.empty(); }
};

/// The greedy assignment walks the ranked pairs, each pattern node taking
/// its strongest unclaimed data peer, and admits a pair only if every
/// pattern edge to an already-mapped node has an image in the data (a
/// direct edge; in missing mode a directed path within missing_radius
/// qualifies). Raw ranked pairs are unaffected by the admission rule.
MatchResult extract_matches(const PheromoneState& state, const LabeledGraph& pattern,
                            const LabeledGraph& data, const Params& params,
                            const Mode& mode = {});

struct MappingCheck {
    bool valid = true;
    std::vector<std::string> violations;
};

/// Check a one-to-one node mapping for the isomorphism conditions: label
/// compatibility per mode, and an image edge for every pattern edge
/// between mapped nodes (direction respected; in temporal mode the image
/// edges must also preserve the pairwise order of the pattern edges).
/// Throws on a duplicated pattern or data node.
MappingCheck validate_mapping(const LabeledGraph& pattern, const LabeledGraph& data,
                              const std::vector<MatchPair>& pairs, const Mode& mode = {},
                              const Ontology* ontology = nullptr,
                              double imprecise_quality = 0.5);

}  // namespace assist

#endif
