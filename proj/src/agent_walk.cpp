#include <algorithm>
#include <set>

#include "assist/extensions.hpp"
#include "assist/swarm.hpp"

namespace assist {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng agent_rng(std::uint64_t master_seed, std::uint32_t agent_index) {
    return Rng(splitmix64(master_seed ^ splitmix64(agent_index + 1)));
}

std::size_t weighted_choice(const std::vector<double>& weights, Rng& rng) {
    if (weights.empty()) {
        throw std::invalid_argument("weighted_choice: no options");
    }
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform01(rng);
    if (total <= 0.0) {
        // Degenerate all-zero case: uniform over the options.
        auto idx = static_cast<std::size_t>(u * static_cast<double>(weights.size()));
        return std::min(idx, weights.size() - 1);
    }
    double r = u * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) last_positive = i;
        cum += weights[i];
        if (cum > r) return i;
    }
    return last_positive;
}

namespace {

// Labels carried by the pattern nodes adjacent to u: what the data walk
// hopes to land on.
std::set<Label> wanted_labels(const LabeledGraph& pattern, NodeId u) {
    std::set<Label> out;
    for (const Neighbor& nb : pattern.neighbors(u)) out.insert(pattern.label(nb.node));
    return out;
}

double gradient_bonus(const PheromoneState& state, NodeId data_node,
                      const std::set<Label>& wanted) {
    double g = 0.0;
    for (const Label& l : wanted) g += state.label_strength(Side::data, data_node, l);
    return g;
}

// Jump from the pattern into the data graph over the peer links of u.
NodeId pick_entry(const PheromoneState& state, NodeId u, const WalkContext& ctx, Rng& rng) {
    const auto& peers = ctx.peer_map.peers[u];
    std::vector<double> w;
    w.reserve(peers.size());
    for (const PeerEntry& p : peers) {
        w.push_back(ctx.params.initial_pheromone + state.node(Side::data, p.data_node));
    }
    return peers[weighted_choice(w, rng)].data_node;
}

// Does pattern edge f, read from u outward, have the same orientation as
// the traversed data step? Undirected pairs with undirected only.
bool orientation_matches(const Edge& f, NodeId u, bool data_directed) {
    if (data_directed) return f.directed && f.source == u;
    return !f.directed;
}

// Strict order between two edges of one graph: timestamps when present,
// otherwise plain direction (a head-to-tail directed pair is ordered by
// construction).
bool ordered_before(const LabeledGraph& g, EdgeId a, EdgeId b) {
    const Edge& ea = g.edge(a);
    const Edge& eb = g.edge(b);
    if (ea.timestamp && eb.timestamp) return *ea.timestamp < *eb.timestamp;
    return ea.directed && eb.directed;
}

struct DataStep {
    std::vector<EdgeId> path;           // the matched edge, or empty for a bridge
    std::vector<EdgeId> bridge_edges;   // bridge edges walked instead
    std::vector<NodeId> bridge;         // interior nodes of a multi-hop path
    NodeId land = 0;
    double weight = 0.0;
    double quality_mult = 1.0;
    bool directed = false;
    std::uint32_t hops = 1;
};

// Candidate data moves out of x: adjacent edges always, plus multi-hop
// bridges to wanted labels when missing mode is on.
std::vector<DataStep> data_steps(const PheromoneState& state, NodeId x,
                                 const std::set<Label>& wanted, const WalkContext& ctx) {
    std::vector<DataStep> steps;
    double tau0 = ctx.params.initial_pheromone;
    for (const Neighbor& nb : ctx.data.neighbors(x)) {
        if (nb.dir == EdgeDir::in) continue;
        DataStep s;
        s.path = {nb.edge};
        s.land = nb.node;
        s.directed = ctx.data.edge(nb.edge).directed;
        s.weight = (tau0 + state.edge(Side::data, nb.edge)) *
                   (1.0 + gradient_bonus(state, nb.node, wanted));
        steps.push_back(std::move(s));
    }
    if (ctx.mode.missing) {
        for (const Label& want : wanted) {
            for (const SenseHit& hit :
                 multi_hop_sense(ctx.data, x, want, ctx.mode.missing_radius,
                                 ctx.params.propagation_decay)) {
                if (hit.hops < 2) continue;
                DataStep s;
                s.bridge_edges = bridge_path(ctx.data, x, hit.node, hit.hops);
                if (s.bridge_edges.empty()) continue;
                s.land = hit.node;
                s.hops = static_cast<std::uint32_t>(hit.hops);
                NodeId at = x;
                for (EdgeId e : s.bridge_edges) {
                    const Edge& ed = ctx.data.edge(e);
                    s.directed = s.directed || ed.directed;
                    at = ed.source == at ? ed.target : ed.source;
                    if (at != hit.node) s.bridge.push_back(at);
                }
                for (int k = 1; k < hit.hops; ++k) s.quality_mult *= ctx.params.imprecise_quality;
                s.weight = (tau0 + state.node(Side::data, hit.node)) * hit.gradient;
                steps.push_back(std::move(s));
            }
        }
    }
    return steps;
}

struct ReturnJump {
    NodeId v = 0;
    EdgeId pattern_edge = 0;
    double quality = 0.0;
};

// Pattern neighbors of u peered with the landing node, orientation
// consistent with the data step. Weighted by the correspondence field.
std::optional<ReturnJump> pick_return(const PheromoneState& state, NodeId u, NodeId landing,
                                      bool data_directed, const WalkContext& ctx, Rng& rng) {
    std::vector<ReturnJump> candidates;
    std::vector<double> weights;
    for (const Neighbor& nb : ctx.pattern.neighbors(u)) {
        const Edge& f = ctx.pattern.edge(nb.edge);
        if (!orientation_matches(f, u, data_directed)) continue;
        double q = ctx.peer_map.quality(nb.node, landing);
        if (q <= 0.0) continue;
        candidates.push_back({nb.node, nb.edge, q});
        weights.push_back(state.peer_strength(nb.node, landing));
    }
    if (candidates.empty()) return std::nullopt;
    return candidates[weighted_choice(weights, rng)];
}

}  // namespace

CycleOutcome agent_cycle(const PheromoneState& state, NodeId start, const WalkContext& ctx,
                         Rng& rng) {
    if (ctx.mode.temporal) return temporal_cycle(state, start, ctx, rng);
    if (!ctx.peer_map.is_peered(start)) {
        throw std::invalid_argument("agent_cycle: start node is unpeered");
    }

    NodeId x = pick_entry(state, start, ctx, rng);
    double q_entry = ctx.peer_map.quality(start, x);

    std::set<Label> local;
    if (!ctx.wanted_near) local = wanted_labels(ctx.pattern, start);
    const std::set<Label>& wanted = ctx.wanted_near ? (*ctx.wanted_near)[start] : local;
    std::vector<DataStep> steps = data_steps(state, x, wanted, ctx);
    if (steps.empty()) return {std::nullopt, 2};
    std::vector<double> w;
    w.reserve(steps.size());
    for (const DataStep& s : steps) w.push_back(s.weight);
    DataStep step = steps[weighted_choice(w, rng)];

    auto ret = pick_return(state, start, step.land, step.directed, ctx, rng);
    if (!ret) return {std::nullopt, 3};

    CycleRecord rec;
    rec.pattern_start = start;
    rec.data_entry = x;
    rec.data_path = std::move(step.path);
    rec.data_nodes = {x, step.land};
    rec.bridge_nodes = std::move(step.bridge);
    rec.bridge_edges = std::move(step.bridge_edges);
    rec.pattern_return = ret->v;
    rec.pattern_path = {ret->pattern_edge};
    rec.data_exit = step.land;
    rec.quality = q_entry * ret->quality * step.quality_mult;
    rec.length = 3 + step.hops;
    return {rec, 0};
}

CycleOutcome temporal_cycle(const PheromoneState& state, NodeId start, const WalkContext& ctx,
                            Rng& rng) {
    if (!ctx.pattern.temporal() && !ctx.pattern.directed()) {
        throw ValidationError("temporal cycle on a non-temporal graph");
    }
    if (!ctx.peer_map.is_peered(start)) {
        throw std::invalid_argument("temporal_cycle: start node is unpeered");
    }
    double tau0 = ctx.params.initial_pheromone;

    NodeId x = pick_entry(state, start, ctx, rng);
    double q_entry = ctx.peer_map.quality(start, x);

    // First data edge, steered toward labels one pattern hop out.
    std::set<Label> local1;
    if (!ctx.wanted_near) local1 = wanted_labels(ctx.pattern, start);
    const std::set<Label>& wanted1 = ctx.wanted_near ? (*ctx.wanted_near)[start] : local1;
    std::vector<std::pair<Neighbor, double>> first;
    for (const Neighbor& nb : ctx.data.neighbors(x)) {
        if (nb.dir == EdgeDir::in) continue;
        double w = (tau0 + state.edge(Side::data, nb.edge)) *
                   (1.0 + gradient_bonus(state, nb.node, wanted1));
        first.emplace_back(nb, w);
    }
    if (first.empty()) return {std::nullopt, 2};
    Neighbor hop1 = weighted_choice(first, rng);
    NodeId y = hop1.node;

    // Second data edge must come strictly later.
    std::set<Label> local2;
    if (!ctx.wanted_far) {
        for (const Neighbor& nb : ctx.pattern.neighbors(start)) {
            for (const Neighbor& nb2 : ctx.pattern.neighbors(nb.node)) {
                local2.insert(ctx.pattern.label(nb2.node));
            }
        }
    }
    const std::set<Label>& wanted2 = ctx.wanted_far ? (*ctx.wanted_far)[start] : local2;
    std::vector<std::pair<Neighbor, double>> second;
    for (const Neighbor& nb : ctx.data.neighbors(y)) {
        if (nb.dir == EdgeDir::in) continue;
        if (!ordered_before(ctx.data, hop1.edge, nb.edge)) continue;
        double w = (tau0 + state.edge(Side::data, nb.edge)) *
                   (1.0 + gradient_bonus(state, nb.node, wanted2));
        second.emplace_back(nb, w);
    }
    if (second.empty()) return {std::nullopt, 2};
    Neighbor hop2 = weighted_choice(second, rng);
    NodeId z = hop2.node;

    bool dir1 = ctx.data.edge(hop1.edge).directed;
    bool dir2 = ctx.data.edge(hop2.edge).directed;

    // Return: a pattern 2-path u -f1-> w -f2-> v mirroring the data walk,
    // with the same strict edge order, landing the jump on a peer of z.
    struct Closure {
        NodeId v, w;
        EdgeId f1, f2;
        double quality;
    };
    std::vector<Closure> closures;
    std::vector<double> weights;
    for (const Neighbor& nb1 : ctx.pattern.neighbors(start)) {
        const Edge& f1 = ctx.pattern.edge(nb1.edge);
        if (!orientation_matches(f1, start, dir1)) continue;
        NodeId w = nb1.node;
        double q_mid = match_labels(ctx.pattern.label(w), ctx.data.label(y),
                                    ctx.mode.imprecise ? ctx.ontology : nullptr,
                                    ctx.params.imprecise_quality);
        if (q_mid <= 0.0) continue;
        for (const Neighbor& nb2 : ctx.pattern.neighbors(w)) {
            if (nb2.edge == nb1.edge) continue;
            const Edge& f2 = ctx.pattern.edge(nb2.edge);
            if (!orientation_matches(f2, w, dir2)) continue;
            if (!ordered_before(ctx.pattern, nb1.edge, nb2.edge)) continue;
            NodeId v = nb2.node;
            double q_exit = ctx.peer_map.quality(v, z);
            if (q_exit <= 0.0) continue;
            closures.push_back({v, w, nb1.edge, nb2.edge, q_mid * q_exit});
            weights.push_back(state.peer_strength(v, z));
        }
    }
    if (closures.empty()) return {std::nullopt, 3};
    Closure c = closures[weighted_choice(weights, rng)];

    CycleRecord rec;
    rec.pattern_start = start;
    rec.data_entry = x;
    rec.data_path = {hop1.edge, hop2.edge};
    rec.data_nodes = {x, y, z};
    rec.pattern_return = c.v;
    // Walked home v -> w -> u: traversal order, f1 is the edge at u.
    rec.pattern_path = {c.f2, c.f1};
    rec.data_exit = z;
    rec.quality = q_entry * c.quality;
    rec.length = 6;
    return {rec, 0};
}

}  // namespace assist
