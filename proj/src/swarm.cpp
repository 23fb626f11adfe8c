#include "assist/swarm.hpp"

#include <cmath>

namespace assist {

SwarmEngine::SwarmEngine(const LabeledGraph& pattern, const LabeledGraph& data, Params params,
                         Mode mode, const Ontology* ontology)
    : pattern_(pattern), data_(data), params_(params), mode_(mode), ontology_(ontology) {
    params_.validate();
    mode_.validate(pattern, data);
    if (mode_.imprecise && !ontology_) {
        throw std::invalid_argument("imprecise mode requires an ontology");
    }
    if (mode_.missing) {
        params_.propagation_radius = std::max(params_.propagation_radius, mode_.missing_radius);
    }
    index_ = LabelIndex::build(data_);
    PeerMap peer_map = peer_all(pattern_, index_, mode_.imprecise ? ontology_ : nullptr,
                                params_.imprecise_quality);
    auto auto_size = static_cast<std::uint32_t>(10 * peer_map.peered_pattern_nodes.size());
    agents_per_wave_ = params_.agents_per_wave.value_or(auto_size);
    state_ = init_fields(pattern_, data_, std::move(peer_map), params_);

    wanted_near_.resize(pattern_.node_count());
    wanted_far_.resize(pattern_.node_count());
    for (NodeId u = 0; u < pattern_.node_count(); ++u) {
        for (const Neighbor& nb : pattern_.neighbors(u)) {
            wanted_near_[u].insert(pattern_.label(nb.node));
            for (const Neighbor& nb2 : pattern_.neighbors(nb.node)) {
                wanted_far_[u].insert(pattern_.label(nb2.node));
            }
        }
    }
}

WaveStats SwarmEngine::run_wave(std::uint64_t master_seed) {
    const PeerMap& peer_map = *state_.peers;
    FieldTotals before = field_totals(state_);
    WaveStats stats;
    stats.launched = peer_map.peered_pattern_nodes.empty() ? 0 : agents_per_wave_;

    WalkContext ctx{pattern_, data_,         peer_map,     params_,
                    mode_,    ontology_,     &wanted_near_, &wanted_far_};

    // Start weights depend only on the pre-wave fields; compute once.
    std::vector<double> start_weights;
    start_weights.reserve(peer_map.peered_pattern_nodes.size());
    for (NodeId u : peer_map.peered_pattern_nodes) {
        double w = params_.initial_pheromone + state_.node(Side::pattern, u);
        if (params_.quorum_start_bias) w += state_.quorum(Side::pattern, u);
        start_weights.push_back(w);
    }

    // Agents read the pre-wave fields; records fold at the barrier below.
    // Each agent re-derives its stream from (seed, index) alone, so a wave
    // over settled fields replays the previous wave exactly.
    std::vector<CycleRecord> records;
    for (std::uint32_t i = 0; i < stats.launched; ++i) {
        Rng rng = agent_rng(master_seed, i);
        NodeId start = peer_map.peered_pattern_nodes[weighted_choice(start_weights, rng)];
        CycleOutcome outcome = agent_cycle(state_, start, ctx, rng);
        if (outcome.completed()) {
            records.push_back(std::move(*outcome.record));
            ++stats.completed;
        } else {
            ++stats.failed;
        }
    }

    for (const CycleRecord& rec : records) {
        deposit(state_, rec, params_);
        ++stats.deposits_applied;
        if (log_cycles_) cycle_log_.push_back(rec);
    }
    evaporate(state_, params_);
    propagate_quorum(state_, pattern_, data_, params_);
    ++state_.wave_counter;

    FieldTotals after = field_totals(state_);
    stats.wave = state_.wave_counter;
    stats.pattern_delta = after.pattern_sum - before.pattern_sum;
    stats.data_delta = after.data_sum - before.data_sum;
    return stats;
}

ConvergenceReport SwarmEngine::run_until_converged(std::uint64_t seed) {
    return run_until_converged(seed, {});
}

ConvergenceReport SwarmEngine::run_until_converged(
    std::uint64_t seed,
    const std::function<void(const WaveTotals&, const PheromoneState&)>& observe) {
    ConvergenceReport report;
    report.seed = seed;
    report.terminated_by = StopReason::max_waves;
    for (std::uint32_t w = 0; w < params_.max_waves; ++w) {
        WaveStats stats = run_wave(seed);
        FieldTotals totals = field_totals(state_);
        double dp = std::abs(stats.pattern_delta);
        double dd = std::abs(stats.data_delta);
        WaveTotals row{stats.wave, totals.pattern_sum, totals.data_sum, std::max(dp, dd),
                       stats.completed, stats.failed};
        report.history.push_back(row);
        if (observe) observe(row, state_);
        report.waves = stats.wave;
        if (dp < params_.termination_epsilon && dd < params_.termination_epsilon) {
            report.terminated_by = StopReason::epsilon;
            break;
        }
    }
    report.final_totals = field_totals(state_);
    return report;
}

std::pair<PheromoneState, ConvergenceReport> run_until_converged(
    const LabeledGraph& pattern, const LabeledGraph& data, const Params& params, const Mode& mode,
    std::uint64_t seed, const Ontology* ontology) {
    SwarmEngine engine(pattern, data, params, mode, ontology);
    ConvergenceReport report = engine.run_until_converged(seed);
    return {std::move(engine.state()), std::move(report)};
}

}  // namespace assist
