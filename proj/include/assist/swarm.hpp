#ifndef ASSIST_SWARM_HPP
#define ASSIST_SWARM_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "assist/extensions.hpp"
#include "assist/graph.hpp"
#include "assist/params.hpp"
#include "assist/peering.hpp"
#include "assist/pheromone.hpp"

namespace assist {

using Rng = std::mt19937_64;

/// Uniform double in [0,1) from the top 53 bits; identical on every
/// platform, unlike the std distributions.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fresh stream for one agent. Streams depend on the agent index but not
/// on the wave, so a wave over unchanged fields replays exactly; that is
/// what lets the totals settle to a fixed point and hit the epsilon test.
Rng agent_rng(std::uint64_t master_seed, std::uint32_t agent_index);

/// Draw index i with probability weights[i] / sum(weights). All-zero
/// weights fall back to a uniform draw; an empty list throws.
std::size_t weighted_choice(const std::vector<double>& weights, Rng& rng);

template <typename T>
const T& weighted_choice(const std::vector<std::pair<T, double>>& options, Rng& rng) {
    std::vector<double> w;
    w.reserve(options.size());
    for (const auto& [item, weight] : options) w.push_back(weight);
    return options[weighted_choice(w, rng)].first;
}

/// One agent attempt. On failure, `record` is empty and `failed_at_arrow`
/// names the first arrow of the loop that had no candidate.
struct CycleOutcome {
    std::optional<CycleRecord> record;
    int failed_at_arrow = 0;
    bool completed() const { return record.has_value(); }
};

struct WalkContext {
    const LabeledGraph& pattern;
    const LabeledGraph& data;
    const PeerMap& peer_map;
    const Params& params;
    const Mode& mode;
    const Ontology* ontology = nullptr;
    // Optional per-pattern-node caches of the labels one and two hops out;
    // computed on the fly when absent.
    const std::vector<std::set<Label>>* wanted_near = nullptr;
    const std::vector<std::set<Label>>* wanted_far = nullptr;
};

/// The basic loop: jump to a weighted peer of `start`, walk one data edge
/// (pheromone times a label-gradient bonus toward the labels wanted by
/// the pattern neighborhood), jump back to a pattern neighbor of `start`
/// peered with the landing node, and close over the pattern edge. Missing
/// mode adds multi-hop bridge candidates to the data walk.
CycleOutcome agent_cycle(const PheromoneState& state, NodeId start, const WalkContext& ctx,
                         Rng& rng);

/// Temporal variant: two data edges in strictly increasing order, then a
/// label-matching pattern 2-path with the same order relation, home to
/// `start`. Length is 6.
CycleOutcome temporal_cycle(const PheromoneState& state, NodeId start, const WalkContext& ctx,
                            Rng& rng);

struct WaveStats {
    std::uint64_t wave = 0;
    std::uint32_t launched = 0;
    std::uint32_t completed = 0;
    std::uint32_t failed = 0;
    std::uint32_t deposits_applied = 0;
    double pattern_delta = 0.0;
    double data_delta = 0.0;
};

struct WaveTotals {
    std::uint64_t wave = 0;
    double pattern_sum = 0.0;
    double data_sum = 0.0;
    double delta = 0.0;  // max of the two per-graph changes
    std::uint32_t completed = 0;
    std::uint32_t failed = 0;
};

enum class StopReason { epsilon, max_waves };

struct ConvergenceReport {
    std::uint64_t waves = 0;
    StopReason terminated_by = StopReason::max_waves;
    FieldTotals final_totals;
    std::vector<WaveTotals> history;
    std::uint64_t seed = 0;
};

/// Owns the peer map, the pheromone state and the wave loop for one
/// pattern/data pairing. Graphs and ontology must outlive the engine.
class SwarmEngine {
public:
    SwarmEngine(const LabeledGraph& pattern, const LabeledGraph& data, Params params,
                Mode mode = {}, const Ontology* ontology = nullptr);

    /// Launch one synchronized wave: agents walk a frozen snapshot, their
    /// deposits fold in agent order, then evaporation and a fresh quorum
    /// pass. Returns the per-wave stats.
    WaveStats run_wave(std::uint64_t master_seed);

    /// Waves until both graphs' totals move less than termination_epsilon
    /// between consecutive waves, or max_waves.
    ConvergenceReport run_until_converged(std::uint64_t seed);
    ConvergenceReport run_until_converged(
        std::uint64_t seed, const std::function<void(const WaveTotals&, const PheromoneState&)>& observe);

    const PheromoneState& state() const { return state_; }
    PheromoneState& state() { return state_; }
    const PeerMap& peer_map() const { return *state_.peers; }
    const Params& params() const { return params_; }
    const Mode& mode() const { return mode_; }
    std::uint32_t agents_per_wave() const { return agents_per_wave_; }

    /// When enabled, every completed cycle is retained for replay checks.
    void set_cycle_log(bool on) { log_cycles_ = on; }
    const std::vector<CycleRecord>& cycle_log() const { return cycle_log_; }

private:
    const LabeledGraph& pattern_;
    const LabeledGraph& data_;
    Params params_;
    Mode mode_;
    const Ontology* ontology_;
    LabelIndex index_;
    PheromoneState state_;
    std::vector<std::set<Label>> wanted_near_;
    std::vector<std::set<Label>> wanted_far_;
    std::uint32_t agents_per_wave_;
    bool log_cycles_ = false;
    std::vector<CycleRecord> cycle_log_;
};

/// Convenience wrapper: build an engine, run to convergence, hand back the
/// final fields and the report.
std::pair<PheromoneState, ConvergenceReport> run_until_converged(
    const LabeledGraph& pattern, const LabeledGraph& data, const Params& params, const Mode& mode,
    std::uint64_t seed, const Ontology* ontology = nullptr);

}  // namespace assist

#endif
