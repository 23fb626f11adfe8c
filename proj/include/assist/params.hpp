#ifndef ASSIST_PARAMS_HPP
#define ASSIST_PARAMS_HPP

#include <cstdint>
#include <optional>

namespace assist {

/// Knobs of the pheromone environment and the outer loop. Field values
/// below 1e-12 are clamped to zero during evaporation (kept far under
/// termination_epsilon so the clamp can never trigger termination).
struct Params {
    double evaporation_rate = 0.1;       // per-wave attenuation, in (0,1)
    double deposit_constant = 1.0;       // scales every deposit, > 0
    double initial_pheromone = 0.1;      // placed on peered nodes at init, > 0
    double propagation_decay = 0.5;      // label/quorum falloff per hop, in (0,1)
    int propagation_radius = 1;          // label propagation reach, >= 1
    double termination_epsilon = 1e-6;   // totals delta ending the run
    std::optional<std::uint32_t> agents_per_wave;  // default: 10 x peered pattern nodes
    std::uint32_t max_waves = 10000;
    double imprecise_quality = 0.5;      // quality of a subsumption match, in (0,1)
    double extraction_threshold = 0.2;   // fraction of max node pheromone, in (0,1)
    int quorum_sweeps = 3;               // relaxation sweeps per wave, >= 1
    bool quorum_start_bias = true;       // quorum field steers agent start choice

    static constexpr double kFieldClamp = 1e-12;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

}  // namespace assist

#endif
