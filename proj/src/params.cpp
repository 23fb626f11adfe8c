#include "assist/params.hpp"

#include <stdexcept>
#include <string>

namespace assist {

namespace {

void in_open_unit(double v, const char* field) {
    if (!(v > 0.0 && v < 1.0)) {
        throw std::invalid_argument(std::string(field) + " must lie in (0,1), got " +
                                    std::to_string(v));
    }
}

void positive(double v, const char* field) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(field) + " must be positive, got " +
                                    std::to_string(v));
    }
}

}  // namespace

void Params::validate() const {
    in_open_unit(evaporation_rate, "evaporation_rate");
    positive(deposit_constant, "deposit_constant");
    positive(initial_pheromone, "initial_pheromone");
    in_open_unit(propagation_decay, "propagation_decay");
    if (propagation_radius < 1) {
        throw std::invalid_argument("propagation_radius must be >= 1");
    }
    positive(termination_epsilon, "termination_epsilon");
    if (termination_epsilon >= initial_pheromone) {
        throw std::invalid_argument("termination_epsilon must be below initial_pheromone");
    }
    if (agents_per_wave && *agents_per_wave == 0) {
        throw std::invalid_argument("agents_per_wave must be positive when set");
    }
    if (max_waves == 0) {
        throw std::invalid_argument("max_waves must be positive");
    }
    in_open_unit(imprecise_quality, "imprecise_quality");
    in_open_unit(extraction_threshold, "extraction_threshold");
    if (quorum_sweeps < 1) {
        throw std::invalid_argument("quorum_sweeps must be >= 1");
    }
}

}  // namespace assist
