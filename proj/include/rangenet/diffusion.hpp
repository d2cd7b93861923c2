#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "rangenet/potion.hpp"
#include "rangenet/rng.hpp"
#include "rangenet/snapshot.hpp"

namespace rangenet {

enum class Health : std::uint8_t { Susceptible, Infected };
enum class Trait : std::uint8_t { A, B };

/// How an S-agent is exposed in simple contagion.
enum class SiExposure {
    PerNeighbor,  ///< one trial per infected neighbour
    PerAgent,     ///< one trial if any neighbour is infected
};

struct SIConfig {
    std::uint32_t n_init = 1;
    double p_infect = 0.1;
    SiExposure exposure = SiExposure::PerNeighbor;
};

struct ComplexContagionConfig {
    double p_base = 0.01;
    double w = 1.0;
    std::uint32_t n_init = 1;
};

struct CulturalConfig {
    double p_a = 0.1;
    double p_b = 0.2;
    double init_split = 0.5;  ///< initial fraction holding trait A
};

using DiffusionConfig =
    std::variant<SIConfig, ComplexContagionConfig, CulturalConfig, PotionConfig>;

std::string_view process_name(DiffusionConfig const& cfg);

/// Throws ConfigError for out-of-range probabilities or n_init > n.
void validate(DiffusionConfig const& cfg, std::uint32_t n);

struct DiffusionTrajectory {
    /// One value per timestep: infected fraction (SI, complex contagion),
    /// (n_A - n_B) / N (cultural), or fraction holding the crossover item
    /// (potion).
    std::vector<double> frequency;
    std::optional<std::uint32_t> fixation_time;
    std::optional<std::uint32_t> crossover_time;
    /// Potion task only: timesteps in which a crossover item was created.
    std::uint32_t crossover_events = 0;
};

//---------------------------------------------------------------------------//
// Per-step updates. All read pre-step states only and return the next states.
//---------------------------------------------------------------------------//

std::vector<Health> si_step(NetworkSnapshot const& snap, std::vector<Health> const& states,
                            SIConfig const& cfg, RngStream& rng);

/// Infection probability for an S-agent with `infected_neighbors` infected
/// neighbours in a population of n: clamp(p_base + (I / n) * w, 0, 1).
double complex_contagion_probability(ComplexContagionConfig const& cfg,
                                     std::uint32_t infected_neighbors, std::uint32_t n);

/// S-agents with at least one infected neighbour make one trial at
/// complex_contagion_probability.
std::vector<Health> complex_contagion_step(NetworkSnapshot const& snap,
                                           std::vector<Health> const& states,
                                           ComplexContagionConfig const& cfg, RngStream& rng);

/// Each agent with a neighbour copies one uniformly chosen neighbour's
/// differing trait with that trait's transmission probability.
std::vector<Trait> cultural_step(NetworkSnapshot const& snap, std::vector<Trait> const& traits,
                                 CulturalConfig const& cfg, RngStream& rng);

double infected_fraction(std::vector<Health> const& states);
/// (n_A - n_B) / N.
double signed_trait_frequency(std::vector<Trait> const& traits);

/*!
 * Step observer running one diffusion process on top of a network model.
 *
 * Initial states are drawn from the stream at construction; step() is called
 * with each timestep's snapshot after link updating.
 */
class DiffusionProcess {
public:
    DiffusionProcess(DiffusionConfig cfg, std::uint32_t n, RngStream rng);

    void step(std::uint32_t timestep, NetworkSnapshot const& snap);

    DiffusionTrajectory const& trajectory() const noexcept { return trajectory_; }
    DiffusionConfig const& config() const noexcept { return cfg_; }

    std::vector<Health> const& health() const noexcept { return health_; }
    std::vector<Trait> const& traits() const noexcept { return traits_; }
    std::vector<Inventory> const& inventories() const noexcept { return inventories_; }

private:
    void record(std::uint32_t timestep, double frequency, bool fixed);

    DiffusionConfig cfg_;
    std::uint32_t n_;
    RngStream rng_;
    std::vector<Health> health_;
    std::vector<Trait> traits_;
    std::vector<Inventory> inventories_;
    DiffusionTrajectory trajectory_;
};

} // namespace rangenet
