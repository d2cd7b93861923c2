#pragma once

#include <functional>
#include <vector>

#include "rangenet/core.hpp"
#include "rangenet/snapshot.hpp"

namespace rangenet {

/// Called once per timestep (1-based) after all link updates.
using StepObserver = std::function<void(std::uint32_t timestep, NetworkSnapshot const&)>;

//---------------------------------------------------------------------------//
// Range model
//---------------------------------------------------------------------------//

/// Re-evaluate every link of one agent against the range rule: link to all
/// agents in range, drop the rest.
void update_agent_links(WorldState& world, AgentId agent, RangeRule const& rule);

/*!
 * Advance the spatial model by one timestep.
 *
 * A fresh uniform permutation of agents is drawn; each agent in turn moves to
 * a uniform choice among its candidate tiles and then re-evaluates its links.
 * On return the link set equals {(i, j) : distance(i, j) <= r}.
 */
NetworkSnapshot step_range(WorldState& world, RangeRule const& rule, RngStream& rng);
inline NetworkSnapshot step_range(WorldState& world, double r, RngStream& rng)
{
    return step_range(world, RangeRule{r}, rng);
}

/// Initialise and run `config.steps` timesteps of the range model.
std::vector<NetworkSnapshot> run_range(SimConfig const& config, RngStream& rng,
                                       std::vector<StepObserver> const& observers = {});

//---------------------------------------------------------------------------//
// Null model
//---------------------------------------------------------------------------//

struct NullState {
    std::uint32_t n = 0;
    LinkSet links;

    explicit NullState(std::uint32_t agents) : n(agents), links(agents) {}
};

/// Visit every unordered pair once (i < j, lexicographic): unlinked pairs
/// link with probability p_connect, linked pairs unlink with 1 - p_connect.
NetworkSnapshot step_null(NullState& state, double p_connect, RngStream& rng);

std::vector<NetworkSnapshot> run_null(SimConfig const& config, RngStream& rng,
                                      std::vector<StepObserver> const& observers = {});

/// Dispatch on config.model.
std::vector<NetworkSnapshot> run_model(SimConfig const& config, RngStream& rng,
                                       std::vector<StepObserver> const& observers = {});

} // namespace rangenet
