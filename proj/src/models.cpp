#include "rangenet/models.hpp"

#include <numeric>

namespace rangenet {

void update_agent_links(WorldState& world, AgentId agent, RangeRule const& rule)
{
    const Coordinate here = world.position(agent);
    auto& links = world.links();
    for (AgentId other = 0; other < world.agent_count(); ++other) {
        if (other == agent)
            continue;
        if (rule.in_range(here, world.position(other)))
            links.insert(agent, other);
        else
            links.erase(agent, other);
    }
}

NetworkSnapshot step_range(WorldState& world, RangeRule const& rule, RngStream& rng)
{
    std::vector<AgentId> order(world.agent_count());
    std::iota(order.begin(), order.end(), AgentId{0});
    rng.shuffle(std::span(order));

    for (AgentId agent : order) {
        const auto moves = candidate_moves(world, agent);
        world.move_agent(agent, moves[rng.uniform_index(moves.size())]);
        update_agent_links(world, agent, rule);
    }
    return NetworkSnapshot(world.links());
}

std::vector<NetworkSnapshot> run_range(SimConfig const& config, RngStream& rng,
                                       std::vector<StepObserver> const& observers)
{
    if (config.model != ModelKind::Range)
        throw ConfigError("run_range requires a range-model config");
    WorldState world = init_population(config, rng);
    const RangeRule rule{config.r, config.round_distance};

    std::vector<NetworkSnapshot> out;
    out.reserve(config.steps);
    for (std::uint32_t t = 1; t <= config.steps; ++t) {
        out.push_back(step_range(world, rule, rng));
        for (auto const& observe : observers)
            observe(t, out.back());
    }
    return out;
}

NetworkSnapshot step_null(NullState& state, double p_connect, RngStream& rng)
{
    if (!(p_connect >= 0.0 && p_connect <= 1.0))
        throw ConfigError("p_connect must lie in [0, 1]");
    const double p_disconnect = 1.0 - p_connect;
    for (AgentId i = 0; i < state.n; ++i) {
        for (AgentId j = i + 1; j < state.n; ++j) {
            const double u = rng.uniform01();
            if (state.links.contains(i, j)) {
                if (u < p_disconnect)
                    state.links.erase(i, j);
            } else if (u < p_connect) {
                state.links.insert(i, j);
            }
        }
    }
    return NetworkSnapshot(state.links);
}

std::vector<NetworkSnapshot> run_null(SimConfig const& config, RngStream& rng,
                                      std::vector<StepObserver> const& observers)
{
    if (config.model != ModelKind::Null)
        throw ConfigError("run_null requires a null-model config");
    config.validate();
    NullState state(config.n);

    std::vector<NetworkSnapshot> out;
    out.reserve(config.steps);
    for (std::uint32_t t = 1; t <= config.steps; ++t) {
        out.push_back(step_null(state, config.p_connect, rng));
        for (auto const& observe : observers)
            observe(t, out.back());
    }
    return out;
}

std::vector<NetworkSnapshot> run_model(SimConfig const& config, RngStream& rng,
                                       std::vector<StepObserver> const& observers)
{
    return config.model == ModelKind::Range ? run_range(config, rng, observers)
                                            : run_null(config, rng, observers);
}

} // namespace rangenet
