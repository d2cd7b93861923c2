#include "rangenet/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rangenet/core.hpp"

namespace rangenet {

namespace {

void check_probability(double p, char const* what)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError(std::string(what) + " must lie in [0, 1]");
}

std::vector<AgentId> shuffled_agents(std::uint32_t n, RngStream& rng)
{
    std::vector<AgentId> ids(n);
    std::iota(ids.begin(), ids.end(), AgentId{0});
    rng.shuffle(std::span(ids));
    return ids;
}

std::uint32_t infected_neighbors(NetworkSnapshot const& snap, std::vector<Health> const& states,
                                 AgentId v)
{
    std::uint32_t count = 0;
    for (AgentId u : snap.neighbors(v))
        count += states[u] == Health::Infected;
    return count;
}

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

} // namespace

std::string_view process_name(DiffusionConfig const& cfg)
{
    return std::visit(overloaded{
                          [](SIConfig const&) { return std::string_view("si"); },
                          [](ComplexContagionConfig const&) { return std::string_view("complex"); },
                          [](CulturalConfig const&) { return std::string_view("cultural"); },
                          [](PotionConfig const&) { return std::string_view("potion"); },
                      },
                      cfg);
}

void validate(DiffusionConfig const& cfg, std::uint32_t n)
{
    std::visit(overloaded{
                   [n](SIConfig const& c) {
                       check_probability(c.p_infect, "p_infect");
                       if (c.n_init == 0 || c.n_init > n)
                           throw ConfigError("n_init must lie in [1, N]");
                   },
                   [n](ComplexContagionConfig const& c) {
                       check_probability(c.p_base, "p_base");
                       if (!(c.w >= 0.0))
                           throw ConfigError("social weight w must be non-negative");
                       if (c.n_init == 0 || c.n_init > n)
                           throw ConfigError("n_init must lie in [1, N]");
                   },
                   [](CulturalConfig const& c) {
                       check_probability(c.p_a, "p_a");
                       check_probability(c.p_b, "p_b");
                       check_probability(c.init_split, "init_split");
                   },
                   [](PotionConfig const& c) { check_probability(c.p_diff, "p_diff"); },
               },
               cfg);
}

//---------------------------------------------------------------------------//

std::vector<Health> si_step(NetworkSnapshot const& snap, std::vector<Health> const& states,
                            SIConfig const& cfg, RngStream& rng)
{
    std::vector<Health> next = states;
    for (AgentId v = 0; v < snap.node_count(); ++v) {
        if (states[v] == Health::Infected)
            continue;
        const auto exposed = infected_neighbors(snap, states, v);
        if (exposed == 0)
            continue;
        const auto trials = cfg.exposure == SiExposure::PerNeighbor ? exposed : 1u;
        for (std::uint32_t k = 0; k < trials; ++k) {
            if (rng.bernoulli(cfg.p_infect)) {
                next[v] = Health::Infected;
                break;
            }
        }
    }
    return next;
}

double complex_contagion_probability(ComplexContagionConfig const& cfg,
                                     std::uint32_t infected, std::uint32_t n)
{
    const double p = cfg.p_base + (static_cast<double>(infected) / n) * cfg.w;
    return std::clamp(p, 0.0, 1.0);
}

std::vector<Health> complex_contagion_step(NetworkSnapshot const& snap,
                                           std::vector<Health> const& states,
                                           ComplexContagionConfig const& cfg, RngStream& rng)
{
    const auto n = snap.node_count();
    std::vector<Health> next = states;
    for (AgentId v = 0; v < n; ++v) {
        if (states[v] == Health::Infected)
            continue;
        const auto exposed = infected_neighbors(snap, states, v);
        if (exposed == 0)
            continue;
        if (rng.bernoulli(complex_contagion_probability(cfg, exposed, n)))
            next[v] = Health::Infected;
    }
    return next;
}

std::vector<Trait> cultural_step(NetworkSnapshot const& snap, std::vector<Trait> const& traits,
                                 CulturalConfig const& cfg, RngStream& rng)
{
    std::vector<Trait> next = traits;
    for (AgentId v = 0; v < snap.node_count(); ++v) {
        auto nbrs = snap.neighbors(v);
        if (nbrs.empty())
            continue;
        const Trait seen = traits[nbrs[rng.uniform_index(nbrs.size())]];
        if (seen == traits[v])
            continue;
        if (rng.bernoulli(seen == Trait::A ? cfg.p_a : cfg.p_b))
            next[v] = seen;
    }
    return next;
}

double infected_fraction(std::vector<Health> const& states)
{
    if (states.empty())
        return 0.0;
    const auto infected = std::count(states.begin(), states.end(), Health::Infected);
    return static_cast<double>(infected) / static_cast<double>(states.size());
}

double signed_trait_frequency(std::vector<Trait> const& traits)
{
    if (traits.empty())
        return 0.0;
    const auto a = std::count(traits.begin(), traits.end(), Trait::A);
    const auto b = static_cast<std::ptrdiff_t>(traits.size()) - a;
    return static_cast<double>(a - b) / static_cast<double>(traits.size());
}

//---------------------------------------------------------------------------//

DiffusionProcess::DiffusionProcess(DiffusionConfig cfg, std::uint32_t n, RngStream rng)
    : cfg_(std::move(cfg)), n_(n), rng_(std::move(rng))
{
    validate(cfg_, n_);

    auto seed_infected = [this](std::uint32_t n_init) {
        health_.assign(n_, Health::Susceptible);
        const auto order = shuffled_agents(n_, rng_);
        for (std::uint32_t k = 0; k < n_init; ++k)
            health_[order[k]] = Health::Infected;
        if (n_init == n_)
            trajectory_.fixation_time = 0;
    };

    std::visit(overloaded{
                   [&](SIConfig const& c) { seed_infected(c.n_init); },
                   [&](ComplexContagionConfig const& c) { seed_infected(c.n_init); },
                   [&](CulturalConfig const& c) {
                       traits_.assign(n_, Trait::B);
                       const auto n_a = static_cast<std::uint32_t>(
                           std::llround(c.init_split * static_cast<double>(n_)));
                       const auto order = shuffled_agents(n_, rng_);
                       for (std::uint32_t k = 0; k < n_a; ++k)
                           traits_[order[k]] = Trait::A;
                       if (std::abs(signed_trait_frequency(traits_)) == 1.0)
                           trajectory_.fixation_time = 0;
                   },
                   [&](PotionConfig const& c) {
                       inventories_.assign(n_, Inventory(c.start_items()));
                   },
               },
               cfg_);
}

void DiffusionProcess::record(std::uint32_t timestep, double frequency, bool fixed)
{
    trajectory_.frequency.push_back(frequency);
    if (fixed && !trajectory_.fixation_time)
        trajectory_.fixation_time = timestep;
}

void DiffusionProcess::step(std::uint32_t timestep, NetworkSnapshot const& snap)
{
    if (snap.node_count() != n_)
        throw std::invalid_argument("diffusion: snapshot size does not match population");

    std::visit(overloaded{
                   [&](SIConfig const& c) {
                       health_ = si_step(snap, health_, c, rng_);
                       const double f = infected_fraction(health_);
                       record(timestep, f, f == 1.0);
                   },
                   [&](ComplexContagionConfig const& c) {
                       health_ = complex_contagion_step(snap, health_, c, rng_);
                       const double f = infected_fraction(health_);
                       record(timestep, f, f == 1.0);
                   },
                   [&](CulturalConfig const& c) {
                       traits_ = cultural_step(snap, traits_, c, rng_);
                       const double f = signed_trait_frequency(traits_);
                       record(timestep, f, std::abs(f) == 1.0);
                   },
                   [&](PotionConfig const& c) {
                       const auto report = potion_step(snap, inventories_, c, rng_);
                       if (report.crossover_created) {
                           ++trajectory_.crossover_events;
                           if (!trajectory_.crossover_time)
                               trajectory_.crossover_time = timestep;
                       }
                       const auto x = c.recipes.crossover_item();
                       const auto holders = std::count_if(
                           inventories_.begin(), inventories_.end(),
                           [x](Inventory const& inv) { return inv.contains(x); });
                       record(timestep, static_cast<double>(holders) / n_, false);
                   },
               },
               cfg_);
}

} // namespace rangenet
