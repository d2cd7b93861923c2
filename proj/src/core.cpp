#include "rangenet/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rangenet {

std::string_view to_string(ModelKind kind)
{
    return kind == ModelKind::Range ? "range" : "null";
}

ModelKind parse_model_kind(std::string_view text)
{
    if (text == "range")
        return ModelKind::Range;
    if (text == "null")
        return ModelKind::Null;
    throw ConfigError("unknown model '" + std::string(text) + "' (expected range or null)");
}

void SimConfig::validate() const
{
    if (n == 0)
        throw ConfigError("population size N must be positive");
    if (rounds == 0)
        throw ConfigError("rounds must be positive");
    if (model == ModelKind::Range) {
        if (g == 0)
            throw ConfigError("grid size g must be positive");
        if (static_cast<std::uint64_t>(n) > static_cast<std::uint64_t>(g) * g)
            throw ConfigError("N=" + std::to_string(n) + " exceeds the " + std::to_string(g)
                              + "x" + std::to_string(g) + " grid capacity");
        if (!(r >= 0.0))
            throw ConfigError("range r must be non-negative");
    } else {
        if (!(p_connect >= 0.0 && p_connect <= 1.0))
            throw ConfigError("p_connect must lie in [0, 1]");
    }
}

double euclidean_distance(Coordinate a, Coordinate b) noexcept
{
    const double dx = static_cast<double>(b.x) - a.x;
    const double dy = static_cast<double>(b.y) - a.y;
    return std::sqrt(dx * dx + dy * dy);
}

bool RangeRule::in_range(Coordinate a, Coordinate b) const noexcept
{
    const double d = euclidean_distance(a, b);
    return (round_distance ? std::round(d) : d) <= r;
}

//---------------------------------------------------------------------------//

LinkSet::LinkSet(std::uint32_t n)
    : n_(n), bits_(static_cast<std::size_t>(n) * n, 0)
{
}

std::size_t LinkSet::index(AgentId i, AgentId j) const
{
    if (i >= n_ || j >= n_)
        throw std::out_of_range("agent id out of range in LinkSet");
    return static_cast<std::size_t>(i) * n_ + j;
}

bool LinkSet::contains(AgentId i, AgentId j) const
{
    return bits_[index(i, j)] != 0;
}

bool LinkSet::insert(AgentId i, AgentId j)
{
    if (i == j)
        return false;
    auto& cell = bits_[index(i, j)];
    if (cell)
        return false;
    cell = 1;
    bits_[index(j, i)] = 1;
    ++count_;
    return true;
}

bool LinkSet::erase(AgentId i, AgentId j)
{
    if (i == j)
        return false;
    auto& cell = bits_[index(i, j)];
    if (!cell)
        return false;
    cell = 0;
    bits_[index(j, i)] = 0;
    --count_;
    return true;
}

void LinkSet::clear()
{
    std::fill(bits_.begin(), bits_.end(), 0);
    count_ = 0;
}

std::vector<std::pair<AgentId, AgentId>> LinkSet::pairs() const
{
    std::vector<std::pair<AgentId, AgentId>> out;
    out.reserve(count_);
    for (AgentId i = 0; i < n_; ++i) {
        const auto* row = bits_.data() + static_cast<std::size_t>(i) * n_;
        for (AgentId j = i + 1; j < n_; ++j) {
            if (row[j])
                out.emplace_back(i, j);
        }
    }
    return out;
}

//---------------------------------------------------------------------------//

WorldState::WorldState(std::uint32_t n) : n_(n), links_(n) {}

WorldState::WorldState(std::uint32_t g, std::vector<Coordinate> positions)
    : n_(static_cast<std::uint32_t>(positions.size())),
      g_(g),
      positions_(std::move(positions)),
      occupancy_(static_cast<std::size_t>(g) * g, kEmpty),
      links_(n_)
{
    for (AgentId i = 0; i < n_; ++i) {
        const Coordinate c = positions_[i];
        if (!in_bounds(c))
            throw ConfigError("agent " + std::to_string(i) + " placed outside the grid");
        auto& cell = occupancy_[tile(c)];
        if (cell != kEmpty)
            throw ConfigError("agents " + std::to_string(cell) + " and " + std::to_string(i)
                              + " share a tile");
        cell = static_cast<std::int32_t>(i);
    }
}

bool WorldState::in_bounds(Coordinate c) const noexcept
{
    const auto g = static_cast<std::int32_t>(g_);
    return c.x >= 0 && c.y >= 0 && c.x < g && c.y < g;
}

std::optional<AgentId> WorldState::occupant(Coordinate c) const
{
    if (!in_bounds(c))
        return std::nullopt;
    const auto cell = occupancy_[tile(c)];
    if (cell == kEmpty)
        return std::nullopt;
    return static_cast<AgentId>(cell);
}

void WorldState::move_agent(AgentId agent, Coordinate to)
{
    if (!in_bounds(to))
        throw std::out_of_range("move target outside the grid");
    auto& target = occupancy_[tile(to)];
    if (target != kEmpty && target != static_cast<std::int32_t>(agent))
        throw std::logic_error("move target occupied by another agent");
    occupancy_[tile(positions_.at(agent))] = kEmpty;
    target = static_cast<std::int32_t>(agent);
    positions_[agent] = to;
}

//---------------------------------------------------------------------------//

WorldState init_population(SimConfig const& config, RngStream& rng)
{
    config.validate();
    if (config.model == ModelKind::Null)
        return WorldState(config.n);

    const std::uint32_t g = config.g;
    std::vector<std::uint32_t> tiles(static_cast<std::size_t>(g) * g);
    std::iota(tiles.begin(), tiles.end(), 0u);
    rng.shuffle(std::span(tiles));

    std::vector<Coordinate> positions;
    positions.reserve(config.n);
    for (std::uint32_t k = 0; k < config.n; ++k) {
        const auto t = tiles[k];
        positions.push_back({static_cast<std::int32_t>(t % g), static_cast<std::int32_t>(t / g)});
    }
    return WorldState(g, std::move(positions));
}

std::vector<Coordinate> candidate_moves(WorldState const& world, AgentId agent)
{
    const Coordinate here = world.position(agent);
    std::vector<Coordinate> out;
    out.reserve(9);
    for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
            const Coordinate c{here.x + dx, here.y + dy};
            if (!world.in_bounds(c))
                continue;
            const auto who = world.occupant(c);
            if (who && *who != agent)
                continue;
            out.push_back(c);
        }
    }
    return out;
}

} // namespace rangenet
