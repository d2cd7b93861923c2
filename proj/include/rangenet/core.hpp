#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rangenet/rng.hpp"

namespace rangenet {

using AgentId = std::uint32_t;

/// Invalid model or experiment parameters.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ModelKind { Range, Null };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

struct SimConfig {
    ModelKind model = ModelKind::Range;
    std::uint32_t n = 20;      ///< population size
    std::uint32_t g = 10;      ///< grid side length
    double r = 2.0;            ///< communication range (range model)
    double p_connect = 0.2;    ///< link probability (null model)
    std::uint32_t steps = 100;
    std::uint32_t rounds = 100;
    std::uint64_t seed = 1;
    /// Range model: compare the distance rounded to the nearest integer
    /// against r instead of the exact distance. Off by default.
    bool round_distance = false;

    /// Throws ConfigError on the first violated constraint.
    void validate() const;
};

struct Coordinate {
    std::int32_t x = 0;
    std::int32_t y = 0;

    auto operator<=>(Coordinate const&) const = default;
};

double euclidean_distance(Coordinate a, Coordinate b) noexcept;

/// Connect-while-in-range predicate.
struct RangeRule {
    double r = 0.0;
    bool round_distance = false;

    bool in_range(Coordinate a, Coordinate b) const noexcept;
};

/*!
 * Undirected simple link set over agents [0, n).
 *
 * Stored as a dense symmetric membership matrix; populations here are small
 * (hundreds at most) and every update is an O(1) probe.
 */
class LinkSet {
public:
    LinkSet() = default;
    explicit LinkSet(std::uint32_t n);

    std::uint32_t node_count() const noexcept { return n_; }
    std::size_t size() const noexcept { return count_; }

    bool contains(AgentId i, AgentId j) const;
    /// Returns true if the link was added. Self-links are rejected.
    bool insert(AgentId i, AgentId j);
    /// Returns true if the link was present.
    bool erase(AgentId i, AgentId j);
    void clear();

    /// All links as (i, j) with i < j, in lexicographic order.
    std::vector<std::pair<AgentId, AgentId>> pairs() const;

    bool operator==(LinkSet const&) const = default;

private:
    std::size_t index(AgentId i, AgentId j) const;

    std::uint32_t n_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Agent positions, occupancy and the current link set.
class WorldState {
public:
    WorldState() = default;
    /// Agents without positions (null model).
    explicit WorldState(std::uint32_t n);
    /// Places agent i at positions[i]. Throws ConfigError on out-of-grid or
    /// shared positions.
    WorldState(std::uint32_t g, std::vector<Coordinate> positions);

    std::uint32_t agent_count() const noexcept { return n_; }
    std::uint32_t grid_size() const noexcept { return g_; }
    bool has_positions() const noexcept { return !positions_.empty(); }

    std::vector<Coordinate> const& positions() const noexcept { return positions_; }
    Coordinate position(AgentId agent) const { return positions_.at(agent); }

    bool in_bounds(Coordinate c) const noexcept;
    std::optional<AgentId> occupant(Coordinate c) const;

    /// Moves an agent to an in-bounds tile that is empty or its own.
    void move_agent(AgentId agent, Coordinate to);

    LinkSet& links() noexcept { return links_; }
    LinkSet const& links() const noexcept { return links_; }

    bool operator==(WorldState const&) const = default;

private:
    std::size_t tile(Coordinate c) const noexcept
    {
        return static_cast<std::size_t>(c.y) * g_ + static_cast<std::size_t>(c.x);
    }

    static constexpr std::int32_t kEmpty = -1;

    std::uint32_t n_ = 0;
    std::uint32_t g_ = 0;
    std::vector<Coordinate> positions_;
    std::vector<std::int32_t> occupancy_;
    LinkSet links_;
};

/// Uniform placement without replacement on the g*g grid (range model), or
/// position-free agents (null model). Links start empty.
WorldState init_population(SimConfig const& config, RngStream& rng);

/// The agent's own tile plus every in-bounds, unoccupied Moore neighbour, in
/// x-major then y order. Never empty.
std::vector<Coordinate> candidate_moves(WorldState const& world, AgentId agent);

} // namespace rangenet
