#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rangenet/core.hpp"

namespace rangenet {

using Edge = std::pair<AgentId, AgentId>;

/// Immutable simple undirected graph for one timestep.
class NetworkSnapshot {
public:
    NetworkSnapshot() = default;
    /// Throws std::invalid_argument on self-loops, duplicates or ids >= n.
    NetworkSnapshot(std::uint32_t n, std::vector<Edge> edges);
    explicit NetworkSnapshot(LinkSet const& links);

    static NetworkSnapshot complete(std::uint32_t n);

    std::uint32_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Edges as (i, j), i < j, sorted.
    std::vector<Edge> const& edges() const noexcept { return edges_; }
    /// Sorted neighbour list.
    std::span<AgentId const> neighbors(AgentId v) const { return adjacency_.at(v); }
    std::size_t degree(AgentId v) const { return adjacency_.at(v).size(); }
    bool has_edge(AgentId a, AgentId b) const;

    bool operator==(NetworkSnapshot const& other) const
    {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    void build_adjacency();

    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<AgentId>> adjacency_;
};

} // namespace rangenet
