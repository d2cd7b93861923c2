#include "rangenet/snapshot.hpp"

#include <algorithm>
#include <stdexcept>

namespace rangenet {

NetworkSnapshot::NetworkSnapshot(std::uint32_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges))
{
    for (auto& [a, b] : edges_) {
        if (a >= n_ || b >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b)
            throw std::invalid_argument("self-loop in snapshot");
        if (a > b)
            std::swap(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("duplicate edge in snapshot");
    build_adjacency();
}

NetworkSnapshot::NetworkSnapshot(LinkSet const& links)
    : n_(links.node_count()), edges_(links.pairs())
{
    build_adjacency();
}

NetworkSnapshot NetworkSnapshot::complete(std::uint32_t n)
{
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n ? n - 1 : 0) / 2);
    for (AgentId i = 0; i < n; ++i)
        for (AgentId j = i + 1; j < n; ++j)
            edges.emplace_back(i, j);
    return NetworkSnapshot(n, std::move(edges));
}

void NetworkSnapshot::build_adjacency()
{
    adjacency_.assign(n_, {});
    for (auto [a, b] : edges_) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto& row : adjacency_)
        std::sort(row.begin(), row.end());
}

bool NetworkSnapshot::has_edge(AgentId a, AgentId b) const
{
    auto const& row = adjacency_.at(a);
    return std::binary_search(row.begin(), row.end(), b);
}

} // namespace rangenet
