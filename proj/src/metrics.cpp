#include "rangenet/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace rangenet {

namespace {

// Number of links among the neighbours of every node.
std::vector<std::uint64_t> neighbour_links(NetworkSnapshot const& snap)
{
    const auto n = snap.node_count();
    std::vector<std::uint64_t> out(n, 0);
    std::vector<std::uint8_t> mark(n, 0);
    for (AgentId v = 0; v < n; ++v) {
        auto nbrs = snap.neighbors(v);
        for (AgentId u : nbrs)
            mark[u] = 1;
        std::uint64_t links = 0;
        for (AgentId u : nbrs) {
            for (AgentId w : snap.neighbors(u)) {
                if (w > u && mark[w])
                    ++links;
            }
        }
        for (AgentId u : nbrs)
            mark[u] = 0;
        out[v] = links;
    }
    return out;
}

} // namespace

double average_degree(NetworkSnapshot const& snap)
{
    if (snap.node_count() == 0)
        return 0.0;
    return 2.0 * static_cast<double>(snap.edge_count()) / snap.node_count();
}

double average_clustering(NetworkSnapshot const& snap)
{
    const auto n = snap.node_count();
    if (n == 0)
        return 0.0;
    const auto links = neighbour_links(snap);
    double total = 0.0;
    for (AgentId v = 0; v < n; ++v) {
        const auto k = static_cast<double>(snap.degree(v));
        if (k >= 2.0)
            total += static_cast<double>(links[v]) / (k * (k - 1.0) / 2.0);
    }
    return total / n;
}

double global_transitivity(NetworkSnapshot const& snap)
{
    const auto links = neighbour_links(snap);
    std::uint64_t closed = 0;
    std::uint64_t triples = 0;
    for (AgentId v = 0; v < snap.node_count(); ++v) {
        const std::uint64_t k = snap.degree(v);
        closed += links[v];
        triples += k * (k ? k - 1 : 0) / 2;
    }
    return triples ? static_cast<double>(closed) / static_cast<double>(triples) : 0.0;
}

double average_shortest_path_length(NetworkSnapshot const& snap)
{
    const auto n = snap.node_count();
    std::vector<std::uint32_t> dist(n);
    std::vector<AgentId> queue(n);
    constexpr auto kUnseen = UINT32_MAX;

    std::uint64_t total = 0;
    std::uint64_t pairs = 0;
    for (AgentId source = 0; source < n; ++source) {
        if (snap.degree(source) == 0)
            continue;
        std::fill(dist.begin(), dist.end(), kUnseen);
        dist[source] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = source;
        while (head < tail) {
            const AgentId v = queue[head++];
            for (AgentId u : snap.neighbors(v)) {
                if (dist[u] == kUnseen) {
                    dist[u] = dist[v] + 1;
                    queue[tail++] = u;
                    // Each unordered pair is counted from its lower endpoint.
                    if (u > source) {
                        total += dist[u];
                        ++pairs;
                    }
                }
            }
        }
    }
    return pairs ? static_cast<double>(total) / static_cast<double>(pairs) : 0.0;
}

ComponentSummary components(NetworkSnapshot const& snap)
{
    const auto n = snap.node_count();
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<AgentId> stack;
    ComponentSummary out;
    for (AgentId root = 0; root < n; ++root) {
        if (seen[root])
            continue;
        ++out.count;
        std::uint32_t size = 0;
        seen[root] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            const AgentId v = stack.back();
            stack.pop_back();
            ++size;
            for (AgentId u : snap.neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        out.largest = std::max(out.largest, size);
    }
    return out;
}

NetworkSnapshot sample_gnm(std::uint32_t n, std::size_t m, RngStream& rng)
{
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n ? n - 1 : 0) / 2;
    if (m > total)
        throw std::invalid_argument("sample_gnm: more edges than node pairs");

    // Partial Fisher-Yates over the pair indices.
    std::vector<std::uint32_t> slots(total);
    std::iota(slots.begin(), slots.end(), 0u);
    for (std::size_t k = 0; k < m; ++k) {
        const auto pick = k + rng.uniform_index(total - k);
        std::swap(slots[k], slots[pick]);
    }

    // Row-major decoding of the upper triangle.
    std::vector<std::uint32_t> row_start(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        row_start[i + 1] = row_start[i] + (n - 1 - i);

    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto idx = slots[k];
        const auto it = std::upper_bound(row_start.begin(), row_start.end(), idx);
        const auto i = static_cast<AgentId>(std::distance(row_start.begin(), it) - 1);
        const auto j = static_cast<AgentId>(i + 1 + (idx - row_start[i]));
        edges.emplace_back(i, j);
    }
    return NetworkSnapshot(n, std::move(edges));
}

std::optional<double> small_world_index(NetworkSnapshot const& snap, RngStream& rng,
                                        std::uint32_t n_ref)
{
    if (snap.edge_count() == 0 || n_ref == 0)
        return std::nullopt;
    const double c_g = average_clustering(snap);
    const double l_g = average_shortest_path_length(snap);

    double c_r = 0.0;
    double l_r = 0.0;
    for (std::uint32_t k = 0; k < n_ref; ++k) {
        const auto ref = sample_gnm(snap.node_count(), snap.edge_count(), rng);
        c_r += average_clustering(ref);
        l_r += average_shortest_path_length(ref);
    }
    c_r /= n_ref;
    l_r /= n_ref;

    if (c_r == 0.0 || l_r == 0.0 || l_g == 0.0)
        return std::nullopt;
    return (c_g / c_r) / (l_g / l_r);
}

MetricsRow metrics_snapshot(NetworkSnapshot const& snap, RngStream& rng,
                            std::uint32_t small_world_refs, std::uint32_t timestep)
{
    MetricsRow row;
    row.timestep = timestep;
    row.avg_degree = average_degree(snap);
    row.clustering = average_clustering(snap);
    row.aspl = average_shortest_path_length(snap);
    const auto comps = components(snap);
    row.n_components = comps.count;
    row.largest_component = comps.largest;
    if (small_world_refs > 0)
        row.small_world = small_world_index(snap, rng, small_world_refs);
    return row;
}

} // namespace rangenet
