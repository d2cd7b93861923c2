#pragma once

#include <cstdint>
#include <optional>

#include "rangenet/rng.hpp"
#include "rangenet/snapshot.hpp"

namespace rangenet {

inline constexpr std::uint32_t kDefaultSmallWorldRefs = 20;

struct ComponentSummary {
    std::uint32_t count = 0;
    std::uint32_t largest = 0;

    bool operator==(ComponentSummary const&) const = default;
};

/// The six per-timestep network measures.
struct MetricsRow {
    std::uint32_t timestep = 0;
    double avg_degree = 0.0;
    double clustering = 0.0;
    double aspl = 0.0;
    std::uint32_t n_components = 0;
    std::uint32_t largest_component = 0;
    std::optional<double> small_world;

    bool operator==(MetricsRow const&) const = default;
};

/// 2m / n.
double average_degree(NetworkSnapshot const& snap);

/// Mean local clustering coefficient; nodes with degree < 2 contribute 0.
double average_clustering(NetworkSnapshot const& snap);

/// 3 * triangles / connected triples. Diagnostic only; not part of MetricsRow.
double global_transitivity(NetworkSnapshot const& snap);

/// Mean BFS distance over unordered pairs joined by a path; 0 when no pair is.
double average_shortest_path_length(NetworkSnapshot const& snap);

ComponentSummary components(NetworkSnapshot const& snap);

/// Uniform sample from all simple graphs on n nodes with exactly m edges.
NetworkSnapshot sample_gnm(std::uint32_t n, std::size_t m, RngStream& rng);

/*!
 * Small-world index (C_G / C_R) / (L_G / L_R).
 *
 * C_R and L_R are means over `n_ref` G(n, m) samples matching the snapshot's
 * node and edge counts. Missing when L_G, C_R or L_R is zero. Edgeless graphs
 * return before drawing from `rng`.
 */
std::optional<double> small_world_index(NetworkSnapshot const& snap, RngStream& rng,
                                        std::uint32_t n_ref = kDefaultSmallWorldRefs);

/// All six measures. `small_world_refs == 0` skips the small-world sampling
/// and leaves the index missing.
MetricsRow metrics_snapshot(NetworkSnapshot const& snap, RngStream& rng,
                            std::uint32_t small_world_refs = kDefaultSmallWorldRefs,
                            std::uint32_t timestep = 0);

} // namespace rangenet
