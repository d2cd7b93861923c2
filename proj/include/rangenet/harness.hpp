#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rangenet/core.hpp"
#include "rangenet/diffusion.hpp"
#include "rangenet/metrics.hpp"

namespace rangenet {

struct RoundOptions {
    bool collect_metrics = true;
    std::uint32_t small_world_refs = kDefaultSmallWorldRefs;  ///< 0 disables
};

struct RoundResult {
    std::vector<MetricsRow> metrics;
    std::optional<DiffusionTrajectory> diffusion;
};

/// One independent trajectory. Model, metric sampling and diffusion each draw
/// from their own stream derived from (config.seed, round_idx).
RoundResult run_round(SimConfig const& config, std::uint32_t round_idx,
                      std::optional<DiffusionConfig> const& diffusion = std::nullopt,
                      RoundOptions const& options = {});

//---------------------------------------------------------------------------//

/// Mean, population standard deviation and 1.5-sigma band of the defined
/// values; all missing when count is zero.
struct Aggregate {
    std::optional<double> mean;
    std::optional<double> std;
    std::optional<double> band;
    std::uint32_t count = 0;
};

Aggregate aggregate_rounds(std::vector<double> const& values);

enum class Metric {
    AvgDegree,
    Clustering,
    Aspl,
    Components,
    LargestComponent,
    SmallWorld,
};
inline constexpr std::size_t kMetricCount = 6;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::AvgDegree,  Metric::Clustering,       Metric::Aspl,
    Metric::Components, Metric::LargestComponent, Metric::SmallWorld,
};
std::string_view metric_name(Metric m);
std::optional<double> metric_value(MetricsRow const& row, Metric m);

/// Per-metric time-average of one round over timesteps > burn_in. Missing
/// small-world values are skipped; a metric with no defined value is missing.
std::array<std::optional<double>, kMetricCount>
time_averages(std::vector<MetricsRow> const& rows, std::uint32_t burn_in = 0);

//---------------------------------------------------------------------------//

enum class SweepParam { R, N, G, P };
std::string_view param_name(SweepParam p);
SweepParam parse_sweep_param(std::string_view text);

/// Null-model link probability matched to a range-model setting: r / g,
/// clipped to 1.
double matched_p_connect(double r, std::uint32_t g);

struct SweepConfig {
    SimConfig base;
    SweepParam vary = SweepParam::R;
    std::vector<double> values;
    /// Run both models at every value, null model at p_connect = r / g.
    bool paired = false;
    std::optional<DiffusionConfig> diffusion;
    bool collect_metrics = true;
    std::uint32_t small_world_refs = kDefaultSmallWorldRefs;
    std::uint32_t burn_in = 0;
    std::uint32_t workers = 1;
    std::filesystem::path output_path;

    void validate() const;
};

struct AggregateRow {
    SimConfig config;  ///< fully resolved config of this row
    SweepParam param = SweepParam::R;
    double param_value = 0.0;
    std::uint32_t rounds = 0;
    std::array<Aggregate, kMetricCount> metrics;
    /// Present when the sweep ran a diffusion process.
    std::optional<Aggregate> fixation_time;
    std::optional<Aggregate> crossover_time;
};

/// Configs of every row the sweep produces, in emission order.
std::vector<SimConfig> sweep_configs(SweepConfig const& sweep);

using RowCallback = std::function<void(AggregateRow const&)>;

/// Runs `rounds` rounds per row and aggregates their time-averages. Rows are
/// emitted in sweep order (range before null within a paired value); the
/// callback sees each row as soon as it is complete.
std::vector<AggregateRow> run_sweep(SweepConfig const& sweep, RowCallback const& on_row = {});

/// Parses "a,b,c" or inclusive "min:max:step".
std::vector<double> parse_values(std::string_view text);

} // namespace rangenet
