#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "rangenet/harness.hpp"

namespace rangenet {

/// "%.9g"; missing values become empty fields.
std::string format_number(std::optional<double> value);

/// Sweep CSV layout: model, N, g, r, p_connect, param_name, param_value,
/// rounds, then <metric>_{mean,std,band,defined_count} for the six metrics,
/// followed by fixation_time_* and crossover_time_* when `with_diffusion`.
std::vector<std::string> sweep_csv_header(bool with_diffusion);
std::vector<std::string> sweep_csv_fields(AggregateRow const& row, bool with_diffusion);

/// Per-timestep dump: model, N, g, r, p_connect, round, timestep, then the six
/// metric values.
std::vector<std::string> timestep_csv_header();
std::vector<std::string> timestep_csv_fields(SimConfig const& config, std::uint32_t round,
                                             MetricsRow const& row);

/// Diffusion trajectory dump: round, timestep, frequency, fixation_time,
/// crossover_time.
std::vector<std::string> diffusion_csv_header();

/// Line-oriented CSV file writer. Every row is flushed so an interrupted run
/// keeps the rows written so far.
class CsvWriter {
public:
    /// Throws IoError naming the path when it cannot be opened.
    explicit CsvWriter(std::filesystem::path path);

    void write_row(std::vector<std::string> const& fields);
    std::filesystem::path const& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

void write_sweep_csv(std::vector<AggregateRow> const& rows, bool with_diffusion,
                     std::filesystem::path const& path);

void write_timestep_csv(SimConfig const& config,
                        std::vector<std::vector<MetricsRow>> const& rounds,
                        std::filesystem::path const& path);

void write_diffusion_csv(std::vector<DiffusionTrajectory> const& rounds,
                         std::filesystem::path const& path);

/// Plain comma split of every line (the writers never quote).
std::vector<std::vector<std::string>> read_csv(std::filesystem::path const& path);

} // namespace rangenet
