#include "rangenet/csv.hpp"

#include <cstdio>

namespace rangenet {

std::string format_number(std::optional<double> value)
{
    if (!value)
        return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", *value);
    return buf;
}

namespace {

std::string format_count(std::uint64_t v)
{
    return std::to_string(v);
}

void append_aggregate(std::vector<std::string>& out, Aggregate const& agg)
{
    out.push_back(format_number(agg.mean));
    out.push_back(format_number(agg.std));
    out.push_back(format_number(agg.band));
    out.push_back(format_count(agg.count));
}

void append_aggregate_header(std::vector<std::string>& out, std::string_view name)
{
    for (char const* suffix : {"_mean", "_std", "_band", "_defined_count"})
        out.push_back(std::string(name) + suffix);
}

void append_config(std::vector<std::string>& out, SimConfig const& cfg, bool keep_range_fields)
{
    const bool range = cfg.model == ModelKind::Range;
    out.emplace_back(to_string(cfg.model));
    out.push_back(format_count(cfg.n));
    out.push_back(range || keep_range_fields ? format_count(cfg.g) : std::string());
    out.push_back(range || keep_range_fields ? format_number(cfg.r) : std::string());
    out.push_back(range ? std::string() : format_number(cfg.p_connect));
}

} // namespace

std::vector<std::string> sweep_csv_header(bool with_diffusion)
{
    std::vector<std::string> out = {"model", "N",          "g",           "r",
                                    "p_connect", "param_name", "param_value", "rounds"};
    for (Metric m : kAllMetrics)
        append_aggregate_header(out, metric_name(m));
    if (with_diffusion) {
        append_aggregate_header(out, "fixation_time");
        append_aggregate_header(out, "crossover_time");
    }
    return out;
}

std::vector<std::string> sweep_csv_fields(AggregateRow const& row, bool with_diffusion)
{
    std::vector<std::string> out;
    // Null rows of an r/g/N sweep keep g and r: they define the matched p_connect.
    append_config(out, row.config, row.param != SweepParam::P);
    out.emplace_back(param_name(row.param));
    out.push_back(format_number(row.param_value));
    out.push_back(format_count(row.rounds));
    for (auto const& agg : row.metrics)
        append_aggregate(out, agg);
    if (with_diffusion) {
        append_aggregate(out, row.fixation_time.value_or(Aggregate{}));
        append_aggregate(out, row.crossover_time.value_or(Aggregate{}));
    }
    return out;
}

std::vector<std::string> timestep_csv_header()
{
    std::vector<std::string> out = {"model", "N", "g", "r", "p_connect", "round", "timestep"};
    for (Metric m : kAllMetrics)
        out.emplace_back(metric_name(m));
    return out;
}

std::vector<std::string> timestep_csv_fields(SimConfig const& config, std::uint32_t round,
                                             MetricsRow const& row)
{
    std::vector<std::string> out;
    append_config(out, config, false);
    out.push_back(format_count(round));
    out.push_back(format_count(row.timestep));
    for (Metric m : kAllMetrics)
        out.push_back(format_number(metric_value(row, m)));
    return out;
}

std::vector<std::string> diffusion_csv_header()
{
    return {"round", "timestep", "frequency", "fixation_time", "crossover_time"};
}

//---------------------------------------------------------------------------//

CsvWriter::CsvWriter(std::filesystem::path path) : path_(std::move(path)), out_(path_)
{
    if (!out_)
        throw IoError("cannot open " + path_.string() + " for writing");
}

void CsvWriter::write_row(std::vector<std::string> const& fields)
{
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k)
            out_ << ',';
        out_ << fields[k];
    }
    out_ << '\n';
    out_.flush();
    if (!out_)
        throw IoError("write failed on " + path_.string());
}

void write_sweep_csv(std::vector<AggregateRow> const& rows, bool with_diffusion,
                     std::filesystem::path const& path)
{
    CsvWriter out(path);
    out.write_row(sweep_csv_header(with_diffusion));
    for (auto const& row : rows)
        out.write_row(sweep_csv_fields(row, with_diffusion));
}

void write_timestep_csv(SimConfig const& config,
                        std::vector<std::vector<MetricsRow>> const& rounds,
                        std::filesystem::path const& path)
{
    CsvWriter out(path);
    out.write_row(timestep_csv_header());
    for (std::size_t k = 0; k < rounds.size(); ++k) {
        for (auto const& row : rounds[k])
            out.write_row(timestep_csv_fields(config, static_cast<std::uint32_t>(k), row));
    }
}

void write_diffusion_csv(std::vector<DiffusionTrajectory> const& rounds,
                         std::filesystem::path const& path)
{
    CsvWriter out(path);
    out.write_row(diffusion_csv_header());
    for (std::size_t k = 0; k < rounds.size(); ++k) {
        auto const& traj = rounds[k];
        const auto fixation =
            traj.fixation_time ? format_count(*traj.fixation_time) : std::string();
        const auto crossover =
            traj.crossover_time ? format_count(*traj.crossover_time) : std::string();
        for (std::size_t t = 0; t < traj.frequency.size(); ++t) {
            out.write_row({format_count(k), format_count(t + 1), format_number(traj.frequency[t]),
                           fixation, crossover});
        }
    }
}

std::vector<std::vector<std::string>> read_csv(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path.string());
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        out.push_back(std::move(fields));
    }
    return out;
}

} // namespace rangenet
