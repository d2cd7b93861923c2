#include "rangenet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "rangenet/models.hpp"

namespace rangenet {

RoundResult run_round(SimConfig const& config, std::uint32_t round_idx,
                      std::optional<DiffusionConfig> const& diffusion,
                      RoundOptions const& options)
{
    config.validate();
    auto model_rng = RngStream::for_round(config.seed, round_idx, StreamPurpose::Model);
    auto metrics_rng = RngStream::for_round(config.seed, round_idx, StreamPurpose::Metrics);

    RoundResult result;
    std::optional<DiffusionProcess> process;
    if (diffusion) {
        process.emplace(*diffusion, config.n,
                        RngStream::for_round(config.seed, round_idx, StreamPurpose::Diffusion));
    }

    std::vector<StepObserver> observers;
    if (options.collect_metrics) {
        result.metrics.reserve(config.steps);
        observers.emplace_back([&](std::uint32_t t, NetworkSnapshot const& snap) {
            result.metrics.push_back(
                metrics_snapshot(snap, metrics_rng, options.small_world_refs, t));
        });
    }
    if (process) {
        observers.emplace_back(
            [&](std::uint32_t t, NetworkSnapshot const& snap) { process->step(t, snap); });
    }
    run_model(config, model_rng, observers);

    if (process)
        result.diffusion = process->trajectory();
    return result;
}

//---------------------------------------------------------------------------//

Aggregate aggregate_rounds(std::vector<double> const& values)
{
    Aggregate out;
    out.count = static_cast<std::uint32_t>(values.size());
    if (values.empty())
        return out;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size()));
    out.mean = mean;
    out.std = sd;
    out.band = 1.5 * sd;
    return out;
}

std::string_view metric_name(Metric m)
{
    switch (m) {
    case Metric::AvgDegree: return "avg_degree";
    case Metric::Clustering: return "clustering";
    case Metric::Aspl: return "aspl";
    case Metric::Components: return "n_components";
    case Metric::LargestComponent: return "largest_component";
    case Metric::SmallWorld: return "small_world";
    }
    return "?";
}

std::optional<double> metric_value(MetricsRow const& row, Metric m)
{
    switch (m) {
    case Metric::AvgDegree: return row.avg_degree;
    case Metric::Clustering: return row.clustering;
    case Metric::Aspl: return row.aspl;
    case Metric::Components: return static_cast<double>(row.n_components);
    case Metric::LargestComponent: return static_cast<double>(row.largest_component);
    case Metric::SmallWorld: return row.small_world;
    }
    return std::nullopt;
}

std::array<std::optional<double>, kMetricCount>
time_averages(std::vector<MetricsRow> const& rows, std::uint32_t burn_in)
{
    std::array<std::optional<double>, kMetricCount> out;
    for (std::size_t k = 0; k < kMetricCount; ++k) {
        double sum = 0.0;
        std::size_t count = 0;
        for (auto const& row : rows) {
            if (row.timestep <= burn_in)
                continue;
            if (auto v = metric_value(row, kAllMetrics[k])) {
                sum += *v;
                ++count;
            }
        }
        if (count)
            out[k] = sum / static_cast<double>(count);
    }
    return out;
}

//---------------------------------------------------------------------------//

std::string_view param_name(SweepParam p)
{
    switch (p) {
    case SweepParam::R: return "r";
    case SweepParam::N: return "n";
    case SweepParam::G: return "g";
    case SweepParam::P: return "p_connect";
    }
    return "?";
}

SweepParam parse_sweep_param(std::string_view text)
{
    if (text == "r")
        return SweepParam::R;
    if (text == "n" || text == "N")
        return SweepParam::N;
    if (text == "g")
        return SweepParam::G;
    if (text == "p" || text == "p_connect" || text == "p-connect")
        return SweepParam::P;
    throw ConfigError("unknown sweep parameter '" + std::string(text) + "' (expected r, n, g or p)");
}

double matched_p_connect(double r, std::uint32_t g)
{
    if (g == 0)
        throw ConfigError("grid size g must be positive");
    return std::min(1.0, r / static_cast<double>(g));
}

namespace {

std::uint32_t as_count(double v, char const* what)
{
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9)
        throw ConfigError(std::string(what) + " values must be positive integers");
    return static_cast<std::uint32_t>(v);
}

SimConfig apply_value(SimConfig cfg, SweepParam param, double value)
{
    switch (param) {
    case SweepParam::R: cfg.r = value; break;
    case SweepParam::N: cfg.n = as_count(value, "N"); break;
    case SweepParam::G: cfg.g = as_count(value, "g"); break;
    case SweepParam::P: cfg.p_connect = value; break;
    }
    return cfg;
}

} // namespace

std::vector<SimConfig> sweep_configs(SweepConfig const& sweep)
{
    std::vector<SimConfig> out;
    for (double value : sweep.values) {
        SimConfig cfg = apply_value(sweep.base, sweep.vary, value);
        if (!sweep.paired) {
            out.push_back(cfg);
            continue;
        }
        SimConfig range = cfg;
        SimConfig null = cfg;
        range.model = ModelKind::Range;
        null.model = ModelKind::Null;
        if (sweep.vary == SweepParam::P)
            range.r = value * range.g;
        else
            null.p_connect = matched_p_connect(cfg.r, cfg.g);
        out.push_back(range);
        out.push_back(null);
    }
    return out;
}

void SweepConfig::validate() const
{
    if (values.empty())
        throw ConfigError("sweep needs at least one parameter value");
    if (vary == SweepParam::P && !paired && base.model != ModelKind::Null)
        throw ConfigError("varying p_connect requires the null model (or a paired sweep)");
    if (vary == SweepParam::R && !paired && base.model != ModelKind::Range)
        throw ConfigError("varying r requires the range model (or a paired sweep)");
    for (auto const& cfg : sweep_configs(*this)) {
        cfg.validate();
        if (diffusion)
            rangenet::validate(*diffusion, cfg.n);
    }
}

std::vector<AggregateRow> run_sweep(SweepConfig const& sweep, RowCallback const& on_row)
{
    sweep.validate();
    const auto configs = sweep_configs(sweep);
    const std::size_t per_value = sweep.paired ? 2 : 1;
    const RoundOptions options{sweep.collect_metrics, sweep.small_world_refs};
    const std::uint32_t workers = std::max<std::uint32_t>(1, sweep.workers);

    std::vector<AggregateRow> rows;
    rows.reserve(configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c) {
        SimConfig const& cfg = configs[c];
        const std::uint32_t rounds = cfg.rounds;
        std::vector<RoundResult> results(rounds);

        std::atomic<std::uint32_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&] {
            for (std::uint32_t k = next++; k < rounds; k = next++) {
                try {
                    results[k] = run_round(cfg, k, sweep.diffusion, options);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (std::uint32_t w = 0; w < std::min(workers, rounds); ++w)
                pool.emplace_back(work);
        }
        if (failure)
            std::rethrow_exception(failure);

        // Deterministic reduce in round order.
        AggregateRow row;
        row.config = cfg;
        row.param = sweep.vary;
        row.param_value = sweep.values[c / per_value];
        row.rounds = rounds;
        if (sweep.collect_metrics) {
            std::array<std::vector<double>, kMetricCount> per_metric;
            for (auto const& result : results) {
                const auto avg = time_averages(result.metrics, sweep.burn_in);
                for (std::size_t k = 0; k < kMetricCount; ++k) {
                    if (avg[k])
                        per_metric[k].push_back(*avg[k]);
                }
            }
            for (std::size_t k = 0; k < kMetricCount; ++k)
                row.metrics[k] = aggregate_rounds(per_metric[k]);
        }
        if (sweep.diffusion) {
            std::vector<double> fixation, crossover;
            for (auto const& result : results) {
                if (result.diffusion->fixation_time)
                    fixation.push_back(*result.diffusion->fixation_time);
                if (result.diffusion->crossover_time)
                    crossover.push_back(*result.diffusion->crossover_time);
            }
            row.fixation_time = aggregate_rounds(fixation);
            row.crossover_time = aggregate_rounds(crossover);
        }
        if (on_row)
            on_row(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> parse_values(std::string_view text)
{
    auto number = [&](std::string_view s) {
        while (!s.empty() && s.front() == ' ')
            s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ')
            s.remove_suffix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
            throw ConfigError("bad number '" + std::string(s) + "' in value list");
        return v;
    };

    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string_view::npos)
            throw ConfigError("range values must be min:max:step");
        const double lo = number(text.substr(0, a));
        const double hi = number(text.substr(a + 1, b - a - 1));
        const double step = number(text.substr(b + 1));
        if (!(step > 0.0) || hi < lo)
            throw ConfigError("range values need step > 0 and max >= min");
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (std::size_t k = 0; k < count; ++k) {
            // Snap to 1e-12 so 0:1:0.1 yields 0.3, not 0.30000000000000004.
            const double v = lo + static_cast<double>(k) * step;
            out.push_back(std::round(v * 1e12) / 1e12);
        }
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(number(text.substr(start, end - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace rangenet
