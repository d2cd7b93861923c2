// Command-line driver: single-round dumps, parameter sweeps and diffusion
// trajectories. Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "rangenet/csv.hpp"
#include "rangenet/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Options {
    std::string model = "range";
    std::uint32_t n = 20;
    std::uint32_t g = 10;
    double r = 2.0;
    double p_connect = 0.2;
    std::uint32_t steps = 100;
    std::uint32_t rounds = 100;
    std::uint64_t seed = 1;
    bool round_distance = false;
    std::uint32_t workers = 1;
    std::uint32_t burn_in = 0;
    std::uint32_t small_world_refs = rangenet::kDefaultSmallWorldRefs;
    std::string out;

    // sweep
    std::string vary = "r";
    std::string values;
    bool paired = false;

    // diffusion
    std::string process = "si";
    std::string recipes;
    std::uint32_t n_init = 1;
    double p_infect = 0.1;
    bool per_agent_exposure = false;
    double p_base = 0.01;
    double w = 1.0;
    double p_a = 0.1;
    double p_b = 0.2;
    double init_split = 0.5;
    double p_diff = 0.5;
};

rangenet::SimConfig sim_config(Options const& o)
{
    rangenet::SimConfig cfg;
    cfg.model = rangenet::parse_model_kind(o.model);
    cfg.n = o.n;
    cfg.g = o.g;
    cfg.r = o.r;
    cfg.p_connect = o.p_connect;
    cfg.steps = o.steps;
    cfg.rounds = o.rounds;
    cfg.seed = o.seed;
    cfg.round_distance = o.round_distance;
    return cfg;
}

rangenet::DiffusionConfig diffusion_config(Options const& o)
{
    using namespace rangenet;
    if (o.process == "si") {
        return SIConfig{o.n_init, o.p_infect,
                        o.per_agent_exposure ? SiExposure::PerAgent : SiExposure::PerNeighbor};
    }
    if (o.process == "complex")
        return ComplexContagionConfig{o.p_base, o.w, o.n_init};
    if (o.process == "cultural")
        return CulturalConfig{o.p_a, o.p_b, o.init_split};
    if (o.process == "potion") {
        PotionConfig cfg;
        if (!o.recipes.empty())
            cfg.recipes = RecipeTable::load(o.recipes);
        cfg.p_diff = o.p_diff;
        return cfg;
    }
    throw ConfigError("unknown process '" + o.process
                      + "' (expected si, complex, cultural or potion)");
}

std::string output_or_default(Options const& o, char const* fallback)
{
    return o.out.empty() ? std::string(fallback) : o.out;
}

int cmd_run(Options const& o, bool rounds_given)
{
    auto cfg = sim_config(o);
    if (!rounds_given)
        cfg.rounds = 1;
    cfg.validate();
    std::vector<std::vector<rangenet::MetricsRow>> rounds;
    for (std::uint32_t k = 0; k < cfg.rounds; ++k)
        rounds.push_back(
            rangenet::run_round(cfg, k, std::nullopt, {true, o.small_world_refs}).metrics);
    const auto path = output_or_default(o, "run.csv");
    rangenet::write_timestep_csv(cfg, rounds, path);
    std::cerr << "wrote " << cfg.rounds * cfg.steps << " timestep rows to " << path << '\n';
    return 0;
}

int cmd_sweep(Options const& o, bool with_diffusion)
{
    rangenet::SweepConfig sweep;
    sweep.base = sim_config(o);
    sweep.vary = rangenet::parse_sweep_param(o.vary);
    if (o.values.empty())
        throw rangenet::ConfigError("--values is required for a sweep");
    sweep.values = rangenet::parse_values(o.values);
    sweep.paired = o.paired;
    sweep.workers = o.workers;
    sweep.burn_in = o.burn_in;
    sweep.small_world_refs = o.small_world_refs;
    if (with_diffusion)
        sweep.diffusion = diffusion_config(o);
    sweep.output_path = output_or_default(o, "sweep.csv");
    sweep.validate();

    rangenet::CsvWriter out(sweep.output_path);
    out.write_row(rangenet::sweep_csv_header(with_diffusion));
    const auto rows = rangenet::run_sweep(sweep, [&](rangenet::AggregateRow const& row) {
        out.write_row(rangenet::sweep_csv_fields(row, with_diffusion));
    });
    std::cerr << "wrote " << rows.size() << " rows to " << sweep.output_path.string() << '\n';
    return 0;
}

int cmd_diffusion(Options const& o)
{
    const auto cfg = sim_config(o);
    const auto process = diffusion_config(o);
    cfg.validate();
    rangenet::validate(process, cfg.n);
    std::vector<rangenet::DiffusionTrajectory> rounds;
    for (std::uint32_t k = 0; k < cfg.rounds; ++k)
        rounds.push_back(*rangenet::run_round(cfg, k, process, {false, 0}).diffusion);
    const auto path = output_or_default(o, "diffusion.csv");
    rangenet::write_diffusion_csv(rounds, path);
    std::cerr << "wrote " << rounds.size() << " rounds to " << path << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Range-constrained dynamic network simulator"};
    app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--model", o.model, "Network model")
        ->check(CLI::IsMember({"range", "null"}))
        ->capture_default_str();
    app.add_option("--n", o.n, "Population size N")->capture_default_str();
    app.add_option("--g", o.g, "Grid side length g")->capture_default_str();
    app.add_option("--r", o.r, "Communication range r")->capture_default_str();
    app.add_option("--p-connect", o.p_connect, "Null-model link probability")
        ->capture_default_str();
    app.add_option("--steps", o.steps, "Timesteps per round")->capture_default_str();
    auto* rounds_opt =
        app.add_option("--rounds", o.rounds, "Rounds per setting")->capture_default_str();
    app.add_option("--seed", o.seed, "Base seed")->capture_default_str();
    app.add_flag("--round-distance", o.round_distance,
                 "Range model: round distances to the nearest integer before comparing with r");
    app.add_option("--workers", o.workers, "Worker threads (0 = hardware concurrency)")
        ->capture_default_str();
    app.add_option("--burn-in", o.burn_in, "Timesteps excluded from time-averages")
        ->capture_default_str();
    app.add_option("--small-world-refs", o.small_world_refs,
                   "Random reference graphs per small-world index (0 disables)")
        ->capture_default_str();
    app.add_option("--out", o.out, "Output CSV path");

    app.add_option("--vary", o.vary, "Swept parameter: r, n, g or p")->capture_default_str();
    app.add_option("--values", o.values, "Comma list or min:max:step");
    app.add_flag("--paired", o.paired, "Run range and matched null model (p = r/g) per value");

    app.add_option("--process", o.process, "Diffusion process: si, complex, cultural, potion")
        ->capture_default_str();
    app.add_option("--recipes", o.recipes, "Potion recipe table file");
    app.add_option("--n-init", o.n_init, "Initially infected agents")->capture_default_str();
    app.add_option("--p-infect", o.p_infect, "SI infection probability")->capture_default_str();
    app.add_flag("--per-agent-exposure", o.per_agent_exposure,
                 "SI: one trial per step instead of one per infected neighbour");
    app.add_option("--p-base", o.p_base, "Complex contagion baseline")->capture_default_str();
    app.add_option("--w", o.w, "Complex contagion social weight")->capture_default_str();
    app.add_option("--p-a", o.p_a, "Trait A transmission probability")->capture_default_str();
    app.add_option("--p-b", o.p_b, "Trait B transmission probability")->capture_default_str();
    app.add_option("--init-split", o.init_split, "Initial fraction with trait A")
        ->capture_default_str();
    app.add_option("--p-diff", o.p_diff, "Potion item diffusion probability")
        ->capture_default_str();

    auto* run = app.add_subcommand("run", "Per-timestep metrics of single rounds");
    auto* sweep = app.add_subcommand("sweep", "Aggregate metrics over a parameter sweep");
    bool sweep_diffusion = false;
    sweep->add_flag("--with-diffusion", sweep_diffusion,
                    "Also run --process and aggregate fixation/crossover times");
    auto* diffusion = app.add_subcommand("diffusion", "Diffusion trajectories per round");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (o.workers == 0)
        o.workers = std::max(1u, std::thread::hardware_concurrency());

    try {
        if (*run)
            return cmd_run(o, rounds_opt->count() > 0);
        if (*sweep)
            return cmd_sweep(o, sweep_diffusion);
        if (*diffusion)
            return cmd_diffusion(o);
    } catch (rangenet::ConfigError const& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (rangenet::IoError const& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
