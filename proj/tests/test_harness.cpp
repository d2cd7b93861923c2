#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rangenet/csv.hpp"
#include "rangenet/harness.hpp"

using namespace rangenet;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(std::string const& name)
{
    const auto dir = fs::temp_directory_path() / "rangenet_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(fs::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SimConfig small_range(double r = 2.0)
{
    SimConfig cfg;
    cfg.n = 12;
    cfg.g = 6;
    cfg.r = r;
    cfg.steps = 20;
    cfg.rounds = 6;
    cfg.seed = 3;
    return cfg;
}

} // namespace

TEST_CASE("aggregate_rounds examples")
{
    const auto constant = aggregate_rounds({2, 2, 2});
    CHECK(constant.mean == 2.0);
    CHECK(constant.std == 0.0);
    CHECK(constant.band == 0.0);
    CHECK(constant.count == 3);

    const auto pair = aggregate_rounds({0, 4});
    CHECK(pair.mean == 2.0);
    CHECK(pair.std == 2.0);
    CHECK(pair.band == 3.0);

    const auto empty = aggregate_rounds({});
    CHECK_FALSE(empty.mean.has_value());
    CHECK_FALSE(empty.std.has_value());
    CHECK(empty.count == 0);
}

TEST_CASE("aggregate_rounds is invariant to round order")
{
    RngStream rng(1);
    std::vector<double> v(50);
    for (auto& x : v)
        x = rng.uniform01() * 10;
    const auto a = aggregate_rounds(v);
    std::reverse(v.begin(), v.end());
    rng.shuffle(std::span(v));
    const auto b = aggregate_rounds(v);
    CHECK(*a.mean == doctest::Approx(*b.mean).epsilon(1e-14));
    CHECK(*a.std == doctest::Approx(*b.std).epsilon(1e-12));
    CHECK(*a.band == doctest::Approx(1.5 * *a.std).epsilon(1e-15));
}

TEST_CASE("run_round")
{
    SUBCASE("one row per step")
    {
        auto cfg = small_range();
        cfg.steps = 100;
        const auto res = run_round(cfg, 0);
        REQUIRE(res.metrics.size() == 100);
        CHECK(res.metrics.front().timestep == 1);
        CHECK(res.metrics.back().timestep == 100);
        CHECK_FALSE(res.diffusion.has_value());
    }
    SUBCASE("a single agent is always isolated")
    {
        auto cfg = small_range();
        cfg.n = 1;
        for (auto const& row : run_round(cfg, 0).metrics)
            CHECK(row == MetricsRow{row.timestep, 0, 0, 0, 1, 1, std::nullopt});
    }
    SUBCASE("deterministic per (seed, round)")
    {
        const auto cfg = small_range();
        const auto a = run_round(cfg, 2, SIConfig{});
        const auto b = run_round(cfg, 2, SIConfig{});
        CHECK(a.metrics == b.metrics);
        CHECK(a.diffusion->frequency == b.diffusion->frequency);
        CHECK_FALSE(run_round(cfg, 3).metrics == a.metrics);
    }
    SUBCASE("diffusion does not perturb the network")
    {
        const auto cfg = small_range();
        CHECK(run_round(cfg, 1).metrics == run_round(cfg, 1, CulturalConfig{}).metrics);
    }
    SUBCASE("metrics can be skipped")
    {
        const auto res = run_round(small_range(), 0, SIConfig{}, {false, 0});
        CHECK(res.metrics.empty());
        CHECK(res.diffusion->frequency.size() == 20);
    }
    SUBCASE("invalid configs propagate")
    {
        auto cfg = small_range();
        cfg.n = 37;
        CHECK_THROWS_AS(run_round(cfg, 0), ConfigError);
    }
}

TEST_CASE("time_averages skip missing values and honour burn-in")
{
    std::vector<MetricsRow> rows = {
        {1, 1.0, 0.0, 1.0, 3, 2, std::nullopt},
        {2, 3.0, 0.5, 2.0, 2, 3, 2.0},
        {3, 5.0, 1.0, 3.0, 1, 4, 4.0},
    };
    const auto all = time_averages(rows);
    CHECK(all[0] == 3.0);
    CHECK(all[5] == 3.0);
    const auto late = time_averages(rows, 2);
    CHECK(late[0] == 5.0);
    CHECK(late[3] == 1.0);

    rows.resize(1);
    CHECK_FALSE(time_averages(rows)[5].has_value());
}

TEST_CASE("parse_values and sweep parameters")
{
    CHECK(parse_values("0,1.5,3") == std::vector<double>{0, 1.5, 3});
    CHECK(parse_values("0:10:1").size() == 11);
    const auto fine = parse_values("0:1:0.1");
    REQUIRE(fine.size() == 11);
    CHECK(fine[3] == 0.3);
    CHECK(fine.back() == 1.0);
    CHECK_THROWS_AS(parse_values(""), ConfigError);
    CHECK_THROWS_AS(parse_values("1,x"), ConfigError);
    CHECK_THROWS_AS(parse_values("0:1:0"), ConfigError);

    CHECK(parse_sweep_param("p") == SweepParam::P);
    CHECK(parse_sweep_param("N") == SweepParam::N);
    CHECK_THROWS_AS(parse_sweep_param("q"), ConfigError);
    CHECK(matched_p_connect(2, 10) == doctest::Approx(0.2));
    CHECK(matched_p_connect(15, 10) == 1.0);
}

TEST_CASE("sweep_configs")
{
    SweepConfig sweep;
    sweep.base = small_range();
    sweep.values = parse_values("0:10:1");
    CHECK(sweep_configs(sweep).size() == 11);

    sweep.paired = true;
    const auto paired = sweep_configs(sweep);
    REQUIRE(paired.size() == 22);
    CHECK(paired[4].model == ModelKind::Range);
    CHECK(paired[4].r == 2.0);
    CHECK(paired[5].model == ModelKind::Null);
    CHECK(paired[5].p_connect == doctest::Approx(2.0 / 6));

    sweep.paired = false;
    sweep.vary = SweepParam::N;
    sweep.base.g = 7;
    sweep.values = parse_values("1:49:1");
    const auto ns = sweep_configs(sweep);
    CHECK(ns.size() == 49);
    CHECK(ns.back().n == 49);

    sweep.vary = SweepParam::G;
    sweep.base.n = 9;
    sweep.values = parse_values("3:50:1");
    CHECK(sweep_configs(sweep).size() == 48);

    sweep.vary = SweepParam::P;
    CHECK_THROWS_AS(sweep.validate(), ConfigError);
    sweep.base.model = ModelKind::Null;
    sweep.values = {0.0, 0.5, 1.0};
    CHECK_NOTHROW(sweep.validate());
    sweep.values = {1.5};
    CHECK_THROWS_AS(sweep.validate(), ConfigError);
}

TEST_CASE("run_sweep rows and the density trend")
{
    SweepConfig sweep;
    sweep.base = small_range();
    sweep.base.n = 9;
    sweep.base.r = 1;
    sweep.vary = SweepParam::G;
    sweep.values = {3, 6, 12};
    sweep.small_world_refs = 0;
    std::vector<double> streamed;
    const auto rows = run_sweep(sweep, [&](AggregateRow const& row) {
        streamed.push_back(row.param_value);
    });
    REQUIRE(rows.size() == 3);
    CHECK(streamed == std::vector<double>{3, 6, 12});
    for (auto const& row : rows) {
        CHECK(row.rounds == 6);
        CHECK(row.metrics[0].count == 6);
        CHECK(row.metrics[5].count == 0);  // small-world disabled
    }
    // Lower density, fewer neighbours in range.
    CHECK(*rows[0].metrics[0].mean > *rows[1].metrics[0].mean);
    CHECK(*rows[1].metrics[0].mean > *rows[2].metrics[0].mean);
}

TEST_CASE("more rounds move the mean by less than its standard error")
{
    SweepConfig sweep;
    sweep.base = small_range();
    sweep.base.rounds = 40;
    sweep.values = {2};
    sweep.small_world_refs = 0;
    const auto a = run_sweep(sweep).front().metrics[0];
    sweep.base.rounds = 80;
    sweep.base.seed = 1234;
    const auto b = run_sweep(sweep).front().metrics[0];
    const double se = *a.std / std::sqrt(40.0);
    CHECK(std::abs(*a.mean - *b.mean) < 3 * se);
}

TEST_CASE("sweep CSV layout and round trip")
{
    SweepConfig sweep;
    sweep.base = small_range();
    sweep.values = parse_values("0:3:1");
    sweep.paired = true;
    sweep.diffusion = SIConfig{};
    const auto rows = run_sweep(sweep);
    const auto path = temp_file("sweep.csv");
    write_sweep_csv(rows, true, path);

    const auto table = read_csv(path);
    REQUIRE(table.size() == 1 + 8);
    const auto header = sweep_csv_header(true);
    CHECK(table[0] == header);
    CHECK(header.size() == 8 + 6 * 4 + 2 * 4);
    CHECK(header[8] == "avg_degree_mean");
    CHECK(header[11] == "avg_degree_defined_count");
    CHECK(table[1][0] == "range");
    CHECK(table[2][0] == "null");
    CHECK(table[1][4].empty());   // p_connect not applicable to range rows
    for (auto const& line : table)
        CHECK(line.size() == header.size());

    // Values read back at 9 significant digits.
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& mean = rows[k].metrics[1].mean;
        REQUIRE(mean.has_value());
        const double back = std::stod(table[k + 1][12]);
        CHECK(std::abs(back - *mean) <= 5e-9 * std::max(1e-300, std::abs(*mean)) + 1e-300);
    }
}

TEST_CASE("format_number")
{
    CHECK(format_number(std::nullopt).empty());
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3) == "0.333333333");
    CHECK(format_number(12345678912.0) == "1.23456789e+10");
}

TEST_CASE("timestep and diffusion dumps")
{
    auto cfg = small_range();
    cfg.rounds = 3;
    std::vector<std::vector<MetricsRow>> rounds;
    std::vector<DiffusionTrajectory> trajectories;
    for (std::uint32_t k = 0; k < cfg.rounds; ++k) {
        auto res = run_round(cfg, k, SIConfig{});
        rounds.push_back(res.metrics);
        trajectories.push_back(*res.diffusion);
    }
    const auto tpath = temp_file("timesteps.csv");
    write_timestep_csv(cfg, rounds, tpath);
    const auto t = read_csv(tpath);
    CHECK(t.size() == 1 + cfg.steps * cfg.rounds);
    CHECK(t[0] == timestep_csv_header());
    CHECK(t.back()[5] == "2");
    CHECK(t.back()[6] == "20");

    const auto dpath = temp_file("diffusion.csv");
    write_diffusion_csv(trajectories, dpath);
    const auto d = read_csv(dpath);
    CHECK(d.size() == 1 + cfg.steps * cfg.rounds);
    CHECK(d[0] == diffusion_csv_header());
}

TEST_CASE("CSV writer reports the failing path")
{
    try {
        CsvWriter w("/nonexistent-dir/out.csv");
        FAIL("expected IoError");
    } catch (IoError const& e) {
        CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
    }
}

TEST_CASE("serial and parallel sweeps write identical bytes")
{
    SweepConfig sweep;
    sweep.base = small_range();
    sweep.base.rounds = 8;
    sweep.values = parse_values("0:4:1");
    sweep.paired = true;
    sweep.diffusion = ComplexContagionConfig{};

    const auto serial = temp_file("serial.csv");
    const auto parallel = temp_file("parallel.csv");
    sweep.workers = 1;
    write_sweep_csv(run_sweep(sweep), true, serial);
    sweep.workers = 4;
    write_sweep_csv(run_sweep(sweep), true, parallel);
    CHECK(slurp(serial) == slurp(parallel));
    CHECK_FALSE(slurp(serial).empty());
}
