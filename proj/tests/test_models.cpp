#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "oracles.hpp"
#include "rangenet/models.hpp"

using namespace rangenet;

namespace {

SimConfig range_config(std::uint32_t n, std::uint32_t g, double r, std::uint32_t steps)
{
    SimConfig cfg;
    cfg.model = ModelKind::Range;
    cfg.n = n;
    cfg.g = g;
    cfg.r = r;
    cfg.steps = steps;
    return cfg;
}

SimConfig null_config(std::uint32_t n, double p, std::uint32_t steps)
{
    SimConfig cfg;
    cfg.model = ModelKind::Null;
    cfg.n = n;
    cfg.p_connect = p;
    cfg.steps = steps;
    return cfg;
}

} // namespace

TEST_CASE("range step: link set equals brute-force distance oracle")
{
    for (double r : {0.0, 1.0, 1.5, 2.0, 2.9, 4.0}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            RngStream rng(seed);
            auto world = init_population(range_config(20, 8, r, 1), rng);
            for (int t = 0; t < 30; ++t) {
                const auto before = world.positions();
                const auto snap = step_range(world, r, rng);
                CHECK(snap == NetworkSnapshot(20, oracle::range_links(world.positions(), r)));

                std::set<Coordinate> tiles(world.positions().begin(), world.positions().end());
                CHECK(tiles.size() == 20);
                for (AgentId a = 0; a < 20; ++a) {
                    const auto p = world.position(a);
                    CHECK(world.in_bounds(p));
                    CHECK(world.occupant(p) == a);
                    CHECK(std::abs(p.x - before[a].x) <= 1);
                    CHECK(std::abs(p.y - before[a].y) <= 1);
                }
            }
        }
    }
}

TEST_CASE("range step examples")
{
    SUBCASE("r = 0 gives no links")
    {
        RngStream rng(3);
        auto world = init_population(range_config(30, 6, 0.0, 1), rng);
        for (int t = 0; t < 20; ++t)
            CHECK(step_range(world, 0.0, rng).edge_count() == 0);
    }
    SUBCASE("two adjacent agents in range")
    {
        // Agents linked at distance 1; after the step, still linked iff in range.
        WorldState world(2, {{0, 0}, {0, 1}});
        update_agent_links(world, 0, RangeRule{1.5});
        CHECK(world.links().contains(0, 1));
        RngStream rng(1);
        const auto snap = step_range(world, 1.5, rng);
        // 2x2 grid: maximum distance is sqrt(2) < 1.5, so the pair stays linked.
        CHECK(snap.edge_count() == 1);
    }
    SUBCASE("hand-built four agent layout on a 4x4 grid, r = 1")
    {
        //  y=3 . . . .
        //  y=2 . 2 3 .
        //  y=1 . 1 . .
        //  y=0 0 . . .
        WorldState world(4, {{0, 0}, {1, 1}, {1, 2}, {2, 2}});
        for (AgentId a = 0; a < 4; ++a)
            update_agent_links(world, a, RangeRule{1.0});
        const NetworkSnapshot snap(world.links());
        CHECK(snap.edges() == std::vector<Edge>{{1, 2}, {2, 3}});

        // Moving agent 0 next to agent 1 adds exactly that link; moving
        // agent 3 away drops its link.
        world.move_agent(0, {1, 0});
        update_agent_links(world, 0, RangeRule{1.0});
        world.move_agent(3, {3, 3});
        update_agent_links(world, 3, RangeRule{1.0});
        CHECK(NetworkSnapshot(world.links()).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    }
}

TEST_CASE("range links are monotone in r for fixed positions")
{
    RngStream rng(11);
    const auto world = init_population(range_config(25, 9, 0, 1), rng);
    std::vector<Edge> previous;
    for (double r = 0.0; r <= 13.0; r += 0.25) {
        auto links = oracle::range_links(world.positions(), r);
        CHECK(std::includes(links.begin(), links.end(), previous.begin(), previous.end()));

        WorldState w = world;
        for (AgentId a = 0; a < w.agent_count(); ++a)
            update_agent_links(w, a, RangeRule{r});
        CHECK(NetworkSnapshot(w.links()).edges() == links);
        previous = std::move(links);
    }
}

TEST_CASE("run_range")
{
    SUBCASE("steps = 0 gives an empty trajectory")
    {
        RngStream rng(1);
        CHECK(run_range(range_config(5, 5, 1, 0), rng).empty());
    }
    SUBCASE("r >= g*sqrt(2) is complete every step")
    {
        RngStream rng(1);
        const auto snaps = run_range(range_config(12, 6, 6 * std::sqrt(2.0), 25), rng);
        REQUIRE(snaps.size() == 25);
        for (auto const& s : snaps)
            CHECK(s.edge_count() == 12 * 11 / 2);
    }
    SUBCASE("saturated grid never moves")
    {
        auto cfg = range_config(16, 4, 1.0, 20);
        RngStream rng(4);
        auto world = init_population(cfg, rng);
        const auto start = world.positions();
        for (int t = 0; t < 20; ++t) {
            step_range(world, cfg.r, rng);
            CHECK(world.positions() == start);
        }
    }
    SUBCASE("observers run once per step in order")
    {
        std::vector<std::uint32_t> seen;
        RngStream rng(1);
        run_range(range_config(5, 5, 1, 7), rng,
                  {[&](std::uint32_t t, NetworkSnapshot const&) { seen.push_back(t); }});
        CHECK(seen == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6, 7});
    }
    SUBCASE("determinism and model checks")
    {
        auto cfg = range_config(10, 10, 2, 30);
        RngStream a(8), b(8);
        CHECK(run_range(cfg, a) == run_range(cfg, b));
        RngStream c(8);
        CHECK_THROWS_AS(run_range(null_config(10, 0.2, 5), c), ConfigError);
        cfg.n = 101;
        CHECK_THROWS_AS(run_range(cfg, c), ConfigError);
    }
}

TEST_CASE("null step examples")
{
    RngStream rng(2);
    SUBCASE("p = 0 stays empty")
    {
        NullState st(15);
        for (int t = 0; t < 50; ++t)
            CHECK(step_null(st, 0.0, rng).edge_count() == 0);
    }
    SUBCASE("p = 1 is complete from the first step")
    {
        NullState st(15);
        for (int t = 0; t < 50; ++t)
            CHECK(step_null(st, 1.0, rng).edge_count() == 105);
    }
    SUBCASE("invalid probability")
    {
        NullState st(4);
        CHECK_THROWS_AS(step_null(st, -0.1, rng), ConfigError);
        CHECK_THROWS_AS(step_null(st, 1.5, rng), ConfigError);
        CHECK_THROWS_AS(step_null(st, std::nan(""), rng), ConfigError);
    }
}

TEST_CASE("null model edge density is stationary at p")
{
    // Each pair is a two-state chain whose state after one step is a fresh
    // Bernoulli(p) draw regardless of the previous state, so every
    // pair-step is an independent Bernoulli(p) sample.
    const std::uint32_t n = 50, steps = 10000;
    const double p = 0.3;
    RngStream rng(17);
    NullState st(n);
    double total = 0;
    for (std::uint32_t t = 0; t < steps; ++t)
        total += static_cast<double>(step_null(st, p, rng).edge_count());
    const double samples = double(steps) * n * (n - 1) / 2;
    const double density = total / samples;
    CHECK(std::abs(density - p) < 0.02);
    CHECK(std::abs(density - p) < 3 * std::sqrt(p * (1 - p) / samples));
}

TEST_CASE("null model pairs evolve independently")
{
    const std::uint32_t n = 6, steps = 20000;
    const double p = 0.4;
    RngStream rng(23);
    NullState st(n);
    double a = 0, b = 0, ab = 0;
    for (std::uint32_t t = 0; t < steps; ++t) {
        const auto s = step_null(st, p, rng);
        const double x = s.has_edge(0, 1), y = s.has_edge(2, 3);
        a += x;
        b += y;
        ab += x * y;
    }
    const double cov = ab / steps - (a / steps) * (b / steps);
    const double corr = cov / (p * (1 - p));
    CHECK(std::abs(corr) < 4 / std::sqrt(double(steps)));
}

TEST_CASE("run_model dispatches and is deterministic")
{
    auto cfg = null_config(20, 0.2, 15);
    RngStream a(5), b(5);
    const auto sa = run_model(cfg, a);
    CHECK(sa.size() == 15);
    CHECK(sa == run_model(cfg, b));
    cfg.p_connect = 2;
    CHECK_THROWS_AS(run_model(cfg, a), ConfigError);
}
