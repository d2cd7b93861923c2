#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rangenet/csv.hpp"
#include "rangenet/harness.hpp"
#include "rangenet/metrics.hpp"
#include "rangenet/models.hpp"

namespace py = pybind11;
using namespace rangenet;

namespace {

NetworkSnapshot make_snapshot(std::uint32_t n, std::vector<Edge> edges)
{
    return NetworkSnapshot(n, std::move(edges));
}

py::dict aggregate_dict(Aggregate const& a)
{
    py::dict d;
    d["mean"] = a.mean;
    d["std"] = a.std;
    d["band"] = a.band;
    d["count"] = a.count;
    return d;
}

} // namespace

PYBIND11_MODULE(_rangenet, m)
{
    m.doc() = "Range-constrained dynamic network simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<ModelKind>(m, "ModelKind")
        .value("Range", ModelKind::Range)
        .value("Null", ModelKind::Null);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def(py::init([](ModelKind model, std::uint32_t n, std::uint32_t g, double r,
                         double p_connect, std::uint32_t steps, std::uint32_t rounds,
                         std::uint64_t seed) {
                 return SimConfig{model, n, g, r, p_connect, steps, rounds, seed};
             }),
             py::arg("model") = ModelKind::Range, py::arg("n") = 20, py::arg("g") = 10,
             py::arg("r") = 2.0, py::arg("p_connect") = 0.2, py::arg("steps") = 100,
             py::arg("rounds") = 100, py::arg("seed") = 1)
        .def_readwrite("model", &SimConfig::model)
        .def_readwrite("n", &SimConfig::n)
        .def_readwrite("g", &SimConfig::g)
        .def_readwrite("r", &SimConfig::r)
        .def_readwrite("p_connect", &SimConfig::p_connect)
        .def_readwrite("steps", &SimConfig::steps)
        .def_readwrite("rounds", &SimConfig::rounds)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("round_distance", &SimConfig::round_distance)
        .def("validate", &SimConfig::validate);

    py::class_<NetworkSnapshot>(m, "NetworkSnapshot")
        .def(py::init(&make_snapshot), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &NetworkSnapshot::node_count)
        .def_property_readonly("edges", &NetworkSnapshot::edges)
        .def("__len__", &NetworkSnapshot::edge_count);

    py::class_<MetricsRow>(m, "MetricsRow")
        .def_readonly("timestep", &MetricsRow::timestep)
        .def_readonly("avg_degree", &MetricsRow::avg_degree)
        .def_readonly("clustering", &MetricsRow::clustering)
        .def_readonly("aspl", &MetricsRow::aspl)
        .def_readonly("n_components", &MetricsRow::n_components)
        .def_readonly("largest_component", &MetricsRow::largest_component)
        .def_readonly("small_world", &MetricsRow::small_world)
        .def("__repr__", [](MetricsRow const& r) {
            return "MetricsRow(t=" + std::to_string(r.timestep)
                   + ", avg_degree=" + format_number(r.avg_degree)
                   + ", clustering=" + format_number(r.clustering)
                   + ", aspl=" + format_number(r.aspl) + ")";
        });

    m.def("average_degree", &average_degree);
    m.def("average_clustering", &average_clustering);
    m.def("average_shortest_path_length", &average_shortest_path_length);
    m.def("components", [](NetworkSnapshot const& s) {
        const auto c = components(s);
        return py::make_tuple(c.count, c.largest);
    });
    m.def(
        "small_world_index",
        [](NetworkSnapshot const& s, std::uint64_t seed, std::uint32_t n_ref) {
            RngStream rng(seed);
            return small_world_index(s, rng, n_ref);
        },
        py::arg("snapshot"), py::arg("seed") = 1, py::arg("n_ref") = kDefaultSmallWorldRefs);
    m.def(
        "metrics_snapshot",
        [](NetworkSnapshot const& s, std::uint64_t seed, std::uint32_t n_ref) {
            RngStream rng(seed);
            return metrics_snapshot(s, rng, n_ref);
        },
        py::arg("snapshot"), py::arg("seed") = 1, py::arg("n_ref") = kDefaultSmallWorldRefs);

    m.def(
        "simulate",
        [](SimConfig const& cfg, std::uint32_t round_idx) {
            auto rng = RngStream::for_round(cfg.seed, round_idx, StreamPurpose::Model);
            return run_model(cfg, rng);
        },
        py::arg("config"), py::arg("round") = 0,
        "Network snapshot of every timestep of one round");

    py::class_<SIConfig>(m, "SIConfig")
        .def(py::init([](std::uint32_t n_init, double p_infect, bool per_agent) {
                 return SIConfig{n_init, p_infect,
                                 per_agent ? SiExposure::PerAgent : SiExposure::PerNeighbor};
             }),
             py::arg("n_init") = 1, py::arg("p_infect") = 0.1, py::arg("per_agent") = false);
    py::class_<ComplexContagionConfig>(m, "ComplexContagionConfig")
        .def(py::init([](double p_base, double w, std::uint32_t n_init) {
                 return ComplexContagionConfig{p_base, w, n_init};
             }),
             py::arg("p_base") = 0.01, py::arg("w") = 1.0, py::arg("n_init") = 1);
    py::class_<CulturalConfig>(m, "CulturalConfig")
        .def(py::init([](double p_a, double p_b, double init_split) {
                 return CulturalConfig{p_a, p_b, init_split};
             }),
             py::arg("p_a") = 0.1, py::arg("p_b") = 0.2, py::arg("init_split") = 0.5);
    py::class_<PotionConfig>(m, "PotionConfig")
        .def(py::init([](double p_diff, std::optional<std::string> recipes) {
                 PotionConfig cfg;
                 cfg.p_diff = p_diff;
                 if (recipes)
                     cfg.recipes = RecipeTable::load(*recipes);
                 return cfg;
             }),
             py::arg("p_diff") = 0.5, py::arg("recipes") = std::nullopt);

    py::class_<DiffusionTrajectory>(m, "DiffusionTrajectory")
        .def_readonly("frequency", &DiffusionTrajectory::frequency)
        .def_readonly("fixation_time", &DiffusionTrajectory::fixation_time)
        .def_readonly("crossover_time", &DiffusionTrajectory::crossover_time)
        .def_readonly("crossover_events", &DiffusionTrajectory::crossover_events);

    py::class_<RoundResult>(m, "RoundResult")
        .def_readonly("metrics", &RoundResult::metrics)
        .def_readonly("diffusion", &RoundResult::diffusion);

    m.def(
        "run_round",
        [](SimConfig const& cfg, std::uint32_t round_idx,
           std::optional<DiffusionConfig> diffusion, bool metrics, std::uint32_t refs) {
            py::gil_scoped_release release;
            return run_round(cfg, round_idx, diffusion, {metrics, refs});
        },
        py::arg("config"), py::arg("round") = 0, py::arg("diffusion") = std::nullopt,
        py::arg("metrics") = true, py::arg("small_world_refs") = kDefaultSmallWorldRefs);

    m.def("aggregate_rounds", [](std::vector<double> const& v) {
        return aggregate_dict(aggregate_rounds(v));
    });

    m.def(
        "run_sweep",
        [](SimConfig const& base, std::string const& vary, std::vector<double> values,
           bool paired, std::optional<DiffusionConfig> diffusion, bool metrics,
           std::uint32_t refs, std::uint32_t burn_in, std::uint32_t workers,
           std::optional<std::string> out) {
            SweepConfig sweep;
            sweep.base = base;
            sweep.vary = parse_sweep_param(vary);
            sweep.values = std::move(values);
            sweep.paired = paired;
            sweep.diffusion = std::move(diffusion);
            sweep.collect_metrics = metrics;
            sweep.small_world_refs = refs;
            sweep.burn_in = burn_in;
            sweep.workers = workers;
            std::vector<AggregateRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(sweep);
            }
            if (out)
                write_sweep_csv(rows, sweep.diffusion.has_value(), *out);

            py::list result;
            for (auto const& row : rows) {
                py::dict d;
                d["model"] = std::string(to_string(row.config.model));
                d["config"] = row.config;
                d["param_name"] = std::string(param_name(row.param));
                d["param_value"] = row.param_value;
                d["rounds"] = row.rounds;
                for (std::size_t k = 0; k < kMetricCount; ++k)
                    d[py::str(std::string(metric_name(kAllMetrics[k])))] =
                        aggregate_dict(row.metrics[k]);
                if (row.fixation_time)
                    d["fixation_time"] = aggregate_dict(*row.fixation_time);
                if (row.crossover_time)
                    d["crossover_time"] = aggregate_dict(*row.crossover_time);
                result.append(d);
            }
            return result;
        },
        py::arg("base"), py::arg("vary"), py::arg("values"), py::arg("paired") = false,
        py::arg("diffusion") = std::nullopt, py::arg("metrics") = true,
        py::arg("small_world_refs") = kDefaultSmallWorldRefs, py::arg("burn_in") = 0,
        py::arg("workers") = 1, py::arg("out") = std::nullopt);
}
