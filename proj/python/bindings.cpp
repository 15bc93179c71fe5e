#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ehrelay/analytic.hpp"
#include "ehrelay/cli.hpp"
#include "ehrelay/core_model.hpp"
#include "ehrelay/errors.hpp"
#include "ehrelay/montecarlo.hpp"
#include "ehrelay/schedulers.hpp"

namespace py = pybind11;
using namespace ehrelay;

namespace {

SystemConfig make_config(int num_pairs, int num_scheduled, double rate, double eta, double tx_power,
                         std::string const& placement, double disk_radius, double pathloss_exp) {
    SystemConfig cfg;
    cfg.num_pairs = num_pairs;
    cfg.num_scheduled = num_scheduled;
    cfg.rate = rate;
    cfg.eta = eta;
    cfg.tx_power = tx_power;
    if (placement == "disk") {
        cfg.placement = DiskPathLoss{disk_radius, pathloss_exp};
    } else if (placement != "iid") {
        throw ConfigError("placement must be 'iid' or 'disk'");
    }
    cfg.validate();
    return cfg;
}

Scheme to_scheme(std::string const& name) {
    auto s = parse_scheme(name);
    if (!s) {
        throw ConfigError("unknown scheme '" + name + "'");
    }
    return *s;
}

McConfig make_mc(std::string const& scheme, std::uint64_t trials, std::uint64_t seed, int shards, int threads,
                 std::uint64_t budget) {
    McConfig mc;
    mc.scheme = to_scheme(scheme);
    mc.trials = trials;
    mc.seed = seed;
    mc.shards = shards;
    mc.threads = threads;
    mc.enumeration_budget = budget;
    mc.validate();
    return mc;
}

ScheduleDecision schedule(std::string const& policy, std::vector<double> const& h, std::vector<double> const& g,
                          SystemConfig const& cfg, std::uint64_t seed, std::uint64_t budget) {
    if (h.size() != g.size() || static_cast<int>(h.size()) != cfg.num_pairs) {
        throw ConfigError("h and g must both have num_pairs entries");
    }
    ChannelRealization ch{h, g};
    Thresholds const thr = compute_thresholds(cfg);
    if (policy == "maxmin") return select_max_min(ch, cfg, thr);
    if (policy == "approach1") return select_approach1(ch, cfg, thr);
    if (policy == "exhaustive") return select_exhaustive(ch, cfg, thr, budget);
    if (policy == "greedy") return select_greedy(ch, cfg, thr);
    if (policy == "random") {
        RandomStream rng(seed, 0, 1);
        return select_random(ch, cfg, thr, rng);
    }
    throw ConfigError("unknown policy '" + policy + "'");
}

py::dict record_to_dict(SweepRecord const& r) {
    py::dict d;
    d["scheme"] = r.scheme;
    d["M"] = r.num_pairs;
    d["m"] = r.num_scheduled;
    d["R_bpcu"] = r.rate;
    d["eta"] = r.eta;
    d["snr_db"] = r.snr_db;
    d["user_rank"] = r.user_rank;
    d["analytic_po"] = r.analytic_po ? py::cast(*r.analytic_po) : py::none();
    d["mc_po"] = r.mc_po;
    d["mc_stderr"] = r.mc_stderr;
    d["trials"] = r.trials;
    d["seed"] = r.seed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Scheduling and outage analysis for an energy-harvesting relay network";

    auto base = py::register_exception<std::runtime_error>(m, "EhrelayError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
    py::register_exception<EnumerationLimitError>(m, "EnumerationLimitError", base.ptr());
    py::register_exception<FitError>(m, "FitError", base.ptr());

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init(&make_config), py::arg("num_pairs") = 1, py::arg("num_scheduled") = 1, py::arg("rate") = 1.0,
             py::arg("eta") = 1.0, py::arg("tx_power") = 1.0, py::arg("placement") = "iid",
             py::arg("disk_radius") = 2.0, py::arg("pathloss_exp") = 2.0)
        .def_readonly("num_pairs", &SystemConfig::num_pairs)
        .def_readonly("num_scheduled", &SystemConfig::num_scheduled)
        .def_readonly("rate", &SystemConfig::rate)
        .def_readonly("eta", &SystemConfig::eta)
        .def_readonly("tx_power", &SystemConfig::tx_power)
        .def("snr_threshold", &SystemConfig::snr_threshold);

    py::class_<Thresholds>(m, "Thresholds")
        .def_readonly("eps", &Thresholds::eps)
        .def_readonly("eps1", &Thresholds::eps1)
        .def_readonly("eps0", &Thresholds::eps0);

    py::class_<ScheduleDecision>(m, "ScheduleDecision")
        .def_readonly("sources", &ScheduleDecision::sources)
        .def_readonly("destinations", &ScheduleDecision::destinations)
        .def_readonly("dest_power", &ScheduleDecision::dest_power)
        .def_readonly("decode_set_size", &ScheduleDecision::decode_set_size);

    py::class_<RankEstimate>(m, "RankEstimate")
        .def_readonly("p_hat", &RankEstimate::p_hat)
        .def_readonly("std_error", &RankEstimate::std_error)
        .def_readonly("outage_count", &RankEstimate::outage_count);

    py::class_<OutageEstimate>(m, "OutageEstimate")
        .def_readonly("p_hat", &OutageEstimate::p_hat)
        .def_readonly("std_error", &OutageEstimate::std_error)
        .def_readonly("trials", &OutageEstimate::trials)
        .def_readonly("outage_count", &OutageEstimate::outage_count)
        .def_readonly("per_rank", &OutageEstimate::per_rank);

    m.def("db_to_linear", &db_to_linear, py::arg("db"));
    m.def("compute_thresholds", &compute_thresholds, py::arg("cfg"));
    m.def("harvested_power", &harvested_power, py::arg("gain_h"), py::arg("cfg"), py::arg("thr"));
    m.def("destination_outage", &destination_outage, py::arg("relay_power"), py::arg("gain_g"), py::arg("cfg"));
    m.def("schedule", &schedule, py::arg("policy"), py::arg("h"), py::arg("g"), py::arg("cfg"), py::arg("seed") = 1,
          py::arg("budget") = kDefaultEnumerationBudget,
          "Applies one policy (maxmin, approach1, exhaustive, greedy, random) to a single realization.");

    m.def(
        "estimate_outage",
        [](SystemConfig const& cfg, std::string const& scheme, std::uint64_t trials, std::uint64_t seed, int shards,
           int threads, std::uint64_t budget) {
            McConfig const mc = make_mc(scheme, trials, seed, shards, threads, budget);
            py::gil_scoped_release release;
            return estimate_outage(cfg, mc);
        },
        py::arg("cfg"), py::arg("scheme") = "maxmin", py::arg("trials") = 1'000'000, py::arg("seed") = 1,
        py::arg("shards") = 1, py::arg("threads") = 0, py::arg("budget") = kDefaultEnumerationBudget);

    m.def(
        "analytic_outage",
        [](std::string const& scheme, SystemConfig const& cfg, int rank) {
            return analytic_outage(to_scheme(scheme), cfg, rank);
        },
        py::arg("scheme"), py::arg("cfg"), py::arg("rank") = 1,
        "Closed-form outage, or None when the scheme has none for this configuration.");

    m.def(
        "sweep",
        [](SystemConfig const& cfg, std::vector<double> const& snr_db, std::vector<std::string> const& schemes,
           std::uint64_t trials, std::uint64_t seed, int shards, int threads) {
            std::vector<Scheme> list;
            for (auto const& s : schemes) {
                list.push_back(to_scheme(s));
            }
            McConfig const mc = make_mc("maxmin", trials, seed, shards, threads, kDefaultEnumerationBudget);
            std::vector<SweepRecord> records;
            {
                py::gil_scoped_release release;
                records = sweep(cfg, snr_db, list, mc);
            }
            py::list out;
            for (auto const& r : records) {
                out.append(record_to_dict(r));
            }
            return out;
        },
        py::arg("cfg"), py::arg("snr_db"), py::arg("schemes"), py::arg("trials") = 1'000'000, py::arg("seed") = 1,
        py::arg("shards") = 1, py::arg("threads") = 0);

    m.def(
        "maxmin_outage",
        [](SystemConfig const& cfg) { return theorem1_maxmin_outage(AnalyticParams::from_config(cfg)); },
        py::arg("cfg"));
    m.def(
        "approach1_outage",
        [](SystemConfig const& cfg) { return approach1_outage_exact(AnalyticParams::from_config(cfg)); },
        py::arg("cfg"));
    m.def(
        "greedy_outage",
        [](SystemConfig const& cfg, int rank) { return greedy_outage_lemma2(rank, AnalyticParams::from_config(cfg)); },
        py::arg("cfg"), py::arg("rank") = 1);
    m.def(
        "prob_decode_set_size",
        [](int n, SystemConfig const& cfg) { return prob_decode_set_size(n, AnalyticParams::from_config(cfg)); },
        py::arg("n"), py::arg("cfg"));
    m.def("beta_integral", &beta_integral, py::arg("upper"), py::arg("i"), py::arg("eps1"));
    m.def(
        "fit_diversity_slope",
        [](std::vector<std::pair<double, double>> const& points) { return fit_diversity_slope(points); },
        py::arg("points"), "Diversity order from (P, outage) pairs, P strictly increasing.");

    m.def(
        "run_cli",
        [](std::vector<std::string> const& args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one CLI command; returns (exit_code, stdout, stderr).");
}
