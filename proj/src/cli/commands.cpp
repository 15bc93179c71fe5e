#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ehrelay/cli.hpp"
#include "ehrelay/errors.hpp"

namespace ehrelay::cli {

namespace {

// Flags shared by the commands that run simulations.
struct SimFlags {
    std::string trials = "1e6";
    std::uint64_t seed = 1;
    int shards = 1;
    int threads = 0;
    std::string budget = "1e6";

    void attach(CLI::App& app) {
        app.add_option("--trials", trials, "Monte Carlo trials per point (scientific notation accepted)")
            ->capture_default_str();
        app.add_option("--seed", seed, "Random seed")->capture_default_str();
        app.add_option("--shards", shards, "Trial blocks; results do not depend on this")->capture_default_str();
        app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
        app.add_option("--budget", budget, "Exhaustive-search combination limit")->capture_default_str();
    }

    [[nodiscard]] McConfig to_mc() const {
        McConfig mc;
        mc.trials = parse_count(trials);
        mc.seed = seed;
        mc.shards = shards;
        mc.threads = threads;
        mc.enumeration_budget = parse_count(budget);
        return mc;
    }
};

// Network flags shared by sweep and slope.
struct NetFlags {
    int pairs = 1;
    int sched = 1;
    double rate = 1.0;
    double eta = 1.0;
    std::string placement = "iid";
    double radius = 2.0;
    double exponent = 2.0;

    void attach(CLI::App& app) {
        app.add_option("--pairs", pairs, "Number of user pairs M")->capture_default_str();
        app.add_option("--sched", sched, "Scheduled pairs m")->capture_default_str();
        app.add_option("--rate", rate, "Target rate R in bits per channel use")->capture_default_str();
        app.add_option("--eta", eta, "Energy harvesting coefficient")->capture_default_str();
        app.add_option("--placement", placement, "iid or disk")
            ->check(CLI::IsMember({"iid", "disk"}))
            ->capture_default_str();
        app.add_option("--disk-radius", radius, "Disk radius in meters")->capture_default_str();
        app.add_option("--pathloss-exp", exponent, "Path-loss exponent")->capture_default_str();
    }

    [[nodiscard]] SystemConfig to_cfg() const {
        SystemConfig cfg;
        cfg.num_pairs = pairs;
        cfg.num_scheduled = sched;
        cfg.rate = rate;
        cfg.eta = eta;
        if (placement == "disk") {
            cfg.placement = DiskPathLoss{radius, exponent};
        }
        cfg.validate();
        return cfg;
    }
};

void emit(std::string const& text, std::string const& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    file << text;
    if (!file) {
        throw ConfigError("failed writing '" + path + "'");
    }
}

std::string csv_text(std::vector<SweepRecord> const& records) {
    std::ostringstream s;
    write_csv(s, records);
    return s.str();
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scheduling and outage analysis for an energy-harvesting relay network"};
    app.name("ehrelay");
    app.require_subcommand(1);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Simulate schemes over an SNR grid and write CSV");
    NetFlags sweep_net;
    SimFlags sweep_sim;
    std::string sweep_schemes = "maxmin";
    std::string sweep_grid = "20:50:2.5";
    std::string sweep_out;
    std::string sweep_format = "csv";
    sweep_cmd->add_option("--scheme", sweep_schemes,
                          "Comma list of maxmin, approach1, exhaustive, greedy, random, conventional")
        ->capture_default_str();
    sweep_cmd->add_option("--snr-db,--power-db", sweep_grid, "Transmit SNR grid lo:hi:step or a,b,c (dB)")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Write CSV here instead of stdout");
    sweep_cmd->add_option("--format", sweep_format, "Output format")
        ->check(CLI::IsMember({"csv"}))
        ->capture_default_str();
    sweep_net.attach(*sweep_cmd);
    sweep_sim.attach(*sweep_cmd);

    // figure
    auto* fig_cmd = app.add_subcommand("figure", "Regenerate the data and a gnuplot script for one figure");
    int fig_id = 0;
    SimFlags fig_sim;
    std::string fig_grid;
    std::string fig_out;
    std::string fig_plot;
    fig_cmd->add_option("id,--id", fig_id, "Figure number 1..7")->required();
    fig_cmd->add_option("--snr-db,--power-db", fig_grid, "Override the SNR grid (default 20:50:2.5)");
    fig_cmd->add_option("--out", fig_out, "CSV path (default stdout)");
    fig_cmd->add_option("--plot", fig_plot, "gnuplot script path (default <out>.gp when --out is given)");
    fig_sim.attach(*fig_cmd);

    // slope
    auto* slope_cmd = app.add_subcommand("slope", "Fit diversity orders over an outage window");
    NetFlags slope_net;
    slope_net.rate = 2.0;
    SimFlags slope_sim;
    std::string slope_schemes = "maxmin";
    std::string slope_window = "1e-6:1e-3";
    std::string slope_grid = "0:60:2.5";
    int slope_rank = 1;
    slope_cmd->add_option("--scheme", slope_schemes, "Comma list of schemes")->capture_default_str();
    slope_cmd->add_option("--window", slope_window, "Outage window lo:hi")->capture_default_str();
    slope_cmd->add_option("--rank", slope_rank, "User rank for m > 1")->capture_default_str();
    slope_cmd->add_option("--snr-db,--power-db", slope_grid, "SNR grid for simulated curves")->capture_default_str();
    slope_net.attach(*slope_cmd);
    slope_sim.attach(*slope_cmd);

    // validate
    auto* val_cmd = app.add_subcommand("validate", "Run the acceptance checks and print PASS/FAIL per criterion");
    ValidationOptions val_opts;
    val_cmd->add_flag("--quick", val_opts.quick, "Use 10^6 trials instead of 10^7");
    val_cmd->add_option("--perturb-analytic", val_opts.perturb_analytic,
                        "Scale analytic values by (1 + x); a self-test that must fail");
    val_cmd->add_option("--seed", val_opts.seed, "Random seed")->capture_default_str();
    val_cmd->add_option("--threads", val_opts.threads, "Worker threads (0 = all cores)")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return kExitOk;
    } catch (CLI::CallForAllHelp const&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (CLI::ParseError const& e) {
        err << "ehrelay: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }

    try {
        if (*sweep_cmd) {
            SystemConfig const cfg = sweep_net.to_cfg();
            auto const grid = parse_snr_grid(sweep_grid);
            auto const schemes = parse_scheme_list(sweep_schemes);
            McConfig const mc = sweep_sim.to_mc();
            emit(csv_text(sweep(cfg, grid, schemes, mc)), sweep_out, out);
            return kExitOk;
        }
        if (*fig_cmd) {
            auto const grid = fig_grid.empty() ? default_figure_grid() : parse_snr_grid(fig_grid);
            McConfig const mc = fig_sim.to_mc();
            std::string const csv_name = fig_out.empty() ? "figure" + std::to_string(fig_id) + ".csv" : fig_out;
            FigureOutput const fig = run_figure(fig_id, grid, mc, csv_name);
            std::string plot_path = fig_plot;
            if (plot_path.empty() && !fig_out.empty()) {
                plot_path = fig_out + ".gp";
            }
            emit(csv_text(fig.records), fig_out, out);
            if (!plot_path.empty()) {
                emit(fig.plot_script, plot_path, out);
            }
            return kExitOk;
        }
        if (*slope_cmd) {
            SystemConfig const cfg = slope_net.to_cfg();
            auto const colon = slope_window.find(':');
            if (colon == std::string::npos) {
                throw ConfigError("--window must look like lo:hi");
            }
            SlopeRequest req;
            req.cfg = cfg;
            req.rank = slope_rank;
            req.window_lo = parse_snr_grid(slope_window.substr(0, colon)).at(0);
            req.window_hi = parse_snr_grid(slope_window.substr(colon + 1)).at(0);
            req.mc_grid_db = parse_snr_grid(slope_grid);
            req.mc = slope_sim.to_mc();
            if (slope_rank < 1 || slope_rank > cfg.num_scheduled) {
                throw ConfigError("--rank must lie in [1, m]");
            }
            std::ostringstream text;
            text << "scheme,M,m,rank,slope,points,source\n";
            for (Scheme s : parse_scheme_list(slope_schemes)) {
                req.scheme = s;
                req.mc.scheme = s;
                SlopeResult const r = estimate_slope(req);
                text << to_string(s) << ',' << cfg.num_pairs << ',' << cfg.num_scheduled << ',' << slope_rank << ','
                     << format_double(r.slope) << ',' << r.points << ',' << (r.analytic ? "analytic" : "simulation")
                     << '\n';
            }
            out << text.str();
            return kExitOk;
        }
        if (*val_cmd) {
            auto const results = run_validation(val_opts, &out);
            bool const all = std::all_of(results.begin(), results.end(), [](auto const& r) { return r.passed; });
            out << (all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << '\n';
            return all ? kExitOk : kExitValidationFailure;
        }
    } catch (EnumerationLimitError const& e) {
        err << "ehrelay: " << e.what() << '\n';
        return kExitBudget;
    } catch (QuadratureError const& e) {
        err << "ehrelay: " << e.what() << '\n';
        return kExitBudget;
    } catch (ConfigError const& e) {
        err << "ehrelay: " << e.what() << '\n';
        return kExitUsage;
    } catch (DomainError const& e) {
        err << "ehrelay: " << e.what() << '\n';
        return kExitUsage;
    } catch (FitError const& e) {
        err << "ehrelay: " << e.what() << '\n';
        return kExitUsage;
    } catch (std::exception const& e) {
        err << "ehrelay: " << e.what() << '\n';
        return kExitValidationFailure;
    }
    return kExitUsage;
}

}  // namespace ehrelay::cli
