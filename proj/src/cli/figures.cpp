#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <tuple>

#include "ehrelay/cli.hpp"
#include "ehrelay/errors.hpp"

namespace ehrelay::cli {

namespace {

struct Block {
    SystemConfig cfg;
    std::vector<Scheme> schemes;
};

struct FigureSetup {
    std::string title;
    std::vector<Block> blocks;
    bool reference_slopes = false;
};

SystemConfig base_cfg(int M, int m, double rate, double eta, Placement placement = UnitExponential{}) {
    SystemConfig cfg;
    cfg.num_pairs = M;
    cfg.num_scheduled = m;
    cfg.rate = rate;
    cfg.eta = eta;
    cfg.placement = placement;
    return cfg;
}

FigureSetup setup_for(int id) {
    using enum Scheme;
    FigureSetup f;
    switch (id) {
        case 1:
            f.title = "Analytic vs simulated outage, m = 1, R = 4, eta = 1";
            for (int M : {1, 2, 3}) {
                f.blocks.push_back({base_cfg(M, 1, 4.0, 1.0), {MaxMin, Approach1, Greedy}});
            }
            break;
        case 2:
            f.title = "Scheme comparison, M = 3, m = 1, R = 2, eta = 1";
            f.blocks.push_back({base_cfg(3, 1, 2.0, 1.0), {Greedy, Approach1, MaxMin, Random}});
            break;
        case 3:
            f.title = "Max-min diversity, m = 1, R = 2, eta = 1";
            for (int M : {1, 2, 3, 4}) {
                f.blocks.push_back({base_cfg(M, 1, 2.0, 1.0), {MaxMin}});
            }
            f.reference_slopes = true;
            break;
        case 4:
            f.title = "Strongest and weakest user, M = 10, m = 2, R = 2, eta = 1";
            f.blocks.push_back({base_cfg(10, 2, 2.0, 1.0), {Greedy, Exhaustive}});
            f.blocks.push_back({base_cfg(10, 1, 2.0, 1.0), {MaxMin}});
            break;
        case 5:
            f.title = "Greedy per-rank outage, M = 6, m = 3, R = 4, eta = 1";
            f.blocks.push_back({base_cfg(6, 3, 4.0, 1.0), {Greedy}});
            break;
        case 6:
            f.title = "Disk placement, M = 6, m = 1, R = 2, eta = 0.5";
            f.blocks.push_back({base_cfg(6, 1, 2.0, 0.5, DiskPathLoss{}), {Random, MaxMin, Approach1, Exhaustive, Greedy}});
            break;
        case 7:
            f.title = "Disk placement, M = 6, m = 3, R = 2, eta = 0.5";
            f.blocks.push_back({base_cfg(6, 3, 2.0, 0.5, DiskPathLoss{}), {Random, Exhaustive, Greedy}});
            break;
        default:
            throw ConfigError("figure id must be in 1..7, got " + std::to_string(id));
    }
    return f;
}

std::string series_filter(SweepRecord const& r, int column) {
    std::ostringstream s;
    s << "(strcol(1) eq \"" << r.scheme << "\" && $2 == " << r.num_pairs << " && $3 == " << r.num_scheduled
      << " && $7 == " << r.user_rank << " ? $" << column << " : 1/0)";
    return s.str();
}

std::string series_label(SweepRecord const& r) {
    std::ostringstream s;
    s << r.scheme << " M=" << r.num_pairs;
    if (r.num_scheduled > 1) {
        s << " m=" << r.num_scheduled << " rank " << r.user_rank;
    }
    return s.str();
}

std::string plot_script(FigureSetup const& f, std::vector<SweepRecord> const& records, std::string const& csv_name) {
    std::ostringstream s;
    s << "# gnuplot script; run with: gnuplot -persist <this file>\n"
      << "set datafile separator ','\n"
      << "set title \"" << f.title << "\"\n"
      << "set xlabel 'SNR (dB)'\n"
      << "set ylabel 'Outage probability'\n"
      << "set logscale y\n"
      << "set format y '10^{%L}'\n"
      << "set key bottom left\n"
      << "set grid\n";

    std::vector<std::tuple<std::string, int, int, int>> seen;
    std::vector<std::string> parts;
    for (auto const& r : records) {
        auto key = std::make_tuple(r.scheme, r.num_pairs, r.num_scheduled, r.user_rank);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            continue;
        }
        seen.push_back(key);
        std::string const label = series_label(r);
        parts.push_back("'" + csv_name + "' every ::1 using 6:" + series_filter(r, 9) + " with points title '" +
                        label + " (sim)'");
        if (r.analytic_po) {
            parts.push_back("'" + csv_name + "' every ::1 using 6:" + series_filter(r, 8) +
                            " with lines title '" + label + " (analytic)'");
        }
    }

    if (f.reference_slopes) {
        // Reference lines of slope (M+1)/2, anchored at the last analytic point.
        for (auto const& block : f.blocks) {
            int const M = block.cfg.num_pairs;
            for (auto it = records.rbegin(); it != records.rend(); ++it) {
                if (it->num_pairs == M && it->analytic_po && *it->analytic_po > 0.0) {
                    double const order = (M + 1) / 2.0;
                    double const c = *it->analytic_po * std::pow(db_to_linear(it->snr_db), order);
                    s << "ref" << M << "(x) = " << format_double(c) << " * (10**(x/10.0))**(-" << format_double(order)
                      << ")\n";
                    parts.push_back("ref" + std::to_string(M) + "(x) with lines dashtype 2 title 'slope " +
                                    format_double(order) + " (M=" + std::to_string(M) + ")'");
                    break;
                }
            }
        }
    }

    s << "plot ";
    for (std::size_t k = 0; k < parts.size(); ++k) {
        s << (k == 0 ? "" : ", \\\n     ") << parts[k];
    }
    s << '\n';
    return s.str();
}

}  // namespace

std::vector<double> default_figure_grid() { return parse_snr_grid("20:50:2.5"); }

FigureOutput run_figure(int id, std::vector<double> const& snr_db_grid, McConfig const& mc,
                        std::string const& csv_name) {
    FigureSetup const f = setup_for(id);
    FigureOutput out;
    for (auto const& block : f.blocks) {
        auto recs = sweep(block.cfg, snr_db_grid, block.schemes, mc);
        out.records.insert(out.records.end(), recs.begin(), recs.end());
    }
    out.plot_script = plot_script(f, out.records, csv_name);
    return out;
}

}  // namespace ehrelay::cli
