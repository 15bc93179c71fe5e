#include <cmath>
#include <utility>
#include <vector>

#include "ehrelay/analytic.hpp"
#include "ehrelay/cli.hpp"
#include "ehrelay/errors.hpp"

namespace ehrelay::cli {

SlopeResult estimate_slope(SlopeRequest const& req) {
    if (!(req.window_lo > 0.0 && req.window_lo < req.window_hi && req.window_hi < 1.0)) {
        throw ConfigError("slope window must satisfy 0 < lo < hi < 1");
    }
    SystemConfig cfg = req.cfg;
    cfg.tx_power = 1.0;
    cfg.validate();

    SlopeResult result;
    std::vector<std::pair<double, double>> points;
    auto keep = [&](double snr_db, double outage) {
        if (outage >= req.window_lo && outage <= req.window_hi) {
            points.emplace_back(db_to_linear(snr_db), outage);
        }
    };

    if (analytic_outage(req.scheme, cfg, req.rank)) {
        result.analytic = true;
        if (!(req.db_step > 0.0) || req.db_hi <= req.db_lo) {
            throw ConfigError("slope grid needs db_step > 0 and db_hi > db_lo");
        }
        auto const count = static_cast<int>(std::floor((req.db_hi - req.db_lo) / req.db_step + 1e-9)) + 1;
        for (int k = 0; k < count; ++k) {
            double const db = req.db_lo + k * req.db_step;
            cfg.tx_power = db_to_linear(db);
            keep(db, *analytic_outage(req.scheme, cfg, req.rank));
        }
    } else {
        auto const records = sweep(cfg, req.mc_grid_db, {req.scheme}, req.mc);
        for (auto const& r : records) {
            if (r.user_rank == req.rank) {
                keep(r.snr_db, r.mc_po);
            }
        }
    }
    if (points.size() < 4) {
        throw FitError("only " + std::to_string(points.size()) +
                       " points fall inside the outage window; at least 4 are needed");
    }
    result.points = static_cast<int>(points.size());
    result.slope = fit_diversity_slope(points);
    return result;
}

}  // namespace ehrelay::cli
