#include "ehrelay/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ehrelay/errors.hpp"

namespace ehrelay {

void SystemConfig::validate() const {
    if (num_pairs < 1) {
        throw ConfigError("num_pairs must be at least 1");
    }
    if (num_scheduled < 1 || num_scheduled > num_pairs) {
        throw ConfigError("num_scheduled must lie in [1, num_pairs], got m=" + std::to_string(num_scheduled) +
                          " with M=" + std::to_string(num_pairs));
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw ConfigError("eta must lie in (0, 1]");
    }
    if (!(tx_power > 0.0) || !std::isfinite(tx_power)) {
        throw ConfigError("tx_power must be positive and finite");
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ConfigError("rate must be positive and finite");
    }
    if (auto const* disk = std::get_if<DiskPathLoss>(&placement)) {
        if (!(disk->radius > 0.0) || !std::isfinite(disk->radius)) {
            throw ConfigError("disk radius must be positive");
        }
        if (!(disk->exponent >= 0.0) || !std::isfinite(disk->exponent)) {
            throw ConfigError("path-loss exponent must be non-negative");
        }
    }
}

double SystemConfig::snr_threshold() const { return std::exp2(2.0 * rate) - 1.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Thresholds Thresholds::from_eps(double eps, double eps1) {
    Thresholds thr;
    thr.eps = eps;
    thr.eps1 = eps1;
    thr.eps0 = 0.5 * (eps + std::sqrt(eps * eps + 4.0 * eps1));
    return thr;
}

Thresholds compute_thresholds(SystemConfig const& cfg) {
    double const eps = cfg.snr_threshold() / cfg.tx_power;
    return Thresholds::from_eps(eps, eps / cfg.eta);
}

namespace {

// Distance of a point drawn uniformly on a disk from its centre.
inline double disk_distance(double radius, RandomStream& rng) { return radius * std::sqrt(rng.uniform()); }

}  // namespace

void sample_channels(SystemConfig const& cfg, RandomStream& rng, ChannelRealization& out) {
    auto const n = static_cast<std::size_t>(cfg.num_pairs);
    out.src_relay.resize(n);
    out.relay_dst.resize(n);
    if (auto const* disk = std::get_if<DiskPathLoss>(&cfg.placement)) {
        // Draw order per pair: source distance, source fading, destination
        // distance, destination fading.
        for (std::size_t i = 0; i < n; ++i) {
            double const ds = disk_distance(disk->radius, rng);
            out.src_relay[i] = rng.exponential() / (1.0 + std::pow(ds, disk->exponent));
            double const dd = disk_distance(disk->radius, rng);
            out.relay_dst[i] = rng.exponential() / (1.0 + std::pow(dd, disk->exponent));
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.src_relay[i] = rng.exponential();
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.relay_dst[i] = rng.exponential();
    }
}

ChannelRealization sample_channels(SystemConfig const& cfg, RandomStream& rng) {
    ChannelRealization ch;
    sample_channels(cfg, rng, ch);
    return ch;
}

double optimal_theta(double gain_h, Thresholds const& thr) {
    if (gain_h <= 0.0) {
        return 0.0;
    }
    return std::max(1.0 - thr.eps / gain_h, 0.0);
}

double harvested_power(double gain_h, SystemConfig const& cfg, Thresholds const& thr) {
    return cfg.eta * cfg.tx_power * std::max(gain_h - thr.eps, 0.0);
}

bool destination_outage(double relay_power, double gain_g, SystemConfig const& cfg) {
    return relay_power * gain_g < cfg.snr_threshold();
}

}  // namespace ehrelay
