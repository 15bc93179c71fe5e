#pragma once

#include <variant>
#include <vector>

#include "ehrelay/random_stream.hpp"

namespace ehrelay {

/// All 2M channel power gains are i.i.d. unit-mean exponential (Rayleigh).
struct UnitExponential {};

/// Sources and destinations uniform on a disk centred at the relay; each
/// Rayleigh gain is attenuated by 1 / (1 + d^exponent).
struct DiskPathLoss {
    double radius = 2.0;    // meters
    double exponent = 2.0;
};

using Placement = std::variant<UnitExponential, DiskPathLoss>;

/// Network and protocol parameters. Noise variance is normalised to one, so
/// tx_power is the linear transmit SNR.
struct SystemConfig {
    int num_pairs = 1;       // M
    int num_scheduled = 1;   // m
    double rate = 1.0;       // R, bits per channel use
    double eta = 1.0;        // energy harvesting coefficient
    double tx_power = 1.0;   // P
    Placement placement = UnitExponential{};

    /// Throws ConfigError when any invariant is violated.
    void validate() const;

    /// 2^{2R} - 1, the SNR a destination needs to support rate R.
    [[nodiscard]] double snr_threshold() const;
};

/// Converts a transmit SNR in dB to linear scale.
[[nodiscard]] double db_to_linear(double db);

/// One draw of all source-relay (|h_i|^2) and relay-destination (|g_i|^2) gains.
struct ChannelRealization {
    std::vector<double> src_relay;
    std::vector<double> relay_dst;
};

/// eps = (2^{2R}-1)/P, eps1 = eps/eta, eps0 the positive root of
/// y^2 - eps*y - eps1 = 0.
struct Thresholds {
    double eps = 0.0;
    double eps1 = 0.0;
    double eps0 = 0.0;

    /// Builds thresholds directly from (eps, eps1); allows the eps = 0 limit.
    [[nodiscard]] static Thresholds from_eps(double eps, double eps1);
};

[[nodiscard]] Thresholds compute_thresholds(SystemConfig const& cfg);

/// Draws a fresh realization. Path-loss positions are redrawn on every call.
[[nodiscard]] ChannelRealization sample_channels(SystemConfig const& cfg, RandomStream& rng);

/// Allocation-free variant for hot loops; resizes `out` to M.
void sample_channels(SystemConfig const& cfg, RandomStream& rng, ChannelRealization& out);

/// Power-splitting factor max{1 - eps/|h|^2, 0}; 0 when gain_h is 0.
[[nodiscard]] double optimal_theta(double gain_h, Thresholds const& thr);

/// eta * P * [|h|^2 - eps]^+
[[nodiscard]] double harvested_power(double gain_h, SystemConfig const& cfg, Thresholds const& thr);

/// True iff relay_power * gain_g < 2^{2R} - 1 (equality is a success).
[[nodiscard]] bool destination_outage(double relay_power, double gain_g, SystemConfig const& cfg);

}  // namespace ehrelay
