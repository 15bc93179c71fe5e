#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ehrelay/core_model.hpp"
#include "ehrelay/schedulers.hpp"

namespace ehrelay {

/// A scheduling policy plus the conventional (non-harvesting) max-min
/// benchmark, in which the relay transmits at the source power.
enum class Scheme { MaxMin, Approach1, Exhaustive, Greedy, Random, ConventionalMaxMin };

[[nodiscard]] std::string_view to_string(Scheme s);
[[nodiscard]] std::optional<Scheme> parse_scheme(std::string_view name);

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    /// Trials are cut into this many contiguous blocks; any value gives the
    /// same counts because every trial owns its random stream.
    int shards = 1;
    /// Worker threads; 0 picks the hardware concurrency.
    int threads = 0;
    Scheme scheme = Scheme::MaxMin;
    std::uint64_t enumeration_budget = kDefaultEnumerationBudget;

    void validate() const;
};

struct RankEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t outage_count = 0;
};

/// Empirical outage. For m > 1 the overall figure is the weakest scheduled
/// rank (any nominal rank in outage); per_rank[r-1] is rank r, ranked by
/// descending received SNR within each trial. per_rank is empty for m = 1.
struct OutageEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t outage_count = 0;
    std::vector<RankEstimate> per_rank;
};

/// Runs mc.trials realizations of channel sampling, scheduling and outage
/// evaluation. Trial t uses RandomStream(seed, t, 0) for channels and
/// RandomStream(seed, t, 1) for channel-blind selection, so different
/// schemes run with the same seed see common random numbers.
[[nodiscard]] OutageEstimate estimate_outage(SystemConfig const& cfg, McConfig const& mc);

/// Empirical histogram of |S| (index n holds the count of trials with |S| = n).
[[nodiscard]] std::vector<std::uint64_t> decode_set_size_counts(SystemConfig const& cfg, McConfig const& mc);

/// One (scheme, SNR point, user rank) row pairing analytic and empirical outage.
struct SweepRecord {
    std::string scheme;
    int num_pairs = 0;
    int num_scheduled = 0;
    double rate = 0.0;
    double eta = 0.0;
    double snr_db = 0.0;
    int user_rank = 1;
    std::optional<double> analytic_po;
    double mc_po = 0.0;
    double mc_stderr = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Closed-form outage for a scheme at the given rank, when one is in scope.
/// Path-loss placements, exhaustive search and random selection with m > 1
/// have none.
[[nodiscard]] std::optional<double> analytic_outage(Scheme scheme, SystemConfig const& cfg, int rank = 1);

/// For every scheme and SNR point (dB, strictly increasing) runs
/// estimate_outage and attaches the analytic value where one exists.
/// Emits m rows per point for m > 1, one otherwise.
[[nodiscard]] std::vector<SweepRecord> sweep(SystemConfig const& cfg_base, std::vector<double> const& snr_db_grid,
                                             std::vector<Scheme> const& schemes, McConfig const& mc);

}  // namespace ehrelay
