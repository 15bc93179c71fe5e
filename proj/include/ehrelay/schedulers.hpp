#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ehrelay/core_model.hpp"
#include "ehrelay/random_stream.hpp"

namespace ehrelay {

/// Scheduling policies that map one channel realization to a decision.
enum class Policy {
    MaxMin,       // argmax_i min{|h_i|^2, |g_i|^2}, single pair, dedicated power
    Approach1,    // decode set, then argmax of the relay-hop SNR
    Exhaustive,   // all size-min{m,|S|} subsets of the decode set
    Greedy,       // best sources and best destinations, decoupled
    Random,       // uniform without replacement, channel-blind
};

[[nodiscard]] std::string_view to_string(Policy p);

/// Scheduled sources/destinations are listed in matching order; destination
/// k receives dest_power[k]. An empty decision means nothing was scheduled.
struct ScheduleDecision {
    std::vector<int> sources;
    std::vector<int> destinations;
    std::vector<double> dest_power;
    int decode_set_size = 0;

    [[nodiscard]] std::size_t size() const noexcept { return destinations.size(); }
    void clear() noexcept;
};

/// Default ceiling on C(|S|, m) for the exhaustive policy.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// Indices with |h_i|^2 >= eps (inclusive), ascending.
[[nodiscard]] std::vector<int> decode_set(ChannelRealization const& ch, Thresholds const& thr);

[[nodiscard]] ScheduleDecision select_max_min(ChannelRealization const& ch, SystemConfig const& cfg,
                                              Thresholds const& thr);
[[nodiscard]] ScheduleDecision select_approach1(ChannelRealization const& ch, SystemConfig const& cfg,
                                                Thresholds const& thr);
[[nodiscard]] ScheduleDecision select_exhaustive(ChannelRealization const& ch, SystemConfig const& cfg,
                                                 Thresholds const& thr,
                                                 std::uint64_t budget = kDefaultEnumerationBudget);
[[nodiscard]] ScheduleDecision select_greedy(ChannelRealization const& ch, SystemConfig const& cfg,
                                             Thresholds const& thr);
[[nodiscard]] ScheduleDecision select_random(ChannelRealization const& ch, SystemConfig const& cfg,
                                             Thresholds const& thr, RandomStream& rng);

/// Reusable scratch space so the Monte Carlo loop does not allocate per trial.
class Scheduler {
  public:
    Scheduler(Policy policy, SystemConfig const& cfg, std::uint64_t budget = kDefaultEnumerationBudget);

    /// Fills `out`. `rng` is only consumed by Policy::Random.
    void schedule(ChannelRealization const& ch, Thresholds const& thr, RandomStream& rng, ScheduleDecision& out);

    [[nodiscard]] Policy policy() const noexcept { return policy_; }

  private:
    void max_min(ChannelRealization const& ch, Thresholds const& thr, ScheduleDecision& out) const;
    void approach1(ChannelRealization const& ch, Thresholds const& thr, ScheduleDecision& out) const;
    void exhaustive(ChannelRealization const& ch, Thresholds const& thr, ScheduleDecision& out);
    void greedy(ChannelRealization const& ch, Thresholds const& thr, ScheduleDecision& out);
    void random(ChannelRealization const& ch, Thresholds const& thr, RandomStream& rng, ScheduleDecision& out);
    void collect_decode_set(ChannelRealization const& ch, Thresholds const& thr);

    Policy policy_;
    SystemConfig cfg_;
    std::uint64_t budget_;
    std::vector<int> decodable_;
    std::vector<int> order_;
    std::vector<int> combo_;
    std::vector<int> best_combo_;
};

}  // namespace ehrelay
