#include "ehrelay/schedulers.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "ehrelay/errors.hpp"

namespace ehrelay {
namespace {

// C(n, k), saturating at `cap` + 1 so callers can compare against a budget.
std::uint64_t bounded_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    k = std::min(k, n - k);
    // c stays an exact integer: c * (n-k+i) / i is C(n-k+i, i).
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        std::uint64_t const factor = n - k + i;
        if (c > std::numeric_limits<std::uint64_t>::max() / factor) {
            return cap + 1;
        }
        c = c * factor / i;
        if (c > cap) {
            return cap + 1;
        }
    }
    return c;
}

// Advances `pos` (strictly increasing indices into [0, n)) to the next
// combination in lexicographic order. Returns false after the last one.
bool next_combination(std::vector<int>& pos, int n) {
    int const k = static_cast<int>(pos.size());
    int i = k - 1;
    while (i >= 0 && pos[i] == n - k + i) {
        --i;
    }
    if (i < 0) {
        return false;
    }
    ++pos[i];
    for (int j = i + 1; j < k; ++j) {
        pos[j] = pos[j - 1] + 1;
    }
    return true;
}

}  // namespace

std::string_view to_string(Policy p) {
    switch (p) {
        case Policy::MaxMin: return "maxmin";
        case Policy::Approach1: return "approach1";
        case Policy::Exhaustive: return "exhaustive";
        case Policy::Greedy: return "greedy";
        case Policy::Random: return "random";
    }
    return "unknown";
}

void ScheduleDecision::clear() noexcept {
    sources.clear();
    destinations.clear();
    dest_power.clear();
    decode_set_size = 0;
}

std::vector<int> decode_set(ChannelRealization const& ch, Thresholds const& thr) {
    std::vector<int> s;
    for (std::size_t i = 0; i < ch.src_relay.size(); ++i) {
        if (ch.src_relay[i] >= thr.eps) {
            s.push_back(static_cast<int>(i));
        }
    }
    return s;
}

Scheduler::Scheduler(Policy policy, SystemConfig const& cfg, std::uint64_t budget)
    : policy_(policy), cfg_(cfg), budget_(budget) {
    cfg_.validate();
    if ((policy == Policy::MaxMin || policy == Policy::Approach1) && cfg_.num_scheduled != 1) {
        throw ConfigError(std::string(to_string(policy)) + " schedules a single pair; got m=" +
                          std::to_string(cfg_.num_scheduled));
    }
    auto const n = static_cast<std::size_t>(cfg_.num_pairs);
    decodable_.reserve(n);
    order_.reserve(n);
    combo_.reserve(n);
    best_combo_.reserve(n);
}

void Scheduler::schedule(ChannelRealization const& ch, Thresholds const& thr, RandomStream& rng,
                         ScheduleDecision& out) {
    out.clear();
    switch (policy_) {
        case Policy::MaxMin: max_min(ch, thr, out); break;
        case Policy::Approach1: approach1(ch, thr, out); break;
        case Policy::Exhaustive: exhaustive(ch, thr, out); break;
        case Policy::Greedy: greedy(ch, thr, out); break;
        case Policy::Random: random(ch, thr, rng, out); break;
    }
}

void Scheduler::collect_decode_set(ChannelRealization const& ch, Thresholds const& thr) {
    decodable_.clear();
    for (int i = 0; i < cfg_.num_pairs; ++i) {
        if (ch.src_relay[i] >= thr.eps) {
            decodable_.push_back(i);
        }
    }
}

void Scheduler::max_min(ChannelRealization const& ch, Thresholds const& thr, ScheduleDecision& out) const {
    int best = 0;
    double best_z = std::min(ch.src_relay[0], ch.relay_dst[0]);
    int decodable = ch.src_relay[0] >= thr.eps ? 1 : 0;
    for (int i = 1; i < cfg_.num_pairs; ++i) {
        double const z = std::min(ch.src_relay[i], ch.relay_dst[i]);
        if (z > best_z) {
            best_z = z;
            best = i;
        }
        decodable += ch.src_relay[i] >= thr.eps ? 1 : 0;
    }
    out.decode_set_size = decodable;
    out.sources.push_back(best);
    out.destinations.push_back(best);
    out.dest_power.push_back(harvested_power(ch.src_relay[best], cfg_, thr));
}

void Scheduler::approach1(ChannelRealization const& ch, Thresholds const& thr, ScheduleDecision& out) const {
    // The metric is the relay-hop SNR, which orders pairs exactly like
    // (|h|^2 - eps)|g|^2 and is bit-identical to what the exhaustive policy
    // and the outage test compute.
    int best = -1;
    double best_snr = -1.0;
    int decodable = 0;
    for (int i = 0; i < cfg_.num_pairs; ++i) {
        if (ch.src_relay[i] < thr.eps) {
            continue;
        }
        ++decodable;
        double const snr = harvested_power(ch.src_relay[i], cfg_, thr) * ch.relay_dst[i];
        if (snr > best_snr) {
            best_snr = snr;
            best = i;
        }
    }
    out.decode_set_size = decodable;
    if (best < 0) {
        return;
    }
    out.sources.push_back(best);
    out.destinations.push_back(best);
    out.dest_power.push_back(harvested_power(ch.src_relay[best], cfg_, thr));
}

void Scheduler::exhaustive(ChannelRealization const& ch, Thresholds const& thr, ScheduleDecision& out) {
    collect_decode_set(ch, thr);
    int const n = static_cast<int>(decodable_.size());
    out.decode_set_size = n;
    int const s = std::min(cfg_.num_scheduled, n);
    if (s == 0) {
        return;
    }
    if (bounded_binomial(n, s, budget_) > budget_) {
        throw EnumerationLimitError("exhaustive scheduling needs C(" + std::to_string(n) + ", " + std::to_string(s) +
                                    ") combinations, budget is " + std::to_string(budget_));
    }

    combo_.resize(s);
    std::iota(combo_.begin(), combo_.end(), 0);
    double best_min_snr = -1.0;
    double best_share = 0.0;
    do {
        double pooled = 0.0;
        double weakest_g = std::numeric_limits<double>::infinity();
        for (int p : combo_) {
            int const idx = decodable_[p];
            pooled += harvested_power(ch.src_relay[idx], cfg_, thr);
            weakest_g = std::min(weakest_g, ch.relay_dst[idx]);
        }
        double const share = pooled / s;
        double const min_snr = share * weakest_g;
        if (min_snr > best_min_snr) {
            best_min_snr = min_snr;
            best_share = share;
            best_combo_ = combo_;
        }
    } while (next_combination(combo_, n));

    for (int p : best_combo_) {
        out.sources.push_back(decodable_[p]);
        out.destinations.push_back(decodable_[p]);
        out.dest_power.push_back(best_share);
    }
}

void Scheduler::greedy(ChannelRealization const& ch, Thresholds const& thr, ScheduleDecision& out) {
    collect_decode_set(ch, thr);
    int const n = static_cast<int>(decodable_.size());
    out.decode_set_size = n;
    int const s = std::min(cfg_.num_scheduled, n);
    if (s == 0) {
        return;
    }

    auto const& h = ch.src_relay;
    std::partial_sort(decodable_.begin(), decodable_.begin() + s, decodable_.end(),
                      [&h](int a, int b) { return h[a] > h[b] || (h[a] == h[b] && a < b); });
    double pooled = 0.0;
    for (int k = 0; k < s; ++k) {
        out.sources.push_back(decodable_[k]);
        pooled += harvested_power(h[decodable_[k]], cfg_, thr);
    }

    auto const& g = ch.relay_dst;
    order_.resize(static_cast<std::size_t>(cfg_.num_pairs));
    std::iota(order_.begin(), order_.end(), 0);
    std::partial_sort(order_.begin(), order_.begin() + s, order_.end(),
                      [&g](int a, int b) { return g[a] > g[b] || (g[a] == g[b] && a < b); });
    double const share = pooled / s;
    for (int k = 0; k < s; ++k) {
        out.destinations.push_back(order_[k]);
        out.dest_power.push_back(share);
    }
}

void Scheduler::random(ChannelRealization const& ch, Thresholds const& thr, RandomStream& rng,
                       ScheduleDecision& out) {
    int const total = cfg_.num_pairs;
    int const s = cfg_.num_scheduled;
    order_.resize(static_cast<std::size_t>(total));
    std::iota(order_.begin(), order_.end(), 0);
    // Partial Fisher-Yates: the first s slots are a uniform s-subset in
    // uniformly random order.
    for (int k = 0; k < s; ++k) {
        auto const j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - k)));
        std::swap(order_[k], order_[j]);
    }
    int decodable = 0;
    for (int i = 0; i < total; ++i) {
        decodable += ch.src_relay[i] >= thr.eps ? 1 : 0;
    }
    out.decode_set_size = decodable;

    double pooled = 0.0;
    for (int k = 0; k < s; ++k) {
        out.sources.push_back(order_[k]);
        out.destinations.push_back(order_[k]);
        pooled += harvested_power(ch.src_relay[order_[k]], cfg_, thr);
    }
    out.dest_power.assign(static_cast<std::size_t>(s), pooled / s);
}

namespace {

ScheduleDecision run_policy(Policy p, ChannelRealization const& ch, SystemConfig const& cfg, Thresholds const& thr,
                            RandomStream* rng, std::uint64_t budget = kDefaultEnumerationBudget) {
    Scheduler sched(p, cfg, budget);
    ScheduleDecision out;
    RandomStream unused(0, 0);
    sched.schedule(ch, thr, rng != nullptr ? *rng : unused, out);
    return out;
}

}  // namespace

ScheduleDecision select_max_min(ChannelRealization const& ch, SystemConfig const& cfg, Thresholds const& thr) {
    return run_policy(Policy::MaxMin, ch, cfg, thr, nullptr);
}

ScheduleDecision select_approach1(ChannelRealization const& ch, SystemConfig const& cfg, Thresholds const& thr) {
    return run_policy(Policy::Approach1, ch, cfg, thr, nullptr);
}

ScheduleDecision select_exhaustive(ChannelRealization const& ch, SystemConfig const& cfg, Thresholds const& thr,
                                   std::uint64_t budget) {
    return run_policy(Policy::Exhaustive, ch, cfg, thr, nullptr, budget);
}

ScheduleDecision select_greedy(ChannelRealization const& ch, SystemConfig const& cfg, Thresholds const& thr) {
    return run_policy(Policy::Greedy, ch, cfg, thr, nullptr);
}

ScheduleDecision select_random(ChannelRealization const& ch, SystemConfig const& cfg, Thresholds const& thr,
                               RandomStream& rng) {
    return run_policy(Policy::Random, ch, cfg, thr, &rng);
}

}  // namespace ehrelay
