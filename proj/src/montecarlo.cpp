#include "ehrelay/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

#include "ehrelay/analytic.hpp"
#include "ehrelay/errors.hpp"
#include "ehrelay/random_stream.hpp"

namespace ehrelay {
namespace {

constexpr std::uint32_t kChannelLane = 0;
constexpr std::uint32_t kSelectionLane = 1;

Policy policy_for(Scheme s) {
    switch (s) {
        case Scheme::MaxMin:
        case Scheme::ConventionalMaxMin: return Policy::MaxMin;
        case Scheme::Approach1: return Policy::Approach1;
        case Scheme::Exhaustive: return Policy::Exhaustive;
        case Scheme::Greedy: return Policy::Greedy;
        case Scheme::Random: return Policy::Random;
    }
    return Policy::MaxMin;
}

// Runs make_tally()/run(trial, tally) over all trials, one contiguous block
// per shard, then merges shard tallies in shard order.
template <typename Tally, typename MakeWorker>
Tally run_sharded(McConfig const& mc, Tally const& zero, MakeWorker make_worker) {
    auto const shards = static_cast<std::uint64_t>(mc.shards);
    std::vector<Tally> partial(shards, zero);
    std::vector<std::exception_ptr> errors(shards);
    std::atomic<std::uint64_t> next{0};

    auto work = [&] {
        auto worker = make_worker();
        for (std::uint64_t s = next++; s < shards; s = next++) {
            std::uint64_t const begin = mc.trials * s / shards;
            std::uint64_t const end = mc.trials * (s + 1) / shards;
            try {
                for (std::uint64_t t = begin; t < end; ++t) {
                    worker(t, partial[s]);
                }
            } catch (...) {
                errors[s] = std::current_exception();
            }
        }
    };

    unsigned threads = mc.threads > 0 ? static_cast<unsigned>(mc.threads) : std::thread::hardware_concurrency();
    threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, shards));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(work);
        }
    }
    for (auto const& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    Tally total = zero;
    for (auto const& p : partial) {
        total.merge(p);
    }
    return total;
}

struct OutageTally {
    std::uint64_t overall = 0;
    std::vector<std::uint64_t> ranks;

    void merge(OutageTally const& other) {
        overall += other.overall;
        for (std::size_t r = 0; r < ranks.size(); ++r) {
            ranks[r] += other.ranks[r];
        }
    }
};

struct HistogramTally {
    std::vector<std::uint64_t> counts;

    void merge(HistogramTally const& other) {
        for (std::size_t n = 0; n < counts.size(); ++n) {
            counts[n] += other.counts[n];
        }
    }
};

// Per-thread state for evaluating single trials.
class TrialEvaluator {
  public:
    TrialEvaluator(SystemConfig const& cfg, McConfig const& mc)
        : cfg_(cfg),
          thr_(compute_thresholds(cfg)),
          seed_(mc.seed),
          conventional_(mc.scheme == Scheme::ConventionalMaxMin),
          scheduler_(policy_for(mc.scheme), cfg, mc.enumeration_budget) {
        links_.reserve(static_cast<std::size_t>(cfg.num_scheduled));
    }

    void operator()(std::uint64_t trial, OutageTally& tally) {
        RandomStream channel_rng(seed_, trial, kChannelLane);
        sample_channels(cfg_, channel_rng, channels_);
        RandomStream selection_rng(seed_, trial, kSelectionLane);
        scheduler_.schedule(channels_, thr_, selection_rng, decision_);

        if (conventional_) {
            int const i = decision_.sources.front();
            bool const out = std::min(channels_.src_relay[i], channels_.relay_dst[i]) < thr_.eps;
            tally.overall += out ? 1 : 0;
            return;
        }

        links_.clear();
        for (std::size_t k = 0; k < decision_.size(); ++k) {
            links_.emplace_back(decision_.dest_power[k], channels_.relay_dst[decision_.destinations[k]]);
        }
        std::sort(links_.begin(), links_.end(),
                  [](auto const& a, auto const& b) { return a.first * a.second > b.first * b.second; });

        int const m = cfg_.num_scheduled;
        bool weakest_out = false;
        for (int r = 0; r < m; ++r) {
            auto const idx = static_cast<std::size_t>(r);
            bool const out = idx >= links_.size() || destination_outage(links_[idx].first, links_[idx].second, cfg_);
            if (m > 1) {
                tally.ranks[idx] += out ? 1 : 0;
            }
            weakest_out = out;
        }
        tally.overall += weakest_out ? 1 : 0;
    }

  private:
    SystemConfig cfg_;
    Thresholds thr_;
    std::uint64_t seed_;
    bool conventional_;
    Scheduler scheduler_;
    ChannelRealization channels_;
    ScheduleDecision decision_;
    std::vector<std::pair<double, double>> links_;
};

double binomial_stderr(double p, std::uint64_t trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

void check_enumeration_budget(SystemConfig const& cfg, McConfig const& mc) {
    if (mc.scheme != Scheme::Exhaustive) {
        return;
    }
    // Worst case over decode-set sizes of C(n, min(m, n)).
    for (int n = 1; n <= cfg.num_pairs; ++n) {
        int const k = std::min(cfg.num_scheduled, n);
        double c = 1.0;
        for (int i = 1; i <= k; ++i) {
            c = c * (n - k + i) / i;
        }
        if (std::round(c) > static_cast<double>(mc.enumeration_budget)) {
            throw EnumerationLimitError("exhaustive scheduling with M=" + std::to_string(cfg.num_pairs) +
                                        ", m=" + std::to_string(cfg.num_scheduled) +
                                        " can need more than " + std::to_string(mc.enumeration_budget) +
                                        " combinations per realization");
        }
    }
}

}  // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::MaxMin: return "maxmin";
        case Scheme::Approach1: return "approach1";
        case Scheme::Exhaustive: return "exhaustive";
        case Scheme::Greedy: return "greedy";
        case Scheme::Random: return "random";
        case Scheme::ConventionalMaxMin: return "conventional";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::MaxMin, Scheme::Approach1, Scheme::Exhaustive, Scheme::Greedy, Scheme::Random,
                     Scheme::ConventionalMaxMin}) {
        if (name == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

void McConfig::validate() const {
    if (trials < 1000) {
        throw ConfigError("trials must be at least 1000, got " + std::to_string(trials));
    }
    if (shards < 1 || static_cast<std::uint64_t>(shards) > trials) {
        throw ConfigError("shards must lie in [1, trials]");
    }
    if (threads < 0) {
        throw ConfigError("threads must be non-negative");
    }
}

OutageEstimate estimate_outage(SystemConfig const& cfg, McConfig const& mc) {
    cfg.validate();
    mc.validate();
    check_enumeration_budget(cfg, mc);
    if (mc.scheme == Scheme::ConventionalMaxMin && cfg.num_scheduled != 1) {
        throw ConfigError("conventional max-min schedules a single pair");
    }
    int const m = cfg.num_scheduled;

    OutageTally zero;
    zero.ranks.assign(m > 1 ? static_cast<std::size_t>(m) : 0, 0);
    OutageTally const tally =
        run_sharded(mc, zero, [&] { return TrialEvaluator(cfg, mc); });

    OutageEstimate est;
    est.trials = mc.trials;
    est.outage_count = tally.overall;
    est.p_hat = static_cast<double>(tally.overall) / static_cast<double>(mc.trials);
    est.std_error = binomial_stderr(est.p_hat, mc.trials);
    for (std::uint64_t count : tally.ranks) {
        RankEstimate r;
        r.outage_count = count;
        r.p_hat = static_cast<double>(count) / static_cast<double>(mc.trials);
        r.std_error = binomial_stderr(r.p_hat, mc.trials);
        est.per_rank.push_back(r);
    }
    return est;
}

std::vector<std::uint64_t> decode_set_size_counts(SystemConfig const& cfg, McConfig const& mc) {
    cfg.validate();
    mc.validate();
    Thresholds const thr = compute_thresholds(cfg);
    HistogramTally zero;
    zero.counts.assign(static_cast<std::size_t>(cfg.num_pairs) + 1, 0);
    auto const make = [&] {
        return [&cfg, &mc, thr, ch = ChannelRealization{}](std::uint64_t trial, HistogramTally& tally) mutable {
            RandomStream rng(mc.seed, trial, kChannelLane);
            sample_channels(cfg, rng, ch);
            auto const n = std::count_if(ch.src_relay.begin(), ch.src_relay.end(),
                                         [&thr](double h) { return h >= thr.eps; });
            ++tally.counts[static_cast<std::size_t>(n)];
        };
    };
    return run_sharded(mc, zero, make).counts;
}

std::optional<double> analytic_outage(Scheme scheme, SystemConfig const& cfg, int rank) {
    if (!std::holds_alternative<UnitExponential>(cfg.placement)) {
        return std::nullopt;
    }
    AnalyticParams params = AnalyticParams::from_config(cfg);
    if (params.num_pairs > params.max_pairs_exact) {
        return std::nullopt;
    }
    bool const single = cfg.num_scheduled == 1;
    switch (scheme) {
        case Scheme::MaxMin:
            return single ? std::optional(theorem1_maxmin_outage(params)) : std::nullopt;
        case Scheme::Approach1:
            return single ? std::optional(approach1_outage_exact(params)) : std::nullopt;
        case Scheme::Greedy:
            return greedy_outage_lemma2(rank, params);
        case Scheme::ConventionalMaxMin:
            return single ? std::optional(conventional_maxmin_outage(params)) : std::nullopt;
        case Scheme::Random:
            // A channel-blind pick sees one unconditioned pair.
            if (!single) {
                return std::nullopt;
            }
            params.num_pairs = 1;
            return approach1_outage_exact(params);
        case Scheme::Exhaustive:
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<SweepRecord> sweep(SystemConfig const& cfg_base, std::vector<double> const& snr_db_grid,
                               std::vector<Scheme> const& schemes, McConfig const& mc) {
    if (snr_db_grid.empty()) {
        throw ConfigError("sweep: SNR grid is empty");
    }
    for (std::size_t k = 0; k < snr_db_grid.size(); ++k) {
        if (!std::isfinite(snr_db_grid[k]) || (k > 0 && !(snr_db_grid[k] > snr_db_grid[k - 1]))) {
            throw ConfigError("sweep: SNR grid must be finite and strictly increasing");
        }
    }
    std::vector<SweepRecord> records;
    for (Scheme scheme : schemes) {
        McConfig run = mc;
        run.scheme = scheme;
        for (double snr_db : snr_db_grid) {
            SystemConfig cfg = cfg_base;
            cfg.tx_power = db_to_linear(snr_db);
            OutageEstimate const est = estimate_outage(cfg, run);

            SweepRecord base;
            base.scheme = std::string(to_string(scheme));
            base.num_pairs = cfg.num_pairs;
            base.num_scheduled = cfg.num_scheduled;
            base.rate = cfg.rate;
            base.eta = cfg.eta;
            base.snr_db = snr_db;
            base.trials = est.trials;
            base.seed = mc.seed;
            if (est.per_rank.empty()) {
                base.analytic_po = analytic_outage(scheme, cfg, 1);
                base.mc_po = est.p_hat;
                base.mc_stderr = est.std_error;
                records.push_back(base);
                continue;
            }
            for (std::size_t r = 0; r < est.per_rank.size(); ++r) {
                SweepRecord rec = base;
                rec.user_rank = static_cast<int>(r) + 1;
                rec.analytic_po = analytic_outage(scheme, cfg, rec.user_rank);
                rec.mc_po = est.per_rank[r].p_hat;
                rec.mc_stderr = est.per_rank[r].std_error;
                records.push_back(rec);
            }
        }
    }
    return records;
}

}  // namespace ehrelay
