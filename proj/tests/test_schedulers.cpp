#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "ehrelay/errors.hpp"
#include "ehrelay/schedulers.hpp"

using namespace ehrelay;

namespace {

SystemConfig unit_cfg(int pairs, int sched = 1, double eta = 1.0, double power = 1.0) {
    SystemConfig cfg;
    cfg.num_pairs = pairs;
    cfg.num_scheduled = sched;
    cfg.eta = eta;
    cfg.tx_power = power;
    cfg.rate = 1.0;
    return cfg;
}

ChannelRealization realization(std::vector<double> h, std::vector<double> g) { return {std::move(h), std::move(g)}; }

bool in_outage(ScheduleDecision const& d, ChannelRealization const& ch, SystemConfig const& cfg) {
    if (d.size() == 0) {
        return true;
    }
    return destination_outage(d.dest_power[0], ch.relay_dst[d.destinations[0]], cfg);
}

void check_invariants(ScheduleDecision const& d, ChannelRealization const& ch, SystemConfig const& cfg,
                      Thresholds const& thr, Policy policy) {
    int const M = cfg.num_pairs;
    REQUIRE(d.sources.size() == d.destinations.size());
    REQUIRE(d.dest_power.size() == d.destinations.size());
    REQUIRE(d.size() <= static_cast<std::size_t>(cfg.num_scheduled));
    std::set<int> srcs(d.sources.begin(), d.sources.end());
    std::set<int> dsts(d.destinations.begin(), d.destinations.end());
    CHECK(srcs.size() == d.sources.size());
    CHECK(dsts.size() == d.destinations.size());
    double harvested = 0.0;
    for (int s : d.sources) {
        REQUIRE(s >= 0);
        REQUIRE(s < M);
        if (policy != Policy::MaxMin && policy != Policy::Random) {
            CHECK(ch.src_relay[s] >= thr.eps);
        }
        harvested += harvested_power(ch.src_relay[s], cfg, thr);
    }
    for (int t : d.destinations) {
        REQUIRE(t >= 0);
        REQUIRE(t < M);
    }
    double total = 0.0;
    for (double p : d.dest_power) {
        CHECK(p >= 0.0);
        total += p;
    }
    CHECK(total == doctest::Approx(harvested).epsilon(1e-14));
    CHECK(d.decode_set_size == static_cast<int>(decode_set(ch, thr).size()));
}

}  // namespace

TEST_CASE("decode set") {
    auto const ch = realization({0.5, 1.0, 3.0}, {1, 1, 1});
    CHECK(decode_set(ch, Thresholds::from_eps(1.0, 1.0)) == std::vector<int>{1, 2});
    CHECK(decode_set(ch, Thresholds::from_eps(1e300, 1e300)).empty());
    CHECK(decode_set(ch, Thresholds::from_eps(1e-300, 1e-300)) == std::vector<int>{0, 1, 2});
}

TEST_CASE("max-min selection") {
    auto cfg = unit_cfg(2);
    auto const thr = Thresholds::from_eps(0.1, 0.1);
    auto d = select_max_min(realization({0.5, 2.0}, {1.0, 0.3}), cfg, thr);
    CHECK(d.sources == std::vector<int>{0});
    CHECK(d.destinations == std::vector<int>{0});
    CHECK(d.dest_power[0] == doctest::Approx(0.4));
    d = select_max_min(realization({1, 1}, {1, 1}), cfg, thr);
    CHECK(d.sources == std::vector<int>{0});
    d = select_max_min(realization({0.01}, {5.0}), unit_cfg(1), thr);
    CHECK(d.sources == std::vector<int>{0});
    CHECK(d.dest_power[0] == 0.0);
    CHECK_THROWS_AS((void)select_max_min(realization({1, 1}, {1, 1}), unit_cfg(2, 2), thr), ConfigError);
}

TEST_CASE("approach1 selection") {
    auto const cfg = unit_cfg(3);
    auto const thr1 = Thresholds::from_eps(1.0, 1.0);
    auto d = select_approach1(realization({0.5, 2.0, 3.0}, {1.0, 0.2, 0.1}), cfg, thr1);
    CHECK(d.sources == std::vector<int>{1});
    CHECK(d.decode_set_size == 2);
    d = select_approach1(realization({0.5, 0.9}, {1, 1}), unit_cfg(2), thr1);
    CHECK(d.size() == 0);
    CHECK(d.decode_set_size == 0);
    auto const thr05 = Thresholds::from_eps(0.5, 0.5);
    d = select_approach1(realization({2.5, 1.0}, {0.1, 3.0}), unit_cfg(2), thr05);
    CHECK(d.sources == std::vector<int>{1});
    CHECK(d.destinations == std::vector<int>{1});
    CHECK_THROWS_AS((void)select_approach1(realization({1, 1}, {1, 1}), unit_cfg(2, 2), thr05), ConfigError);
}

TEST_CASE("exhaustive selection") {
    auto const thr = Thresholds::from_eps(0.5, 0.5);
    ScheduleDecision d;
    auto const ch2 = realization({1.5, 2.5}, {0.4, 0.6});
    d = select_exhaustive(ch2, unit_cfg(2, 2), thr);
    CHECK(d.size() == 2);
    CHECK(d.dest_power[0] == doctest::Approx(1.5));
    CHECK(d.dest_power[1] == doctest::Approx(1.5));
    double min_snr = 1e300;
    for (std::size_t k = 0; k < d.size(); ++k) {
        min_snr = std::min(min_snr, d.dest_power[k] * ch2.relay_dst[d.destinations[k]]);
    }
    CHECK(min_snr == doctest::Approx(0.6));

    // |S| <= m: the whole decode set is the only candidate.
    d = select_exhaustive(realization({0.1, 2.5, 0.7}, {1, 1, 1}), unit_cfg(3, 3), thr);
    CHECK(std::set<int>(d.sources.begin(), d.sources.end()) == std::set<int>{1, 2});

    // Picks the subset with the larger worst-user SNR.
    d = select_exhaustive(realization({3.0, 3.0, 3.0}, {0.1, 2.0, 1.0}), unit_cfg(3, 2), thr);
    CHECK(std::set<int>(d.destinations.begin(), d.destinations.end()) == std::set<int>{1, 2});

    std::vector<double> many(40, 10.0);
    CHECK_THROWS_AS((void)select_exhaustive(realization(many, many), unit_cfg(40, 20), thr, 1000),
                    EnumerationLimitError);
}

TEST_CASE("greedy selection") {
    auto const thr = Thresholds::from_eps(0.5, 0.5);
    auto d = select_greedy(realization({0.6, 0.4, 2.5}, {0.1, 3.0, 0.2}), unit_cfg(3, 2), thr);
    CHECK(d.sources == std::vector<int>{2, 0});
    CHECK(d.destinations == std::vector<int>{1, 2});
    CHECK(d.dest_power[0] == doctest::Approx(1.05));
    CHECK(d.dest_power[1] == doctest::Approx(1.05));

    d = select_greedy(realization({0.6, 0.4, 2.5}, {0.1, 3.0, 0.2}), unit_cfg(3, 1), thr);
    CHECK(d.sources == std::vector<int>{2});
    CHECK(d.destinations == std::vector<int>{1});

    d = select_greedy(realization({0.1, 0.2}, {5, 5}), unit_cfg(2, 1), thr);
    CHECK(d.size() == 0);
}

TEST_CASE("random selection") {
    auto const thr = Thresholds::from_eps(0.5, 0.5);
    RandomStream rng(1, 0);
    CHECK(select_random(realization({0.1}, {1}), unit_cfg(1), thr, rng).sources == std::vector<int>{0});

    auto const cfg = unit_cfg(4);
    auto const ch = realization({1, 1, 1, 1}, {1, 1, 1, 1});
    std::array<int, 4> counts{};
    int constexpr n = 1'000'000;
    for (int i = 0; i < n; ++i) {
        ++counts[select_random(ch, cfg, thr, rng).sources[0]];
    }
    for (int c : counts) {
        CHECK(std::abs(c / double(n) - 0.25) <= 0.002);
    }

    RandomStream a(77, 5);
    RandomStream b(77, 5);
    auto const cfg3 = unit_cfg(6, 3);
    auto const ch6 = realization({1, 2, 3, 4, 5, 6}, {1, 1, 1, 1, 1, 1});
    for (int i = 0; i < 100; ++i) {
        CHECK(select_random(ch6, cfg3, thr, a).sources == select_random(ch6, cfg3, thr, b).sources);
    }
}

TEST_CASE("decision invariants over random realizations") {
    RandomStream rng(2024, 0);
    for (int M = 1; M <= 8; ++M) {
        for (int m = 1; m <= M; ++m) {
            auto cfg = unit_cfg(M, m, 0.7, 8.0);
            auto const thr = compute_thresholds(cfg);
            std::vector<Policy> policies{Policy::Exhaustive, Policy::Greedy, Policy::Random};
            if (m == 1) {
                policies.push_back(Policy::MaxMin);
                policies.push_back(Policy::Approach1);
            }
            std::vector<Scheduler> schedulers;
            for (Policy p : policies) {
                schedulers.emplace_back(p, cfg);
            }
            ScheduleDecision d;
            ChannelRealization ch;
            int const reps = 100'000 / 36 + 1;
            for (int r = 0; r < reps; ++r) {
                sample_channels(cfg, rng, ch);
                for (auto& s : schedulers) {
                    s.schedule(ch, thr, rng, d);
                    check_invariants(d, ch, cfg, thr, s.policy());
                }
            }
        }
    }
}

TEST_CASE("realization-wise dominance and exhaustive equivalence for m = 1") {
    for (int M = 1; M <= 6; ++M) {
        for (double db : {5.0, 15.0, 25.0}) {
            auto const cfg = unit_cfg(M, 1, 0.8, std::pow(10.0, db / 10.0));
            auto const thr = compute_thresholds(cfg);
            RandomStream rng(M * 100 + static_cast<int>(db), 0);
            int violations = 0;
            int mismatches = 0;
            for (int r = 0; r < 20'000; ++r) {
                auto const ch = sample_channels(cfg, rng);
                auto const mm = select_max_min(ch, cfg, thr);
                auto const a1 = select_approach1(ch, cfg, thr);
                auto const gr = select_greedy(ch, cfg, thr);
                auto const ex = select_exhaustive(ch, cfg, thr);
                bool const o_mm = in_outage(mm, ch, cfg);
                bool const o_a1 = in_outage(a1, ch, cfg);
                bool const o_gr = in_outage(gr, ch, cfg);
                violations += (o_gr > o_a1) + (o_a1 > o_mm);
                if (a1.size() > 0 && ex.sources != a1.sources) {
                    ++mismatches;
                }
            }
            CHECK(violations == 0);
            CHECK(mismatches == 0);
        }
    }
}
