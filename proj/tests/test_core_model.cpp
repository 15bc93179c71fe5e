#include <doctest.h>

#include <cmath>

#include "ehrelay/core_model.hpp"
#include "ehrelay/errors.hpp"

using namespace ehrelay;

namespace {

SystemConfig make_cfg(double rate, double power, double eta, int pairs = 1) {
    SystemConfig cfg;
    cfg.num_pairs = pairs;
    cfg.rate = rate;
    cfg.tx_power = power;
    cfg.eta = eta;
    return cfg;
}

}  // namespace

TEST_CASE("thresholds") {
    auto thr = compute_thresholds(make_cfg(0.5, 1.0, 1.0));
    CHECK(thr.eps == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(thr.eps1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(thr.eps0 == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));

    thr = compute_thresholds(make_cfg(2.0, 15.0, 1.0));
    CHECK(thr.eps == 1.0);
    CHECK(thr.eps1 == 1.0);

    CHECK(Thresholds::from_eps(0.0, 1.0).eps0 == 1.0);

    for (double eta : {0.1, 0.5, 1.0}) {
        for (double rate : {0.5, 1.0, 2.0, 4.0}) {
            for (double db : {0.0, 10.0, 30.0, 60.0}) {
                auto const t = compute_thresholds(make_cfg(rate, db_to_linear(db), eta));
                CHECK(t.eps > 0.0);
                CHECK(t.eps1 >= t.eps);
                CHECK(t.eps0 > t.eps);
                double const residual = t.eps0 * t.eps0 - t.eps * t.eps0 - t.eps1;
                CHECK(std::abs(residual) <= 1e-12 * t.eps0 * t.eps0);
            }
        }
    }
}

TEST_CASE("config validation") {
    SystemConfig cfg = make_cfg(1.0, 10.0, 1.0, 3);
    CHECK_NOTHROW(cfg.validate());
    cfg.num_scheduled = 4;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.num_scheduled = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = make_cfg(1.0, 10.0, 0.0);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = make_cfg(1.0, 10.0, 1.1);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = make_cfg(0.0, 10.0, 1.0);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = make_cfg(1.0, -1.0, 1.0);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = make_cfg(1.0, 10.0, 1.0);
    cfg.placement = DiskPathLoss{0.0, 2.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.placement = DiskPathLoss{2.0, -1.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.placement = DiskPathLoss{2.0, 0.0};
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("optimal theta") {
    auto const thr = Thresholds::from_eps(0.4, 0.4);
    CHECK(optimal_theta(0.4, thr) == 0.0);
    CHECK(optimal_theta(0.8, thr) == doctest::Approx(0.5));
    CHECK(optimal_theta(0.2, thr) == 0.0);
    CHECK(optimal_theta(0.0, thr) == 0.0);
    // Energy accounting: theta * h * P = P h - eps P above the threshold.
    double const power = 37.0;
    for (double h : {0.41, 1.0, 3.7, 120.0}) {
        double const lhs = optimal_theta(h, thr) * h * power;
        double const rhs = power * h - thr.eps * power;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("harvested power") {
    auto cfg = make_cfg(1.0, 10.0, 1.0);
    auto const thr = Thresholds::from_eps(0.5, 0.5);
    CHECK(harvested_power(0.3, cfg, thr) == 0.0);
    CHECK(harvested_power(0.5, cfg, thr) == 0.0);
    CHECK(harvested_power(2.5, cfg, thr) == doctest::Approx(20.0));
    cfg.eta = 0.5;
    CHECK(harvested_power(2.5, cfg, thr) == doctest::Approx(10.0));
    double prev = 0.0;
    for (int k = 0; k <= 100; ++k) {
        double const p = harvested_power(0.05 * k, cfg, thr);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("destination outage") {
    auto const cfg = make_cfg(2.0, 15.0, 1.0);
    auto const thr = compute_thresholds(cfg);
    CHECK(destination_outage(0.0, 1e9, cfg));
    CHECK_FALSE(destination_outage(harvested_power(2.0, cfg, thr), 2.0, cfg));
    // Boundary: (h - eps) g = eps1 exactly gives SNR = 2^{2R} - 1, a success.
    auto const unit = make_cfg(0.5, 1.0, 1.0);  // threshold 1, eps = eps1 = 1
    auto const t1 = compute_thresholds(unit);
    CHECK_FALSE(destination_outage(harvested_power(3.0, unit, t1), 0.5, unit));
    CHECK(destination_outage(harvested_power(3.0, unit, t1), std::nextafter(0.5, 0.0), unit));
}

TEST_CASE("channel sampling") {
    auto cfg = make_cfg(1.0, 10.0, 1.0, 10);

    SUBCASE("unit exponential mean") {
        RandomStream rng(5, 0);
        ChannelRealization ch;
        double sum = 0.0;
        int constexpr draws = 100'000;
        for (int i = 0; i < draws; ++i) {
            sample_channels(cfg, rng, ch);
            REQUIRE(ch.src_relay.size() == 10);
            REQUIRE(ch.relay_dst.size() == 10);
            for (int k = 0; k < 10; ++k) {
                sum += ch.src_relay[k] + ch.relay_dst[k];
            }
        }
        double const mean = sum / (20.0 * draws);
        CHECK(mean >= 0.997);
        CHECK(mean <= 1.003);
    }

    SUBCASE("determinism") {
        RandomStream a(11, 3);
        RandomStream b(11, 3);
        auto const x = sample_channels(cfg, a);
        auto const y = sample_channels(cfg, b);
        CHECK(x.src_relay == y.src_relay);
        CHECK(x.relay_dst == y.relay_dst);
    }

    SUBCASE("path loss only attenuates") {
        cfg.placement = DiskPathLoss{2.0, 2.0};
        RandomStream rng(9, 0);
        RandomStream replay(9, 0);
        double sum_disk = 0.0;
        for (int i = 0; i < 10'000; ++i) {
            auto const ch = sample_channels(cfg, rng);
            for (int k = 0; k < 10; ++k) {
                (void)replay.uniform();
                double const raw_h = replay.exponential();
                (void)replay.uniform();
                double const raw_g = replay.exponential();
                CHECK(ch.src_relay[k] <= raw_h);
                CHECK(ch.relay_dst[k] <= raw_g);
                CHECK(ch.src_relay[k] >= 0.0);
                sum_disk += ch.src_relay[k] + ch.relay_dst[k];
            }
        }
        // E[1/(1+d^2)] with d uniform on a radius-2 disk is ln(5)/4.
        double const mean = sum_disk / (20.0 * 10'000);
        CHECK(mean < 0.9);
        CHECK(mean == doctest::Approx(std::log(5.0) / 4.0).epsilon(0.02));
    }
}
