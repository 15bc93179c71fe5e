#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ehrelay/analytic.hpp"
#include "ehrelay/cli.hpp"
#include "ehrelay/errors.hpp"
#include "ehrelay/oracles.hpp"
#include "ehrelay/quadrature.hpp"
#include "ehrelay/schedulers.hpp"
#include "ehrelay/special_functions.hpp"

namespace ehrelay::cli {

namespace {

SystemConfig make_cfg(int M, int m, double rate, double eta, double snr_db) {
    SystemConfig cfg;
    cfg.num_pairs = M;
    cfg.num_scheduled = m;
    cfg.rate = rate;
    cfg.eta = eta;
    cfg.tx_power = db_to_linear(snr_db);
    return cfg;
}

std::string fmt(double x, int digits = 3) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

// Tracks |analytic - simulated| <= 3 stderr over many points.
struct Agreement {
    int points = 0;
    int failures = 0;
    double worst_z = 0.0;
    std::string first_failure;

    void add(std::string const& where, double analytic, double p_hat, double se) {
        ++points;
        double const diff = std::abs(analytic - p_hat);
        bool const ok = diff <= 3.0 * se;
        double const z = se > 0.0 ? diff / se : (diff > 0.0 ? INFINITY : 0.0);
        worst_z = std::max(worst_z, z);
        if (!ok) {
            ++failures;
            if (first_failure.empty()) {
                first_failure = where + ": analytic " + fmt(analytic, 6) + " vs sim " + fmt(p_hat, 6) + " +- " +
                                fmt(se, 3);
            }
        }
    }

    [[nodiscard]] bool passed() const { return failures == 0 && points > 0; }

    [[nodiscard]] std::string summary() const {
        std::string s = std::to_string(points) + " points, max |z| = " + fmt(worst_z);
        if (failures > 0) {
            s += ", " + std::to_string(failures) + " outside 3 stderr (first: " + first_failure + ")";
        }
        return s;
    }
};

class Runner {
  public:
    Runner(ValidationOptions opts, std::ostream* progress) : opts_(opts), progress_(progress) {}

    std::vector<CriterionResult> run() {
        record(1, "Max-min closed form vs simulation", [this] { return c1_c2(Scheme::MaxMin); });
        record(2, "Approach-1 exact outage vs simulation", [this] { return c1_c2(Scheme::Approach1); });
        record(3, "Greedy per-rank closed form vs simulation", [this] { return c3(); });
        record(4, "Max-min diversity order (M+1)/2", [this] { return c4(); });
        record(5, "Conventional max-min benchmark", [this] { return c5(); });
        record(6, "Diversity separation", [this] { return c6(); });
        record(7, "Realization-wise dominance", [this] { return c7(); });
        record(8, "Cross-formula identities", [this] { return c8(); });
        record(9, "Special-function oracles", [this] { return c9(); });
        record(10, "Distributional checks", [this] { return c10(); });
        record(11, "Scheme ordering", [this] { return c11(); });
        record(12, "Sweep determinism", [this] { return c12(); });
        return results_;
    }

  private:
    struct Outcome {
        bool passed;
        std::string detail;
    };

    template <typename F>
    void record(int id, std::string title, F&& body) {
        CriterionResult r;
        r.id = id;
        r.title = std::move(title);
        try {
            Outcome const o = body();
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (std::exception const& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        if (progress_ != nullptr) {
            *progress_ << format_result_line(r) << '\n' << std::flush;
        }
        results_.push_back(std::move(r));
    }

    [[nodiscard]] double analytic(double value) const { return value * (1.0 + opts_.perturb_analytic); }

    [[nodiscard]] std::uint64_t heavy_trials() const { return opts_.quick ? 1'000'000 : 10'000'000; }

    [[nodiscard]] McConfig mc(Scheme scheme, std::uint64_t trials) const {
        McConfig c;
        c.scheme = scheme;
        c.trials = trials;
        c.seed = opts_.seed;
        c.threads = opts_.threads;
        c.shards = 64;
        return c;
    }

    Outcome c1_c2(Scheme scheme) {
        Agreement a;
        for (int M : {1, 2, 3}) {
            for (double db : {20.0, 25.0, 30.0, 35.0, 40.0, 45.0}) {
                auto const cfg = make_cfg(M, 1, 4.0, 1.0, db);
                auto const params = AnalyticParams::from_config(cfg);
                double const ana = analytic(scheme == Scheme::MaxMin ? theorem1_maxmin_outage(params)
                                                                     : approach1_outage_exact(params));
                auto const est = estimate_outage(cfg, mc(scheme, heavy_trials()));
                a.add("M=" + std::to_string(M) + " " + fmt(db) + " dB", ana, est.p_hat, est.std_error);
            }
        }
        return {a.passed(), a.summary()};
    }

    Outcome c3() {
        // M = 6, m = 3 as in figure 5. R = 4 keeps every rank measurable at 10^7 trials.
        Agreement a;
        for (double db : {20.0, 22.5, 25.0, 27.5, 30.0}) {
            auto const cfg = make_cfg(6, 3, 4.0, 1.0, db);
            auto const params = AnalyticParams::from_config(cfg);
            auto const est = estimate_outage(cfg, mc(Scheme::Greedy, heavy_trials()));
            for (int i = 1; i <= 3; ++i) {
                auto const& r = est.per_rank[static_cast<std::size_t>(i - 1)];
                a.add(fmt(db) + " dB rank " + std::to_string(i), analytic(greedy_outage_lemma2(i, params)), r.p_hat,
                      r.std_error);
            }
        }
        return {a.passed(), a.summary()};
    }

    [[nodiscard]] double slope_of(Scheme scheme, int M) const {
        SlopeRequest req;
        req.scheme = scheme;
        req.cfg = make_cfg(M, 1, 2.0, 1.0, 0.0);
        auto const res = estimate_slope(req);
        if (!res.analytic) {
            throw FitError("expected a closed-form curve");
        }
        return res.slope;
    }

    Outcome c4() {
        double const s2 = slope_of(Scheme::MaxMin, 2);
        double const s3 = slope_of(Scheme::MaxMin, 3);
        bool const ok = std::abs(s2 - 1.5) <= 0.2 && std::abs(s3 - 2.0) <= 0.25;
        return {ok, "M=2 slope " + fmt(s2, 4) + " (1.5 +- 0.2), M=3 slope " + fmt(s3, 4) + " (2.0 +- 0.25)"};
    }

    Outcome c5() {
        double const s2 = slope_of(Scheme::ConventionalMaxMin, 2);
        double const s3 = slope_of(Scheme::ConventionalMaxMin, 3);
        bool const slopes_ok = std::abs(s2 - 2.0) <= 0.1 && std::abs(s3 - 3.0) <= 0.1;
        Agreement a;
        for (int M : {2, 3}) {
            for (double db : {10.0, 15.0, 20.0, 25.0, 30.0}) {
                auto const cfg = make_cfg(M, 1, 2.0, 1.0, db);
                double const ana = analytic(conventional_maxmin_outage(AnalyticParams::from_config(cfg)));
                auto const est = estimate_outage(cfg, mc(Scheme::ConventionalMaxMin, heavy_trials()));
                a.add("M=" + std::to_string(M) + " " + fmt(db) + " dB", ana, est.p_hat, est.std_error);
            }
        }
        return {slopes_ok && a.passed(), "slopes M=2 " + fmt(s2, 4) + ", M=3 " + fmt(s3, 4) + "; sim " + a.summary()};
    }

    Outcome c6() {
        double const mm = slope_of(Scheme::MaxMin, 3);
        double const a1 = slope_of(Scheme::Approach1, 3);
        double const gr = slope_of(Scheme::Greedy, 3);
        bool const ok = a1 - mm >= 0.3 && gr >= a1 - 0.05;
        return {ok, "M=3 slopes: max-min " + fmt(mm, 4) + ", approach1 " + fmt(a1, 4) + ", greedy " + fmt(gr, 4)};
    }

    Outcome c7() {
        struct Setting {
            double rate, eta, snr_db;
        };
        long violations = 0;
        long mismatches = 0;
        long realizations = 0;
        std::uint64_t stream = 0;
        for (int M = 1; M <= 6; ++M) {
            for (auto const s : {Setting{2.0, 1.0, 20.0}, Setting{1.0, 0.5, 10.0}, Setting{4.0, 0.8, 35.0}}) {
                auto const cfg = make_cfg(M, 1, s.rate, s.eta, s.snr_db);
                auto const thr = compute_thresholds(cfg);
                Scheduler mm(Policy::MaxMin, cfg);
                Scheduler a1(Policy::Approach1, cfg);
                Scheduler gr(Policy::Greedy, cfg);
                Scheduler ex(Policy::Exhaustive, cfg);
                ScheduleDecision d_mm, d_a1, d_gr, d_ex;
                ChannelRealization ch;
                auto fails = [&](ScheduleDecision const& d) {
                    return d.size() == 0 || destination_outage(d.dest_power[0], ch.relay_dst[d.destinations[0]], cfg);
                };
                for (int r = 0; r < 100'000; ++r) {
                    RandomStream rng(opts_.seed, stream++, 2);
                    sample_channels(cfg, rng, ch);
                    mm.schedule(ch, thr, rng, d_mm);
                    a1.schedule(ch, thr, rng, d_a1);
                    gr.schedule(ch, thr, rng, d_gr);
                    ex.schedule(ch, thr, rng, d_ex);
                    bool const o_mm = fails(d_mm);
                    bool const o_a1 = fails(d_a1);
                    bool const o_gr = fails(d_gr);
                    violations += (o_gr && !o_a1) + (o_a1 && !o_mm);
                    if (d_a1.size() > 0 && d_ex.sources != d_a1.sources) {
                        ++mismatches;
                    }
                    ++realizations;
                }
            }
        }
        return {violations == 0 && mismatches == 0,
                std::to_string(realizations) + " realizations, " + std::to_string(violations) +
                    " ordering violations, " + std::to_string(mismatches) + " exhaustive/approach1 mismatches"};
    }

    Outcome c8() {
        std::mt19937_64 gen(opts_.seed);
        std::uniform_real_distribution<double> rate(0.25, 4.0);
        std::uniform_real_distribution<double> snr(0.0, 50.0);
        std::uniform_real_distribution<double> eta(0.05, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            auto const p = AnalyticParams::from_config(make_cfg(1, 1, rate(gen), eta(gen), snr(gen)));
            double const t1 = analytic(theorem1_maxmin_outage(p));
            double const a1 = approach1_outage_exact(p);
            double const l2 = greedy_outage_lemma2(1, p);
            worst = std::max({worst, std::abs(t1 - a1), std::abs(a1 - l2), std::abs(t1 - l2)});
        }
        double worst_t3 = 0.0;
        for (int M = 1; M <= 6; ++M) {
            for (int k = 0; k < 10; ++k) {
                auto const p = AnalyticParams::from_config(make_cfg(M, 1, rate(gen), eta(gen), snr(gen)));
                worst_t3 = std::max(worst_t3,
                                    std::abs(analytic(greedy_single_pair_outage(p)) - greedy_outage_lemma2(1, p)));
            }
        }
        bool const ok = worst <= 1e-8 && worst_t3 <= 1e-8;
        return {ok, "M=1 max deviation " + fmt(worst) + ", single-pair greedy max deviation " + fmt(worst_t3) +
                        " (limit 1e-8)"};
    }

    Outcome c9() {
        double worst_k = 0.0;
        for (int n = 0; n <= 8; ++n) {
            for (int k = 0; k < 20; ++k) {
                double const x = 1e-3 * std::pow(3e4, k / 19.0);
                double const ref = oracles::bessel_k_integral(n, x);
                worst_k = std::max(worst_k, std::abs(bessel_k(n, x) - ref) / ref);
            }
        }
        std::mt19937_64 gen(opts_.seed + 9);
        std::uniform_real_distribution<double> upper(0.05, 3.0);
        std::uniform_int_distribution<int> index(0, 5);
        std::uniform_real_distribution<double> eps1(0.01, 5.0);
        double worst_beta = 0.0;
        for (int k = 0; k < 10; ++k) {
            double const u = upper(gen);
            int const i = index(gen);
            double const e1 = eps1(gen);
            worst_beta = std::max(worst_beta, std::abs(beta_integral(u, i, e1) - oracles::beta_simpson(u, i, e1)));
        }
        bool const ok = worst_k <= 1e-10 && worst_beta <= 1e-9;
        return {ok, "Bessel max rel err " + fmt(worst_k) + " (limit 1e-10), beta max abs err " + fmt(worst_beta) +
                        " (limit 1e-9)"};
    }

    Outcome c10() {
        // Decode-set sizes: the standard error is taken under the analytic
        // law, so bins with a tiny expected count are still judged.
        Agreement sizes;
        for (double db : {10.0, 15.0, 20.0}) {
            auto const cfg = make_cfg(6, 1, 2.0, 1.0, db);
            auto const params = AnalyticParams::from_config(cfg);
            std::uint64_t constexpr trials = 1'000'000;
            auto const counts = decode_set_size_counts(cfg, mc(Scheme::MaxMin, trials));
            for (int n = 0; n <= 6; ++n) {
                double const expected = analytic(prob_decode_set_size(n, params));
                double const se = std::sqrt(std::max(expected * (1.0 - expected), 0.0) / trials);
                sizes.add(fmt(db) + " dB |S|=" + std::to_string(n), expected,
                          static_cast<double>(counts[static_cast<std::size_t>(n)]) / trials, se);
            }
        }
        double worst_norm = 0.0;
        Agreement moments;
        for (auto [n, m] : {std::pair{3, 1}, {4, 2}, {5, 3}}) {
            auto const norm = integrate_to_infinity([=](double w) { return sum_largest_exponentials_pdf(w, n, m); },
                                                    0.0, {.abs_tol = 1e-13});
            worst_norm = std::max(worst_norm, std::abs(norm.value - 1.0));
            auto const mean = integrate_to_infinity([=](double w) { return w * sum_largest_exponentials_pdf(w, n, m); },
                                                    0.0, {.abs_tol = 1e-12});
            auto const sample =
                oracles::sum_largest_exponentials_mean(n, m, 1'000'000, opts_.seed * 1000 + 100 * n + m);
            moments.add("(n,m)=(" + std::to_string(n) + "," + std::to_string(m) + ")", mean.value, sample.mean,
                        sample.std_error);
        }
        bool const ok = sizes.passed() && moments.passed() && worst_norm <= 1e-8;
        return {ok, "|S| law " + sizes.summary() + "; f_w normalization err " + fmt(worst_norm) + "; first moment " +
                        moments.summary()};
    }

    Outcome c11() {
        std::uint64_t const trials = 1'000'000;
        std::string failures;
        int comparisons = 0;
        auto leq = [&](std::string const& what, OutageEstimate const& a, OutageEstimate const& b) {
            ++comparisons;
            double const tol = 3.0 * std::hypot(a.std_error, b.std_error);
            if (a.p_hat > b.p_hat + tol && failures.empty()) {
                failures = what + ": " + fmt(a.p_hat, 5) + " > " + fmt(b.p_hat, 5);
            }
        };
        for (double db : {30.0, 35.0, 40.0, 45.0, 50.0}) {
            auto const cfg = make_cfg(3, 1, 2.0, 1.0, db);
            auto const gr = estimate_outage(cfg, mc(Scheme::Greedy, trials));
            auto const a1 = estimate_outage(cfg, mc(Scheme::Approach1, trials));
            auto const mm = estimate_outage(cfg, mc(Scheme::MaxMin, trials));
            auto const rnd = estimate_outage(cfg, mc(Scheme::Random, trials));
            std::string const at = "fig2 " + fmt(db) + " dB ";
            leq(at + "greedy<=approach1", gr, a1);
            leq(at + "approach1<=maxmin", a1, mm);
            leq(at + "maxmin<=random", mm, rnd);
        }
        for (double db : {20.0, 25.0, 30.0}) {
            auto const cfg2 = make_cfg(10, 2, 2.0, 1.0, db);
            auto const gr = estimate_outage(cfg2, mc(Scheme::Greedy, trials));
            auto const ex = estimate_outage(cfg2, mc(Scheme::Exhaustive, trials));
            auto const mm = estimate_outage(make_cfg(10, 1, 2.0, 1.0, db), mc(Scheme::MaxMin, trials));
            // The overall estimate for m > 1 is the weakest-user outage.
            std::string const at = "fig4 " + fmt(db) + " dB ";
            leq(at + "greedy weakest<=exhaustive weakest", gr, ex);
            leq(at + "exhaustive weakest<=maxmin baseline", ex, mm);
        }
        return {failures.empty(),
                std::to_string(comparisons) + " comparisons" + (failures.empty() ? "" : ", first failure: " + failures)};
    }

    Outcome c12() {
        auto sweep_csv = [this](std::string const& shards, std::vector<std::string> extra) {
            std::vector<std::string> args{"sweep", "--rate", "2", "--eta", "0.8", "--snr-db", "10:20:5",
                                          "--trials", "2e4", "--seed", std::to_string(opts_.seed), "--shards", shards};
            args.insert(args.end(), extra.begin(), extra.end());
            std::ostringstream out;
            std::ostringstream err;
            int const code = cli::run(args, out, err);
            if (code != kExitOk) {
                throw std::runtime_error("sweep exited with " + std::to_string(code) + ": " + err.str());
            }
            return out.str();
        };
        std::vector<std::string> const single{"--scheme", "maxmin,approach1,greedy,random,conventional", "--pairs",
                                              "4", "--sched", "1"};
        std::vector<std::string> const multi{"--scheme", "greedy,exhaustive,random", "--pairs", "5", "--sched", "3"};
        std::vector<std::string> const disk{"--scheme", "maxmin,greedy", "--pairs", "3", "--sched", "1",
                                            "--placement", "disk"};
        int identical = 0;
        int total = 0;
        for (auto const& extra : {single, multi, disk}) {
            std::string const a = sweep_csv("1", extra);
            std::string const b = sweep_csv("1", extra);
            std::string const c = sweep_csv("8", extra);
            total += 2;
            identical += (a == b) + (a == c);
        }
        return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                        " byte-identical pairs (repeat and shards 1 vs 8)"};
    }

    ValidationOptions opts_;
    std::ostream* progress_;
    std::vector<CriterionResult> results_;
};

}  // namespace

std::string format_result_line(CriterionResult const& r) {
    return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + ": " + r.detail;
}

std::vector<CriterionResult> run_validation(ValidationOptions const& opts, std::ostream* progress) {
    return Runner(opts, progress).run();
}

}  // namespace ehrelay::cli
