#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ehrelay/montecarlo.hpp"

namespace ehrelay::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailure = 1,
    kExitUsage = 2,
    kExitBudget = 3,
};

// ---- CSV ------------------------------------------------------------------

inline constexpr std::string_view kCsvHeader =
    "scheme,M,m,R_bpcu,eta,snr_db,user_rank,analytic_po,mc_po,mc_stderr,trials,seed";

/// Shortest round-trip decimal form ('.' separator, locale independent).
[[nodiscard]] std::string format_double(double x);

/// Header row plus one row per record, '\n' line endings.
void write_csv(std::ostream& out, std::span<SweepRecord const> records);

// ---- argument helpers -------------------------------------------------------

/// "lo:hi:step" (inclusive, step > 0), "a,b,c" or a single value, in dB.
/// Throws ConfigError on malformed input.
[[nodiscard]] std::vector<double> parse_snr_grid(std::string_view text);

/// Non-negative integer count; scientific notation such as "1e6" is accepted
/// when it denotes an integer.
[[nodiscard]] std::uint64_t parse_count(std::string_view text);

/// Comma-separated scheme names.
[[nodiscard]] std::vector<Scheme> parse_scheme_list(std::string_view text);

// ---- figures ----------------------------------------------------------------

struct FigureOutput {
    std::vector<SweepRecord> records;
    std::string plot_script;  // gnuplot, reads the CSV named in run_figure
};

/// Default transmit-SNR axis for the figures: 20 to 50 dB in 2.5 dB steps.
[[nodiscard]] std::vector<double> default_figure_grid();

/// Runs the configuration behind figure `id` (1..7) on the given SNR grid.
/// `csv_name` is the path the plot script reads. Throws ConfigError for an
/// unknown id.
[[nodiscard]] FigureOutput run_figure(int id, std::vector<double> const& snr_db_grid, McConfig const& mc,
                                      std::string const& csv_name);

// ---- diversity slopes ---------------------------------------------------------

struct SlopeRequest {
    Scheme scheme = Scheme::MaxMin;
    SystemConfig cfg;            // tx_power is ignored
    int rank = 1;
    double window_lo = 1e-6;
    double window_hi = 1e-3;
    double db_lo = 0.0;          // analytic curve grid
    double db_hi = 80.0;
    double db_step = 0.25;
    std::vector<double> mc_grid_db;  // used when no closed form exists
    McConfig mc;
};

struct SlopeResult {
    double slope = 0.0;
    int points = 0;
    bool analytic = false;
};

/// Fits the diversity order over the outage window, using the closed form
/// when one exists and simulation otherwise. Throws FitError when fewer than
/// four points fall inside the window.
[[nodiscard]] SlopeResult estimate_slope(SlopeRequest const& req);

// ---- acceptance ---------------------------------------------------------------

struct ValidationOptions {
    bool quick = false;              // 10^6 trials instead of 10^7
    double perturb_analytic = 0.0;   // scale analytic values by (1 + x)
    std::uint64_t seed = 1;
    int threads = 0;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

/// Runs every acceptance criterion. When `progress` is non-null a
/// "PASS|FAIL [id] title: detail" line is written as each one finishes.
[[nodiscard]] std::vector<CriterionResult> run_validation(ValidationOptions const& opts,
                                                          std::ostream* progress = nullptr);

[[nodiscard]] std::string format_result_line(CriterionResult const& r);

// ---- entry point ----------------------------------------------------------------

/// Parses and runs one command (args excludes the program name). All normal
/// output goes to `out`, diagnostics to `err`. Returns an ExitCode.
[[nodiscard]] int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace ehrelay::cli
