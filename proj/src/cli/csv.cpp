#include <array>
#include <charconv>
#include <ostream>

#include "ehrelay/cli.hpp"

namespace ehrelay::cli {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto const res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

void write_csv(std::ostream& out, std::span<SweepRecord const> records) {
    out << kCsvHeader << '\n';
    for (auto const& r : records) {
        out << r.scheme << ',' << r.num_pairs << ',' << r.num_scheduled << ',' << format_double(r.rate) << ','
            << format_double(r.eta) << ',' << format_double(r.snr_db) << ',' << r.user_rank << ',';
        if (r.analytic_po) {
            out << format_double(*r.analytic_po);
        }
        out << ',' << format_double(r.mc_po) << ',' << format_double(r.mc_stderr) << ',' << r.trials << ','
            << r.seed << '\n';
    }
}

}  // namespace ehrelay::cli
