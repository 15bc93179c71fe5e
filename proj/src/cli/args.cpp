#include <charconv>
#include <cmath>
#include <string>

#include "ehrelay/cli.hpp"
#include "ehrelay/errors.hpp"

namespace ehrelay::cli {

namespace {

double parse_double(std::string_view text) {
    double value = 0.0;
    auto const* end = text.data() + text.size();
    auto const res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::vector<double> parse_snr_grid(std::string_view text) {
    std::vector<double> grid;
    if (text.find(':') != std::string_view::npos) {
        auto const a = text.find(':');
        auto const b = text.find(':', a + 1);
        if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
            throw ConfigError("SNR range must look like lo:hi:step");
        }
        double const lo = parse_double(trim(text.substr(0, a)));
        double const hi = parse_double(trim(text.substr(a + 1, b - a - 1)));
        double const step = parse_double(trim(text.substr(b + 1)));
        if (!(step > 0.0) || hi < lo) {
            throw ConfigError("SNR range needs step > 0 and hi >= lo");
        }
        // Index-based so that rounding never adds or drops the last point.
        auto const count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 100'000) {
            throw ConfigError("SNR range has too many points");
        }
        for (long k = 0; k < count; ++k) {
            grid.push_back(lo + static_cast<double>(k) * step);
        }
        return grid;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        auto const comma = text.find(',', start);
        auto const piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        grid.push_back(parse_double(trim(piece)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return grid;
}

std::uint64_t parse_count(std::string_view text) {
    double const value = parse_double(trim(text));
    if (value < 0.0 || value != std::floor(value) || value > 9.0e15) {
        throw ConfigError("expected a non-negative integer count, got '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(value);
}

std::vector<Scheme> parse_scheme_list(std::string_view text) {
    std::vector<Scheme> schemes;
    std::size_t start = 0;
    while (true) {
        auto const comma = text.find(',', start);
        auto const name = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        auto const s = parse_scheme(name);
        if (!s) {
            throw ConfigError("unknown scheme '" + std::string(name) + "'");
        }
        schemes.push_back(*s);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return schemes;
}

}  // namespace ehrelay::cli
