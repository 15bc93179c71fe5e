#pragma once

#include <array>
#include <cstdint>

namespace ehrelay {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is addressed by (seed, stream_id, lane). Two streams with
/// different addresses are statistically independent, and constructing a
/// stream is O(1), so Monte Carlo drivers give every trial its own stream
/// instead of handing out chunks of one long sequence. That makes results
/// independent of how trials are partitioned across workers.
class RandomStream {
  public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t lane = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Unit-mean exponential variate.
    double exponential() noexcept;

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) noexcept;

    /// Raw Philox4x32-10 block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) noexcept;

  private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

}  // namespace ehrelay
