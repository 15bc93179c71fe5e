#pragma once

#include <cmath>

namespace ehrelay {

/// Neumaier-compensated running sum. Used for the alternating binomial
/// sums, where terms of size O(2^M) cancel down to tiny probabilities.
class CompensatedSum {
  public:
    CompensatedSum& operator+=(double x) noexcept {
        double const t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }
    CompensatedSum& operator-=(double x) noexcept { return *this += -x; }

    [[nodiscard]] double value() const noexcept { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// C(n, k) as a double; exact for the n <= 60 range used here.
[[nodiscard]] double binomial(int n, int k);

/// n! as a double.
[[nodiscard]] double factorial(int n);

}  // namespace ehrelay
