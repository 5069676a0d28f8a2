#pragma once

#include <cmath>
#include <cstdint>

namespace superrad {

/// log(n!) for n >= 0.
inline double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

/// log C(n,k); requires 0 <= k <= n.
inline double log_binomial(int n, int k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// C(n,k) as a double.  Exact integer arithmetic while the running product
/// stays below 2^63; log-gamma beyond that (relative error ~1e-15).
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    std::uint64_t num = 1;
    bool exact = true;
    for (int i = 1; i <= k; ++i) {
        // num * (n-k+i) may overflow; gcd trick unnecessary since the running
        // value num*(n-k+i)/i is always integral when divided in this order.
        std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
        if (num > UINT64_MAX / factor) {
            exact = false;
            break;
        }
        num = num * factor / static_cast<std::uint64_t>(i);
    }
    if (exact) return static_cast<double>(num);
    return std::round(std::exp(log_binomial(n, k)));
}

}  // namespace superrad
