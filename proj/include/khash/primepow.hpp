#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace khash {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// q = p^e with p prime, e >= 1; nullopt if q is not a prime power.
inline std::optional<std::pair<long, int>> prime_power_decompose(long q) {
    if (q < 2) return std::nullopt;
    long p = q;
    for (long d = 2; d * d <= q; ++d) {
        if (q % d == 0) { p = d; break; }
    }
    int e = 0;
    long rest = q;
    while (rest % p == 0) { rest /= p; ++e; }
    if (rest != 1) return std::nullopt;
    return std::make_pair(p, e);
}

/// All prime powers in [lo, hi], ascending. Sieves primes up to hi.
inline std::vector<long> prime_powers_in(long lo, long hi) {
    std::vector<long> out;
    if (hi < 2) return out;
    std::vector<char> composite(static_cast<std::size_t>(hi) + 1, 0);
    for (long p = 2; p * p <= hi; ++p) {
        if (composite[p]) continue;
        for (long v = p * p; v <= hi; v += p) composite[v] = 1;
    }
    lo = std::max(lo, 2L);
    for (long p = 2; p <= hi; ++p) {
        if (composite[p]) continue;
        for (long pw = p; pw <= hi; pw *= p) {
            if (pw >= lo) out.push_back(pw);
            if (pw > hi / p) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace khash
