#pragma once

// Independent reference computations used to check library results.

#include <cmath>
#include <cstdint>
#include <vector>

#include "naa/fsmodel.hpp"

namespace oracles {

/// floor(0.9^(t-10) * p) for whole seconds: p * 9^k as decimal digits, minus k digits.
inline int evaporate_exact(int p, int t) {
    if (t < 10) return p;
    const int k = t - 10;
    std::vector<int> digits;  // little endian, base 10
    for (int v = p; v > 0; v /= 10) digits.push_back(v % 10);
    for (int i = 0; i < k; ++i) {
        int carry = 0;
        for (int& d : digits) {
            const int x = d * 9 + carry;
            d = x % 10;
            carry = x / 10;
        }
        for (; carry > 0; carry /= 10) digits.push_back(carry % 10);
    }
    long long value = 0;
    for (std::size_t i = digits.size(); i-- > static_cast<std::size_t>(k);) value = value * 10 + digits[i];
    return static_cast<int>(value);
}

/// Brute-force Shannon entropy, bits per byte.
inline double shannon(const naa::ByteHistogram& h) {
    long double total = 0;
    for (auto c : h) total += c;
    long double e = 0;
    for (auto c : h) {
        if (c == 0) continue;
        const long double q = c / total;
        e += -q * std::log2(q);
    }
    return static_cast<double>(e);
}

}  // namespace oracles
