#pragma once

#include <cstdint>
#include <vector>

#include "wfh/exact_core/rational.hpp"

namespace wfh {

/// B_0..B_n from sum_{k=0}^{m} C(m+1,k) B_k = 0, with B_1 = -1/2.
inline std::vector<Rational> bernoulli_table(unsigned n) {
    std::vector<Rational> b(n + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * b[k];
        b[m] = -acc / static_cast<long>(m + 1);
    }
    return b;
}

inline Rational bernoulli(unsigned n) { return bernoulli_table(n).back(); }

/// sigma_m(n) = sum of d^m over the divisors d of n.
inline Integer divisor_power_sum(std::uint64_t n, unsigned m) {
    if (n == 0) throw DomainError("divisor_power_sum: n must be positive");
    Integer total = 0;
    auto add = [&](std::uint64_t d) {
        Integer p = 1;
        for (unsigned i = 0; i < m; ++i) p *= d;
        total += p;
    };
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        add(d);
        if (d != n / d) add(n / d);
    }
    return total;
}

}  // namespace wfh
