#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "wfh/errors.hpp"

namespace wfh {

/// Arbitrary-precision integer (GMP-backed).
using Integer = boost::multiprecision::mpz_int;

/// Exact rational number, always held in lowest terms with a positive
/// denominator (GMP's mpq canonical form).
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
    const Integer den = denominator_of(r);
    if (den == 1) return numerator_of(r).str();
    return numerator_of(r).str() + "/" + den.str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

namespace detail {
inline bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}
}  // namespace detail

/// Parses "p", "-p", "p/q". Throws DomainError on anything else or q = 0.
inline Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!detail::is_integer_literal(num))
        throw DomainError("not a rational literal: '" + std::string(text) + "'");
    Integer p(std::string(num[0] == '+' ? num.substr(1) : num));
    if (slash == std::string_view::npos) return Rational(p);
    const std::string_view den = text.substr(slash + 1);
    if (!detail::is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw DomainError("not a rational literal: '" + std::string(text) + "'");
    Integer q{std::string(den)};
    if (q == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
}

inline Rational factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer b = 1;
    for (unsigned i = 1; i <= k; ++i) {
        b *= (n - k + i);
        b /= i;
    }
    return b;
}

}  // namespace wfh
