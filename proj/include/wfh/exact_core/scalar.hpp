#pragma once

#include "wfh/exact_core/qseries.hpp"
#include "wfh/exact_core/rational.hpp"

namespace wfh {

/// Uniform access to zero/one for coefficient types whose zero depends on a
/// prototype (a QSeries zero carries its truncation order).
template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static Rational zero_like(const Rational&) { return Rational(0); }
    static Rational one_like(const Rational&) { return Rational(1); }
    static bool is_zero(const Rational& r) { return r == 0; }
    static std::string text(const Rational& r) { return to_string(r); }
};

template <>
struct ScalarTraits<QSeries> {
    static QSeries zero_like(const QSeries& s) { return QSeries(s.order()); }
    static QSeries one_like(const QSeries& s) { return QSeries::one(s.order()); }
    static bool is_zero(const QSeries& s) { return s.is_zero(); }
    static std::string text(const QSeries& s) {
        std::string out;
        for (std::size_t n = 0; n <= s.order(); ++n) {
            if (s[n] == 0) continue;
            if (!out.empty()) out += " + ";
            out += "(" + to_string(s[n]) + ")";
            if (n > 0) out += "q^" + std::to_string(n);
        }
        return out.empty() ? "0" : out;
    }
};

template <class K>
concept ExactScalar = requires(const K& a) {
    { ScalarTraits<K>::zero_like(a) };
    { ScalarTraits<K>::is_zero(a) };
};

}  // namespace wfh
