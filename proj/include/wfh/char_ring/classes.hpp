#pragma once

#include <cstddef>
#include <vector>

#include "wfh/char_ring/manifold.hpp"
#include "wfh/exact_core/bernoulli.hpp"
#include "wfh/exact_core/eisenstein.hpp"

namespace wfh {

namespace detail {

inline int max_chern_character_index(const ManifoldSpec& spec) { return spec.ring()->top_degree() / 2; }

/// sum_{k>=k0} (-B_{2k}/(2k)) ch_{2k}
inline MixedClass<Rational> bernoulli_ch_sum(const ManifoldSpec& spec, int k0) {
    const int top = max_chern_character_index(spec);
    const auto ch = chern_character(spec, top);
    const auto b = bernoulli_table(static_cast<unsigned>(top) + 2);
    MixedClass<Rational> sum = spec.zero();
    for (int k = k0; 2 * k <= top; ++k)
        sum += ch[static_cast<std::size_t>(2 * k)] * (-b[static_cast<std::size_t>(2 * k)] / (2 * k));
    return sum;
}

}  // namespace detail

/// Td(TX) = exp(ch_1/2 + sum_{k>=1} (-B_{2k}/(2k)) ch_{2k}).
inline MixedClass<Rational> todd_class(const ManifoldSpec& spec) {
    const auto ch = chern_character(spec, 1);
    return class_exp(ch[1] * Rational(1, 2) + detail::bernoulli_ch_sum(spec, 1));
}

/// A-hat(TX) = exp(sum_{k>=1} (-B_{2k}/(2k)) ch_{2k}).
inline MixedClass<Rational> a_hat_class(const ManifoldSpec& spec) {
    return class_exp(detail::bernoulli_ch_sum(spec, 1));
}

/// exp(-c_1/2) as a class.
inline MixedClass<Rational> half_first_chern_exp(const ManifoldSpec& spec) {
    return class_exp(spec.chern(1) * Rational(-1, 2));
}

/// Wit(X) = exp(sum_{k>=2} e_{2k}(q) ch_{2k}(TX)), q-series coefficients
/// truncated at q_order. The k = 1 (ch_2) term is not part of the sum.
inline MixedClass<QSeries> witten_class(const ManifoldSpec& spec, std::size_t q_order) {
    const int top = detail::max_chern_character_index(spec);
    const auto ch = chern_character(spec, top);
    MixedClass<QSeries> exponent(spec.ring(), QSeries(q_order));
    for (int k = 2; 2 * k <= top; ++k)
        exponent += scale_by_series(ch[static_cast<std::size_t>(2 * k)], eisenstein_q(k, q_order));
    return class_exp(exponent);
}

/// Applies the integration functional to the top-degree component.
template <class K>
K integrate(const MixedClass<K>& cls, const ManifoldSpec& spec) {
    if (cls.ring() != spec.ring()) throw DomainError("integrate: class is not in the spec's ring");
    K total = cls.zero_scalar();
    const RingSpec& ring = *spec.ring();
    for (std::size_t i = 0; i < cls.size(); ++i)
        if (ring.degree(i) == ring.top_degree() && ring.integral(i) != 0) total += cls[i] * ring.integral(i);
    return total;
}

inline QSeries witten_genus(const ManifoldSpec& spec, std::size_t q_order) {
    return integrate(witten_class(spec, q_order), spec);
}

/// Checks q^0(Wit) == exp(-c_1/2) Td exactly. Requires the spec to declare
/// ch_2 trivialised; throws PreconditionError naming ch_2 when it is not zero.
inline bool witten_limit_check(const ManifoldSpec& spec) {
    const auto ch = chern_character(spec, 2);
    if (!ch[2].is_zero())
        throw PreconditionError("witten_limit_check requires ch_2(TX) = 0, but ch_2 = " + ch[2].to_text());
    if (!spec.ch2_trivialized())
        throw PreconditionError("witten_limit_check requires the spec to declare ch2_trivialized");
    const MixedClass<Rational> limit = q_coefficient(witten_class(spec, 0), 0);
    return limit == half_first_chern_exp(spec) * todd_class(spec);
}

}  // namespace wfh
