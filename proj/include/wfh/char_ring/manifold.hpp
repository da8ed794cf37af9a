#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wfh/char_ring/ring.hpp"

namespace wfh {

/// A formal complex manifold: a cohomology ring model, the complex dimension,
/// the total Chern class c(TX) = 1 + c_1 + ... + c_n, and whether ch_2(TX)
/// is declared trivialised.
class ManifoldSpec {
public:
    /// `chern[i-1]` is c_i. Validates c_i in degree 2i and, if
    /// `ch2_trivialized`, that the computed ch_2 vanishes.
    ManifoldSpec(RingPtr ring, int complex_dimension, std::vector<MixedClass<Rational>> chern, bool ch2_trivialized);

    const RingPtr& ring() const { return ring_; }
    int complex_dimension() const { return dim_; }
    bool ch2_trivialized() const { return ch2_trivialized_; }

    /// c_i for 0 <= i; c_0 = 1 and c_i = 0 above the dimension.
    MixedClass<Rational> chern(int i) const {
        if (i == 0) return MixedClass<Rational>::one(ring_, Rational(0));
        if (i < 0 || i > dim_) return MixedClass<Rational>(ring_, Rational(0));
        return chern_[static_cast<std::size_t>(i - 1)];
    }

    MixedClass<Rational> zero() const { return MixedClass<Rational>(ring_, Rational(0)); }
    MixedClass<Rational> one() const { return MixedClass<Rational>::one(ring_, Rational(0)); }

private:
    RingPtr ring_;
    int dim_;
    std::vector<MixedClass<Rational>> chern_;
    bool ch2_trivialized_;
};

/// ch_0..ch_{max_k} of TX via Newton's identities:
/// p_m = c_1 p_{m-1} - c_2 p_{m-2} + ... + (-1)^{m-1} m c_m, ch_m = p_m/m!.
inline std::vector<MixedClass<Rational>> chern_character(const ManifoldSpec& spec, int max_k) {
    std::vector<MixedClass<Rational>> power_sums;  // p_0 unused
    power_sums.push_back(spec.one() * Rational(spec.complex_dimension()));
    std::vector<MixedClass<Rational>> ch{power_sums[0]};
    for (int m = 1; m <= max_k; ++m) {
        MixedClass<Rational> p = spec.chern(m) * Rational(m % 2 == 1 ? m : -m);
        for (int i = 1; i < m; ++i) {
            const MixedClass<Rational> term = spec.chern(i) * power_sums[static_cast<std::size_t>(m - i)];
            if (i % 2 == 1)
                p += term;
            else
                p -= term;
        }
        power_sums.push_back(p);
        ch.push_back(p * (Rational(1) / factorial(static_cast<unsigned>(m))));
    }
    return ch;
}

inline ManifoldSpec::ManifoldSpec(RingPtr ring, int complex_dimension, std::vector<MixedClass<Rational>> chern,
                                  bool ch2_trivialized)
    : ring_(std::move(ring)), dim_(complex_dimension), chern_(std::move(chern)), ch2_trivialized_(ch2_trivialized) {
    if (dim_ < 0) throw SchemaError("complex_dimension", "must be non-negative");
    if (2 * dim_ != ring_->top_degree())
        throw SchemaError("complex_dimension", "ring top degree must equal twice the complex dimension");
    if (static_cast<int>(chern_.size()) > dim_) throw SchemaError("chern", "more Chern classes than the dimension");
    while (static_cast<int>(chern_.size()) < dim_) chern_.push_back(MixedClass<Rational>(ring_, Rational(0)));
    for (std::size_t i = 0; i < chern_.size(); ++i) {
        if (chern_[i].ring() != ring_) throw SchemaError("chern", "class from a different ring");
        if (!chern_[i].is_homogeneous(2 * static_cast<int>(i + 1)))
            throw SchemaError("chern." + std::to_string(i + 1), "c_i must lie in degree 2i");
    }
    if (ch2_trivialized_) {
        const auto ch = chern_character(*this, 2);
        if (!ch[2].is_zero())
            throw SchemaError("ch2_trivialized", "flag set but ch_2(TX) = " + ch[2].to_text() + " is nonzero");
    }
}

/// Truncated polynomial ring Q[h]/(h^{n+1}) with integral(h^n) = 1.
inline RingPtr projective_ring(int n, const std::string& generator = "h") {
    std::map<Exponents, Rational> integration{{Exponents{static_cast<unsigned>(n)}, Rational(1)}};
    return std::make_shared<const RingSpec>(
        RingSpec::from_relations({{generator, 2}}, 2 * n, {}, integration));
}

/// P^n with c(TP^n) = (1 + h)^{n+1}.
inline ManifoldSpec projective_space(int n) {
    RingPtr ring = projective_ring(n);
    std::vector<MixedClass<Rational>> chern;
    for (int i = 1; i <= n; ++i) {
        MixedClass<Rational> c(ring, Rational(0));
        c[ring->index_of(Exponents{static_cast<unsigned>(i)})] = Rational(binomial(static_cast<unsigned>(n + 1), static_cast<unsigned>(i)));
        chern.push_back(std::move(c));
    }
    return ManifoldSpec(ring, n, std::move(chern), false);
}

/// Complex dimension n with trivial tangent bundle (c = 1) on Q[h]/(h^{n+1}).
inline ManifoldSpec trivial_bundle(int n) { return ManifoldSpec(projective_ring(n), n, {}, true); }

/// Product manifold: tensor ring, c(T(X x Y)) = c(TX) c(TY).
inline ManifoldSpec product(const ManifoldSpec& x, const ManifoldSpec& y) {
    auto ring = std::make_shared<const RingSpec>(RingSpec::tensor(*x.ring(), *y.ring()));
    const std::size_t dy = y.ring()->dimension();
    auto lift = [&](const MixedClass<Rational>& a, const MixedClass<Rational>& b) {
        MixedClass<Rational> r(ring, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (a[i] == 0 || b[j] == 0) continue;
                Exponents e = x.ring()->monomial(i);
                e.insert(e.end(), y.ring()->monomial(j).begin(), y.ring()->monomial(j).end());
                r[ring->index_of(e)] += a[i] * b[j];
            }
        (void)dy;
        return r;
    };
    const int n = x.complex_dimension() + y.complex_dimension();
    std::vector<MixedClass<Rational>> chern;
    for (int k = 1; k <= n; ++k) {
        MixedClass<Rational> c(ring, Rational(0));
        for (int i = 0; i <= k; ++i) c += lift(x.chern(i), y.chern(k - i));
        chern.push_back(std::move(c));
    }
    return ManifoldSpec(ring, n, std::move(chern), x.ch2_trivialized() && y.ch2_trivialized());
}

}  // namespace wfh
