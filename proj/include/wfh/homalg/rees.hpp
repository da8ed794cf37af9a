#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>

#include "wfh/errors.hpp"
#include "wfh/exact_core/rational.hpp"

namespace wfh {

/// Exponents (a, b, c) of the normally ordered monomial x^a p^b hbar^c.
using ReesMonomial = std::array<unsigned, 3>;

/// Element of the truncated Rees algebra. `overflow` records that some term
/// of a product left the bounds and was dropped.
struct ReesElement {
    std::map<ReesMonomial, Rational> terms;
    bool overflow = false;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const ReesElement& a, const ReesElement& b) { return a.terms == b.terms; }

    void add(const ReesMonomial& m, const Rational& c) {
        if (c == 0) return;
        Rational& slot = terms[m];
        slot += c;
        if (slot == 0) terms.erase(m);
    }
};

/// Normally ordered element x^a p^b of a specialisation (hbar set to 0 or 1).
using PlaneMonomial = std::array<unsigned, 2>;
using PlaneElement = std::map<PlaneMonomial, Rational>;

inline std::string to_text(const ReesElement& e) {
    if (e.terms.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : e.terms) {
        std::string mono;
        auto factor = [&](const char* name, unsigned k) {
            if (k == 0) return;
            if (!mono.empty()) mono += "*";
            mono += name;
            if (k > 1) mono += "^" + std::to_string(k);
        };
        factor("x", m[0]);
        factor("p", m[1]);
        factor("hbar", m[2]);
        if (!s.empty()) s += (c < 0) ? " - " : " + ";
        else if (c < 0) s += "-";
        const Rational a = c < 0 ? Rational(-c) : c;
        if (mono.empty()) s += to_string(a);
        else if (a == 1) s += mono;
        else s += to_string(a) + "*" + mono;
    }
    return s;
}

/// Rees algebra of differential operators in one variable, p = hbar d/dx,
/// truncated at x^A, p^B, hbar^C. Normal ordering uses
///   p^b x^a' = sum_j j! C(b, j) C(a', j) hbar^j x^{a'-j} p^{b-j}.
class ReesAlgebra {
public:
    ReesAlgebra(unsigned max_x, unsigned max_p, unsigned max_hbar) : bounds_{max_x, max_p, max_hbar} {
        if (max_x < 1 || max_p < 1 || max_hbar < 1) throw DomainError("rees_weyl: bounds must be at least 1");
    }

    const ReesMonomial& bounds() const { return bounds_; }

    bool in_bounds(const ReesMonomial& m) const {
        return m[0] <= bounds_[0] && m[1] <= bounds_[1] && m[2] <= bounds_[2];
    }

    ReesElement monomial(unsigned a, unsigned b, unsigned c, Rational coeff = Rational(1)) const {
        ReesElement e;
        if (!in_bounds({a, b, c})) {
            e.overflow = true;
            return e;
        }
        e.add({a, b, c}, coeff);
        return e;
    }
    ReesElement x() const { return monomial(1, 0, 0); }
    ReesElement p() const { return monomial(0, 1, 0); }
    ReesElement hbar() const { return monomial(0, 0, 1); }

    ReesElement multiply(const ReesElement& u, const ReesElement& v) const {
        ReesElement out;
        out.overflow = u.overflow || v.overflow;
        for (const auto& [m, c] : u.terms)
            for (const auto& [n, d] : v.terms) {
                const unsigned jmax = std::min(m[1], n[0]);
                for (unsigned j = 0; j <= jmax; ++j) {
                    const ReesMonomial r{m[0] + n[0] - j, m[1] + n[1] - j, m[2] + n[2] + j};
                    if (!in_bounds(r)) {
                        out.overflow = true;
                        continue;
                    }
                    const Rational k = factorial(j) * Rational(binomial(m[1], j) * binomial(n[0], j));
                    out.add(r, c * d * k);
                }
            }
        return out;
    }

    ReesElement commutator(const ReesElement& u, const ReesElement& v) const {
        ReesElement out = multiply(u, v);
        const ReesElement vu = multiply(v, u);
        for (const auto& [m, c] : vu.terms) out.add(m, -c);
        out.overflow = out.overflow || vu.overflow;
        return out;
    }

    /// Sets hbar to 0 or 1.
    static PlaneElement specialize(const ReesElement& e, unsigned hbar_value) {
        if (hbar_value > 1) throw DomainError("specialize: hbar must be 0 or 1");
        PlaneElement out;
        for (const auto& [m, c] : e.terms) {
            if (hbar_value == 0 && m[2] > 0) continue;
            Rational& slot = out[{m[0], m[1]}];
            slot += c;
            if (slot == 0) out.erase({m[0], m[1]});
        }
        return out;
    }

    /// Product in the specialisation: commutative for hbar = 0, the Weyl
    /// algebra [d, x] = 1 for hbar = 1.
    static PlaneElement specialized_multiply(const PlaneElement& u, const PlaneElement& v, unsigned hbar_value) {
        PlaneElement out;
        for (const auto& [m, c] : u)
            for (const auto& [n, d] : v) {
                const unsigned jmax = hbar_value == 0 ? 0 : std::min(m[1], n[0]);
                for (unsigned j = 0; j <= jmax; ++j) {
                    const PlaneMonomial r{m[0] + n[0] - j, m[1] + n[1] - j};
                    const Rational k = factorial(j) * Rational(binomial(m[1], j) * binomial(n[0], j));
                    Rational& slot = out[r];
                    slot += c * d * k;
                    if (slot == 0) out.erase(r);
                }
            }
        return out;
    }

private:
    ReesMonomial bounds_;
};

inline ReesAlgebra rees_weyl(unsigned max_x, unsigned max_p, unsigned max_hbar) {
    return ReesAlgebra(max_x, max_p, max_hbar);
}

}  // namespace wfh
