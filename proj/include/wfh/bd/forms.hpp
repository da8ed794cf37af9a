#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wfh/errors.hpp"
#include "wfh/exact_core/scalar.hpp"

namespace wfh {

/// Exponent vector over the generators of a FormAlgebra; odd generators
/// have exponent 0 or 1.
using FormMonomial = std::vector<std::uint8_t>;

template <class K>
using Form = std::map<FormMonomial, K>;

struct FormGenerator {
    enum class Role { X, Xi, DX, DXi, Theta };
    Role role;
    std::size_t index;  // 0-based direction
    std::string name;
    int degree;  // cohomological, reversed grading for forms
    int weight;  // C^x fibre weight
    bool odd() const { return degree % 2 != 0; }
};

/// Polynomial differential forms on T*A^n with reversed grading, tensored
/// with an exterior algebra on `dolbeault` odd generators theta_j of degree
/// +1 that every operator below treats as constants.
///
/// Generators, in this order: x_i, xi_i (degree 0), dx_i, dxi_i (degree -1),
/// theta_j (degree 1). Weights: xi_i and dxi_i have weight 1, the rest 0.
/// Conventions: d x_i = dx_i, d xi_i = dxi_i; pi = sum_i d/dxi_i ^ d/dx_i
/// acts by i_pi = sum_i iota_{x_i} iota_{xi_i}, so i_pi(dxi dx) = 1;
/// L_pi = i_pi d - d i_pi; {a, b} = L(ab) - L(a) b - (-1)^{|a|} a L(b).
/// Arithmetic is exact: nothing is truncated here.
class FormAlgebra {
public:
    FormAlgebra(std::size_t n, std::size_t dolbeault) : n_(n), dolbeault_(dolbeault) {
        if (n < 1) throw DomainError("FormAlgebra needs at least one direction");
        auto name = [&](const std::string& stem, std::size_t i, std::size_t count) {
            return count == 1 ? stem : stem + std::to_string(i + 1);
        };
        using R = FormGenerator::Role;
        for (std::size_t i = 0; i < n; ++i) gens_.push_back({R::X, i, name("x", i, n), 0, 0});
        for (std::size_t i = 0; i < n; ++i) gens_.push_back({R::Xi, i, name("xi", i, n), 0, 1});
        for (std::size_t i = 0; i < n; ++i) gens_.push_back({R::DX, i, name("dx", i, n), -1, 0});
        for (std::size_t i = 0; i < n; ++i) gens_.push_back({R::DXi, i, name("dxi", i, n), -1, 1});
        for (std::size_t j = 0; j < dolbeault; ++j) gens_.push_back({R::Theta, j, name("theta", j, dolbeault), 1, 0});
    }

    std::size_t directions() const { return n_; }
    std::size_t dolbeault() const { return dolbeault_; }
    std::size_t generator_count() const { return gens_.size(); }
    const std::vector<FormGenerator>& generators() const { return gens_; }
    std::size_t index(FormGenerator::Role role, std::size_t i) const {
        const std::size_t base = static_cast<std::size_t>(role) * n_;
        if (role == FormGenerator::Role::Theta ? i >= dolbeault_ : i >= n_)
            throw DomainError("FormAlgebra: generator index out of range");
        return base + i;
    }

    FormMonomial one() const { return FormMonomial(gens_.size(), 0); }
    FormMonomial generator(std::size_t g) const {
        FormMonomial m = one();
        m.at(g) = 1;
        return m;
    }

    int degree(const FormMonomial& m) const {
        int d = 0;
        for (std::size_t g = 0; g < m.size(); ++g) d += m[g] * gens_[g].degree;
        return d;
    }
    int weight(const FormMonomial& m) const {
        int w = 0;
        for (std::size_t g = 0; g < m.size(); ++g) w += m[g] * gens_[g].weight;
        return w;
    }
    /// Total degree in all generators (the truncation measure).
    std::size_t size(const FormMonomial& m) const {
        std::size_t s = 0;
        for (auto e : m) s += e;
        return s;
    }
    /// Number of dx and dxi factors.
    std::size_t form_degree(const FormMonomial& m) const {
        std::size_t s = 0;
        for (std::size_t g = 0; g < m.size(); ++g)
            if (gens_[g].role == FormGenerator::Role::DX || gens_[g].role == FormGenerator::Role::DXi) s += m[g];
        return s;
    }
    /// Pulled back from the base: no xi or dxi factors.
    bool is_base(const FormMonomial& m) const {
        for (std::size_t g = 0; g < m.size(); ++g)
            if (m[g] && (gens_[g].role == FormGenerator::Role::Xi || gens_[g].role == FormGenerator::Role::DXi))
                return false;
        return true;
    }

    std::string text(const FormMonomial& m) const {
        std::string s;
        for (std::size_t g = 0; g < m.size(); ++g) {
            if (!m[g]) continue;
            if (!s.empty()) s += "*";
            s += gens_[g].name;
            if (m[g] > 1) s += "^" + std::to_string(m[g]);
        }
        return s.empty() ? "1" : s;
    }
    /// Inverse of text(); "1" is the unit.
    FormMonomial parse(const std::string& text) const {
        FormMonomial m = one();
        if (text == "1") return m;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t star = text.find('*', pos);
            if (star == std::string::npos) star = text.size();
            std::string factor = text.substr(pos, star - pos);
            unsigned e = 1;
            if (auto caret = factor.find('^'); caret != std::string::npos) {
                e = static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
                factor = factor.substr(0, caret);
            }
            std::size_t g = gens_.size();
            for (std::size_t k = 0; k < gens_.size(); ++k)
                if (gens_[k].name == factor) g = k;
            if (g == gens_.size()) throw DomainError("unknown form generator '" + factor + "'");
            if (m[g] + e > (gens_[g].odd() ? 1u : 255u))
                throw DomainError("monomial '" + text + "' repeats an odd generator");
            m[g] = static_cast<std::uint8_t>(m[g] + e);
            pos = star + 1;
        }
        return m;
    }

    /// Product of monomials: sign and result, or sign 0 when an odd
    /// generator repeats.
    int monomial_product(const FormMonomial& a, const FormMonomial& b, FormMonomial& out) const {
        out.resize(a.size());
        int swaps = 0, odd_in_a_after = 0;
        // Count pairs (g in a, h in b) of odd generators with h < g.
        for (std::size_t g = gens_.size(); g-- > 0;) {
            if (!gens_[g].odd()) {
                out[g] = static_cast<std::uint8_t>(a[g] + b[g]);
                continue;
            }
            if (a[g] && b[g]) return 0;
            if (b[g]) swaps += odd_in_a_after;
            if (a[g]) ++odd_in_a_after;
            out[g] = static_cast<std::uint8_t>(a[g] + b[g]);
        }
        return swaps % 2 == 0 ? 1 : -1;
    }

    template <class K>
    Form<K> multiply(const Form<K>& a, const Form<K>& b) const {
        Form<K> r;
        FormMonomial m;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) {
                const int s = monomial_product(ma, mb, m);
                if (s == 0) continue;
                add(r, m, s > 0 ? K(ca * cb) : K(-(ca * cb)));
            }
        prune(r);
        return r;
    }

    /// Derivation of parity `odd` sending generator g to images[g] (rational
    /// forms; missing entries mean zero).
    template <class K>
    Form<K> derivation(const Form<K>& a, bool odd, const std::map<std::size_t, Form<Rational>>& images) const {
        Form<K> r;
        FormMonomial prefix, t;
        for (const auto& [m, c] : a) {
            int odd_before = 0;
            for (std::size_t g = 0; g < m.size(); ++g) {
                if (!m[g]) continue;
                auto it = images.find(g);
                if (it != images.end()) {
                    // prefix * g^{e-1} * D(g) * suffix, with the Koszul sign of D
                    // passing the odd factors before g.
                    FormMonomial left = one(), right = one();
                    for (std::size_t h = 0; h < g; ++h) left[h] = m[h];
                    left[g] = static_cast<std::uint8_t>(m[g] - 1);
                    for (std::size_t h = g + 1; h < m.size(); ++h) right[h] = m[h];
                    const Rational mult(static_cast<long>(m[g]));
                    const bool negate = odd && odd_before % 2 == 1;
                    for (const auto& [mi, ci] : it->second) {
                        const int s1 = monomial_product(left, mi, prefix);
                        if (s1 == 0) continue;
                        const int s2 = monomial_product(prefix, right, t);
                        if (s2 == 0) continue;
                        Rational k = mult * ci * (s1 * s2);
                        if (negate) k = -k;
                        add(r, t, K(c * k));
                    }
                }
                if (gens_[g].odd()) odd_before += m[g];
            }
        }
        prune(r);
        return r;
    }

    template <class K>
    Form<K> d(const Form<K>& a) const {
        std::map<std::size_t, Form<Rational>> im;
        for (std::size_t i = 0; i < n_; ++i) {
            im[index(FormGenerator::Role::X, i)] = {{generator(index(FormGenerator::Role::DX, i)), Rational(1)}};
            im[index(FormGenerator::Role::Xi, i)] = {{generator(index(FormGenerator::Role::DXi, i)), Rational(1)}};
        }
        return derivation(a, true, im);
    }

    /// Contraction with d/dx_i (role DX) or d/dxi_i (role DXi).
    template <class K>
    Form<K> contract(const Form<K>& a, FormGenerator::Role role, std::size_t i) const {
        return derivation(a, true, {{index(role, i), Form<Rational>{{one(), Rational(1)}}}});
    }

    template <class K>
    Form<K> i_pi(const Form<K>& a) const {
        Form<K> r;
        for (std::size_t i = 0; i < n_; ++i)
            accumulate(r, contract(contract(a, FormGenerator::Role::DXi, i), FormGenerator::Role::DX, i), Rational(1));
        return r;
    }

    template <class K>
    Form<K> lie_pi(const Form<K>& a) const {
        Form<K> r = i_pi(d(a));
        accumulate(r, d(i_pi(a)), Rational(-1));
        return r;
    }

    /// {a, b}_pi for homogeneous a (extended linearly in both slots).
    template <class K>
    Form<K> bracket(const Form<K>& a, const Form<K>& b) const {
        Form<K> r;
        for (const auto& [m, c] : a) {
            Form<K> single{{m, c}};
            accumulate(r, lie_pi(multiply(single, b)), Rational(1));
            accumulate(r, multiply(lie_pi(single), b), Rational(-1));
            accumulate(r, multiply(single, lie_pi(b)), Rational(degree(m) % 2 == 0 ? -1 : 1));
        }
        return r;
    }

    template <class K>
    static void accumulate(Form<K>& into, const Form<K>& a, const Rational& scale) {
        for (const auto& [m, c] : a) add(into, m, K(c * scale));
        prune(into);
    }

private:
    template <class K>
    static void add(Form<K>& into, const FormMonomial& m, K c) {
        auto it = into.find(m);
        if (it == into.end()) into.emplace(m, std::move(c));
        else it->second += c;
    }
    template <class K>
    static void prune(Form<K>& f) {
        for (auto it = f.begin(); it != f.end();)
            it = ScalarTraits<K>::is_zero(it->second) ? f.erase(it) : std::next(it);
    }

    std::size_t n_;
    std::size_t dolbeault_;
    std::vector<FormGenerator> gens_;
};

}  // namespace wfh
