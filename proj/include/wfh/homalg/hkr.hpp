#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wfh/homalg/hochschild.hpp"

namespace wfh {

/// Basis element x^alpha dx_{s_1} ^ ... ^ dx_{s_m} of polynomial forms,
/// s strictly increasing.
struct DifferentialMonomial {
    std::vector<unsigned> exponents;
    std::vector<std::size_t> differentials;

    unsigned weight() const {
        unsigned w = static_cast<unsigned>(differentials.size());
        for (auto e : exponents) w += e;
        return w;
    }
    friend bool operator<(const DifferentialMonomial& a, const DifferentialMonomial& b) {
        if (a.differentials.size() != b.differentials.size()) return a.differentials.size() < b.differentials.size();
        if (a.exponents != b.exponents) return a.exponents < b.exponents;
        return a.differentials < b.differentials;
    }
    friend bool operator==(const DifferentialMonomial& a, const DifferentialMonomial& b) {
        return a.exponents == b.exponents && a.differentials == b.differentials;
    }

    std::string text() const {
        std::string s = algebras::monomial_text(exponents);
        if (differentials.empty()) return s;
        std::string d;
        for (std::size_t i = 0; i < differentials.size(); ++i) {
            if (i) d += "^";
            d += "d" + algebras::variable_name(exponents.size(), differentials[i]);
        }
        return s == "1" ? d : s + "*" + d;
    }
};

/// The HKR comparison for one weight of the truncated polynomial algebra.
struct HkrComponent {
    int weight = 0;
    ChainMap map;
    /// forms[m] lists the basis of m-forms of this weight, in target order.
    std::vector<std::vector<DifferentialMonomial>> forms;
};

struct HkrMap {
    FinDimAlgebra algebra;
    std::size_t n_vars = 0;
    unsigned bound = 0;
    int chain_degree = 0;
    std::vector<HkrComponent> components;  // indexed by weight
};

namespace detail {

/// Forms of the given weight and form degree m with coefficient degree <= bound.
inline std::vector<DifferentialMonomial> forms_of_weight(std::size_t n_vars, unsigned bound, int weight, std::size_t m) {
    std::vector<DifferentialMonomial> out;
    if (m > n_vars || weight < static_cast<int>(m)) return out;
    const unsigned coeff_degree = static_cast<unsigned>(weight) - static_cast<unsigned>(m);
    if (coeff_degree > bound) return out;
    std::vector<std::vector<unsigned>> coeffs;
    for (auto& e : algebras::truncated_monomials(n_vars, coeff_degree)) {
        unsigned total = 0;
        for (auto k : e) total += k;
        if (total == coeff_degree) coeffs.push_back(e);
    }
    std::vector<std::size_t> subset(m);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
        if (pos == m) {
            for (const auto& c : coeffs) out.push_back(DifferentialMonomial{c, subset});
            return;
        }
        for (std::size_t v = start; v < n_vars; ++v) {
            subset[pos] = v;
            self(self, pos + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// HKR chain maps a_0 (x) a_1 (x) ... (x) a_m -> (1/m!) a_0 da_1 ^ ... ^ da_m from
/// the weight-w Hochschild chains of Q[x_1..x_n]/(deg > bound) to m-forms of
/// weight w with zero differential, for every weight 0..bound. Components
/// are defined in chain degrees 0..chain_degree + 1.
inline HkrMap hkr_map(std::size_t n_vars, unsigned bound, int chain_degree) {
    if (chain_degree < 0) throw DomainError("hkr_map: chain_degree must be non-negative");
    HkrMap out{algebras::truncated_polynomial(n_vars, bound), n_vars, bound, chain_degree, {}};
    const auto monos = algebras::truncated_monomials(n_vars, bound);
    const int top = chain_degree + 1;

    for (int w = 0; w <= static_cast<int>(bound); ++w) {
        BarOptions opt;
        opt.weight = w;
        BarComplex bar = bar_complex_with_basis(out.algebra, chain_degree, opt);

        HkrComponent comp;
        comp.weight = w;
        std::vector<std::size_t> dims;
        std::vector<std::map<DifferentialMonomial, std::size_t>> index;
        for (int m = 0; m <= top; ++m) {
            comp.forms.push_back(detail::forms_of_weight(n_vars, bound, w, static_cast<std::size_t>(m)));
            dims.push_back(comp.forms.back().size());
            std::map<DifferentialMonomial, std::size_t> idx;
            for (std::size_t k = 0; k < comp.forms.back().size(); ++k) idx[comp.forms.back()[k]] = k;
            index.push_back(std::move(idx));
        }
        std::vector<SparseMatrix> zero_boundaries;
        for (int m = 1; m <= top; ++m)
            zero_boundaries.emplace_back(dims[static_cast<std::size_t>(m - 1)], dims[static_cast<std::size_t>(m)]);
        ChainComplex target(0, dims, std::move(zero_boundaries));

        std::vector<SparseMatrix> components;
        for (int m = 0; m <= top; ++m) {
            const auto& tensors = bar.basis[static_cast<std::size_t>(m)];
            SparseMatrix f(dims[static_cast<std::size_t>(m)], tensors.size());
            const Rational scale = Rational(1) / factorial(static_cast<unsigned>(m));
            for (std::size_t col = 0; col < tensors.size(); ++col) {
                const auto& t = tensors[col];
                SparseAccumulator acc;
                // Choose the variable differentiated in each slot 1..m.
                std::vector<std::size_t> vars(static_cast<std::size_t>(m));
                auto rec = [&](auto&& self, std::size_t slot) -> void {
                    if (slot == vars.size()) {
                        std::vector<unsigned> coeff = monos[t[0]];
                        Integer c = 1;
                        for (std::size_t s = 0; s < vars.size(); ++s) {
                            const auto& e = monos[t[s + 1]];
                            if (e[vars[s]] == 0) return;
                            c *= e[vars[s]];
                            for (std::size_t v = 0; v < n_vars; ++v) coeff[v] += e[v] - (v == vars[s] ? 1u : 0u);
                        }
                        unsigned deg = 0;
                        for (auto k : coeff) deg += k;
                        if (deg > bound) return;
                        // Sort the differentials, tracking the permutation sign.
                        std::vector<std::size_t> d = vars;
                        int sign = 1;
                        for (std::size_t i = 0; i < d.size(); ++i)
                            for (std::size_t j = 0; j + 1 < d.size() - i; ++j) {
                                if (d[j] == d[j + 1]) return;
                                if (d[j] > d[j + 1]) {
                                    std::swap(d[j], d[j + 1]);
                                    sign = -sign;
                                }
                            }
                        acc.add(index[static_cast<std::size_t>(m)].at(DifferentialMonomial{coeff, d}),
                                Rational(c) * scale * sign);
                        return;
                    }
                    for (std::size_t v = 0; v < n_vars; ++v) {
                        vars[slot] = v;
                        self(self, slot + 1);
                    }
                };
                rec(rec, 0);
                f.set_column(col, acc.take());
            }
            components.push_back(std::move(f));
        }
        comp.map = ChainMap{bar.complex, std::move(target), 0, std::move(components)};
        out.components.push_back(std::move(comp));
    }
    return out;
}

}  // namespace wfh
