#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "wfh/factalg/arrangement.hpp"
#include "wfh/homalg/algebra.hpp"
#include "wfh/homalg/hochschild.hpp"

namespace wfh {

/// dim F_A(O) = (dim A)^{#components}; F_A(empty) = Q.
inline std::size_t assignment_dimension(const FinDimAlgebra& a, std::size_t components,
                                        std::size_t budget = default_size_budget) {
    std::size_t d = 1;
    for (std::size_t i = 0; i < components; ++i) {
        d *= a.dimension();
        if (d > budget) throw SizeBudgetError("F_A of an open with " + std::to_string(components) + " components", d, budget);
    }
    return d;
}

/// Matrix of F_A(inner) -> F_A(outer) for inner contained in outer: along
/// each component of outer, the elements on the inner components inside it
/// are multiplied in positional order; components of outer that contain no
/// inner component receive the unit. Tensor factors follow the canonical
/// component order, first factor most significant.
inline SparseMatrix induced_map(const Arrangement& arr, const OpenSet& inner, const OpenSet& outer,
                                const FinDimAlgebra& a, std::size_t budget = default_size_budget) {
    if (!is_subset(inner, outer)) throw DomainError("induced_map: inner open is not contained in outer open");
    const auto ic = arr.components(inner);
    const auto oc = arr.components(outer);
    const std::size_t d = a.dimension();

    // For every outer component, the inner components inside it in order.
    std::vector<std::vector<std::size_t>> groups(oc.size());
    for (std::size_t k = 0; k < ic.size(); ++k) {
        std::size_t host = oc.size();
        for (std::size_t o = 0; o < oc.size(); ++o)
            if (arr.component_contains(oc[o], ic[k].first)) host = o;
        if (host == oc.size()) throw DomainError("induced_map: component not inside outer open");
        groups[host].push_back(k);
    }
    for (std::size_t o = 0; o < oc.size(); ++o) {
        auto& g = groups[o];
        if (oc[o].whole && g.size() > 1)
            throw DomainError("induced_map: ordering on the full circle needs a cut point");
        std::sort(g.begin(), g.end(), [&](std::size_t x, std::size_t y) {
            return arr.offset_in(oc[o], ic[x].first) < arr.offset_in(oc[o], ic[y].first);
        });
    }

    const std::size_t rows = assignment_dimension(a, oc.size(), budget);
    const std::size_t cols = assignment_dimension(a, ic.size(), budget);
    SparseMatrix m(rows, cols);
    std::vector<std::size_t> digits(ic.size());
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t rest = col;
        for (std::size_t k = ic.size(); k-- > 0;) {
            digits[k] = rest % d;
            rest /= d;
        }
        // Kronecker product of the per-component results.
        SparseVector acc{{0, Rational(1)}};
        for (std::size_t o = 0; o < oc.size(); ++o) {
            SparseVector factor = a.unit();
            if (!groups[o].empty()) {
                factor = a.basis_vector(digits[groups[o][0]]);
                for (std::size_t t = 1; t < groups[o].size(); ++t)
                    factor = a.multiply(factor, a.basis_vector(digits[groups[o][t]]));
            }
            SparseVector next;
            for (const auto& [i, x] : acc)
                for (const auto& [j, y] : factor) next.emplace_back(i * d + j, x * y);
            acc = std::move(next);
            if (acc.empty()) break;
        }
        std::sort(acc.begin(), acc.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        m.set_column(col, std::move(acc));
    }
    return m;
}

/// The n-fold product map F_A(U_1) (x) ... (x) F_A(U_n) -> F_A(V) for disjoint
/// arcs U_i inside the arc V: elements are multiplied in the order the arcs
/// occur along V (on the circle, starting from V's start, which lies in the
/// complement of V).
inline SparseVector structure_map(const Ambient& ambient, const std::vector<Arc>& inner, const Arc& outer,
                                  const FinDimAlgebra& a, const std::vector<SparseVector>& elements) {
    if (inner.size() != elements.size()) throw DomainError("structure_map: one element per inner arc expected");
    const Arc out = normalize(ambient, outer);
    if (out.full) throw DomainError("structure_map: the outer arc must be proper");
    std::vector<Arc> arcs;
    for (const auto& u : inner) arcs.push_back(normalize(ambient, u));
    std::vector<Arc> all = arcs;
    all.push_back(out);
    const Arrangement arr = Arrangement::of_arcs(ambient, all);
    const OpenSet outer_set = arr.atoms(out);
    std::vector<OpenSet> sets;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        sets.push_back(arr.atoms(arcs[i]));
        if (!is_subset(sets.back(), outer_set))
            throw DomainError("structure_map: arc " + arcs[i].text() + " is not contained in " + out.text());
        for (std::size_t j = 0; j < i; ++j)
            if (!disjoint(sets[i], sets[j]))
                throw DomainError("structure_map: arcs " + arcs[j].text() + " and " + arcs[i].text() + " overlap");
    }
    const Component host = arr.components(outer_set).front();
    std::vector<std::size_t> order(arcs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto first_atom = [&](std::size_t i) {
        return arr.components(sets[i]).front().first;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return arr.offset_in(host, first_atom(x)) < arr.offset_in(host, first_atom(y));
    });
    SparseVector r = a.unit();
    for (std::size_t i : order) r = a.multiply(r, elements[i]);
    return r;
}

}  // namespace wfh
