#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wfh/errors.hpp"
#include "wfh/homalg/algebra.hpp"
#include "wfh/homalg/chain_complex.hpp"

namespace wfh {

inline constexpr std::size_t default_size_budget = 20000;

struct BarOptions {
    /// Use A (x) (A/Q1)^{(x)n}. The quotient A/Q1 is spanned by the basis minus
    /// the first basis vector occurring in the unit.
    bool normalized = false;
    /// Restrict to tensors of this total weight (requires algebra weights).
    std::optional<int> weight;
    std::size_t budget = default_size_budget;
};

/// Hochschild chains together with the tensor basis of each degree.
struct BarComplex {
    ChainComplex complex;
    /// basis[n][k] lists the algebra basis indices (a_0, ..., a_n) of the
    /// k-th basis tensor in degree n.
    std::vector<std::vector<std::vector<std::size_t>>> basis;
};

namespace detail {

using Tensor = std::vector<std::size_t>;

inline std::vector<Tensor> enumerate_tensors(const FinDimAlgebra& a, std::size_t length, const BarOptions& opt,
                                             std::size_t cap) {
    const std::size_t d = a.dimension();
    const std::optional<std::size_t> unit =
        opt.normalized ? std::optional<std::size_t>(a.unit().front().first) : std::nullopt;
    const std::vector<int>* w = a.weights() ? &*a.weights() : nullptr;
    std::vector<Tensor> out;
    Tensor t(length);
    auto rec = [&](auto&& self, std::size_t pos, int weight_so_far) -> void {
        if (pos == length) {
            if (!opt.weight || weight_so_far == *opt.weight) {
                out.push_back(t);
                if (out.size() > cap) throw SizeBudgetError("bar_complex", out.size(), cap);
            }
            return;
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (pos > 0 && unit && i == *unit) continue;
            int next = weight_so_far;
            if (w) {
                next += (*w)[i];
                if (opt.weight && next > *opt.weight) continue;
            }
            t[pos] = i;
            self(self, pos + 1, next);
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace detail

/// Hochschild complex with b(a_0 (x) ... (x) a_n) =
///   sum_{i<n} (-1)^i a_0 (x) ... (x) a_i a_{i+1} (x) ... (x) a_n
///   + (-1)^n a_n a_0 (x) a_1 (x) ... (x) a_{n-1}.
/// Chains are built through degree max_degree + 1 so that homology in
/// degrees 0..max_degree is exact.
inline BarComplex bar_complex_with_basis(const FinDimAlgebra& a, int max_degree, const BarOptions& opt = {}) {
    if (max_degree < 0) throw DomainError("bar_complex: max_degree must be non-negative");
    if (a.is_dg()) throw PreconditionError("bar_complex: only algebras concentrated in degree 0 are supported");
    if (opt.weight && !a.weights()) throw PreconditionError("bar_complex: weight restriction needs algebra weights");

    const int top = max_degree + 1;
    // Reject before enumerating when the unrestricted size is known to be too big.
    if (!opt.weight && !opt.normalized) {
        long double total = 0;
        for (int n = 0; n <= top; ++n) {
            const long double dn = std::pow(static_cast<long double>(a.dimension()), n + 1);
            total += dn;
            if (total > static_cast<long double>(opt.budget))
                throw SizeBudgetError("bar_complex: degree " + std::to_string(n) + " has dimension " +
                                          std::to_string(static_cast<unsigned long long>(dn)),
                                      static_cast<std::size_t>(std::min<long double>(total, 1e18L)), opt.budget);
        }
    }

    BarComplex out;
    std::size_t used = 0;
    std::vector<std::map<detail::Tensor, std::size_t>> index(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        auto tensors = detail::enumerate_tensors(a, static_cast<std::size_t>(n) + 1, opt, opt.budget - used);
        used += tensors.size();
        for (std::size_t k = 0; k < tensors.size(); ++k) index[static_cast<std::size_t>(n)][tensors[k]] = k;
        out.basis.push_back(std::move(tensors));
    }

    // In slots >= 1 of the normalized complex, e_u is rewritten modulo the unit.
    const std::size_t u = a.unit().front().first;
    const Rational unit_u = a.unit().front().second;
    auto reduce_slot = [&](std::size_t k, std::size_t slot) {
        SparseVector out_v;
        if (!opt.normalized || slot == 0 || k != u) return SparseVector{{k, Rational(1)}};
        for (const auto& [i, c] : a.unit())
            if (i != u) out_v.emplace_back(i, -c / unit_u);
        return out_v;
    };

    std::vector<std::size_t> dims;
    for (const auto& b : out.basis) dims.push_back(b.size());
    std::vector<SparseMatrix> boundaries;
    for (int n = 1; n <= top; ++n) {
        const auto& src = out.basis[static_cast<std::size_t>(n)];
        const auto& dst_index = index[static_cast<std::size_t>(n - 1)];
        SparseMatrix m(dims[static_cast<std::size_t>(n - 1)], src.size());
        for (std::size_t col = 0; col < src.size(); ++col) {
            const detail::Tensor& t = src[col];
            SparseAccumulator acc;
            auto emit = [&](const SparseVector& prod, std::size_t slot, const detail::Tensor& rest_template,
                            const Rational& sign) {
                for (const auto& [k, c] : prod)
                    for (const auto& [kk, cc] : reduce_slot(k, slot)) {
                        detail::Tensor r = rest_template;
                        r[slot] = kk;
                        acc.add(dst_index.at(r), sign * c * cc);
                    }
            };
            for (int i = 0; i < n; ++i) {
                detail::Tensor r;
                r.reserve(static_cast<std::size_t>(n));
                for (int p = 0; p < n + 1; ++p)
                    if (p != i + 1) r.push_back(t[static_cast<std::size_t>(p)]);
                emit(a.product(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i + 1)]),
                     static_cast<std::size_t>(i), r, Rational(i % 2 == 0 ? 1 : -1));
            }
            detail::Tensor r(t.begin(), t.end() - 1);
            emit(a.product(t.back(), t.front()), 0, r, Rational(n % 2 == 0 ? 1 : -1));
            m.set_column(col, acc.take());
        }
        boundaries.push_back(std::move(m));
    }
    out.complex = ChainComplex(0, std::move(dims), std::move(boundaries));
    return out;
}

inline ChainComplex bar_complex(const FinDimAlgebra& a, int max_degree, const BarOptions& opt = {}) {
    return bar_complex_with_basis(a, max_degree, opt).complex;
}

/// dim HH_n(A) for n = 0..max_degree.
inline std::vector<std::size_t> hh_dims(const FinDimAlgebra& a, int max_degree, const BarOptions& opt = {}) {
    return homology_dims(bar_complex(a, max_degree, opt), 0, max_degree);
}

/// dim A / [A, A], computed directly from commutators of basis pairs.
inline std::size_t commutator_quotient_dimension(const FinDimAlgebra& a) {
    std::vector<SparseVector> commutators;
    for (std::size_t i = 0; i < a.dimension(); ++i)
        for (std::size_t j = i + 1; j < a.dimension(); ++j) {
            SparseAccumulator acc;
            acc.add(a.product(i, j));
            acc.add(a.product(j, i), Rational(-1));
            if (!acc.empty()) commutators.push_back(acc.take());
        }
    return a.dimension() - rank_of(commutators);
}

}  // namespace wfh
