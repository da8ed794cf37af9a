#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wfh/errors.hpp"
#include "wfh/homalg/sparse.hpp"

namespace wfh {

/// Homologically graded complex over Q in degrees lo..hi. boundary(n) maps
/// degree n to degree n-1 and is the zero map for n == lo.
class ChainComplex {
public:
    ChainComplex() = default;

    /// dims[i] is the dimension in degree lo + i; boundaries[i] is d_{lo+i+1}
    /// (so boundaries.size() == dims.size() - 1). Throws DomainError on shape
    /// mismatch or if some d_n d_{n+1} is nonzero.
    ChainComplex(int lo, std::vector<std::size_t> dims, std::vector<SparseMatrix> boundaries)
        : lo_(lo), dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
        if (dims_.empty()) throw DomainError("ChainComplex: empty degree range");
        if (boundaries_.size() + 1 != dims_.size())
            throw DomainError("ChainComplex: expected one boundary per adjacent pair of degrees");
        for (std::size_t i = 0; i < boundaries_.size(); ++i) {
            if (boundaries_[i].cols() != dims_[i + 1] || boundaries_[i].rows() != dims_[i])
                throw DomainError("ChainComplex: boundary d_" + std::to_string(lo_ + static_cast<int>(i) + 1) +
                                  " has the wrong shape");
        }
        for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i) {
            if (!boundaries_[i].compose(boundaries_[i + 1]).is_zero())
                throw DomainError("ChainComplex: d_" + std::to_string(lo_ + static_cast<int>(i) + 1) + " d_" +
                                  std::to_string(lo_ + static_cast<int>(i) + 2) + " != 0");
        }
    }

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }

    std::size_t dim(int n) const {
        if (n < lo() || n > hi()) return 0;
        return dims_[static_cast<std::size_t>(n - lo_)];
    }

    /// d_n : C_n -> C_{n-1}. Outside the range (and at n == lo) this is a
    /// zero matrix of the appropriate shape.
    SparseMatrix boundary(int n) const {
        if (n > lo() && n <= hi()) return boundaries_[static_cast<std::size_t>(n - lo_ - 1)];
        return SparseMatrix(dim(n - 1), dim(n));
    }

    std::size_t total_dimension() const {
        std::size_t s = 0;
        for (auto d : dims_) s += d;
        return s;
    }

private:
    int lo_ = 0;
    std::vector<std::size_t> dims_{0};
    std::vector<SparseMatrix> boundaries_;
};

/// dim H_n for n in [from, to]: dim ker d_n - rank d_{n+1}.
inline std::vector<std::size_t> homology_dims(const ChainComplex& c, int from, int to) {
    std::vector<std::size_t> ranks;  // rank d_n for n in [from, to + 1]
    for (int n = from; n <= to + 1; ++n) ranks.push_back(rank(c.boundary(n)));
    std::vector<std::size_t> out;
    for (int n = from; n <= to; ++n) {
        const std::size_t i = static_cast<std::size_t>(n - from);
        out.push_back(c.dim(n) - ranks[i] - ranks[i + 1]);
    }
    return out;
}

inline std::vector<std::size_t> homology_dims(const ChainComplex& c) { return homology_dims(c, c.lo(), c.hi()); }

/// Chain map f: C -> D given by components f_n for n in [lo, hi].
struct ChainMap {
    ChainComplex source;
    ChainComplex target;
    int lo = 0;
    std::vector<SparseMatrix> components;

    const SparseMatrix& at(int n) const { return components.at(static_cast<std::size_t>(n - lo)); }
    int hi() const { return lo + static_cast<int>(components.size()) - 1; }

    /// d^D_n f_n == f_{n-1} d^C_n wherever both sides are defined.
    bool commutes() const {
        for (int n = lo + 1; n <= hi(); ++n)
            if (!(target.boundary(n).compose(at(n)) == at(n - 1).compose(source.boundary(n)))) return false;
        return true;
    }

    /// Rank of H_n(f): rank[f(Z_n) | B_n^D] - rank B_n^D.
    std::size_t induced_rank(int n) const {
        const auto cycles = kernel(source.boundary(n));
        EchelonBasis basis;
        const SparseMatrix d_next = target.boundary(n + 1);
        for (const auto& col : d_next.columns())
            if (!col.empty()) basis.insert(col);
        const std::size_t boundary_rank = basis.rank();
        for (const auto& z : cycles) basis.insert(at(n).apply(z));
        return basis.rank() - boundary_rank;
    }

    /// H_n(f) is an isomorphism.
    bool induces_isomorphism(int n) const {
        const auto hs = homology_dims(source, n, n)[0];
        const auto ht = homology_dims(target, n, n)[0];
        return hs == ht && induced_rank(n) == hs;
    }
};

}  // namespace wfh
