#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "wfh/errors.hpp"
#include "wfh/exact_core/rational.hpp"

namespace wfh {

/// Sparse vector: strictly increasing indices, no stored zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// Accumulates entries in any order and emits a canonical SparseVector.
class SparseAccumulator {
public:
    void add(std::size_t index, const Rational& value) {
        if (value == 0) return;
        auto [it, inserted] = entries_.try_emplace(index, value);
        if (!inserted) {
            it->second += value;
            if (it->second == 0) entries_.erase(it);
        }
    }
    void add(const SparseVector& v, const Rational& scale = Rational(1)) {
        for (const auto& [i, x] : v) add(i, x * scale);
    }
    SparseVector take() {
        SparseVector v(entries_.begin(), entries_.end());
        entries_.clear();
        return v;
    }
    bool empty() const { return entries_.empty(); }

private:
    std::map<std::size_t, Rational> entries_;
};

/// Matrix stored by columns: column j is the image of basis vector j.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    const SparseVector& column(std::size_t j) const { return columns_.at(j); }
    void set_column(std::size_t j, SparseVector v) {
        for (const auto& [i, x] : v)
            if (i >= rows_) throw DomainError("SparseMatrix: row index out of range");
        columns_.at(j) = std::move(v);
    }
    const std::vector<SparseVector>& columns() const { return columns_; }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    bool is_zero() const {
        return std::all_of(columns_.begin(), columns_.end(), [](const SparseVector& c) { return c.empty(); });
    }

    SparseVector apply(const SparseVector& v) const {
        SparseAccumulator acc;
        for (const auto& [j, x] : v) acc.add(columns_.at(j), x);
        return acc.take();
    }

    Rational at(std::size_t i, std::size_t j) const {
        for (const auto& [r, x] : columns_.at(j))
            if (r == i) return x;
        return Rational(0);
    }

    /// (*this) * rhs.
    SparseMatrix compose(const SparseMatrix& rhs) const {
        if (rhs.rows() != cols()) throw DomainError("SparseMatrix::compose: dimension mismatch");
        SparseMatrix out(rows(), rhs.cols());
        for (std::size_t j = 0; j < rhs.cols(); ++j) out.columns_[j] = apply(rhs.column(j));
        return out;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.columns_ == b.columns_;
    }

private:
    std::size_t rows_ = 0;
    std::vector<SparseVector> columns_;
};

namespace detail {

using IntVector = std::vector<std::pair<std::size_t, Integer>>;

inline IntVector primitive(const SparseVector& v) {
    IntVector out;
    if (v.empty()) return out;
    Integer l = 1;
    for (const auto& [i, x] : v) l = boost::multiprecision::lcm(l, denominator_of(x));
    Integer g = 0;
    out.reserve(v.size());
    for (const auto& [i, x] : v) {
        Integer z = numerator_of(x) * (l / denominator_of(x));
        g = boost::multiprecision::gcd(g, z);
        out.emplace_back(i, std::move(z));
    }
    if (g != 1)
        for (auto& [i, z] : out) z /= g;
    return out;
}

inline void make_primitive(IntVector& v) {
    Integer g = 0;
    for (const auto& [i, z] : v) {
        g = boost::multiprecision::gcd(g, z);
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& [i, z] : v) z /= g;
}

/// a * v - b * w, merged on sorted indices.
inline IntVector combine(const Integer& a, const IntVector& v, const Integer& b, const IntVector& w) {
    IntVector out;
    out.reserve(v.size() + w.size());
    std::size_t p = 0, q = 0;
    while (p < v.size() || q < w.size()) {
        if (q == w.size() || (p < v.size() && v[p].first < w[q].first)) {
            out.emplace_back(v[p].first, a * v[p].second);
            ++p;
        } else if (p == v.size() || w[q].first < v[p].first) {
            out.emplace_back(w[q].first, -b * w[q].second);
            ++q;
        } else {
            Integer z = a * v[p].second - b * w[q].second;
            if (z != 0) out.emplace_back(v[p].first, std::move(z));
            ++p;
            ++q;
        }
    }
    return out;
}

}  // namespace detail

/// Incremental fraction-free row echelon form over the integers. Vectors are
/// scaled to primitive integer form; eliminating the leading entry of v
/// against pivot p replaces v by p_lead * v - v_lead * p and re-normalises by
/// the content gcd, so no rational arithmetic occurs.
class EchelonBasis {
public:
    /// Reduces v against the current pivots; returns true (and keeps it) if
    /// v is independent of everything inserted so far.
    bool insert(const SparseVector& v) {
        detail::IntVector w = detail::primitive(v);
        reduce(w);
        if (w.empty()) return false;
        const std::size_t lead = w.front().first;
        pivots_.emplace(lead, std::move(w));
        return true;
    }

    bool contains(const SparseVector& v) const {
        detail::IntVector w = detail::primitive(v);
        reduce(w);
        return w.empty();
    }

    std::size_t rank() const { return pivots_.size(); }

private:
    void reduce(detail::IntVector& w) const {
        while (!w.empty()) {
            auto it = pivots_.find(w.front().first);
            if (it == pivots_.end()) return;
            const detail::IntVector& p = it->second;
            const Integer g = boost::multiprecision::gcd(p.front().second, w.front().second);
            const Integer a = p.front().second / g, b = w.front().second / g;
            w = detail::combine(a, w, b, p);
            detail::make_primitive(w);
        }
    }

    std::map<std::size_t, detail::IntVector> pivots_;
};

inline std::size_t rank(const SparseMatrix& m) {
    // Sparsest columns first keeps fill-in down.
    std::vector<std::size_t> order(m.cols());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return m.column(a).size() < m.column(b).size(); });
    EchelonBasis basis;
    for (std::size_t j : order)
        if (!m.column(j).empty()) basis.insert(m.column(j));
    return basis.rank();
}

inline std::size_t rank_of(const std::vector<SparseVector>& vectors) {
    EchelonBasis basis;
    for (const auto& v : vectors) basis.insert(v);
    return basis.rank();
}

/// Basis of {x : m x = 0}, via reduced row echelon form over Q on the rows
/// of m. Intended for the moderate sizes used in comparison maps.
inline std::vector<SparseVector> kernel(const SparseMatrix& m) {
    const std::size_t n = m.cols();
    // Row-major dense-free representation: rows as maps col -> value.
    std::vector<std::map<std::size_t, Rational>> rows(m.rows());
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [i, x] : m.column(j)) rows[i][j] = x;

    std::vector<std::map<std::size_t, Rational>> pivot_rows;
    std::vector<std::size_t> pivot_cols;
    std::map<std::size_t, std::size_t> pivot_of_col;
    for (auto& row : rows) {
        // Reduce against existing pivots.
        for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
            auto it = row.find(pivot_cols[k]);
            if (it == row.end()) continue;
            const Rational f = it->second;
            for (const auto& [c, x] : pivot_rows[k]) {
                Rational& dst = row[c];
                dst -= f * x;
                if (dst == 0) row.erase(c);
            }
        }
        if (row.empty()) continue;
        const std::size_t pc = row.begin()->first;
        const Rational inv = Rational(1) / row.begin()->second;
        for (auto& [c, x] : row) x *= inv;
        // Back-substitute into earlier pivots to keep the form reduced.
        for (auto& prow : pivot_rows) {
            auto it = prow.find(pc);
            if (it == prow.end()) continue;
            const Rational f = it->second;
            for (const auto& [c, x] : row) {
                Rational& dst = prow[c];
                dst -= f * x;
                if (dst == 0) prow.erase(c);
            }
        }
        pivot_of_col[pc] = pivot_rows.size();
        pivot_cols.push_back(pc);
        pivot_rows.push_back(std::move(row));
    }

    std::vector<SparseVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (pivot_of_col.count(free)) continue;
        SparseAccumulator acc;
        acc.add(free, Rational(1));
        for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
            auto it = pivot_rows[k].find(free);
            if (it != pivot_rows[k].end()) acc.add(pivot_cols[k], -it->second);
        }
        basis.push_back(acc.take());
    }
    return basis;
}

}  // namespace wfh
