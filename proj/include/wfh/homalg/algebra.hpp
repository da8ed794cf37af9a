#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wfh/errors.hpp"
#include "wfh/homalg/sparse.hpp"

namespace wfh {

/// Finite-dimensional associative unital algebra over Q given by structure
/// constants on a named basis. Optional data:
///  - weights: an internal grading respected by the product (used to split
///    Hochschild complexes of truncated polynomial algebras);
///  - degrees and differential: a dg structure, validated as a degree -1
///    derivation (homological convention) squaring to zero.
class FinDimAlgebra {
public:
    struct Options {
        std::optional<std::vector<int>> weights;
        std::optional<std::vector<int>> degrees;
        std::optional<SparseMatrix> differential;
    };

    /// products[i * n + j] = e_i e_j. Throws SchemaError with a witness if an
    /// axiom fails on some basis pair or triple.
    FinDimAlgebra(std::vector<std::string> names, SparseVector unit, std::vector<SparseVector> products,
                  Options options = {})
        : names_(std::move(names)),
          unit_(std::move(unit)),
          products_(std::move(products)),
          weights_(std::move(options.weights)),
          degrees_(std::move(options.degrees)),
          differential_(std::move(options.differential)) {
        validate();
    }

    std::size_t dimension() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const SparseVector& unit() const { return unit_; }
    const SparseVector& product(std::size_t i, std::size_t j) const { return products_.at(i * dimension() + j); }
    const std::optional<std::vector<int>>& weights() const { return weights_; }
    const std::optional<std::vector<int>>& degrees() const { return degrees_; }
    const std::optional<SparseMatrix>& differential() const { return differential_; }

    bool is_dg() const {
        const bool graded = degrees_ && std::any_of(degrees_->begin(), degrees_->end(), [](int d) { return d != 0; });
        return graded || (differential_ && !differential_->is_zero());
    }

    /// Index of the unit when it is a basis vector.
    std::optional<std::size_t> unit_index() const {
        if (unit_.size() == 1 && unit_.front().second == 1) return unit_.front().first;
        return std::nullopt;
    }

    SparseVector multiply(const SparseVector& a, const SparseVector& b) const {
        SparseAccumulator acc;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b) acc.add(product(i, j), x * y);
        return acc.take();
    }

    SparseVector basis_vector(std::size_t i) const { return SparseVector{{i, Rational(1)}}; }

    bool is_commutative() const {
        for (std::size_t i = 0; i < dimension(); ++i)
            for (std::size_t j = i + 1; j < dimension(); ++j)
                if (product(i, j) != product(j, i)) return false;
        return true;
    }

private:
    std::string triple_text(std::size_t i, std::size_t j, std::size_t k) const {
        return "(" + names_[i] + ", " + names_[j] + ", " + names_[k] + ")";
    }

    void validate() const {
        const std::size_t n = dimension();
        if (n == 0) throw SchemaError("basis", "algebra must have at least one basis element");
        if (products_.size() != n * n)
            throw SchemaError("structure_constants", "expected " + std::to_string(n * n) + " products");
        auto in_range = [&](const SparseVector& v, const std::string& path) {
            for (const auto& [i, x] : v)
                if (i >= n) throw SchemaError(path, "basis index " + std::to_string(i) + " out of range");
        };
        in_range(unit_, "unit");
        for (const auto& p : products_) in_range(p, "structure_constants");

        for (std::size_t i = 0; i < n; ++i) {
            const SparseVector e = basis_vector(i);
            if (multiply(unit_, e) != e || multiply(e, unit_) != e)
                throw SchemaError("unit", "unit law fails on " + names_[i]);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const SparseVector left = multiply(product(i, j), basis_vector(k));
                    const SparseVector right = multiply(basis_vector(i), product(j, k));
                    if (left != right)
                        throw SchemaError("structure_constants", "associativity fails on " + triple_text(i, j, k));
                }

        if (weights_) check_grading(*weights_, "weights");
        if (degrees_) check_grading(*degrees_, "degrees");
        if (differential_) check_differential();
    }

    void check_grading(const std::vector<int>& w, const std::string& path) const {
        const std::size_t n = dimension();
        if (w.size() != n) throw SchemaError(path, "expected one entry per basis element");
        for (const auto& [u, x] : unit_)
            if (w[u] != 0) throw SchemaError(path, "unit must have " + path.substr(0, path.size() - 1) + " 0");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [k, x] : product(i, j))
                    if (w[k] != w[i] + w[j])
                        throw SchemaError(path, "product " + names_[i] + "*" + names_[j] + " is not homogeneous");
    }

    void check_differential() const {
        const std::size_t n = dimension();
        const SparseMatrix& d = *differential_;
        if (d.rows() != n || d.cols() != n) throw SchemaError("differential", "must be a square matrix on the basis");
        const std::vector<int> deg = degrees_ ? *degrees_ : std::vector<int>(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [i, x] : d.column(j))
                if (deg[i] != deg[j] - 1) throw SchemaError("differential", "d(" + names_[j] + ") is not of degree -1");
        if (!d.compose(d).is_zero()) throw SchemaError("differential", "d^2 != 0");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const SparseVector lhs = d.apply(product(i, j));
                SparseAccumulator rhs;
                rhs.add(multiply(d.column(i), basis_vector(j)));
                rhs.add(multiply(basis_vector(i), d.column(j)), (deg[i] % 2 == 0) ? Rational(1) : Rational(-1));
                if (lhs != rhs.take())
                    throw SchemaError("differential",
                                      "Leibniz rule fails on (" + names_[i] + ", " + names_[j] + ")");
            }
    }

    std::vector<std::string> names_;
    SparseVector unit_;
    std::vector<SparseVector> products_;
    std::optional<std::vector<int>> weights_;
    std::optional<std::vector<int>> degrees_;
    std::optional<SparseMatrix> differential_;
};

namespace algebras {

inline SparseVector e(std::size_t i, Rational c = Rational(1)) { return SparseVector{{i, std::move(c)}}; }

inline FinDimAlgebra ground_field() { return FinDimAlgebra({"1"}, e(0), {e(0)}); }

/// Q^m with idempotent basis.
inline FinDimAlgebra product_of_fields(std::size_t m) {
    if (m == 0) throw DomainError("product_of_fields: m must be positive");
    std::vector<std::string> names;
    SparseVector unit;
    std::vector<SparseVector> products(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        names.push_back("e" + std::to_string(i + 1));
        unit.emplace_back(i, Rational(1));
        products[i * m + i] = e(i);
    }
    return FinDimAlgebra(std::move(names), std::move(unit), std::move(products));
}

/// Q[eps]/(eps^2), weight of eps = 1.
inline FinDimAlgebra dual_numbers() {
    FinDimAlgebra::Options opt;
    opt.weights = std::vector<int>{0, 1};
    return FinDimAlgebra({"1", "eps"}, e(0), {e(0), e(1), e(1), {}}, opt);
}

/// Q[Z/n] on the group elements g^0..g^{n-1}.
inline FinDimAlgebra cyclic_group_algebra(std::size_t n) {
    if (n == 0) throw DomainError("cyclic_group_algebra: n must be positive");
    std::vector<std::string> names;
    std::vector<SparseVector> products(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i)));
        for (std::size_t j = 0; j < n; ++j) products[i * n + j] = e((i + j) % n);
    }
    return FinDimAlgebra(std::move(names), e(0), std::move(products));
}

/// M_n(Q) on matrix units E_ij, index i * n + j.
inline FinDimAlgebra matrix_algebra(std::size_t n) {
    if (n == 0) throw DomainError("matrix_algebra: n must be positive");
    const std::size_t d = n * n;
    std::vector<std::string> names;
    SparseVector unit;
    std::vector<SparseVector> products(d * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
            if (i == j) unit.emplace_back(i * n + j, Rational(1));
            for (std::size_t l = 0; l < n; ++l) products[(i * n + j) * d + (j * n + l)] = e(i * n + l);
        }
    return FinDimAlgebra(std::move(names), std::move(unit), std::move(products));
}

/// Exponent vectors of total degree <= bound in n_vars variables, ordered by
/// total degree and then reverse-lexicographically (x before y).
inline std::vector<std::vector<unsigned>> truncated_monomials(std::size_t n_vars, unsigned bound) {
    std::vector<std::vector<unsigned>> out;
    for (unsigned total = 0; total <= bound; ++total) {
        std::vector<unsigned> e(n_vars, 0);
        // Enumerate compositions of total into n_vars parts, lexicographically descending.
        auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
            if (var + 1 == n_vars) {
                e[var] = left;
                out.push_back(e);
                return;
            }
            for (unsigned k = left + 1; k-- > 0;) {
                e[var] = k;
                self(self, var + 1, left - k);
            }
        };
        if (n_vars == 0) {
            if (total == 0) out.push_back(e);
            continue;
        }
        rec(rec, 0, total);
    }
    return out;
}

inline std::string variable_name(std::size_t n_vars, std::size_t i) {
    static const char* short_names[] = {"x", "y", "z"};
    if (n_vars <= 3) return short_names[i];
    return "x" + std::to_string(i + 1);
}

inline std::string monomial_text(const std::vector<unsigned>& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += variable_name(e.size(), i);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

/// Q[x_1..x_n] / (monomials of total degree > bound), weight = total degree.
inline FinDimAlgebra truncated_polynomial(std::size_t n_vars, unsigned bound) {
    if (n_vars == 0) throw DomainError("truncated_polynomial: need at least one variable");
    const auto monos = truncated_monomials(n_vars, bound);
    const std::size_t d = monos.size();
    std::map<std::vector<unsigned>, std::size_t> index;
    for (std::size_t i = 0; i < d; ++i) index[monos[i]] = i;
    std::vector<std::string> names;
    std::vector<int> weights;
    std::vector<SparseVector> products(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        names.push_back(monomial_text(monos[i]));
        unsigned w = 0;
        for (auto k : monos[i]) w += k;
        weights.push_back(static_cast<int>(w));
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<unsigned> m = monos[i];
            for (std::size_t v = 0; v < n_vars; ++v) m[v] += monos[j][v];
            auto it = index.find(m);
            if (it != index.end()) products[i * d + j] = e(it->second);
        }
    }
    FinDimAlgebra::Options opt;
    opt.weights = std::move(weights);
    return FinDimAlgebra(std::move(names), e(0), std::move(products), opt);
}

}  // namespace algebras

}  // namespace wfh
