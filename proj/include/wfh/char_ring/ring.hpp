#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wfh/errors.hpp"
#include "wfh/exact_core/rational.hpp"
#include "wfh/exact_core/scalar.hpp"

namespace wfh {

struct Generator {
    std::string name;
    int degree;  // cohomological degree, even and positive
};

using Exponents = std::vector<unsigned>;

/// Finite-dimensional commutative graded ring with a monomial basis: the
/// surviving monomials in a set of even generators, closed under taking
/// divisors. The product of two basis monomials is their exponent sum when
/// that survives and zero otherwise. Integration is a linear functional
/// supported on the top degree.
class RingSpec {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// All monomials of degree <= top_degree not divisible by any relation.
    static RingSpec from_relations(std::vector<Generator> generators, int top_degree,
                                   const std::vector<Exponents>& relations,
                                   const std::map<Exponents, Rational>& integration) {
        for (const auto& g : generators)
            if (g.degree <= 0 || g.degree % 2 != 0)
                throw SchemaError("ring.generators." + g.name, "degree must be even and positive");
        for (const auto& rel : relations)
            if (rel.size() != generators.size()) throw SchemaError("ring.relations", "exponent vector has wrong length");
        std::vector<Exponents> monomials;
        Exponents e(generators.size(), 0);
        enumerate(generators, top_degree, relations, 0, 0, e, monomials);
        return RingSpec(std::move(generators), top_degree, std::move(monomials), integration);
    }

    /// Cohomology ring of a product: basis pairs, integration the product of
    /// the factors' integrals.
    static RingSpec tensor(const RingSpec& a, const RingSpec& b) {
        std::vector<Generator> gens = a.generators_;
        gens.insert(gens.end(), b.generators_.begin(), b.generators_.end());
        std::vector<Exponents> monomials;
        std::map<Exponents, Rational> integration;
        for (std::size_t i = 0; i < a.dimension(); ++i)
            for (std::size_t j = 0; j < b.dimension(); ++j) {
                Exponents e = a.basis_[i];
                e.insert(e.end(), b.basis_[j].begin(), b.basis_[j].end());
                monomials.push_back(e);
                const Rational v = a.integral(i) * b.integral(j);
                if (v != 0) integration[e] = v;
            }
        return RingSpec(std::move(gens), a.top_degree_ + b.top_degree_, std::move(monomials), integration);
    }

    std::size_t dimension() const { return basis_.size(); }
    int top_degree() const { return top_degree_; }
    const std::vector<Generator>& generators() const { return generators_; }
    const Exponents& monomial(std::size_t i) const { return basis_.at(i); }
    int degree(std::size_t i) const { return degrees_.at(i); }
    const Rational& integral(std::size_t i) const { return integration_.at(i); }
    std::size_t unit_index() const { return 0; }

    /// Basis index of the product of basis monomials i and j, or npos if zero.
    std::size_t product(std::size_t i, std::size_t j) const { return table_[i * dimension() + j]; }

    std::size_t index_of(const Exponents& e) const {
        auto it = index_.find(e);
        return it == index_.end() ? npos : it->second;
    }

    std::optional<std::size_t> generator_index(const std::string& name) const {
        for (std::size_t g = 0; g < generators_.size(); ++g)
            if (generators_[g].name == name) return g;
        return std::nullopt;
    }

    /// "1", "h", "h^2", "a*b^3".
    std::string monomial_name(std::size_t i) const { return format_monomial(basis_.at(i)); }

    std::string format_monomial(const Exponents& e) const {
        std::string s;
        for (std::size_t g = 0; g < e.size(); ++g) {
            if (e[g] == 0) continue;
            if (!s.empty()) s += "*";
            s += generators_[g].name;
            if (e[g] > 1) s += "^" + std::to_string(e[g]);
        }
        return s.empty() ? "1" : s;
    }

    /// Inverse of format_monomial. Throws SchemaError on unknown generators.
    Exponents parse_monomial(const std::string& text) const {
        Exponents e(generators_.size(), 0);
        if (text == "1") return e;
        std::stringstream ss(text);
        std::string factor;
        while (std::getline(ss, factor, '*')) {
            const auto caret = factor.find('^');
            const std::string name = factor.substr(0, caret);
            const auto g = generator_index(name);
            if (!g) throw SchemaError(text, "unknown generator '" + name + "'");
            unsigned power = 1;
            if (caret != std::string::npos) {
                const std::string p = factor.substr(caret + 1);
                if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
                    throw SchemaError(text, "bad exponent '" + p + "'");
                power = static_cast<unsigned>(std::stoul(p));
            }
            e[*g] += power;
        }
        return e;
    }

private:
    RingSpec(std::vector<Generator> generators, int top_degree, std::vector<Exponents> monomials,
             const std::map<Exponents, Rational>& integration)
        : generators_(std::move(generators)), top_degree_(top_degree) {
        if (top_degree < 0 || top_degree % 2 != 0) throw SchemaError("ring.top_degree", "must be even and non-negative");
        // Sort by (degree, exponents) so the unit is first and output is stable.
        std::vector<std::pair<int, Exponents>> keyed;
        for (auto& m : monomials) keyed.emplace_back(degree_of(m), std::move(m));
        std::sort(keyed.begin(), keyed.end());
        for (auto& [d, m] : keyed) {
            index_.emplace(m, basis_.size());
            degrees_.push_back(d);
            basis_.push_back(std::move(m));
        }
        if (basis_.empty() || degrees_[0] != 0) throw SchemaError("ring", "basis must contain the unit monomial");
        integration_.assign(basis_.size(), Rational(0));
        for (const auto& [e, v] : integration) {
            const std::size_t i = index_of(e);
            if (i == npos) throw SchemaError("ring.integration." + format_monomial(e), "monomial is not in the basis");
            if (degrees_[i] != top_degree_)
                throw SchemaError("ring.integration." + format_monomial(e), "integration is only defined in the top degree");
            integration_[i] = v;
        }
        build_table();
        validate();
    }

    int degree_of(const Exponents& e) const {
        int d = 0;
        for (std::size_t g = 0; g < e.size(); ++g) d += static_cast<int>(e[g]) * generators_[g].degree;
        return d;
    }

    static void enumerate(const std::vector<Generator>& gens, int top, const std::vector<Exponents>& relations,
                          std::size_t g, int degree, Exponents& e, std::vector<Exponents>& out) {
        if (g == gens.size()) {
            for (const auto& rel : relations) {
                bool divisible = true;
                for (std::size_t i = 0; i < e.size() && divisible; ++i) divisible = e[i] >= rel[i];
                if (divisible) return;
            }
            out.push_back(e);
            return;
        }
        for (unsigned p = 0; degree + static_cast<int>(p) * gens[g].degree <= top; ++p) {
            e[g] = p;
            enumerate(gens, top, relations, g + 1, degree + static_cast<int>(p) * gens[g].degree, e, out);
        }
        e[g] = 0;
    }

    void build_table() {
        const std::size_t n = dimension();
        table_.assign(n * n, npos);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Exponents e = basis_[i];
                for (std::size_t g = 0; g < e.size(); ++g) e[g] += basis_[j][g];
                table_[i * n + j] = index_of(e);
            }
    }

    // Load-time checks: closure under divisors (so the table is associative),
    // commutativity, associativity and degree additivity on the basis.
    void validate() const {
        const std::size_t n = dimension();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t g = 0; g < generators_.size(); ++g) {
                if (basis_[i][g] == 0) continue;
                Exponents d = basis_[i];
                --d[g];
                if (index_of(d) == npos)
                    throw SchemaError("ring", "basis is not closed under divisors at " + format_monomial(basis_[i]));
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t ij = product(i, j);
                if (ij != product(j, i)) throw SchemaError("ring", "product is not commutative");
                if (ij != npos && degrees_[ij] != degrees_[i] + degrees_[j])
                    throw SchemaError("ring", "product does not add degrees");
                for (std::size_t k = 0; k < n; ++k) {
                    const std::size_t left = ij == npos ? npos : product(ij, k);
                    const std::size_t jk = product(j, k);
                    const std::size_t right = jk == npos ? npos : product(i, jk);
                    if (left != right)
                        throw SchemaError("ring", "product is not associative at (" + monomial_name(i) + ", " +
                                                      monomial_name(j) + ", " + monomial_name(k) + ")");
                }
            }
    }

    std::vector<Generator> generators_;
    int top_degree_;
    std::vector<Exponents> basis_;
    std::vector<int> degrees_;
    std::map<Exponents, std::size_t> index_;
    std::vector<Rational> integration_;
    std::vector<std::size_t> table_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

/// An element of a RingSpec with coefficients in K (Rational or QSeries).
template <class K>
class MixedClass {
public:
    MixedClass(RingPtr ring, K zero) : ring_(std::move(ring)), coeffs_(ring_->dimension(), std::move(zero)) {}

    static MixedClass one(RingPtr ring, const K& prototype) {
        MixedClass c(ring, ScalarTraits<K>::zero_like(prototype));
        c.coeffs_[ring->unit_index()] = ScalarTraits<K>::one_like(prototype);
        return c;
    }

    const RingPtr& ring() const { return ring_; }
    const K& operator[](std::size_t i) const { return coeffs_.at(i); }
    K& operator[](std::size_t i) { return coeffs_.at(i); }
    std::size_t size() const { return coeffs_.size(); }
    K zero_scalar() const { return ScalarTraits<K>::zero_like(coeffs_.front()); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!ScalarTraits<K>::is_zero(c)) return false;
        return true;
    }

    /// The homogeneous component in cohomological degree `degree`.
    MixedClass component(int degree) const {
        MixedClass r(ring_, zero_scalar());
        for (std::size_t i = 0; i < size(); ++i)
            if (ring_->degree(i) == degree) r.coeffs_[i] = coeffs_[i];
        return r;
    }

    bool is_homogeneous(int degree) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (ring_->degree(i) != degree && !ScalarTraits<K>::is_zero(coeffs_[i])) return false;
        return true;
    }

    MixedClass& operator+=(const MixedClass& o) {
        check_ring(o);
        for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    MixedClass& operator-=(const MixedClass& o) {
        check_ring(o);
        for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    MixedClass& operator*=(const Rational& c) {
        for (auto& x : coeffs_) x *= c;
        return *this;
    }
    MixedClass operator-() const {
        MixedClass r(*this);
        for (auto& x : r.coeffs_) x = -x;
        return r;
    }

    friend MixedClass operator+(MixedClass a, const MixedClass& b) { return a += b; }
    friend MixedClass operator-(MixedClass a, const MixedClass& b) { return a -= b; }
    friend MixedClass operator*(MixedClass a, const Rational& c) { return a *= c; }
    friend MixedClass operator*(const Rational& c, MixedClass a) { return a *= c; }

    friend MixedClass operator*(const MixedClass& a, const MixedClass& b) {
        a.check_ring(b);
        MixedClass r(a.ring_, a.zero_scalar());
        const RingSpec& ring = *a.ring_;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (ScalarTraits<K>::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::size_t k = ring.product(i, j);
                if (k == RingSpec::npos || ScalarTraits<K>::is_zero(b.coeffs_[j])) continue;
                r.coeffs_[k] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }

    friend bool operator==(const MixedClass& a, const MixedClass& b) {
        return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
    }

    /// Human-readable form, e.g. "1 + 3/2*h + h^2".
    std::string to_text() const {
        std::string s;
        for (std::size_t i = 0; i < size(); ++i) {
            if (ScalarTraits<K>::is_zero(coeffs_[i])) continue;
            if (!s.empty()) s += " + ";
            const std::string c = ScalarTraits<K>::text(coeffs_[i]);
            const std::string m = ring_->monomial_name(i);
            if (m == "1")
                s += c;
            else if (c == "1")
                s += m;
            else
                s += c + "*" + m;
        }
        return s.empty() ? "0" : s;
    }

private:
    void check_ring(const MixedClass& o) const {
        if (ring_ != o.ring_) throw DomainError("MixedClass: operands live in different rings");
    }

    RingPtr ring_;
    std::vector<K> coeffs_;
};

/// exp(x) for x with vanishing degree-0 part (a finite sum: x is nilpotent).
template <class K>
MixedClass<K> class_exp(const MixedClass<K>& x) {
    if (!ScalarTraits<K>::is_zero(x[x.ring()->unit_index()]))
        throw DomainError("class_exp: degree-0 component must vanish");
    MixedClass<K> result = MixedClass<K>::one(x.ring(), x.zero_scalar());
    MixedClass<K> power = result;
    for (long j = 1;; ++j) {
        power = power * x;
        if (power.is_zero()) break;
        power *= Rational(1, j);
        result += power;
    }
    return result;
}

/// log(1 + y) for y with vanishing degree-0 part.
template <class K>
MixedClass<K> class_log(const MixedClass<K>& t) {
    MixedClass<K> one = MixedClass<K>::one(t.ring(), t.zero_scalar());
    const MixedClass<K> y = t - one;
    if (!ScalarTraits<K>::is_zero(y[t.ring()->unit_index()]))
        throw DomainError("class_log: degree-0 component must be 1");
    MixedClass<K> result(t.ring(), t.zero_scalar());
    MixedClass<K> power = one;
    for (long j = 1;; ++j) {
        power = power * y;
        if (power.is_zero()) break;
        result += power * Rational(j % 2 == 1 ? 1 : -1, j);
    }
    return result;
}

/// Promotes a rational class to one with scalar coefficients c * s.
inline MixedClass<QSeries> scale_by_series(const MixedClass<Rational>& c, const QSeries& s) {
    MixedClass<QSeries> r(c.ring(), QSeries(s.order()));
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) r[i] = s * c[i];
    return r;
}

/// The q^n coefficient of a q-series class, as a rational class.
inline MixedClass<Rational> q_coefficient(const MixedClass<QSeries>& c, std::size_t n) {
    MixedClass<Rational> r(c.ring(), Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[i][n];
    return r;
}

}  // namespace wfh
