#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wfh/errors.hpp"
#include "wfh/exact_core/scalar.hpp"

namespace wfh {

/// Polynomial in hbar with coefficients in K, truncated at hbar^max_degree.
/// A product that would leave a nonzero coefficient above the cap is an
/// error rather than a silent truncation.
template <class K>
class HbarPoly {
public:
    static constexpr std::size_t default_max_degree = 3;

    explicit HbarPoly(K zero, std::size_t max_degree = default_max_degree)
        : coeffs_(1, ScalarTraits<K>::zero_like(zero)), max_degree_(max_degree) {}

    static HbarPoly constant(const K& c, std::size_t max_degree = default_max_degree) {
        HbarPoly p(c, max_degree);
        p.coeffs_[0] = c;
        return p;
    }
    /// c * hbar^k
    static HbarPoly monomial(const K& c, std::size_t k, std::size_t max_degree = default_max_degree) {
        if (k > max_degree) throw DomainError("HbarPoly: hbar^" + std::to_string(k) + " exceeds the truncation");
        HbarPoly p(c, max_degree);
        p.coeffs_.assign(k + 1, ScalarTraits<K>::zero_like(c));
        p.coeffs_[k] = c;
        return p;
    }

    std::size_t max_degree() const { return max_degree_; }
    std::size_t size() const { return coeffs_.size(); }
    /// Coefficient of hbar^k (zero beyond the stored degree).
    K operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : zero_scalar(); }
    K zero_scalar() const { return ScalarTraits<K>::zero_like(coeffs_.front()); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!ScalarTraits<K>::is_zero(c)) return false;
        return true;
    }

    /// Value at hbar = v.
    K evaluate(const Rational& v) const {
        K total = zero_scalar();
        Rational power(1);
        for (const auto& c : coeffs_) {
            if (!ScalarTraits<K>::is_zero(c)) total += c * power;
            power *= v;
        }
        return total;
    }

    HbarPoly& operator+=(const HbarPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), zero_scalar());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    HbarPoly& operator-=(const HbarPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), zero_scalar());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }
    HbarPoly& operator*=(const Rational& c) {
        for (auto& x : coeffs_) x *= c;
        trim();
        return *this;
    }
    HbarPoly operator-() const {
        HbarPoly r(*this);
        for (auto& x : r.coeffs_) x = -x;
        return r;
    }
    /// Scalar multiple by an element of K.
    HbarPoly scaled(const K& c) const {
        HbarPoly r(*this);
        for (auto& x : r.coeffs_) x = x * c;
        r.trim();
        return r;
    }

    friend HbarPoly operator+(HbarPoly a, const HbarPoly& b) { return a += b; }
    friend HbarPoly operator-(HbarPoly a, const HbarPoly& b) { return a -= b; }
    friend HbarPoly operator*(HbarPoly a, const Rational& c) { return a *= c; }

    friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
        const std::size_t cap = std::min(a.max_degree_, b.max_degree_);
        HbarPoly r(a.zero_scalar(), cap);
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, a.zero_scalar());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (ScalarTraits<K>::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                if (!ScalarTraits<K>::is_zero(b.coeffs_[j])) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        r.trim();
        return r;
    }

    friend bool operator==(const HbarPoly& a, const HbarPoly& b) {
        const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        for (std::size_t k = 0; k < n; ++k)
            if (!ScalarTraits<K>::is_zero(a[k] - b[k])) return false;
        return true;
    }

    /// e.g. "(1/2)hbar + (3)hbar^2"; coefficients use the scalar's text form.
    std::string text() const {
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (ScalarTraits<K>::is_zero(coeffs_[k])) continue;
            if (!out.empty()) out += " + ";
            out += "(" + ScalarTraits<K>::text(coeffs_[k]) + ")";
            if (k == 1) out += "hbar";
            if (k > 1) out += "hbar^" + std::to_string(k);
        }
        return out.empty() ? "0" : out;
    }

private:
    void trim() {
        while (coeffs_.size() > 1 && ScalarTraits<K>::is_zero(coeffs_.back())) coeffs_.pop_back();
        if (coeffs_.size() > max_degree_ + 1)
            throw DomainError("HbarPoly: nonzero hbar^" + std::to_string(coeffs_.size() - 1) +
                              " term exceeds the truncation at degree " + std::to_string(max_degree_));
    }

    std::vector<K> coeffs_;
    std::size_t max_degree_;
};

template <class K>
struct ScalarTraits<HbarPoly<K>> {
    static HbarPoly<K> zero_like(const HbarPoly<K>& p) { return HbarPoly<K>(p.zero_scalar(), p.max_degree()); }
    static HbarPoly<K> one_like(const HbarPoly<K>& p) {
        return HbarPoly<K>::constant(ScalarTraits<K>::one_like(p.zero_scalar()), p.max_degree());
    }
    static bool is_zero(const HbarPoly<K>& p) { return p.is_zero(); }
    static std::string text(const HbarPoly<K>& p) { return p.text(); }
};

}  // namespace wfh
