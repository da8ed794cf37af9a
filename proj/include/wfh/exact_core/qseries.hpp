#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wfh/exact_core/rational.hpp"

namespace wfh {

/// Truncated power series sum_{n<=N} a_n q^n with exact rational coefficients.
///
/// The coefficient vector always has N+1 entries. Binary operations between
/// series of different orders truncate to the smaller order.
class QSeries {
public:
    /// The zero series truncated at `order`.
    explicit QSeries(std::size_t order = 0) : coeffs_(order + 1) {}

    explicit QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw DomainError("QSeries needs at least the q^0 coefficient");
    }

    static QSeries constant(const Rational& c, std::size_t order) {
        QSeries s(order);
        s.coeffs_[0] = c;
        return s;
    }

    static QSeries one(std::size_t order) { return constant(Rational(1), order); }

    /// c q^n truncated at `order` (zero if n > order).
    static QSeries monomial(const Rational& c, std::size_t n, std::size_t order) {
        QSeries s(order);
        if (n <= order) s.coeffs_[n] = c;
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    QSeries truncated(std::size_t order) const {
        std::vector<Rational> c(coeffs_.begin(),
                                coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(order, this->order()) + 1));
        return QSeries(std::move(c));
    }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return r == 0; });
    }

    std::complex<double> evaluate(std::complex<double> q) const {
        std::complex<double> acc = 0.0;
        for (std::size_t n = coeffs_.size(); n-- > 0;) acc = acc * q + coeffs_[n].convert_to<double>();
        return acc;
    }

    QSeries operator-() const {
        QSeries r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    QSeries& operator+=(const QSeries& o) {
        shrink_to(o.order());
        for (std::size_t n = 0; n <= order(); ++n) coeffs_[n] += o.coeffs_[n];
        return *this;
    }
    QSeries& operator-=(const QSeries& o) {
        shrink_to(o.order());
        for (std::size_t n = 0; n <= order(); ++n) coeffs_[n] -= o.coeffs_[n];
        return *this;
    }
    QSeries& operator*=(const Rational& c) {
        for (auto& x : coeffs_) x *= c;
        return *this;
    }
    QSeries& operator/=(const Rational& c) {
        if (c == 0) throw DomainError("QSeries division by zero");
        for (auto& x : coeffs_) x /= c;
        return *this;
    }
    QSeries& operator*=(const QSeries& o) {
        *this = *this * o;
        return *this;
    }

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
    friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }
    friend QSeries operator/(QSeries a, const Rational& c) { return a /= c; }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        QSeries r(n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; i + j <= n; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

    friend std::ostream& operator<<(std::ostream& os, const QSeries& s) {
        bool first = true;
        for (std::size_t n = 0; n <= s.order(); ++n) {
            if (s.coeffs_[n] == 0) continue;
            if (!first) os << " + ";
            os << to_string(s.coeffs_[n]);
            if (n == 1) os << "*q";
            if (n > 1) os << "*q^" << n;
            first = false;
        }
        if (first) os << "0";
        return os << " + O(q^" << s.order() + 1 << ")";
    }

private:
    void shrink_to(std::size_t order) {
        if (order < this->order()) coeffs_.resize(order + 1);
    }

    std::vector<Rational> coeffs_;
};

/// Formal exponential. Requires a vanishing constant term.
inline QSeries series_exp(const QSeries& s) {
    if (s[0] != 0) throw DomainError("series_exp: constant term must be 0, got " + to_string(s[0]));
    const std::size_t n = s.order();
    std::vector<Rational> f(n + 1);
    f[0] = 1;
    // n f_n = sum_{k=1}^{n} k s_k f_{n-k}
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= m; ++k)
            if (s[k] != 0) acc += Rational(static_cast<long>(k)) * s[k] * f[m - k];
        f[m] = acc / static_cast<long>(m);
    }
    return QSeries(std::move(f));
}

/// Formal logarithm. Requires constant term 1.
inline QSeries series_log(const QSeries& t) {
    if (t[0] != 1) throw DomainError("series_log: constant term must be 1, got " + to_string(t[0]));
    const std::size_t n = t.order();
    std::vector<Rational> g(n + 1);
    // n g_n = n t_n - sum_{k=1}^{n-1} k g_k t_{n-k}
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = Rational(static_cast<long>(m)) * t[m];
        for (std::size_t k = 1; k < m; ++k)
            if (g[k] != 0) acc -= Rational(static_cast<long>(k)) * g[k] * t[m - k];
        g[m] = acc / static_cast<long>(m);
    }
    return QSeries(std::move(g));
}

}  // namespace wfh
