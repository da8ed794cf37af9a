#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "wfh/exact_core/bernoulli.hpp"
#include "wfh/exact_core/qseries.hpp"

namespace wfh {

/// Rationally normalised Eisenstein series
///   e_{2k}(q) = (2k-1)!/(2 pi i)^{2k} * E_{2k}(E_tau, dz)
///             = -B_{2k}/(2k) + 2 sum_{n>=1} sigma_{2k-1}(n) q^n.
inline QSeries eisenstein_q(int k, std::size_t order) {
    if (k <= 0) throw DomainError("eisenstein_q: k must be >= 1");
    const unsigned two_k = 2 * static_cast<unsigned>(k);
    std::vector<Rational> c(order + 1);
    c[0] = -bernoulli(two_k) / static_cast<long>(two_k);
    for (std::size_t n = 1; n <= order; ++n) c[n] = Rational(2 * divisor_power_sum(n, two_k - 1));
    return QSeries(std::move(c));
}

struct LatticeSumEstimate {
    /// Estimate of the full lattice sum, normalised like eisenstein_q.
    std::complex<double> value;
    /// The literal truncated sum over max(|m|,|n|) <= cutoff, same normalisation.
    std::complex<double> partial_sum;
    int cutoff;
    std::complex<double> tau;
};

namespace detail {

/// Least-squares fit of shell partial sums S(r), r in [cutoff/2, cutoff], to
/// a + b t^2 + c t^3 + d t^4 with t = cutoff/r; returns a.
inline std::complex<double> extrapolate_shells(const std::vector<std::complex<double>>& partial, int cutoff) {
    const int first = (cutoff + 1) / 2;
    const int rows = cutoff - first + 1;
    Eigen::MatrixXcd design(rows, 4);
    Eigen::VectorXcd rhs(rows);
    for (int i = 0; i < rows; ++i) {
        const int r = first + i;
        const double t = static_cast<double>(cutoff) / r;
        design(i, 0) = 1.0;
        design(i, 1) = t * t;
        design(i, 2) = t * t * t;
        design(i, 3) = t * t * t * t;
        rhs(i) = partial[static_cast<std::size_t>(r)];
    }
    const Eigen::VectorXcd sol = design.colPivHouseholderQr().solve(rhs);
    return sol(0);
}

}  // namespace detail

/// Floating-point oracle for e_{2k}: sums (m + n tau)^{-2k} over square
/// shells max(|m|,|n|) = r in increasing r. Shells are accumulated in double
/// precision; the reported value removes the algebraic shell tail (powers
/// r^-2..r^-4) by a least-squares fit over the outer half of the shells.
inline LatticeSumEstimate eisenstein_lattice_numeric(int k, std::complex<double> tau, int cutoff) {
    if (k < 2) throw DomainError("eisenstein_lattice_numeric: k must be >= 2 (E_2 is only conditionally convergent)");
    if (!(tau.imag() > 0)) throw DomainError("eisenstein_lattice_numeric: Im(tau) must be positive");
    if (cutoff < 1) throw DomainError("eisenstein_lattice_numeric: cutoff must be >= 1");

    const int power = 2 * k;
    auto term = [&](int m, int n) { return std::pow(std::complex<double>(m, 0) + static_cast<double>(n) * tau, -power); };

    std::vector<std::complex<double>> partial(static_cast<std::size_t>(cutoff) + 1, 0.0);
    std::complex<double> running = 0.0;
    for (int r = 1; r <= cutoff; ++r) {
        std::complex<double> shell = 0.0;
        for (int m = -r; m <= r; ++m) shell += term(m, r) + term(m, -r);
        for (int n = -r + 1; n <= r - 1; ++n) shell += term(r, n) + term(-r, n);
        running += shell;
        partial[static_cast<std::size_t>(r)] = running;
    }

    // (2k-1)!/(2 pi i)^{2k} = (-1)^k (2k-1)!/(2 pi)^{2k}
    double scale = std::tgamma(static_cast<double>(power)) / std::pow(2.0 * std::numbers::pi, power);
    if (k % 2 == 1) scale = -scale;
    for (auto& p : partial) p *= scale;

    LatticeSumEstimate est{partial.back(), partial.back(), cutoff, tau};
    if (cutoff >= 8) est.value = detail::extrapolate_shells(partial, cutoff);
    return est;
}

}  // namespace wfh
