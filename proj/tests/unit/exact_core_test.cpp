#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wfh/exact_core/bernoulli.hpp"
#include "wfh/exact_core/eisenstein.hpp"
#include "wfh/exact_core/qseries.hpp"

using namespace wfh;

namespace {

// Akiyama-Tanigawa: produces B_n with B_1 = +1/2. Independent of the
// binomial recurrence used by the library.
Rational akiyama_tanigawa(unsigned n) {
    std::vector<Rational> a(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
        a[m] = Rational(1, m + 1);
        for (unsigned j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
    }
    return n == 1 ? -a[0] : a[0];
}

Integer brute_sigma(std::uint64_t n, unsigned m) {
    Integer s = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) s += boost::multiprecision::pow(Integer(d), m);
    return s;
}

QSeries random_series(std::mt19937& rng, std::size_t order, bool zero_constant) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    std::vector<Rational> c(order + 1);
    for (auto& x : c) x = Rational(num(rng), den(rng));
    if (zero_constant) c[0] = 0;
    return QSeries(std::move(c));
}

}  // namespace

TEST(Bernoulli, SmallValues) {
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(2), Rational(1, 6));
    EXPECT_EQ(bernoulli(3), Rational(0));
    EXPECT_EQ(bernoulli(4), Rational(-1, 30));
}

TEST(Bernoulli, MatchesAkiyamaTanigawa) {
    const auto table = bernoulli_table(40);
    for (unsigned n = 0; n <= 40; ++n) EXPECT_EQ(table[n], akiyama_tanigawa(n)) << "n=" << n;
}

TEST(Bernoulli, OddIndicesVanish) {
    const auto table = bernoulli_table(41);
    for (unsigned k = 1; k <= 20; ++k) EXPECT_EQ(table[2 * k + 1], Rational(0));
}

TEST(DivisorPowerSum, Examples) {
    EXPECT_EQ(divisor_power_sum(1, 3), 1);
    EXPECT_EQ(divisor_power_sum(2, 3), 9);
    EXPECT_EQ(divisor_power_sum(3, 3), 28);
    for (std::uint64_t n = 1; n <= 60; ++n)
        for (unsigned m : {0u, 1u, 3u, 5u, 7u}) EXPECT_EQ(divisor_power_sum(n, m), brute_sigma(n, m));
}

TEST(DivisorPowerSum, RejectsZero) { EXPECT_THROW(divisor_power_sum(0, 3), DomainError); }

TEST(QSeries, TruncationPropagatesToMinimum) {
    QSeries a({Rational(1), Rational(2), Rational(3), Rational(4)});
    QSeries b({Rational(5), Rational(6)});
    EXPECT_EQ((a + b).order(), 1u);
    EXPECT_EQ((a * b).order(), 1u);
    EXPECT_EQ(a * b, QSeries({Rational(5), Rational(16)}));
}

TEST(QSeries, RingAxiomsOnRandomInputs) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const QSeries a = random_series(rng, 6, false), b = random_series(rng, 6, false),
                      c = random_series(rng, 6, false);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(SeriesExp, TaylorCoefficients) {
    EXPECT_EQ(series_exp(QSeries(3)), QSeries::one(3));
    const QSeries q = QSeries::monomial(Rational(1), 1, 3);
    EXPECT_EQ(series_exp(q), QSeries({Rational(1), Rational(1), Rational(1, 2), Rational(1, 6)}));
}

TEST(SeriesLog, RoundTrip) {
    const QSeries s({Rational(0), Rational(2), Rational(1), Rational(0), Rational(0)});
    EXPECT_EQ(series_log(series_exp(s)), s);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const QSeries x = random_series(rng, 8, true);
        EXPECT_EQ(series_log(series_exp(x)), x);
        const QSeries t = x + QSeries::one(8);
        EXPECT_EQ(series_exp(series_log(t)), t);
    }
}

TEST(SeriesExp, PreconditionsAreDomainErrors) {
    EXPECT_THROW(series_exp(QSeries::one(2)), DomainError);
    EXPECT_THROW(series_log(QSeries(2)), DomainError);
}

TEST(EisensteinQ, Examples) {
    EXPECT_EQ(eisenstein_q(2, 2), QSeries({Rational(1, 120), Rational(2), Rational(18)}));
    EXPECT_EQ(eisenstein_q(3, 1), QSeries({Rational(-1, 252), Rational(2)}));
    EXPECT_EQ(eisenstein_q(2, 0), QSeries({Rational(1, 120)}));
    EXPECT_THROW(eisenstein_q(0, 3), DomainError);
}

TEST(EisensteinLattice, AgreesWithQExpansion) {
    const std::complex<double> tau(0.0, 2.0);
    const std::complex<double> q = std::exp(2.0 * std::numbers::pi * std::complex<double>(0, 1) * tau);
    for (int k : {2, 3, 4}) {
        const auto est = eisenstein_lattice_numeric(k, tau, 200);
        const auto exact = eisenstein_q(k, 10).evaluate(q);
        EXPECT_LT(std::abs(est.value - exact) / std::abs(exact), 1e-8) << "k=" << k;
    }
}

TEST(EisensteinLattice, PlainShellSumHasR2TailForWeightFour) {
    // The literal truncated sum is only accurate to ~1/cutoff^2 at k = 2.
    const std::complex<double> tau(0.0, 2.0);
    const auto est = eisenstein_lattice_numeric(2, tau, 200);
    const auto exact = eisenstein_q(2, 10).evaluate(std::exp(-4.0 * std::numbers::pi));
    const double rel = std::abs(est.partial_sum - exact) / std::abs(exact);
    EXPECT_GT(rel, 1e-7);
    EXPECT_LT(rel, 1e-5);
}

TEST(EisensteinLattice, CuspLimit) {
    const auto est = eisenstein_lattice_numeric(2, {0.0, 1e6}, 100);
    EXPECT_NEAR(est.value.real(), 1.0 / 120.0, 1e-12);
    EXPECT_NEAR(est.partial_sum.real(), 1.0 / 120.0, 1e-8);
}

TEST(EisensteinLattice, RejectsBadArguments) {
    EXPECT_THROW(eisenstein_lattice_numeric(1, {0, 1}, 10), DomainError);
    EXPECT_THROW(eisenstein_lattice_numeric(2, {0, -1}, 10), DomainError);
    EXPECT_THROW(eisenstein_lattice_numeric(2, {0, 1}, 0), DomainError);
}
