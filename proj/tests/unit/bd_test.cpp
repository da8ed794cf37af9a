#include <random>

#include <gtest/gtest.h>

#include "wfh/bd/model.hpp"
#include "wfh/char_ring/classes.hpp"

using namespace wfh;

namespace {

using R = Form<Rational>;

R mono(const FormAlgebra& fa, const std::string& text, Rational c = Rational(1)) {
    return R{{fa.parse(text), c}};
}

R sum(R a, const R& b, const Rational& s = Rational(1)) {
    FormAlgebra::accumulate(a, b, s);
    return a;
}

const OddCotangentModel& model_14() {
    static const OddCotangentModel m = odd_cotangent_model(1, 4);
    return m;
}
const OddCotangentModel& model_24() {
    static const OddCotangentModel m = odd_cotangent_model(2, 4);
    return m;
}
// n = 1 with one inert theta, so that dx*theta is an even nilpotent base form.
const OddCotangentModel& model_theta() {
    static const OddCotangentModel m = odd_cotangent_model(1, 6, 1);
    return m;
}

// Random base form sum_k c_k x^k dx theta (degree 0, square zero).
R random_alpha(std::mt19937& rng, const FormAlgebra& fa, int max_power) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    R a;
    for (int k = 0; k <= max_power; ++k) {
        const std::string m = (k == 0 ? std::string() : (k == 1 ? "x*" : "x^" + std::to_string(k) + "*")) + "dx*theta";
        a = sum(a, mono(fa, m, Rational(num(rng), den(rng))));
    }
    return a;
}

// Cohomology ring spanned by 1, h (degree 2), u (degree 8): every product of
// positive-degree classes vanishes, so any assignment of square-zero,
// mutually annihilating forms is a ring map.
RingPtr square_zero_ring() {
    std::map<Exponents, Rational> integration{{Exponents{0, 1}, Rational(1)}};
    return std::make_shared<const RingSpec>(
        RingSpec::from_relations({{"h", 2}, {"u", 8}}, 8, {Exponents{2, 0}}, integration));
}

ManifoldSpec square_zero_spec(const RingPtr& ring, Rational c1, Rational c4) {
    MixedClass<Rational> a(ring, Rational(0)), b(ring, Rational(0)), z(ring, Rational(0));
    a[ring->index_of(Exponents{1, 0})] = c1;
    b[ring->index_of(Exponents{0, 1})] = c4;
    return ManifoldSpec(ring, 4, {a, z, z, b}, true);
}

}  // namespace

TEST(FormAlgebra, ZeroFormsHaveNoLieDerivative) {
    const FormAlgebra fa(1, 0);
    EXPECT_TRUE(fa.lie_pi(mono(fa, "x*xi")).empty());
    EXPECT_TRUE(fa.lie_pi(mono(fa, "x^3*xi^2")).empty());
}

TEST(FormAlgebra, CanonicalPairing) {
    const FormAlgebra fa(1, 0);
    EXPECT_EQ(fa.i_pi(mono(fa, "dx*dxi")), mono(fa, "1", Rational(-1)));
    EXPECT_EQ(fa.lie_pi(mono(fa, "xi*dx")), mono(fa, "1"));
    EXPECT_EQ(fa.bracket(mono(fa, "dx"), mono(fa, "xi")), mono(fa, "1"));
    EXPECT_EQ(fa.bracket(mono(fa, "xi"), mono(fa, "dx")), mono(fa, "1"));
    EXPECT_EQ(fa.bracket(mono(fa, "dxi"), mono(fa, "x")), mono(fa, "1", Rational(-1)));
    EXPECT_TRUE(fa.bracket(mono(fa, "x"), mono(fa, "xi")).empty());
}

TEST(FormAlgebra, BaseFormsPoissonCommute) {
    const FormAlgebra fa(2, 1);
    const std::vector<std::string> base{"x1", "x2^2", "dx1", "x1*dx2", "dx1*dx2", "x2*dx1*theta", "theta"};
    for (const auto& a : base)
        for (const auto& b : base) EXPECT_TRUE(fa.bracket(mono(fa, a), mono(fa, b)).empty()) << a << " " << b;
}

TEST(FormAlgebra, LieDerivativeSquaresToZero) {
    for (const auto* m : {&model_14(), &model_24()})
        for (const auto& mono_ : m->monomials) {
            const R f{{mono_, Rational(1)}};
            EXPECT_TRUE(m->forms.lie_pi(m->forms.lie_pi(f)).empty()) << m->forms.text(mono_);
        }
}

TEST(FormAlgebra, LieDerivativeHasOrderTwo) {
    // L(abc) against the six lower terms of a second-order operator.
    const FormAlgebra& fa = model_14().forms;
    std::mt19937 rng(5);
    const auto& ms = model_14().monomials;
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    for (int trial = 0; trial < 300; ++trial) {
        const R a{{ms[pick(rng)], Rational(1)}}, b{{ms[pick(rng)], Rational(1)}}, c{{ms[pick(rng)], Rational(1)}};
        const int da = fa.degree(a.begin()->first), db = fa.degree(b.begin()->first);
        const Rational sa = (da % 2 == 0) ? 1 : -1, sab = ((da + db) % 2 == 0) ? 1 : -1;
        R rhs;
        rhs = sum(rhs, fa.multiply(fa.lie_pi(fa.multiply(a, b)), c));
        rhs = sum(rhs, fa.multiply(a, fa.lie_pi(fa.multiply(b, c))), sa);
        // (-1)^{(|a|+1)|b|} b L(ac), reordered as (-1)^{|b||c|} L(ac) b.
        const R lac_b = fa.multiply(fa.lie_pi(fa.multiply(a, c)), b);
        const int dc = fa.degree(c.begin()->first);
        rhs = sum(rhs, lac_b, ((db * dc) % 2 == 0) ? 1 : -1);
        rhs = sum(rhs, fa.multiply(fa.lie_pi(a), fa.multiply(b, c)), -1);
        rhs = sum(rhs, fa.multiply(a, fa.multiply(fa.lie_pi(b), c)), -sa);
        rhs = sum(rhs, fa.multiply(fa.multiply(a, b), fa.lie_pi(c)), -sab);
        EXPECT_EQ(fa.lie_pi(fa.multiply(a, fa.multiply(b, c))), rhs) << trial;
    }
}

TEST(FormAlgebra, TextRoundTrip) {
    const FormAlgebra fa(2, 1);
    for (const std::string s : {"1", "x1^2*xi2*dx1*dxi2*theta", "dx2", "xi1^3"})
        EXPECT_EQ(fa.text(fa.parse(s)), s);
    EXPECT_THROW(fa.parse("dx1*dx1"), DomainError);
    EXPECT_THROW(fa.parse("y"), DomainError);
}

TEST(HbarPoly, Truncation) {
    using H = HbarPoly<Rational>;
    EXPECT_THROW(H::monomial(Rational(1), 4), DomainError);
    const H a = H::monomial(Rational(1), 2);
    EXPECT_THROW(a * a, DomainError);
    const H b = H::monomial(Rational(1, 2), 1) + H::constant(Rational(3));
    EXPECT_EQ(b.text(), "(3) + (1/2)hbar");
    EXPECT_EQ((b * b).text(), "(9) + (3)hbar + (1/4)hbar^2");
    EXPECT_EQ(b.evaluate(Rational(2)), Rational(4));
    EXPECT_EQ((b - b).text(), "0");
}

TEST(OddCotangentModel, Shape) {
    const auto& m = model_14();
    EXPECT_EQ(m.presentation.size(), 41u);
    EXPECT_EQ(m.presentation.basis[0].name, "1");
    EXPECT_EQ(model_24().presentation.size(), 321u);
    EXPECT_THROW(odd_cotangent_model(0, 4), DomainError);
    EXPECT_THROW(odd_cotangent_model(1, 1), DomainError);
    EXPECT_THROW(m.terms(mono(m.forms, "x^5")), DomainError);
}

TEST(OddCotangentModel, BracketLowersWeightByOne) {
    const auto& p = model_24().presentation;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (const auto& e = p.br(i, j))
                for (const auto& [k, c] : *e) {
                    EXPECT_EQ(*p.basis[k].weight, *p.basis[i].weight + *p.basis[j].weight - 1);
                    ++seen;
                }
    EXPECT_GT(seen, 1000u);
}

TEST(CheckBD, OddCotangentModelsPass) {
    for (const auto* m : {&model_14(), &model_24()}) {
        const BDReport r = check_bd(m->presentation);
        EXPECT_TRUE(r.passed()) << r.violations.front().identity;
        for (const char* id : {"differential_square", "bd_leibniz", "bracket_weight", "differential_weight",
                               "product_weight", "jacobi", "bracket_leibniz", "associativity", "bracket_symmetry"})
            EXPECT_GT(r.checked.at(id), 0u) << id;
    }
}

TEST(CheckBD, FlippedBracketSignIsCaught) {
    const auto& p = model_14().presentation;
    const auto ij = first_nonzero_bracket(p);
    ASSERT_TRUE(ij);
    const BDReport r = check_bd(flip_bracket_sign(p, ij->first, ij->second));
    ASSERT_FALSE(r.passed());
    const auto& w = r.violations.front().witness;
    EXPECT_NE(std::find(w.begin(), w.end(), p.basis[ij->first].name), w.end());
    EXPECT_GT(r.count("bd_leibniz") + r.count("bracket_symmetry"), 0u);
}

TEST(CheckBD, EveryFlipIsCaught) {
    const auto& p = model_14().presentation;
    std::size_t flips = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            const auto& e = p.br(i, j);
            if (!e || e->empty()) continue;
            if ((i * 31 + j) % 7 != 0) continue;
            ++flips;
            EXPECT_FALSE(check_bd(flip_bracket_sign(p, i, j), {false}).passed())
                << p.basis[i].name << ", " << p.basis[j].name;
        }
    EXPECT_GT(flips, 10u);
}

TEST(CheckBD, CommutativeAlgebraWithZeroStructure) {
    // Q[e]/(e^2), e of degree 0.
    BDPresentation<Rational> p;
    p.zero = Rational(0);
    p.basis = {{"1", 0, 0}, {"e", 0, 0}};
    p.unit = 0;
    p.product = {Terms<Rational>{{0, Rational(1)}}, Terms<Rational>{{1, Rational(1)}}, Terms<Rational>{{1, Rational(1)}},
                 Terms<Rational>{}};
    p.bracket.assign(4, Terms<Rational>{});
    p.differential.assign(2, Terms<HbarPoly<Rational>>{});
    EXPECT_TRUE(check_bd(p).passed());

    // e * f = e but f * e = 0: flagged as noncommutative.
    auto q = p;
    q.basis.push_back({"f", 0, 0});
    q.product.assign(9, Terms<Rational>{});
    for (std::size_t i = 0; i < 3; ++i) {
        q.product[i] = Terms<Rational>{{i, Rational(1)}};
        q.product[i * 3] = Terms<Rational>{{i, Rational(1)}};
    }
    q.product[1 * 3 + 2] = Terms<Rational>{{1, Rational(1)}};
    q.bracket.assign(9, Terms<Rational>{});
    q.differential.assign(3, Terms<HbarPoly<Rational>>{});
    const BDReport r = check_bd(q);
    EXPECT_GT(r.count("graded_commutativity"), 0u);

    auto s = p;
    s.bracket[1 * 2 + 1] = Terms<Rational>{{0, Rational(1)}};
    EXPECT_GT(check_bd(s).count("bracket_degree"), 0u);
}

TEST(SpecializeHbar, OddCotangentModel) {
    const auto& p = model_14().presentation;
    const auto p0 = specialize_hbar(p, 0);
    for (const auto& e : p0.differential) EXPECT_TRUE(e && e->empty());
    EXPECT_TRUE(check_bd(p0).passed());
    const auto p1 = specialize_hbar(p, 1);
    EXPECT_TRUE(check_bd(p1).passed());
    EXPECT_THROW(specialize_hbar(p1, 0), DomainError);
    EXPECT_THROW(specialize_hbar(p, 2), DomainError);
    // At hbar = 1 the differential is no longer a derivation.
    auto broken = p1;
    broken.hbar_value = Rational(0);
    EXPECT_GT(check_bd(broken).count("bd_leibniz"), 0u);
}

TEST(SpecializeHbar, ZeroBracketSpecializationsCoincide) {
    const auto& p = model_14().presentation;
    BDPresentation<Rational> q = p;
    for (auto& e : q.bracket)
        if (e) e->clear();
    for (auto& e : q.differential) e = Terms<HbarPoly<Rational>>{};
    const auto q0 = specialize_hbar(q, 0), q1 = specialize_hbar(q, 1);
    const auto cmp = compare_differentials(q0, q1);
    EXPECT_EQ(cmp.compared, q.size());
    EXPECT_TRUE(cmp.agree());
    EXPECT_TRUE(check_bd(q0).passed());
    EXPECT_TRUE(check_bd(q1).passed());
}

TEST(Twist, ZeroIsIdentity) {
    const auto& p = model_14().presentation;
    const auto t = twist_differential(p, Terms<Rational>{});
    EXPECT_TRUE(t.window_violations.empty());
    const auto cmp = compare_differentials(p, t.presentation);
    EXPECT_EQ(cmp.compared, p.size());
    EXPECT_TRUE(cmp.agree());
}

TEST(Twist, NilpotentBaseFormKeepsBDStructure) {
    const auto& m = model_theta();
    const FormAlgebra& fa = m.forms;
    const R u = sum(mono(fa, "dx*theta"), mono(fa, "x^2*dx*theta", Rational(3, 2)));
    // log(1 + u) = u - u^2/2 + u^3/3 - ...
    R log_u, power{{fa.one(), Rational(1)}};
    for (int k = 1; k <= 4; ++k) {
        power = fa.multiply(power, u);
        log_u = sum(log_u, power, Rational(k % 2 == 1 ? 1 : -1, k));
    }
    EXPECT_EQ(log_u, u);
    const auto t = twist_differential(m.presentation, m.terms(log_u));
    const BDReport r = check_bd(t.presentation, {false});
    EXPECT_TRUE(r.passed());
    EXPECT_GT(r.checked.at("differential_square"), 40u);
    EXPECT_FALSE(compare_differentials(m.presentation, t.presentation).agree());
}

TEST(Conjugate, UnitIsIdentity) {
    const auto& p = model_theta().presentation;
    const auto c = conjugate(p, Terms<Rational>{{p.unit, Rational(1)}});
    const auto cmp = compare_differentials(p, c.presentation);
    EXPECT_EQ(cmp.compared, p.size());
    EXPECT_TRUE(cmp.agree());
    for (std::size_t a = 0; a < p.size(); ++a) EXPECT_EQ(*c.multiplication[a], (Terms<Rational>{{a, Rational(1)}}));
}

TEST(Conjugate, RejectsNonInvertible) {
    const auto& m = model_theta();
    EXPECT_THROW(conjugate(m.presentation, m.terms(mono(m.forms, "dx*theta"))), DomainError);
    EXPECT_THROW(conjugate(m.presentation, m.terms(mono(m.forms, "1", Rational(2)))), DomainError);
}

TEST(Conjugate, OnePlusUOnXi) {
    const auto& m = model_theta();
    const FormAlgebra& fa = m.forms;
    const R u = mono(fa, "dx*theta");
    const auto c = conjugate(m.presentation, m.terms(sum(mono(fa, "1"), u)));
    const auto t = twist_differential(m.presentation, m.terms(u));
    const std::size_t xi = m.index.at(fa.parse("xi"));
    ASSERT_TRUE(c.presentation.differential[xi]);
    EXPECT_EQ(*c.presentation.differential[xi], *t.presentation.differential[xi]);
    // hbar {dx theta, xi} = hbar theta (up to sign)
    ASSERT_EQ(t.presentation.differential[xi]->size(), 1u);
    EXPECT_EQ(m.presentation.basis[t.presentation.differential[xi]->front().first].name, "theta");
}

TEST(Conjugate, RandomBaseFormsMatchTwist) {
    const auto& m = model_theta();
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const R alpha = random_alpha(rng, m.forms, 2);
        const R t = sum(mono(m.forms, "1"), alpha);  // exp(alpha), alpha^2 = 0
        const auto c = conjugate(m.presentation, m.terms(t));
        const auto tw = twist_differential(m.presentation, m.terms(alpha));
        const auto cmp = compare_differentials(c.presentation, tw.presentation);
        EXPECT_TRUE(cmp.agree()) << trial;
        EXPECT_GT(cmp.compared, 40u);
    }
}

TEST(ClassEmbedding, Validation) {
    const RingPtr ring = square_zero_ring();
    const FormAlgebra fa(1, 1);
    const R ok_h = mono(fa, "dx*theta"), ok_u = mono(fa, "x*dx*theta");
    EXPECT_NO_THROW(ClassEmbedding(ring, fa, {{"h", ok_h}, {"u", ok_u}}));
    EXPECT_THROW(ClassEmbedding(ring, fa, {{"h", ok_h}}), DomainError);
    EXPECT_THROW(ClassEmbedding(ring, fa, {{"h", ok_h}, {"u", ok_u}, {"v", ok_u}}), DomainError);
    EXPECT_THROW(ClassEmbedding(ring, fa, {{"h", mono(fa, "xi*dx*theta")}, {"u", ok_u}}), DomainError);
    EXPECT_THROW(ClassEmbedding(ring, fa, {{"h", mono(fa, "dx")}, {"u", ok_u}}), DomainError);
    EXPECT_THROW(ClassEmbedding(ring, fa, {{"h", sum(ok_h, mono(fa, "x"))}, {"u", ok_u}}), DomainError);

    // h^2 = 0 in the ring but (dx1 theta1 + dx2 theta2)^2 != 0.
    const FormAlgebra fa2(2, 2);
    const R h2 = sum(mono(fa2, "dx1*theta1"), mono(fa2, "dx2*theta2"));
    EXPECT_THROW(ClassEmbedding(ring, fa2, {{"h", h2}, {"u", mono(fa2, "dx1*theta1")}}), DomainError);
}

TEST(WittenTwist, SquaresToZeroAndReducesToAHat) {
    const auto& m = model_theta();
    const RingPtr ring = square_zero_ring();
    const ClassEmbedding embed(ring, m.forms, {{"h", mono(m.forms, "dx*theta")}, {"u", mono(m.forms, "x*dx*theta")}});
    const auto pq = promote(m.presentation, QSeries(3));
    for (const auto& [c1, c4] : std::vector<std::pair<int, int>>{{0, 1}, {1, 6}, {2, -3}, {-1, 12}, {3, 5}}) {
        const ManifoldSpec spec = square_zero_spec(ring, Rational(c1), Rational(c4));
        const auto wit = embed(class_log(witten_class(spec, 3)));
        ASSERT_FALSE(wit.empty());
        const auto tw = twist_differential(pq, m.terms(wit));
        const BDReport r = check_bd(tw.presentation, {false});
        EXPECT_TRUE(r.passed()) << c1 << " " << c4;
        EXPECT_EQ(r.count("differential_square"), 0u);

        const auto ahat = embed(class_log(half_first_chern_exp(spec) * todd_class(spec)));
        const auto tw_ahat = twist_differential(m.presentation, m.terms(ahat));
        const auto cmp = compare_differentials(q_coefficient(tw.presentation, 0), tw_ahat.presentation);
        EXPECT_TRUE(cmp.agree());
        EXPECT_GT(cmp.compared, 60u);

        const auto tw_td = twist_differential(m.presentation, m.terms(embed(class_log(todd_class(spec)))));
        EXPECT_EQ(compare_differentials(q_coefficient(tw.presentation, 0), tw_td.presentation).agree(), c1 == 0);
    }
}
