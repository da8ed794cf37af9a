// Acceptance checks. One line per criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wfh/bd/model.hpp"
#include "wfh/char_ring/classes.hpp"
#include "wfh/exact_core/bernoulli.hpp"
#include "wfh/exact_core/eisenstein.hpp"
#include "wfh/factalg/cech.hpp"
#include "wfh/homalg/hkr.hpp"
#include "wfh/homalg/rees.hpp"

using namespace wfh;
using Dims = std::vector<std::size_t>;

namespace {

// Tolerances and time limits.
constexpr double eisenstein_rel_tol = 1e-8;
constexpr double limit_eisenstein = 2, limit_zeta = 1, limit_limit = 1, limit_grr = 1;
constexpr double limit_hochschild = 10, limit_hkr = 5, limit_locality = 30, limit_circle = 120;
constexpr double limit_bd = 30, limit_twist = 30, limit_rees = 1, limit_cli = 60;

struct Result {
    bool ok = true;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string dims_text(const Dims& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

Rational q(long n, long d = 1) { return Rational(n, d); }

// ---------------------------------------------------------------- 1

Result eisenstein_oracle() {
    const std::complex<double> tau(0.0, 2.0);
    const std::complex<double> qv = std::exp(2.0 * std::numbers::pi * std::complex<double>(0, 1) * tau);
    Result r;
    double worst = 0;
    for (int k : {2, 3, 4}) {
        const auto exact = eisenstein_q(k, 10).evaluate(qv);
        const auto est = eisenstein_lattice_numeric(k, tau, 200);
        const double rel = std::abs(est.value - exact) / std::abs(exact);
        worst = std::max(worst, rel);
        if (!(rel < eisenstein_rel_tol)) r.ok = false;
    }
    r.detail = "k=2,3,4 max rel err " + fmt("%.2e", worst) + " (tol " + fmt("%.0e", eisenstein_rel_tol) + ")";
    return r;
}

// ---------------------------------------------------------------- 2

Result zeta_bernoulli() {
    constexpr std::size_t order = 12;
    // x/(1 - e^{-x}) = 1 / (sum_{n>=0} (-x)^n/(n+1)!), inverted term by term.
    std::vector<Rational> g(order + 1), h(order + 1);
    for (std::size_t n = 0; n <= order; ++n) g[n] = Rational(n % 2 ? -1 : 1) / factorial(static_cast<unsigned>(n + 1));
    h[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= n; ++j) acc += g[j] * h[n - j];
        h[n] = -acc;
    }
    std::vector<Rational> e(order + 1);
    e[1] = q(1, 2);
    for (unsigned k = 1; 2 * k <= order; ++k)
        e[2 * k] = -bernoulli(2 * k) / static_cast<long>(2 * k) / factorial(2 * k);
    const QSeries lhs = series_exp(QSeries(e));
    Result r;
    r.ok = lhs == QSeries(h);
    r.detail = "exact through x^12, x^12 coefficient " + to_string(lhs[order]);
    return r;
}

// ---------------------------------------------------------------- 3

using Class = MixedClass<Rational>;

Class term(const RingPtr& ring, const Exponents& e, Rational c) {
    Class x(ring, Rational(0));
    x[ring->index_of(e)] = c;
    return x;
}

// Formal 4-folds on a, b, c, d (degrees 2, 4, 6, 8) with ch_2 = 0 imposed by
// choosing c_2 = c_1^2 / 2.
ManifoldSpec formal_spec(const Rational& c1a, const Rational& c3c, const Rational& c4d, const Rational& c4a) {
    std::map<Exponents, Rational> integration{{Exponents{0, 0, 0, 1}, q(1)}, {Exponents{4, 0, 0, 0}, q(2)}};
    auto ring = std::make_shared<const RingSpec>(
        RingSpec::from_relations({{"a", 2}, {"b", 4}, {"c", 6}, {"d", 8}}, 8, {}, integration));
    const Class c1 = term(ring, {1, 0, 0, 0}, c1a);
    const Class c2 = c1 * c1 * q(1, 2);
    const Class c3 = term(ring, {0, 0, 1, 0}, c3c);
    const Class c4 = term(ring, {0, 0, 0, 1}, c4d) + term(ring, {4, 0, 0, 0}, c4a);
    return ManifoldSpec(ring, 4, {c1, c2, c3, c4}, true);
}

Result limit_identity() {
    Result r;
    std::vector<ManifoldSpec> specs{trivial_bundle(2), trivial_bundle(4),
                                    formal_spec(q(0), q(0), q(-6), q(0)), formal_spec(q(1), q(0), q(0), q(0)),
                                    formal_spec(q(2), q(3), q(-1), q(5)), formal_spec(q(-1, 2), q(1), q(7), q(-2))};
    std::size_t passed = 0, nonzero_c1 = 0;
    for (const auto& s : specs) {
        bool ok = false;
        try {
            ok = witten_limit_check(s);
        } catch (const std::exception&) {
        }
        passed += ok;
        if (!s.chern(1).is_zero()) ++nonzero_c1;
    }
    std::string witness;
    try {
        witten_limit_check(projective_space(2));
    } catch (const PreconditionError& e) {
        witness = e.what();
    }
    const bool rejected = witness.find("3/2*h^2") != std::string::npos;
    r.ok = passed == specs.size() && nonzero_c1 >= 2 && rejected;
    r.detail = std::to_string(passed) + "/" + std::to_string(specs.size()) + " specs pass (" +
               std::to_string(nonzero_c1) + " with c1 != 0); P2 " +
               (rejected ? "rejected with ch2 = 3/2*h^2" : "NOT rejected correctly");
    return r;
}

// ---------------------------------------------------------------- 4

Result grr_sanity() {
    Result r;
    std::string td;
    for (int n = 1; n <= 4; ++n) {
        const auto p = projective_space(n);
        const Rational v = integrate(todd_class(p), p);
        td += (n > 1 ? "," : "") + to_string(v);
        if (v != 1) r.ok = false;
    }
    const auto p1 = projective_space(1);
    const Rational ahat = integrate(a_hat_class(p1), p1);
    if (ahat != 0) r.ok = false;
    r.detail = "int Td(P^n), n=1..4: " + td + "; A-hat(P1) = " + to_string(ahat);
    return r;
}

// ---------------------------------------------------------------- 5

std::vector<std::pair<std::string, FinDimAlgebra>> suite() {
    return {{"Q", algebras::ground_field()},
            {"QxQ", algebras::product_of_fields(2)},
            {"Q[e]/e^2", algebras::dual_numbers()},
            {"M2(Q)", algebras::matrix_algebra(2)}};
}

// Dual numbers: 2-periodic resolution, after tensoring A <-0- A <-2e- A <-0- ...
Dims dual_numbers_oracle(int max_degree) {
    const std::size_t n = static_cast<std::size_t>(max_degree) + 2;
    std::vector<SparseMatrix> d;
    for (std::size_t k = 1; k < n; ++k) {
        SparseMatrix m(2, 2);
        if (k % 2 == 0) m.set_column(0, {{1, q(2)}});
        d.push_back(m);
    }
    return homology_dims(ChainComplex(0, std::vector<std::size_t>(n, 2), d), 0, max_degree);
}

Result hochschild_suite() {
    Result r;
    const Dims q_hh = hh_dims(algebras::ground_field(), 2);
    const std::vector<Dims> oracle{
        {commutator_quotient_dimension(algebras::ground_field()), 0, 0},
        {commutator_quotient_dimension(algebras::product_of_fields(2)), 0, 0},
        dual_numbers_oracle(2),
        q_hh,  // Morita
    };
    const std::vector<Dims> stated{{1, 0, 0}, {2, 0, 0}, {2, 1, 1}, {1, 0, 0}};
    const auto s = suite();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Dims d = hh_dims(s[i].second, 2);
        if (d != oracle[i] || d != stated[i]) r.ok = false;
        r.detail += (i ? " " : "") + s[i].first + dims_text(d);
    }
    if (commutator_quotient_dimension(algebras::matrix_algebra(2)) != hh_dims(algebras::matrix_algebra(2), 0)[0])
        r.ok = false;
    return r;
}

// ---------------------------------------------------------------- 6

Result hkr() {
    Result r;
    const unsigned bound = 5;
    const HkrMap h = hkr_map(1, bound, 1);
    std::size_t iso = 0;
    for (int w = 0; w < static_cast<int>(bound); ++w) {
        const auto& m = h.components[static_cast<std::size_t>(w)].map;
        const bool ok = m.commutes() && m.induces_isomorphism(0) && m.induces_isomorphism(1);
        iso += ok;
        if (!ok) r.ok = false;
    }
    r.detail = "Q[x] bound 5: H0 and H1 isomorphisms in " + std::to_string(iso) + "/5 weights 0..4";
    return r;
}

// ---------------------------------------------------------------- 7

Result locality() {
    Result r;
    constexpr long g = 8;
    std::vector<Arc> intervals;
    for (long i = 0; i < g; ++i)
        for (long j = i + 1; j <= g; ++j) intervals.push_back(Arc::interval(q(i, g), q(j, g)));
    std::vector<std::vector<Arc>> candidates;
    const std::size_t n = intervals.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            candidates.push_back({intervals[i], intervals[j]});
            for (std::size_t k = j + 1; k < n; ++k) candidates.push_back({intervals[i], intervals[j], intervals[k]});
        }
    const auto s = suite();
    std::size_t covers = 0, checks = 0;
    std::string failure;
    for (const auto& arcs : candidates) {
        std::optional<CoverSpec> c;
        try {
            c = CoverSpec::interval(q(0), q(1), arcs);
        } catch (const DomainError&) {
            continue;
        }
        if (!is_factorizing(*c).factorizing) continue;
        ++covers;
        for (const auto& [name, a] : s) {
            ++checks;
            const Dims d = homology_dims(cech_complex(*c, a), 0, 2);
            const std::size_t h0 = right_exact_h0(*c, a);
            if (d != Dims{a.dimension(), 0, 0} || h0 != a.dimension()) {
                r.ok = false;
                if (failure.empty()) failure = "; first failure " + name + " " + dims_text(d);
            }
        }
    }
    if (covers == 0) r.ok = false;
    r.detail = std::to_string(covers) + " factorizing covers, " + std::to_string(checks) +
               " (cover, algebra) pairs incl. right-exact H0" + failure;
    return r;
}

// ---------------------------------------------------------------- 8

Result circle(std::vector<std::string>& log) {
    Result r;
    const auto s = suite();
    for (const auto& [name, a] : s) {
        std::optional<Dims> first;
        for (const Rational& lambda : {q(1), q(7, 3)}) {
            const auto c = compare_circle_with_hochschild(a, standard_circle_cover(4, lambda), 1);
            for (const auto& line : c.log) log.push_back(name + " lambda=" + to_string(lambda) + ": " + line);
            if (!c.matches || c.arcs_used > 8) r.ok = false;
            if (first && *first != c.fh) r.ok = false;
            if (!first) {
                first = c.fh;
                r.detail += (r.detail.empty() ? "" : " ") + name + dims_text(c.fh) + "@" +
                            std::to_string(c.arcs_used) + "arcs";
            }
        }
    }
    r.detail += "; equal for lambda 1, 7/3";
    return r;
}

// ---------------------------------------------------------------- 9

Result bd_axioms() {
    Result r;
    for (std::size_t n : {1u, 2u}) {
        const auto m = odd_cotangent_model(n, 4);
        const BDReport rep = check_bd(m.presentation);
        bool ok = rep.passed();
        for (const char* id : {"differential_square", "bd_leibniz", "bracket_weight", "differential_weight",
                               "product_weight"})
            if (!rep.checked.count(id) || rep.checked.at(id) == 0) ok = false;
        if (!ok) r.ok = false;
        r.detail += "n=" + std::to_string(n) + " " + (ok ? "passes" : "FAILS") + " (" +
                    std::to_string(rep.checked.at("bd_leibniz")) + " Leibniz checks); ";
        if (n == 1) {
            const auto ij = first_nonzero_bracket(m.presentation);
            const bool caught = ij && !check_bd(flip_bracket_sign(m.presentation, ij->first, ij->second)).passed();
            if (!caught) r.ok = false;
            r.detail += std::string("sign flip ") + (caught ? "detected" : "NOT detected") + "; ";
        }
    }
    r.detail.resize(r.detail.size() - 2);
    return r;
}

// ---------------------------------------------------------------- 10

using Fm = Form<Rational>;

Fm mono(const FormAlgebra& fa, const std::string& text, Rational c = Rational(1)) { return Fm{{fa.parse(text), c}}; }

Result conjugation_and_twist() {
    Result r;
    const auto m = odd_cotangent_model(1, 6, 1);
    const FormAlgebra& fa = m.forms;

    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    std::size_t agree = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Fm alpha;
        for (const char* b : {"dx*theta", "x*dx*theta", "x^2*dx*theta"})
            FormAlgebra::accumulate(alpha, mono(fa, b), Rational(num(rng), den(rng)));
        Fm t = mono(fa, "1");
        FormAlgebra::accumulate(t, alpha, q(1));
        const auto c = conjugate(m.presentation, m.terms(t));
        const auto tw = twist_differential(m.presentation, m.terms(alpha));  // log T = alpha
        agree += compare_differentials(c.presentation, tw.presentation).agree();
    }
    if (agree != 20) r.ok = false;

    // h in degree 2, u in degree 8, h^2 = 0, embedded as dx*theta and x*dx*theta.
    std::map<Exponents, Rational> integration{{Exponents{0, 1}, q(1)}};
    auto ring = std::make_shared<const RingSpec>(
        RingSpec::from_relations({{"h", 2}, {"u", 8}}, 8, {Exponents{2, 0}}, integration));
    const ClassEmbedding embed(ring, fa, {{"h", mono(fa, "dx*theta")}, {"u", mono(fa, "x*dx*theta")}});
    const auto pq = promote(m.presentation, QSeries(3));
    std::size_t squares = 0, reduces = 0, specs = 0;
    for (const auto& [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {0, -6}, {1, 6}, {2, -3}, {-1, 12}}) {
        ++specs;
        const Class zero(ring, 0);
        const ManifoldSpec spec(ring, 4, {term(ring, {1, 0}, q(a)), zero, zero, term(ring, {0, 1}, q(b))}, true);
        const auto wit = embed(class_log(witten_class(spec, 3)));
        const auto tw = twist_differential(pq, m.terms(wit));
        const BDReport rep = check_bd(tw.presentation, {false});
        squares += rep.checked.count("differential_square") && rep.count("differential_square") == 0 && rep.passed();
        const auto todd = embed(class_log(half_first_chern_exp(spec) * todd_class(spec)));
        const auto tw_todd = twist_differential(m.presentation, m.terms(todd));
        reduces += compare_differentials(q_coefficient(tw.presentation, 0), tw_todd.presentation).agree();
    }
    if (squares != specs || reduces != specs) r.ok = false;
    r.detail = "conjugation = twist on " + std::to_string(agree) + "/20 random T; D^2 = 0 through q^3 on " +
               std::to_string(squares) + "/" + std::to_string(specs) + " specs; q^0 = Todd twist (e^{-c1/2}Td) on " +
               std::to_string(reduces) + "/" + std::to_string(specs);
    return r;
}

// ---------------------------------------------------------------- 11

// x^a d^b acting on x^k.
std::map<unsigned, Rational> act(const PlaneElement& op, const std::map<unsigned, Rational>& f) {
    std::map<unsigned, Rational> out;
    for (const auto& [m, c] : op)
        for (const auto& [k, v] : f) {
            if (m[1] > k) continue;
            Rational falling = 1;
            for (unsigned i = 0; i < m[1]; ++i) falling *= (k - i);
            out[k - m[1] + m[0]] += c * v * falling;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Result rees() {
    Result r;
    const auto ra = rees_weyl(3, 3, 3);
    const bool px = ra.commutator(ra.p(), ra.x()) == ra.hbar();
    const bool weyl = ReesAlgebra::specialize(ra.commutator(ra.p(), ra.x()), 1) == PlaneElement{{{0, 0}, q(1)}};
    std::size_t pairs = 0, commutative = 0, operators = 0;
    for (unsigned a = 0; a <= 3; ++a)
        for (unsigned b = 0; b <= 3; ++b)
            for (unsigned c = 0; c <= 3; ++c)
                for (unsigned a2 = 0; a2 <= 3; ++a2)
                    for (unsigned b2 = 0; b2 <= 3; ++b2)
                        for (unsigned c2 = 0; c2 <= 3; ++c2) {
                            const auto u = ra.monomial(a, b, c), v = ra.monomial(a2, b2, c2);
                            const auto uv = ra.multiply(u, v), vu = ra.multiply(v, u);
                            if (uv.overflow || vu.overflow) continue;
                            ++pairs;
                            commutative += ReesAlgebra::specialize(uv, 0) == ReesAlgebra::specialize(vu, 0);
                            const auto prod = ReesAlgebra::specialize(uv, 1);
                            const auto su = ReesAlgebra::specialize(u, 1), sv = ReesAlgebra::specialize(v, 1);
                            bool ok = true;
                            for (unsigned k = 0; k <= 6 && ok; ++k) {
                                const std::map<unsigned, Rational> f{{k, q(1)}};
                                ok = act(prod, f) == act(su, act(sv, f));
                            }
                            operators += ok;
                        }
    r.ok = px && weyl && pairs > 0 && commutative == pairs && operators == pairs;
    r.detail = std::string("[p,x] = ") + (px ? "hbar" : "WRONG") + "; " + std::to_string(pairs) +
               " in-bounds pairs: hbar=0 commutative " + std::to_string(commutative) + ", hbar=1 Weyl " +
               std::to_string(operators);
    return r;
}

// ---------------------------------------------------------------- 12

std::optional<std::string> capture(const std::string& cmd, int& status) {
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Result cli_determinism() {
    Result r;
    const std::string dir = WFH_GOLDEN_DIR;
    std::ifstream corpus(dir + "/corpus.txt");
    std::string name;
    int expected_code;
    std::size_t manifests = 0, identical = 0;
    std::set<std::string> tasks;
    while (corpus >> name >> expected_code) {
        ++manifests;
        const std::string path = dir + "/" + name + ".json";
        const std::string cmd = std::string("\"") + WFH_CLI + "\" run \"" + path + "\" 2>/dev/null";
        int s1 = -1, s2 = -1;
        const auto o1 = capture(cmd, s1), o2 = capture(cmd, s2);
        const bool same = o1 && o2 && *o1 == *o2 && s1 == s2 && s1 == expected_code &&
                          *o1 == slurp(dir + "/" + name + ".expected");
        identical += same;
        if (!same) r.detail += " mismatch:" + name;
        try {
            tasks.insert(nlohmann::json::parse(slurp(path)).at("task").get<std::string>());
        } catch (const std::exception&) {
        }
    }
    r.ok = manifests >= 10 && identical == manifests && tasks.size() == 7;
    r.detail = std::to_string(identical) + "/" + std::to_string(manifests) +
               " manifests byte-identical across two runs, " +
               std::to_string(tasks.size()) + "/7 tasks covered" + r.detail;
    return r;
}

}  // namespace

int main() {
    std::vector<std::string> circle_log;
    struct Criterion {
        int id;
        const char* name;
        double limit;
        std::function<Result()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Eisenstein q-expansion vs lattice sum", limit_eisenstein, eisenstein_oracle},
        {2, "zeta/Bernoulli series identity", limit_zeta, zeta_bernoulli},
        {3, "Witten limit identity", limit_limit, limit_identity},
        {4, "GRR sanity on projective spaces", limit_grr, grr_sanity},
        {5, "Hochschild suite", limit_hochschild, hochschild_suite},
        {6, "HKR isomorphism", limit_hkr, hkr},
        {7, "locality on interval covers", limit_locality, locality},
        {8, "FH(S^1) = HH", limit_circle, [&] { return circle(circle_log); }},
        {9, "BD axioms", limit_bd, bd_axioms},
        {10, "conjugation and Witten twist", limit_twist, conjugation_and_twist},
        {11, "Rees algebra", limit_rees, rees},
        {12, "CLI determinism", limit_cli, cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.limit;
        const bool pass = r.ok && in_time;
        failures += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << r.detail << " ("
                  << fmt("%.2f", secs) << " s, limit " << fmt("%g", c.limit) << " s" << (in_time ? "" : ", too slow")
                  << ")\n";
        if (c.id == 8)
            for (const auto& line : circle_log) std::cout << "    refinement " << line << "\n";
        std::cout.flush();
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
