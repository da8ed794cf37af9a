#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "wfh/cli/manifest.hpp"
#include "wfh/homalg/hochschild.hpp"

namespace wfh::cli {

inline const std::string library_version = "wfh 1.0.0";

enum ExitCode { exit_ok = 0, exit_schema = 2, exit_computation = 3, exit_check = 4 };

struct Outcome {
    Json report;
    int exit_code = exit_ok;
};

namespace detail {

template <class K>
Json class_json(const MixedClass<K>& c) {
    Json out = Json::object();
    const RingSpec& ring = *c.ring();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (ScalarTraits<K>::is_zero(c[i])) continue;
        if constexpr (std::is_same_v<K, QSeries>) out[ring.monomial_name(i)] = qseries_json(c[i]);
        else out[ring.monomial_name(i)] = rational_json(c[i]);
    }
    return out;
}

inline Json complex_json(std::complex<double> z) { return Json::array({float_text(z.real()), float_text(z.imag())}); }

inline Json presentation_json(const BDPresentation<Rational>& p) {
    Json basis = Json::array();
    for (const auto& b : p.basis) {
        Json e{{"name", b.name}, {"degree", b.degree}};
        if (b.weight) e["weight"] = *b.weight;
        basis.push_back(e);
    }
    auto table = [&](const std::vector<std::optional<Terms<Rational>>>& t) {
        Json out = Json::array();
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                if (const auto& e = t[i * p.size() + j])
                    for (const auto& [k, c] : *e)
                        out.push_back({p.basis[i].name, p.basis[j].name, p.basis[k].name, rational_json(c)});
        return out;
    };
    Json d = Json::array();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (const auto& e = p.differential[i])
            for (const auto& [k, h] : *e)
                for (std::size_t power = 0; power < h.size(); ++power)
                    if (h[power] != 0) d.push_back({p.basis[i].name, p.basis[k].name, power, rational_json(h[power])});
    Json out{{"basis", basis}, {"unit", p.basis[p.unit].name}, {"product", table(p.product)},
             {"bracket", table(p.bracket)}, {"differential", d}};
    auto missing = [&](const std::vector<std::optional<Terms<Rational>>>& t) {
        Json a = Json::array();
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                if (!t[i * p.size() + j]) a.push_back({p.basis[i].name, p.basis[j].name});
        return a;
    };
    Json window{{"product", missing(p.product)}, {"bracket", missing(p.bracket)}, {"differential", Json::array()}};
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p.differential[i]) window["differential"].push_back(p.basis[i].name);
    if (!window["product"].empty() || !window["bracket"].empty() || !window["differential"].empty())
        out["outside_window"] = window;
    return out;
}

inline Outcome run_eisenstein(const EisensteinTask& t, const Options& o) {
    const QSeries e = eisenstein_q(t.k, o.q_order);
    Json r{{"k", t.k}, {"order", o.q_order}, {"coefficients", qseries_json(e)}};
    if (t.lattice) {
        const auto est = eisenstein_lattice_numeric(t.k, t.lattice->tau, t.lattice->cutoff);
        const std::complex<double> q = std::exp(2.0 * std::numbers::pi * std::complex<double>(0, 1) * t.lattice->tau);
        const std::complex<double> series = e.evaluate(q);
        r["lattice"] = {{"tau", complex_json(t.lattice->tau)},
                        {"cutoff", t.lattice->cutoff},
                        {"estimate", complex_json(est.value)},
                        {"partial_sum", complex_json(est.partial_sum)},
                        {"q_expansion", complex_json(series)},
                        {"relative_error", float_text(std::abs(est.value - series) / std::abs(series))}};
    }
    return {r, exit_ok};
}

inline Outcome run_classes(const ClassesTask& t, const Options& o) {
    const ManifoldSpec& spec = t.manifold;
    Json r = Json::object();
    for (const auto& name : t.classes) {
        if (name == "chern") {
            Json a = Json::array();
            for (int i = 1; i <= spec.complex_dimension(); ++i) a.push_back(class_json(spec.chern(i)));
            r[name] = a;
        } else if (name == "chern_character") {
            Json a = Json::array();
            const int top = ::wfh::detail::max_chern_character_index(spec);
            for (const auto& c : chern_character(spec, top)) a.push_back(class_json(c));
            r[name] = a;
        } else if (name == "todd") {
            r[name] = class_json(todd_class(spec));
        } else if (name == "a_hat") {
            r[name] = class_json(a_hat_class(spec));
        } else if (name == "half_first_chern_exp") {
            r[name] = class_json(half_first_chern_exp(spec));
        } else {
            r[name] = class_json(witten_class(spec, o.q_order));
        }
    }
    int code = exit_ok;
    if (t.witten_limit) {
        const bool ok = witten_limit_check(spec);
        r["witten_limit"] = {{"passed", ok}};
        if (!ok) code = exit_check;
    }
    return {r, code};
}

inline Outcome run_genus(const GenusTask& t, const Options& o) {
    Json r = Json::object();
    for (const auto& name : t.genera) {
        if (name == "todd") r[name] = rational_json(integrate(todd_class(t.manifold), t.manifold));
        else if (name == "a_hat") r[name] = rational_json(integrate(a_hat_class(t.manifold), t.manifold));
        else r[name] = qseries_json(witten_genus(t.manifold, o.q_order));
    }
    return {r, exit_ok};
}

inline Outcome run_hochschild(const HochschildTask& t, const Options& o) {
    BarOptions opt;
    opt.normalized = t.normalized;
    opt.budget = o.budget;
    const ChainComplex c = bar_complex(t.algebra, t.max_degree, opt);
    Json chains = Json::array();
    for (int n = 0; n <= t.max_degree; ++n) chains.push_back(c.dim(n));
    return {Json{{"algebra_dimension", t.algebra.dimension()},
                 {"max_degree", t.max_degree},
                 {"normalized", t.normalized},
                 {"chain_dims", chains},
                 {"hh_dims", homology_dims(c, 0, t.max_degree)},
                 {"commutator_quotient_dimension", commutator_quotient_dimension(t.algebra)}},
            exit_ok};
}

inline Outcome run_circle(const CircleTask& t, const Options& o) {
    CechOptions opt;
    opt.convention = o.convention;
    opt.budget = o.budget;
    Json runs = Json::array();
    bool all_match = true, invariant = true;
    std::optional<std::vector<std::size_t>> first;
    for (const auto& f : t.dilations) {
        const CoverSpec cover = f == 1 ? t.cover : t.cover.dilated(f);
        const auto cmp = compare_circle_with_hochschild(t.algebra, cover, t.max_degree, t.max_arcs, opt);
        Json arcs = Json::array();
        for (const auto& a : cmp.final_arcs) arcs.push_back({rational_json(a.start), rational_json(a.length)});
        runs.push_back({{"lambda", rational_json(cover.ambient().circumference)},
                        {"fh_dims", cmp.fh},
                        {"hh_dims", cmp.hh},
                        {"verdict", cmp.matches ? "matches HH" : "differs from HH"},
                        {"arcs_used", cmp.arcs_used},
                        {"factorizing", cmp.factorizing},
                        {"final_arcs", arcs},
                        {"log", cmp.log}});
        all_match = all_match && cmp.matches;
        if (!first) first = cmp.fh;
        invariant = invariant && *first == cmp.fh;
    }
    return {Json{{"max_degree", t.max_degree}, {"runs", runs}, {"dilation_invariant", invariant}},
            all_match && invariant ? exit_ok : exit_check};
}

inline Outcome run_bd(const BDTask& t) {
    BDPresentation<Rational> p = t.presentation;
    Json r{{"source", t.source}, {"size", p.size()}};
    if (t.mutate) {
        p = flip_bracket_sign(p, t.mutate->first, t.mutate->second);
        r["mutated"] = Json::array({p.basis[t.mutate->first].name, p.basis[t.mutate->second].name});
    }
    if (t.twist) {
        auto tw = twist_differential(p, *t.twist);
        p = std::move(tw.presentation);
        r["twist_window_violations"] = tw.window_violations;
    }
    if (t.specialize) {
        p = specialize_hbar(p, *t.specialize);
        r["hbar"] = *t.specialize;
    }
    const BDReport rep = check_bd(p, {t.triples});
    Json v = Json::array();
    for (const auto& x : rep.violations) v.push_back({{"identity", x.identity}, {"witness", x.witness}, {"detail", x.detail}});
    r["passed"] = rep.passed();
    r["checked"] = rep.checked;
    r["skipped"] = rep.skipped;
    r["violations"] = v;
    if (t.export_presentation) r["presentation"] = presentation_json(p);
    return {r, rep.passed() ? exit_ok : exit_check};
}

inline Outcome run_rees(const ReesTask& t) {
    const ReesAlgebra alg = rees_weyl(t.max_x, t.max_p, t.max_hbar);
    std::size_t pairs = 0;
    bool commutative = true, weyl = true;
    const PlaneElement one{{PlaneMonomial{0, 0}, Rational(1)}};
    const bool weyl_generator = ReesAlgebra::specialize(alg.commutator(alg.p(), alg.x()), 1) == one;
    for (unsigned a = 0; a <= t.max_x; ++a)
        for (unsigned b = 0; b <= t.max_p; ++b)
            for (unsigned a2 = 0; a2 <= t.max_x; ++a2)
                for (unsigned b2 = 0; b2 <= t.max_p; ++b2) {
                    const ReesElement u = alg.monomial(a, b, 0), v = alg.monomial(a2, b2, 0);
                    const ReesElement c = alg.commutator(u, v);
                    const ReesElement uv = alg.multiply(u, v);
                    if (c.overflow || uv.overflow) continue;
                    ++pairs;
                    commutative = commutative && ReesAlgebra::specialize(c, 0).empty();
                    weyl = weyl && ReesAlgebra::specialize(uv, 1) ==
                                       ReesAlgebra::specialized_multiply(ReesAlgebra::specialize(u, 1),
                                                                         ReesAlgebra::specialize(v, 1), 1);
                }
    Json products = Json::array();
    for (const auto& [l, rr] : t.products) {
        const ReesElement u = alg.monomial(l[0], l[1], l[2]), v = alg.monomial(rr[0], rr[1], rr[2]);
        const ReesElement uv = alg.multiply(u, v);
        products.push_back(
            {{"left", to_text(u)}, {"right", to_text(v)}, {"product", to_text(uv)}, {"overflow", uv.overflow}});
    }
    const bool ok = commutative && weyl && weyl_generator;
    return {Json{{"bounds", {t.max_x, t.max_p, t.max_hbar}},
                 {"commutator_p_x", to_text(alg.commutator(alg.p(), alg.x()))},
                 {"pairs_checked", pairs},
                 {"hbar0_commutative", commutative},
                 {"hbar1_weyl_relations", weyl && weyl_generator},
                 {"products", products}},
            ok ? exit_ok : exit_check};
}

}  // namespace detail

/// Runs the manifest's task. Computation-level failures propagate as
/// DomainError, PreconditionError or SizeBudgetError.
inline Outcome execute(const Manifest& m) {
    Outcome out = std::visit(
        [&](const auto& t) -> Outcome {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, EisensteinTask>) return detail::run_eisenstein(t, m.options);
            else if constexpr (std::is_same_v<T, ClassesTask>) return detail::run_classes(t, m.options);
            else if constexpr (std::is_same_v<T, GenusTask>) return detail::run_genus(t, m.options);
            else if constexpr (std::is_same_v<T, HochschildTask>) return detail::run_hochschild(t, m.options);
            else if constexpr (std::is_same_v<T, CircleTask>) return detail::run_circle(t, m.options);
            else if constexpr (std::is_same_v<T, BDTask>) return detail::run_bd(t);
            else return detail::run_rees(t);
        },
        m.payload);
    Json report{{"task", m.task},
                {"version", m.version},
                {"provenance",
                 {{"library", library_version},
                  {"cech_convention", m.options.convention.text()},
                  {"q_order", m.options.q_order},
                  {"size_budget", m.options.budget}}},
                {"results", out.report},
                {"status", out.exit_code == exit_ok ? "ok" : "check failed"}};
    out.report = std::move(report);
    return out;
}

/// Deterministic serialisation: sorted keys, two-space indent, final newline.
inline std::string render(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace wfh::cli
