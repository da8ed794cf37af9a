#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wfh/bd/model.hpp"
#include "wfh/char_ring/classes.hpp"
#include "wfh/cli/json_io.hpp"
#include "wfh/factalg/cech.hpp"
#include "wfh/homalg/algebra.hpp"
#include "wfh/homalg/rees.hpp"

namespace wfh::cli {

inline const std::string manifest_version = "1";

/// Command-line overrides applied on top of the manifest options.
struct Flags {
    std::optional<std::size_t> q_order;
    std::optional<std::string> convention;
};

struct Options {
    std::size_t q_order = 6;
    CechConvention convention = CechConvention::distinct();
    std::size_t budget = default_size_budget;
};

struct EisensteinTask {
    int k = 2;
    struct Lattice {
        std::complex<double> tau;
        int cutoff;
    };
    std::optional<Lattice> lattice;
};

struct ClassesTask {
    ManifoldSpec manifold;
    std::vector<std::string> classes;
    bool witten_limit = false;
};

struct GenusTask {
    ManifoldSpec manifold;
    std::vector<std::string> genera;
};

struct HochschildTask {
    FinDimAlgebra algebra;
    int max_degree = 2;
    bool normalized = false;
};

struct CircleTask {
    FinDimAlgebra algebra;
    CoverSpec cover;
    int max_degree = 1;
    std::size_t max_arcs = 8;
    std::vector<Rational> dilations;
};

struct BDTask {
    std::string source;
    std::optional<OddCotangentModel> model;
    BDPresentation<Rational> presentation;
    std::optional<std::pair<std::size_t, std::size_t>> mutate;
    std::optional<int> specialize;
    std::optional<Terms<Rational>> twist;
    bool triples = true;
    bool export_presentation = false;
};

struct ReesTask {
    unsigned max_x = 4, max_p = 4, max_hbar = 4;
    std::vector<std::pair<ReesMonomial, ReesMonomial>> products;
};

using Payload = std::variant<EisensteinTask, ClassesTask, GenusTask, HochschildTask, CircleTask, BDTask, ReesTask>;

struct Manifest {
    std::string version;
    std::string task;
    Options options;
    Payload payload;
};

inline const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names{"eisenstein", "classes",    "genus", "hochschild",
                                                "fh-circle",  "bd-check", "rees"};
    return names;
}

namespace detail {

inline bool digits_only(const std::string& s) {
    return !s.empty() && s.size() < 9 && s.find_first_not_of("0123456789") == std::string::npos;
}

}  // namespace detail

inline bool is_integer_literal_positive(const std::string& s) { return detail::digits_only(s) && std::stoul(s) >= 1; }

inline CechConvention parse_convention(const std::string& text, const std::string& path) {
    if (text == "distinct") return CechConvention::distinct();
    if (text.rfind("full:", 0) == 0 && is_integer_literal_positive(text.substr(5)))
        return CechConvention::full(std::stoul(text.substr(5)));
    throw SchemaError(path, "convention must be 'distinct' or 'full:L' with L >= 1, got '" + text + "'");
}

namespace detail {

/// Runs `f`, re-rooting schema errors and turning domain errors from
/// constructors into schema errors at `path`.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError& e) {
        throw SchemaError(path + "." + e.path(), e.message());
    } catch (const DomainError& e) {
        throw SchemaError(path, e.what());
    } catch (const PreconditionError& e) {
        throw SchemaError(path, e.what());
    }
}

inline Exponents parse_exponents(const std::string& text, const std::vector<Generator>& gens, const Node& where) {
    Exponents e(gens.size(), 0);
    if (text == "1") return e;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t star = text.find('*', pos);
        if (star == std::string::npos) star = text.size();
        std::string factor = text.substr(pos, star - pos);
        unsigned power = 1;
        if (auto caret = factor.find('^'); caret != std::string::npos) {
            const std::string p = factor.substr(caret + 1);
            if (!digits_only(p)) where.fail("bad exponent in '" + text + "'");
            power = static_cast<unsigned>(std::stoul(p));
            factor = factor.substr(0, caret);
        }
        std::size_t g = 0;
        while (g < gens.size() && gens[g].name != factor) ++g;
        if (g == gens.size()) where.fail("unknown generator '" + factor + "' in '" + text + "'");
        e[g] += power;
        pos = star + 1;
    }
    return e;
}

inline MixedClass<Rational> parse_class(const Node& n, const RingPtr& ring) {
    MixedClass<Rational> c(ring, Rational(0));
    for (const auto& [mono, coeff] : n.items()) {
        const Exponents e = parse_exponents(mono, ring->generators(), coeff);
        const std::size_t i = ring->index_of(e);
        if (i == RingSpec::npos) coeff.fail("monomial '" + mono + "' is not in the ring basis");
        c[i] += coeff.rational();
    }
    return c;
}

inline ManifoldSpec parse_manifold(const Node& n) {
    n.require_object();
    if (n.has("preset")) {
        const std::string preset = n.at("preset").choice({"projective_space", "trivial_bundle", "product"});
        if (preset == "product") {
            const auto factors = n.at("factors").elements();
            if (factors.size() < 2) n.fail("product needs at least two factors");
            ManifoldSpec m = parse_manifold(factors[0]);
            for (std::size_t i = 1; i < factors.size(); ++i) m = product(m, parse_manifold(factors[i]));
            n.finish();
            return m;
        }
        const int dim = static_cast<int>(n.at("n").integer(0, 8));
        n.finish();
        return preset == "projective_space" ? projective_space(dim) : trivial_bundle(dim);
    }
    const Node r = n.at("ring");
    std::vector<Generator> gens;
    for (const auto& g : r.at("generators").elements()) {
        gens.push_back({g.at("name").string(), static_cast<int>(g.at("degree").integer(2, 64))});
        g.finish();
    }
    const int top = static_cast<int>(r.at("top_degree").integer(0, 64));
    std::vector<Exponents> relations;
    if (auto rel = r.get("relations"))
        for (const auto& x : rel->elements()) relations.push_back(parse_exponents(x.string(), gens, x));
    std::map<Exponents, Rational> integration;
    for (const auto& [mono, coeff] : r.at("integration").items())
        integration[parse_exponents(mono, gens, coeff)] += coeff.rational();
    r.finish();
    RingPtr ring = at_path(n.path(), [&] {
        return std::make_shared<const RingSpec>(RingSpec::from_relations(gens, top, relations, integration));
    });
    const int dim = static_cast<int>(n.at("complex_dimension").integer(0, 32));
    std::vector<MixedClass<Rational>> chern;
    if (auto c = n.get("chern"))
        for (const auto& x : c->elements()) chern.push_back(parse_class(x, ring));
    const bool ch2 = n.get("ch2_trivialized") ? n.at("ch2_trivialized").boolean() : false;
    n.finish();
    return at_path(n.path(), [&] { return ManifoldSpec(ring, dim, chern, ch2); });
}

inline SparseVector parse_vector(const Node& n, const std::vector<std::string>& names) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [name, coeff] : n.items()) {
        std::size_t i = 0;
        while (i < names.size() && names[i] != name) ++i;
        if (i == names.size()) coeff.fail("unknown basis element '" + name + "'");
        acc[i] += coeff.rational();
    }
    SparseVector v;
    for (const auto& [i, c] : acc)
        if (c != 0) v.emplace_back(i, c);
    return v;
}

inline FinDimAlgebra parse_algebra(const Node& n) {
    n.require_object();
    if (n.has("preset")) {
        const std::string preset = n.at("preset").choice(
            {"ground_field", "product_of_fields", "dual_numbers", "matrix", "cyclic_group", "truncated_polynomial"});
        auto make = [&]() -> FinDimAlgebra {
            if (preset == "ground_field") return algebras::ground_field();
            if (preset == "dual_numbers") return algebras::dual_numbers();
            if (preset == "product_of_fields") return algebras::product_of_fields(n.at("m").count(1, 16));
            if (preset == "matrix") return algebras::matrix_algebra(n.at("n").count(1, 4));
            if (preset == "cyclic_group") return algebras::cyclic_group_algebra(n.at("n").count(1, 16));
            return algebras::truncated_polynomial(n.at("variables").count(1, 3),
                                        static_cast<unsigned>(n.at("bound").count(0, 12)));
        };
        FinDimAlgebra a = make();
        n.finish();
        return a;
    }
    std::vector<std::string> names;
    for (const auto& b : n.at("basis").elements()) names.push_back(b.string());
    if (names.empty()) n.fail("basis must be nonempty");
    const SparseVector unit = parse_vector(n.at("unit"), names);
    std::vector<SparseVector> products(names.size() * names.size());
    for (const auto& entry : n.at("products").elements()) {
        const auto parts = entry.elements();
        if (parts.size() != 3) entry.fail("expected [left, right, {element: coefficient}]");
        auto idx = [&](const Node& x) {
            const std::string s = x.string();
            for (std::size_t i = 0; i < names.size(); ++i)
                if (names[i] == s) return i;
            x.fail("unknown basis element '" + s + "'");
        };
        const std::size_t i = idx(parts[0]), j = idx(parts[1]);
        products[i * names.size() + j] = parse_vector(parts[2], names);
    }
    FinDimAlgebra::Options opt;
    if (auto w = n.get("weights")) {
        std::vector<int> weights;
        for (const auto& x : w->elements()) weights.push_back(static_cast<int>(x.integer(-64, 64)));
        opt.weights = weights;
    }
    n.finish();
    return at_path(n.path(), [&] { return FinDimAlgebra(names, unit, products, opt); });
}

inline CoverSpec parse_cover(const Node& n) {
    const Rational lambda = n.get("lambda") ? n.at("lambda").rational() : Rational(1);
    if (lambda <= 0) n.at("lambda").fail("circumference must be positive");
    if (n.has("standard")) {
        const std::size_t k = n.at("standard").count(4, 64);
        n.finish();
        return standard_circle_cover(k, lambda);
    }
    std::vector<Arc> arcs;
    for (const auto& a : n.at("arcs").elements()) {
        const auto parts = a.elements();
        if (parts.size() != 2) a.fail("expected [start, length]");
        const Rational len = parts[1].rational();
        if (len <= 0 || len >= lambda) parts[1].fail("arc length must lie strictly between 0 and lambda");
        arcs.push_back(Arc::arc(parts[0].rational(), len));
    }
    n.finish();
    return at_path(n.path(), [&] { return CoverSpec::circle(lambda, arcs); });
}

inline std::size_t basis_index(const BDPresentation<Rational>& p, const Node& x) {
    const std::string s = x.string();
    if (auto i = p.index_of(s)) return *i;
    x.fail("unknown basis element '" + s + "'");
}

inline BDPresentation<Rational> parse_presentation(const Node& n) {
    BDPresentation<Rational> p;
    p.zero = Rational(0);
    for (const auto& b : n.at("basis").elements()) {
        BDBasisElement e{b.at("name").string(), static_cast<int>(b.at("degree").integer(-64, 64)), std::nullopt};
        if (b.has("weight")) e.weight = static_cast<int>(b.at("weight").integer(-64, 64));
        b.finish();
        if (p.index_of(e.name)) b.fail("duplicate basis name '" + e.name + "'");
        p.basis.push_back(e);
    }
    if (p.basis.empty()) n.fail("basis must be nonempty");
    if (p.basis.size() > 400) n.fail("at most 400 basis elements");
    const std::size_t dim = p.size();
    p.unit = basis_index(p, n.at("unit"));

    auto table = [&](const std::string& key, std::vector<std::optional<Terms<Rational>>>& out) {
        std::vector<std::map<std::size_t, Rational>> acc(dim * dim);
        if (auto t = n.get(key))
            for (const auto& entry : t->elements()) {
                const auto parts = entry.elements();
                if (parts.size() != 4) entry.fail("expected [left, right, result, coefficient]");
                const std::size_t i = basis_index(p, parts[0]), j = basis_index(p, parts[1]);
                acc[i * dim + j][basis_index(p, parts[2])] += parts[3].rational();
            }
        for (const auto& a : acc) out.emplace_back(::wfh::detail::finish(a));
    };
    table("product", p.product);
    table("bracket", p.bracket);

    std::vector<std::map<std::size_t, HbarPoly<Rational>>> dacc(dim);
    if (auto t = n.get("differential"))
        for (const auto& entry : t->elements()) {
            const auto parts = entry.elements();
            if (parts.size() != 4) entry.fail("expected [source, target, hbar_power, coefficient]");
            const std::size_t i = basis_index(p, parts[0]), k = basis_index(p, parts[1]);
            const std::size_t power = parts[2].count(0, HbarPoly<Rational>::default_max_degree);
            ::wfh::detail::add_term(dacc[i], k, HbarPoly<Rational>::monomial(parts[3].rational(), power));
        }
    for (const auto& a : dacc) p.differential.emplace_back(::wfh::detail::finish(a));
    if (auto w = n.get("outside_window")) {
        auto pairs = [&](const std::string& key, std::vector<std::optional<Terms<Rational>>>& table) {
            if (auto t = w->get(key))
                for (const auto& entry : t->elements()) {
                    const auto parts = entry.elements();
                    if (parts.size() != 2) entry.fail("expected [left, right]");
                    auto& slot = table[basis_index(p, parts[0]) * dim + basis_index(p, parts[1])];
                    if (slot && !slot->empty()) entry.fail("entry is both listed and outside the window");
                    slot = std::nullopt;
                }
        };
        pairs("product", p.product);
        pairs("bracket", p.bracket);
        if (auto t = w->get("differential"))
            for (const auto& entry : t->elements()) {
                auto& slot = p.differential[basis_index(p, entry)];
                if (slot && !slot->empty()) entry.fail("entry is both listed and outside the window");
                slot = std::nullopt;
            }
        w->finish();
    }
    n.finish();
    at_path(n.path(), [&] {
        p.validate_shape();
        return 0;
    });
    return p;
}

inline BDTask parse_bd(const Node& n) {
    BDTask t;
    const bool has_model = n.has("model"), has_presentation = n.has("presentation");
    if (has_model == has_presentation) n.fail("exactly one of 'model' and 'presentation' is required");
    if (has_model) {
        const Node m = n.at("model");
        const std::size_t dirs = m.at("n").count(1, 3);
        const std::size_t bound = m.at("bound").count(2, 8);
        const std::size_t theta = m.get("dolbeault") ? m.at("dolbeault").count(0, 2) : 0;
        m.finish();
        t.model = odd_cotangent_model(dirs, bound, theta);
        t.presentation = t.model->presentation;
        t.source = "odd cotangent model n=" + std::to_string(dirs) + " bound=" + std::to_string(bound) +
                   " dolbeault=" + std::to_string(theta);
    } else {
        t.presentation = parse_presentation(n.at("presentation"));
        t.source = "presentation";
    }
    if (auto tw = n.get("twist")) {
        if (!t.model) tw->fail("twist needs a model");
        const FormAlgebra& fa = t.model->forms;
        Form<Rational> alpha;
        for (const auto& [mono, coeff] : tw->items()) {
            const FormMonomial m = at_path(coeff.path(), [&] { return fa.parse(mono); });
            if (!fa.is_base(m) || fa.degree(m) != 0 || fa.form_degree(m) == 0)
                coeff.fail("twist terms must be base forms of degree 0 and positive form degree");
            alpha[m] += coeff.rational();
        }
        t.twist = at_path(tw->path(), [&] { return t.model->terms(alpha); });
    }
    if (auto mu = n.get("mutate")) {
        const auto parts = mu->elements();
        if (parts.size() != 2) mu->fail("expected [left, right]");
        const std::size_t i = basis_index(t.presentation, parts[0]), j = basis_index(t.presentation, parts[1]);
        const auto& e = t.presentation.br(i, j);
        if (!e || e->empty()) mu->fail("the bracket entry is zero or outside the window");
        t.mutate = std::make_pair(i, j);
    }
    if (auto s = n.get("specialize_hbar")) t.specialize = static_cast<int>(s->integer(0, 1));
    if (auto s = n.get("triples")) t.triples = s->boolean();
    if (auto s = n.get("export")) t.export_presentation = s->boolean();
    n.finish();
    return t;
}

inline ReesMonomial parse_rees_monomial(const Node& n) {
    const auto parts = n.elements();
    if (parts.size() != 3) n.fail("expected [x_power, p_power, hbar_power]");
    return {static_cast<unsigned>(parts[0].count(0, 64)), static_cast<unsigned>(parts[1].count(0, 64)),
            static_cast<unsigned>(parts[2].count(0, 64))};
}

}  // namespace detail

inline Options parse_options(const std::optional<Node>& n, const Flags& flags) {
    Options o;
    if (n) {
        if (auto q = n->get("q_order")) o.q_order = q->count(0, 64);
        if (auto c = n->get("convention")) o.convention = parse_convention(c->string(), c->path());
        if (auto b = n->get("budget")) o.budget = b->count(1, 5000000);
        n->finish();
    }
    if (flags.q_order) {
        if (*flags.q_order > 64) throw SchemaError("--q-order", "must be at most 64");
        o.q_order = *flags.q_order;
    }
    if (flags.convention) o.convention = parse_convention(*flags.convention, "--convention");
    return o;
}

/// Schema validation: builds every typed input (algebras and rings are
/// checked for their axioms here) without running the computation.
inline Manifest parse_manifest(const Json& j, const Flags& flags = {}) {
    const Node root(j, "");
    root.require_object();
    Manifest m{root.at("version").string(), root.at("task").choice(task_names()), {}, EisensteinTask{}};
    if (m.version != manifest_version)
        throw SchemaError("version", "unsupported manifest version '" + m.version + "', expected '" + manifest_version + "'");
    m.options = parse_options(root.get("options"), flags);
    const Node p = root.at("payload");
    p.require_object();
    if (m.task == "eisenstein") {
        EisensteinTask t;
        t.k = static_cast<int>(p.at("k").integer(1, 12));
        if (auto l = p.get("lattice")) {
            const auto tau = l->at("tau").elements();
            if (tau.size() != 2) l->at("tau").fail("expected [re, im]");
            const double re = tau[0].number(), im = tau[1].number();
            if (!(im > 0)) tau[1].fail("tau must lie in the upper half plane");
            t.lattice = EisensteinTask::Lattice{{re, im}, static_cast<int>(l->at("cutoff").integer(2, 2000))};
            l->finish();
        }
        m.payload = t;
    } else if (m.task == "classes" || m.task == "genus") {
        ManifoldSpec spec = detail::parse_manifold(p.at("manifold"));
        if (m.task == "classes") {
            std::vector<std::string> names;
            for (const auto& c : p.at("classes").elements())
                names.push_back(c.choice({"chern", "chern_character", "todd", "a_hat", "half_first_chern_exp", "witten"}));
            const bool limit = p.get("witten_limit") ? p.at("witten_limit").boolean() : false;
            m.payload = ClassesTask{spec, names, limit};
        } else {
            std::vector<std::string> names;
            for (const auto& c : p.at("genera").elements()) names.push_back(c.choice({"todd", "a_hat", "witten"}));
            m.payload = GenusTask{spec, names};
        }
    } else if (m.task == "hochschild") {
        HochschildTask t{detail::parse_algebra(p.at("algebra"))};
        if (auto d = p.get("max_degree")) t.max_degree = static_cast<int>(d->integer(0, 6));
        if (auto d = p.get("normalized")) t.normalized = d->boolean();
        if (t.algebra.is_dg()) p.at("algebra").fail("dg algebras are not supported by the bar complex");
        m.payload = t;
    } else if (m.task == "fh-circle") {
        CircleTask t{detail::parse_algebra(p.at("algebra")), detail::parse_cover(p.at("cover")), 1, 8, {}};
        if (auto d = p.get("max_degree")) t.max_degree = static_cast<int>(d->integer(0, 2));
        if (auto d = p.get("max_arcs")) t.max_arcs = d->count(1, 12);
        if (auto d = p.get("dilations"))
            for (const auto& x : d->elements()) {
                t.dilations.push_back(x.rational());
                if (t.dilations.back() <= 0) x.fail("dilation factor must be positive");
            }
        if (t.dilations.empty()) t.dilations.push_back(Rational(1));
        if (t.algebra.is_dg()) p.at("algebra").fail("dg algebras are not supported");
        m.payload = t;
    } else if (m.task == "bd-check") {
        m.payload = detail::parse_bd(p);
    } else {
        ReesTask t;
        t.max_x = static_cast<unsigned>(p.at("max_x").count(1, 16));
        t.max_p = static_cast<unsigned>(p.at("max_p").count(1, 16));
        t.max_hbar = static_cast<unsigned>(p.at("max_hbar").count(1, 16));
        if (auto pr = p.get("products"))
            for (const auto& e : pr->elements()) {
                const auto parts = e.elements();
                if (parts.size() != 2) e.fail("expected [left, right]");
                t.products.emplace_back(detail::parse_rees_monomial(parts[0]), detail::parse_rees_monomial(parts[1]));
            }
        m.payload = t;
    }
    p.finish();
    root.finish();
    return m;
}

}  // namespace wfh::cli
