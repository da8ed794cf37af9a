#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "wfh/factalg/assignment.hpp"
#include "wfh/factalg/cover.hpp"
#include "wfh/homalg/chain_complex.hpp"

namespace wfh {

/// Which tuples of disjoint families index the Cech summands.
struct CechConvention {
    enum class Kind { Distinct, FullTruncated };
    Kind kind = Kind::Distinct;
    std::size_t length = 0;  // FullTruncated: longest tuple

    static CechConvention distinct() { return {}; }
    static CechConvention full(std::size_t length) {
        if (length < 1) throw DomainError("FullTruncated needs length >= 1");
        return {Kind::FullTruncated, length};
    }
    std::string text() const {
        return kind == Kind::Distinct ? "distinct" : "full:" + std::to_string(length);
    }
};

enum class CechPolicy {
    /// Reject covers that are not factorizing.
    RequireFactorizing,
    /// Build the complex for any finite cover (a finite model, e.g. of circle
    /// covers by proper arcs, none of which is factorizing).
    FiniteModel,
};

struct CechOptions {
    CechConvention convention = CechConvention::distinct();
    CechPolicy policy = CechPolicy::RequireFactorizing;
    /// Build chains through degree max_degree + 1 (so homology through
    /// max_degree is exact); negative means every degree.
    int max_degree = -1;
    std::size_t budget = default_size_budget;
};

/// Cech complex of the prefactorization algebra F_A over the cover. Summands
/// in degree k - 1 are indexed by k-tuples of nonempty pairwise disjoint
/// families (strictly increasing for Distinct; arbitrary with repeats for
/// FullTruncated) and carry F_A of the intersection of the families' unions;
/// empty intersections carry Q. d = sum_i (-1)^i p_i where p_i drops entry i.
inline ChainComplex cech_complex(const CoverSpec& cover, const FinDimAlgebra& a, const CechOptions& opt = {}) {
    if (opt.policy == CechPolicy::RequireFactorizing) {
        const auto v = is_factorizing(cover);
        if (!v.factorizing) {
            std::string pts;
            for (const auto& p : v.witness) pts += (pts.empty() ? "" : ", ") + to_string(p);
            throw PreconditionError("cech_complex: cover is not factorizing; no pairwise disjoint cover elements "
                                    "contain the points {" + pts + "}");
        }
    }
    const Arrangement& arr = cover.arrangement();
    const auto families = disjoint_families(cover);
    std::vector<OpenSet> family_sets;
    for (const auto& f : families) {
        OpenSet s = arr.empty_set();
        for (auto i : f) s = unite(s, cover.atoms(i));
        family_sets.push_back(std::move(s));
    }

    std::size_t max_len = opt.convention.kind == CechConvention::Kind::Distinct ? families.size()
                                                                               : opt.convention.length;
    if (opt.max_degree >= 0) max_len = std::min(max_len, static_cast<std::size_t>(opt.max_degree) + 2);

    using Tuple = std::vector<std::size_t>;
    struct Generator {
        Tuple tuple;
        OpenSet open;
        std::size_t offset;
        std::size_t dim;
    };
    std::vector<std::vector<Generator>> gens(max_len);
    std::vector<std::map<Tuple, std::size_t>> lookup(max_len);
    std::vector<std::size_t> dims(max_len, 0);
    std::size_t total = 0;

    for (std::size_t k = 1; k <= max_len; ++k) {
        Tuple t(k);
        auto rec = [&](auto&& self, std::size_t pos, std::size_t from, const OpenSet& open) -> void {
            if (pos == k) {
                const std::size_t d = assignment_dimension(a, arr.component_count(open), opt.budget);
                total += d;
                if (total > opt.budget)
                    throw SizeBudgetError("cech_complex: degree " + std::to_string(k - 1) + " reached dimension " +
                                              std::to_string(dims[k - 1] + d),
                                          total, opt.budget);
                lookup[k - 1][t] = gens[k - 1].size();
                gens[k - 1].push_back({t, open, dims[k - 1], d});
                dims[k - 1] += d;
                return;
            }
            const std::size_t start = opt.convention.kind == CechConvention::Kind::Distinct ? from : 0;
            for (std::size_t f = start; f < families.size(); ++f) {
                t[pos] = f;
                self(self, pos + 1, f + 1, pos == 0 ? family_sets[f] : intersect(open, family_sets[f]));
            }
        };
        rec(rec, 0, 0, arr.empty_set());
    }

    std::map<std::pair<OpenSet, OpenSet>, SparseMatrix> cache;
    std::vector<SparseMatrix> boundaries;
    for (std::size_t k = 2; k <= max_len; ++k) {
        std::vector<SparseAccumulator> cols(dims[k - 1]);
        for (const auto& g : gens[k - 1]) {
            for (std::size_t i = 0; i < k; ++i) {
                Tuple face = g.tuple;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                const Generator& h = gens[k - 2][lookup[k - 2].at(face)];
                auto key = std::make_pair(g.open, h.open);
                auto it = cache.find(key);
                if (it == cache.end()) it = cache.emplace(key, induced_map(arr, g.open, h.open, a, opt.budget)).first;
                const Rational sign(i % 2 == 0 ? 1 : -1);
                for (std::size_t c = 0; c < g.dim; ++c)
                    for (const auto& [r, x] : it->second.column(c)) cols[g.offset + c].add(h.offset + r, sign * x);
            }
        }
        SparseMatrix m(dims[k - 2], dims[k - 1]);
        for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c].take());
        boundaries.push_back(std::move(m));
    }
    if (max_len == 0) return ChainComplex(0, {0}, {});
    return ChainComplex(0, dims, std::move(boundaries));
}

/// dim coker( (+)_{(a,b)} F(a, b) -> (+)_c F(c) ) over all ordered pairs of
/// families: the right-exact H_0 computed without higher chains.
inline std::size_t right_exact_h0(const CoverSpec& cover, const FinDimAlgebra& a,
                                  CechPolicy policy = CechPolicy::RequireFactorizing) {
    CechOptions opt;
    opt.convention = CechConvention::full(2);
    opt.policy = policy;
    const ChainComplex c = cech_complex(cover, a, opt);
    return c.dim(0) - rank(c.boundary(1));
}

/// Cech complex of the grid sub-basis inside V: all intervals (i/g, j/g)
/// contained in one of the disjoint intervals of V. Empty V gives Q.
inline ChainComplex fact_extend(const FinDimAlgebra& a, std::size_t granularity, const std::vector<Arc>& v,
                                int max_degree = 1, std::size_t budget = default_size_budget) {
    if (granularity == 0) throw DomainError("fact_extend: granularity must be positive");
    if (v.empty()) return ChainComplex(0, {1}, {});
    const Rational g(static_cast<long>(granularity));
    std::vector<Arc> sub_basis;
    for (const auto& piece : v) {
        if (piece.full) throw DomainError("fact_extend: V must consist of intervals of the line");
        for (const Rational& e : {piece.start, piece.end()})
            if (denominator_of(e * g) != 1)
                throw DomainError("fact_extend: grid 1/" + std::to_string(granularity) +
                                  " is too coarse to cover V; endpoint " + to_string(e) + " is off the grid");
        const Integer lo = numerator_of(piece.start * g), hi = numerator_of(piece.end() * g);
        for (Integer i = lo; i < hi; ++i)
            for (Integer j = i + 1; j <= hi; ++j)
                sub_basis.push_back(Arc::interval(Rational(i) / g, Rational(j) / g));
    }
    CechOptions opt;
    opt.max_degree = max_degree;
    opt.budget = budget;
    return cech_complex(CoverSpec(Ambient::line(), v, std::move(sub_basis)), a, opt);
}

/// Homology dims in degrees 0..max_degree of the Cech model of F_A over a
/// circle cover by proper arcs.
inline std::vector<std::size_t> factorization_homology_circle(const FinDimAlgebra& a, const CoverSpec& cover,
                                                              int max_degree, CechOptions opt = {}) {
    if (!cover.ambient().is_circle()) throw DomainError("factorization_homology_circle: cover is not on a circle");
    for (const auto& arc : cover.arcs())
        if (arc.full) throw DomainError("factorization_homology_circle: cover elements must be proper arcs");
    opt.max_degree = max_degree;
    return homology_dims(cech_complex(cover, a, opt), 0, max_degree);
}

struct CircleComparison {
    std::vector<std::size_t> fh;
    std::vector<std::size_t> hh;
    bool matches = false;
    std::size_t arcs_used = 0;
    bool factorizing = false;
    /// One line per cover tried, in order.
    std::vector<std::string> log;
    std::vector<Arc> final_arcs;
};

/// Compares the Cech model over a circle cover with hh_dims in degrees
/// 0..max_degree. On a mismatch the cover is refined (refinement_path with
/// point sets of size max_degree + 2) up to max_arcs arcs; every cover tried
/// is logged.
inline CircleComparison compare_circle_with_hochschild(const FinDimAlgebra& a, const CoverSpec& cover, int max_degree,
                                                       std::size_t max_arcs = 8, CechOptions opt = {}) {
    CircleComparison out;
    out.hh = hh_dims(a, max_degree);
    opt.policy = CechPolicy::FiniteModel;
    const std::size_t points = static_cast<std::size_t>(max_degree) + 2;
    auto attempt = [&](const CoverSpec& c) {
        out.fh = factorization_homology_circle(a, c, max_degree, opt);
        out.arcs_used = c.size();
        out.final_arcs = c.arcs();
        out.factorizing = is_factorizing(c).factorizing;
        out.matches = out.fh == out.hh;
        std::string line = std::to_string(c.size()) + " arcs (" + std::to_string(small_set_failures(c, points)) +
                           " uncovered point sets of size <= " + std::to_string(points) + "): dims";
        for (auto d : out.fh) line += " " + std::to_string(d);
        line += out.matches ? ", matches HH" : ", differs from HH";
        out.log.push_back(line);
    };
    attempt(cover);
    if (out.matches) return out;
    for (const auto& c : refinement_path(cover, max_arcs, points)) {
        attempt(c);
        if (out.matches) break;
    }
    return out;
}

/// Text export: a header line "complex <lo> <hi>", a line "dims ...", then for
/// each boundary "boundary <n> <rows> <cols> <nnz>" followed by nnz lines
/// "<row> <col> <value>" with values written as integers or p/q.
inline void write_sparse_text(std::ostream& os, const ChainComplex& c) {
    os << "complex " << c.lo() << ' ' << c.hi() << '\n' << "dims";
    for (int n = c.lo(); n <= c.hi(); ++n) os << ' ' << c.dim(n);
    os << '\n';
    for (int n = c.lo() + 1; n <= c.hi(); ++n) {
        const SparseMatrix d = c.boundary(n);
        os << "boundary " << n << ' ' << d.rows() << ' ' << d.cols() << ' ' << d.nonzeros() << '\n';
        for (std::size_t j = 0; j < d.cols(); ++j)
            for (const auto& [i, x] : d.column(j)) os << i << ' ' << j << ' ' << to_string(x) << '\n';
    }
}

}  // namespace wfh
