#pragma once

#include <bitset>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wfh/factalg/arrangement.hpp"

namespace wfh {

/// Finite cover of a target open by arcs. The union of the arcs must equal
/// the target, a disjoint union of arcs (intervals on the line; by default
/// the full circle on a circle).
class CoverSpec {
public:
    CoverSpec(Ambient ambient, Arc target, std::vector<Arc> arcs)
        : CoverSpec(std::move(ambient), std::vector<Arc>{std::move(target)}, std::move(arcs)) {}

    CoverSpec(Ambient ambient, std::vector<Arc> targets, std::vector<Arc> arcs)
        : ambient_(std::move(ambient)), arcs_(std::move(arcs)), arrangement_(Arrangement(ambient_, {})) {
        if (arcs_.empty()) throw DomainError("a cover needs at least one arc");
        if (targets.empty()) throw DomainError("a cover needs a nonempty target");
        for (auto& t : targets) targets_.push_back(normalize(ambient_, t));
        for (auto& a : arcs_) a = normalize(ambient_, a);
        std::vector<Arc> all = arcs_;
        all.insert(all.end(), targets_.begin(), targets_.end());
        arrangement_ = Arrangement::of_arcs(ambient_, all);
        target_atoms_ = arrangement_.empty_set();
        for (std::size_t t = 0; t < targets_.size(); ++t) {
            const OpenSet s = arrangement_.atoms(targets_[t]);
            if (!disjoint(s, target_atoms_)) throw DomainError("target arcs must be pairwise disjoint");
            target_atoms_ = unite(target_atoms_, s);
        }
        OpenSet uni = arrangement_.empty_set();
        for (std::size_t i = 0; i < arcs_.size(); ++i) {
            atoms_.push_back(arrangement_.atoms(arcs_[i]));
            if (!is_subset(atoms_.back(), target_atoms_))
                throw DomainError("cover element " + std::to_string(i + 1) + " " + arcs_[i].text() +
                                  " is not contained in the target");
            uni = unite(uni, atoms_.back());
        }
        if (uni != target_atoms_) {
            for (std::size_t k = 0; k < uni.size(); ++k)
                if (target_atoms_[k] && !uni[k])
                    throw DomainError("cover misses the point " + to_string(arrangement_.representative(k)) +
                                      " of the target");
        }
    }

    /// Cover of the whole circle of circumference lambda.
    static CoverSpec circle(Rational lambda, std::vector<Arc> arcs) {
        return CoverSpec(Ambient::circle(std::move(lambda)), Arc::full_circle(), std::move(arcs));
    }
    /// Cover of the interval (a, b) of the line.
    static CoverSpec interval(Rational a, Rational b, std::vector<Arc> arcs) {
        return CoverSpec(Ambient::line(), Arc::interval(std::move(a), std::move(b)), std::move(arcs));
    }

    const Ambient& ambient() const { return ambient_; }
    const std::vector<Arc>& targets() const { return targets_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::size_t size() const { return arcs_.size(); }
    const Arrangement& arrangement() const { return arrangement_; }
    const OpenSet& atoms(std::size_t i) const { return atoms_.at(i); }
    const OpenSet& target_atoms() const { return target_atoms_; }

    /// Same combinatorial cover on the circle rescaled by `factor`.
    CoverSpec dilated(const Rational& factor) const {
        if (factor <= 0) throw DomainError("dilation factor must be positive");
        auto scale = [&](const Arc& a) { return a.full ? a : Arc{a.start * factor, a.length * factor, false}; };
        std::vector<Arc> arcs;
        for (const auto& a : arcs_) arcs.push_back(scale(a));
        std::vector<Arc> targets;
        for (const auto& t : targets_) targets.push_back(scale(t));
        Ambient amb = ambient_;
        if (amb.is_circle()) amb.circumference *= factor;
        return CoverSpec(amb, std::move(targets), std::move(arcs));
    }

private:
    Ambient ambient_;
    std::vector<Arc> targets_;
    std::vector<Arc> arcs_;
    Arrangement arrangement_;
    std::vector<OpenSet> atoms_;
    OpenSet target_atoms_;
};

struct FactorizingVerdict {
    bool factorizing = false;
    /// A finite point set not contained in any union of pairwise disjoint
    /// cover elements (empty when factorizing).
    std::vector<Rational> witness;
    /// When factorizing: indices of pairwise disjoint elements whose union is
    /// the target.
    std::vector<std::size_t> disjoint_subcover;
};

namespace detail {

/// Some pairwise disjoint subfamily covers `need`? Backtracking over the
/// first uncovered atom.
inline bool disjoint_cover_exists(const CoverSpec& c, const OpenSet& need, OpenSet used,
                                  std::vector<std::size_t>& chosen) {
    std::size_t first = need.size();
    for (std::size_t k = 0; k < need.size(); ++k)
        if (need[k] && !used[k]) {
            first = k;
            break;
        }
    if (first == need.size()) return true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const OpenSet& a = c.atoms(i);
        if (!a[first] || !disjoint(a, used)) continue;
        chosen.push_back(i);
        if (disjoint_cover_exists(c, need, unite(used, a), chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace detail

/// Decides the factorizing property: every finite point set lies in a union
/// of pairwise disjoint cover elements. Points in the same atom of the
/// endpoint arrangement are interchangeable, so it suffices to test sets of
/// atom representatives; the smallest violating set is returned.
inline FactorizingVerdict is_factorizing(const CoverSpec& c) {
    const Arrangement& arr = c.arrangement();
    std::vector<std::size_t> region;
    for (std::size_t k = 0; k < arr.atom_count(); ++k)
        if (c.target_atoms()[k]) region.push_back(k);

    FactorizingVerdict v;
    std::vector<std::size_t> chosen;
    if (detail::disjoint_cover_exists(c, c.target_atoms(), arr.empty_set(), chosen)) {
        v.factorizing = true;
        v.disjoint_subcover = chosen;
        return v;
    }
    // Smallest failing subset of representatives.
    for (std::size_t size = 1; size <= region.size(); ++size) {
        std::vector<std::size_t> pick(size);
        bool found = false;
        auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
            if (found) return;
            if (pos == size) {
                OpenSet need = arr.empty_set();
                for (auto k : pick) need[k] = true;
                std::vector<std::size_t> tmp;
                if (!detail::disjoint_cover_exists(c, need, arr.empty_set(), tmp)) found = true;
                return;
            }
            for (std::size_t r = from; r < region.size() && !found; ++r) {
                pick[pos] = region[r];
                self(self, pos + 1, r + 1);
            }
        };
        rec(rec, 0, 0);
        if (found) {
            for (auto k : pick) v.witness.push_back(arr.representative(k));
            return v;
        }
    }
    return v;  // unreachable: the full region set fails
}

/// Nonempty families of pairwise disjoint cover indices, ordered by size and
/// then lexicographically.
inline std::vector<std::vector<std::size_t>> disjoint_families(const CoverSpec& c) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t from, const OpenSet& used) -> void {
        for (std::size_t i = from; i < c.size(); ++i) {
            if (!disjoint(c.atoms(i), used)) continue;
            cur.push_back(i);
            out.push_back(cur);
            self(self, i + 1, unite(used, c.atoms(i)));
            cur.pop_back();
        }
    };
    rec(rec, 0, c.arrangement().empty_set());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

namespace detail {

using AtomBits = std::bitset<256>;

inline AtomBits to_bits(const OpenSet& s) {
    if (s.size() > 256) throw DomainError("arrangement too fine for the point-set search (over 256 atoms)");
    AtomBits b;
    for (std::size_t i = 0; i < s.size(); ++i) b[i] = s[i];
    return b;
}

/// Unions of all nonempty pairwise disjoint families, keeping only maximal ones.
inline std::vector<AtomBits> maximal_family_unions(const CoverSpec& c) {
    std::vector<AtomBits> sets;
    for (std::size_t i = 0; i < c.size(); ++i) sets.push_back(to_bits(c.atoms(i)));
    std::vector<AtomBits> unions;
    auto rec = [&](auto&& self, std::size_t from, const AtomBits& used, bool any) -> void {
        bool extended = false;
        for (std::size_t i = from; i < sets.size(); ++i) {
            if ((sets[i] & used).any()) continue;
            extended = true;
            self(self, i + 1, used | sets[i], true);
        }
        if (any && !extended) unions.push_back(used);
    };
    rec(rec, 0, AtomBits(), false);
    std::vector<AtomBits> maximal;
    for (std::size_t i = 0; i < unions.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < unions.size() && !dominated; ++j)
            if (i != j && (unions[i] & ~unions[j]).none() && (unions[i] != unions[j] || j < i)) dominated = true;
        if (!dominated) maximal.push_back(unions[i]);
    }
    return maximal;
}

}  // namespace detail

/// Number of sets of at most max_points atom representatives that no union of
/// pairwise disjoint cover elements contains. Zero means every point set of
/// that size is covered as the factorizing property demands.
inline std::size_t small_set_failures(const CoverSpec& c, std::size_t max_points) {
    const auto unions = detail::maximal_family_unions(c);
    std::vector<std::size_t> region;
    for (std::size_t k = 0; k < c.target_atoms().size(); ++k)
        if (c.target_atoms()[k]) region.push_back(k);
    std::size_t failures = 0;
    detail::AtomBits s;
    auto rec = [&](auto&& self, std::size_t from, std::size_t size) -> void {
        for (std::size_t r = from; r < region.size(); ++r) {
            s[region[r]] = true;
            bool ok = false;
            for (const auto& u : unions)
                if ((s & ~u).none()) {
                    ok = true;
                    break;
                }
            if (!ok) ++failures;
            // Supersets of a failing set fail too but are still counted.
            if (size + 1 < max_points) self(self, r + 1, size + 1);
            s[region[r]] = false;
        }
    };
    if (max_points > 0) rec(rec, 0, 0);
    return failures;
}

/// Greedy refinement of a circle cover: repeatedly adjoin the proper arc,
/// with endpoints on the initial arrangement's points and gap midpoints,
/// that leaves the fewest failing point sets of size <= max_points. Stops
/// once none fail or the cover has max_arcs arcs. Returns the covers visited
/// after the initial one.
inline std::vector<CoverSpec> refinement_path(const CoverSpec& start, std::size_t max_arcs, std::size_t max_points) {
    const Ambient& amb = start.ambient();
    if (!amb.is_circle()) throw DomainError("refinement_path: only circle covers are refined");
    std::vector<Rational> grid;
    const Arrangement& arr = start.arrangement();
    for (std::size_t i = 0; i < arr.atom_count(); ++i) grid.push_back(arr.representative(i));
    std::sort(grid.begin(), grid.end());
    std::vector<Arc> candidates;
    for (const auto& s : grid)
        for (const auto& e : grid) {
            Rational len = circle_mod(e - s, amb.circumference);
            if (len == 0) continue;
            candidates.push_back(Arc::arc(s, len));
        }
    std::sort(candidates.begin(), candidates.end(), [](const Arc& a, const Arc& b) {
        return a.start < b.start || (a.start == b.start && a.length < b.length);
    });

    std::vector<CoverSpec> path;
    std::vector<Arc> arcs = start.arcs();
    std::size_t current = small_set_failures(start, max_points);
    while (current > 0 && arcs.size() < max_arcs) {
        std::optional<std::size_t> best;
        std::size_t best_failures = current;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (std::find(arcs.begin(), arcs.end(), candidates[i]) != arcs.end()) continue;
            std::vector<Arc> trial = arcs;
            trial.push_back(candidates[i]);
            const std::size_t f = small_set_failures(CoverSpec(amb, start.targets(), trial), max_points);
            if (f < best_failures) {
                best_failures = f;
                best = i;
            }
        }
        if (!best) break;
        arcs.push_back(candidates[*best]);
        path.emplace_back(amb, start.targets(), arcs);
        current = best_failures;
    }
    return path;
}

/// k arcs on S^1_lambda: arc j starts at j*lambda/k with length 3*lambda/(2k),
/// so only cyclically consecutive arcs meet (k >= 4).
inline CoverSpec standard_circle_cover(std::size_t k, const Rational& lambda) {
    if (k < 4) throw DomainError("standard_circle_cover needs at least 4 arcs");
    std::vector<Arc> arcs;
    for (std::size_t j = 0; j < k; ++j)
        arcs.push_back(Arc::arc(lambda * Rational(j, k), lambda * Rational(3, 2 * k)));
    return CoverSpec::circle(lambda, std::move(arcs));
}

}  // namespace wfh
