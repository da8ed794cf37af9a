#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "wfh/errors.hpp"
#include "wfh/exact_core/rational.hpp"

namespace wfh {

/// The real line or the circle R / lambda Z.
struct Ambient {
    enum class Kind { Line, Circle };
    Kind kind = Kind::Line;
    Rational circumference = 0;

    static Ambient line() { return {}; }
    static Ambient circle(Rational lambda) {
        if (lambda <= 0) throw DomainError("circle circumference must be positive");
        return {Kind::Circle, std::move(lambda)};
    }
    bool is_circle() const { return kind == Kind::Circle; }
    friend bool operator==(const Ambient& a, const Ambient& b) {
        return a.kind == b.kind && a.circumference == b.circumference;
    }
};

/// Open interval (a, b) on the line, or the open arc from `start` of the
/// given length on a circle. The full circle is a distinguished value.
struct Arc {
    Rational start;
    Rational length;
    bool full = false;

    static Arc interval(Rational a, Rational b) {
        if (!(a < b)) throw DomainError("interval endpoints must satisfy a < b");
        return {a, b - a, false};
    }
    static Arc arc(Rational start, Rational length) {
        if (length <= 0) throw DomainError("arc length must be positive");
        return {std::move(start), std::move(length), false};
    }
    static Arc full_circle() { return {Rational(0), Rational(0), true}; }

    Rational end() const { return start + length; }
    friend bool operator==(const Arc& a, const Arc& b) {
        return a.full == b.full && (a.full || (a.start == b.start && a.length == b.length));
    }

    std::string text() const {
        if (full) return "S1";
        return "(" + to_string(start) + ", " + to_string(end()) + ")";
    }
};

inline Rational circle_mod(const Rational& x, const Rational& lambda) {
    Rational q = x / lambda;
    Integer f = numerator_of(q) / denominator_of(q);  // truncates toward zero
    if (Rational(f) > q) f -= 1;
    return x - Rational(f) * lambda;
}

/// Checks an arc against its ambient space and normalises circle starts
/// into [0, lambda).
inline Arc normalize(const Ambient& amb, Arc a) {
    if (!amb.is_circle()) {
        if (a.full) throw DomainError("the full circle is not an interval of the line");
        return a;
    }
    if (a.full) return a;
    if (a.length >= amb.circumference)
        throw DomainError("proper arcs must be shorter than the circumference; use the full circle");
    a.start = circle_mod(a.start, amb.circumference);
    return a;
}

/// A set of atoms of an arrangement (one flag per atom).
using OpenSet = std::vector<bool>;

/// Connected component of an open set: a run of consecutive atoms (cyclic on
/// the circle). `whole` marks the full circle.
struct Component {
    std::size_t first = 0;
    std::size_t count = 0;
    bool whole = false;
};

/// Regions cut out by a finite set of points: each point is an atom and so is
/// each open gap between consecutive points (plus the two rays on the line).
/// Atoms are ordered by position; on the circle the order is cyclic.
class Arrangement {
public:
    Arrangement(Ambient ambient, std::vector<Rational> points) : ambient_(std::move(ambient)) {
        if (ambient_.is_circle()) {
            for (auto& p : points) p = circle_mod(p, ambient_.circumference);
            points.push_back(Rational(0));
        }
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        if (points.empty()) points.push_back(Rational(0));
        points_ = std::move(points);
    }

    /// Arrangement of all endpoints of the given arcs.
    static Arrangement of_arcs(const Ambient& ambient, const std::vector<Arc>& arcs) {
        std::vector<Rational> pts;
        for (const auto& a : arcs) {
            if (a.full) continue;
            pts.push_back(a.start);
            pts.push_back(a.end());
        }
        return Arrangement(ambient, std::move(pts));
    }

    const Ambient& ambient() const { return ambient_; }
    const std::vector<Rational>& points() const { return points_; }

    /// Line: ray, p0, gap, p1, ..., p_{N-1}, ray.  Circle: p0, gap, ..., p_{N-1}, gap.
    std::size_t atom_count() const {
        return ambient_.is_circle() ? 2 * points_.size() : 2 * points_.size() + 1;
    }
    bool is_point_atom(std::size_t i) const { return ambient_.is_circle() ? i % 2 == 0 : i % 2 == 1; }

    /// A point inside atom i.
    Rational representative(std::size_t i) const {
        const std::size_t n = points_.size();
        if (ambient_.is_circle()) {
            const std::size_t k = i / 2;
            if (i % 2 == 0) return points_[k];
            const Rational next = k + 1 < n ? points_[k + 1] : points_[0] + ambient_.circumference;
            return circle_mod((points_[k] + next) / 2, ambient_.circumference);
        }
        if (i == 0) return points_.front() - 1;
        if (i == 2 * n) return points_.back() + 1;
        if (i % 2 == 1) return points_[i / 2];
        return (points_[i / 2 - 1] + points_[i / 2]) / 2;
    }

    bool contains_point(const Arc& a, const Rational& x) const {
        if (a.full) return true;
        if (!ambient_.is_circle()) return a.start < x && x < a.end();
        const Rational offset = circle_mod(x - a.start, ambient_.circumference);
        return offset > 0 && offset < a.length;
    }

    /// Atoms of an arc. Every endpoint of the arc must be a point of the
    /// arrangement.
    OpenSet atoms(const Arc& a) const {
        if (!a.full) {
            for (const Rational& e : {a.start, a.end()}) {
                const Rational p = ambient_.is_circle() ? circle_mod(e, ambient_.circumference) : e;
                if (!std::binary_search(points_.begin(), points_.end(), p))
                    throw DomainError("arc endpoint " + to_string(e) + " is not in the arrangement");
            }
        }
        OpenSet s(atom_count());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = contains_point(a, representative(i));
        return s;
    }

    OpenSet empty_set() const { return OpenSet(atom_count(), false); }

    /// Components in canonical order (by first atom; on the circle a run
    /// wrapping past the last atom starts at its true beginning).
    std::vector<Component> components(const OpenSet& s) const {
        const std::size_t n = s.size();
        std::vector<Component> out;
        if (std::all_of(s.begin(), s.end(), [](bool b) { return b; }) && ambient_.is_circle()) {
            out.push_back({0, n, true});
            return out;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!s[i]) continue;
            const std::size_t prev = i == 0 ? n - 1 : i - 1;
            const bool starts_here = ambient_.is_circle() ? !s[prev] : (i == 0 || !s[i - 1]);
            if (!starts_here) continue;
            std::size_t len = 0;
            while (len < n && s[(i + len) % n] && (ambient_.is_circle() || i + len < n)) ++len;
            out.push_back({i, len, false});
        }
        std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) { return a.first < b.first; });
        return out;
    }

    std::size_t component_count(const OpenSet& s) const { return components(s).size(); }

    /// Position of atom i along component c (0 for its first atom).
    std::size_t offset_in(const Component& c, std::size_t atom) const {
        const std::size_t n = atom_count();
        return (atom + n - c.first) % n;
    }
    bool component_contains(const Component& c, std::size_t atom) const {
        if (c.whole) return true;
        return offset_in(c, atom) < c.count;
    }

private:
    Ambient ambient_;
    std::vector<Rational> points_;
};

inline OpenSet intersect(const OpenSet& a, const OpenSet& b) {
    OpenSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
    return r;
}
inline OpenSet unite(const OpenSet& a, const OpenSet& b) {
    OpenSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
    return r;
}
inline bool is_subset(const OpenSet& a, const OpenSet& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}
inline bool is_empty(const OpenSet& a) { return std::none_of(a.begin(), a.end(), [](bool b) { return b; }); }
inline bool disjoint(const OpenSet& a, const OpenSet& b) { return is_empty(intersect(a, b)); }

}  // namespace wfh
