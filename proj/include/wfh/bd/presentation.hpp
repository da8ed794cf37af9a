#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wfh/bd/hbar.hpp"
#include "wfh/errors.hpp"

namespace wfh {

/// Sparse linear combination of basis elements.
template <class S>
using Terms = std::vector<std::pair<std::size_t, S>>;

struct BDBasisElement {
    std::string name;
    int degree = 0;
    std::optional<int> weight;
};

/// A graded algebra over K[hbar] on a finite basis, given by structure
/// constants. Table entries that are nullopt lie outside the truncation
/// window and are excluded from every check. Product and bracket constants
/// are rational; the differential has coefficients in K[hbar].
///
/// Sign conventions (those of the bracket {a,b} = D'(ab) - D'(a)b -
/// (-1)^{|a|} a D'(b) for an odd second-order D'):
///   ab = (-1)^{|a||b|} ba,   {a,b} = (-1)^{|a||b|} {b,a},
///   {a,bc} = {a,b}c + (-1)^{(|a|+1)|b|} b{a,c},
///   {a,{b,c}} = (-1)^{|a|+1} {{a,b},c} + (-1)^{(|a|+1)(|b|+1)} {b,{a,c}},
///   D(ab) = D(a)b + (-1)^{|a|} a D(b) + hbar {a,b}.
template <class K>
struct BDPresentation {
    std::vector<BDBasisElement> basis;
    std::size_t unit = 0;
    std::vector<std::optional<Terms<Rational>>> product;  // index i * n + j
    std::vector<std::optional<Terms<Rational>>> bracket;
    std::vector<std::optional<Terms<HbarPoly<K>>>> differential;
    /// Set once hbar has been specialised to a number.
    std::optional<Rational> hbar_value;
    K zero{};

    std::size_t size() const { return basis.size(); }
    const std::optional<Terms<Rational>>& prod(std::size_t i, std::size_t j) const { return product[i * size() + j]; }
    const std::optional<Terms<Rational>>& br(std::size_t i, std::size_t j) const { return bracket[i * size() + j]; }
    bool has_weights() const {
        return !basis.empty() && std::all_of(basis.begin(), basis.end(), [](const auto& b) { return b.weight.has_value(); });
    }
    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].name == name) return i;
        return std::nullopt;
    }
    HbarPoly<K> hbar_zero() const { return HbarPoly<K>(zero); }

    /// Throws SchemaError when the tables do not fit the basis.
    void validate_shape() const {
        const std::size_t n = size();
        if (n == 0) throw SchemaError("basis", "presentation needs a nonempty basis");
        if (unit >= n) throw SchemaError("unit", "unit index out of range");
        if (product.size() != n * n) throw SchemaError("product", "table must have n*n entries");
        if (bracket.size() != n * n) throw SchemaError("bracket", "table must have n*n entries");
        if (differential.size() != n) throw SchemaError("differential", "table must have n entries");
        auto check = [&](const auto& table, const std::string& what) {
            for (const auto& e : table)
                if (e)
                    for (const auto& [k, c] : *e)
                        if (k >= n) throw SchemaError(what, "basis index " + std::to_string(k) + " out of range");
        };
        check(product, "product");
        check(bracket, "bracket");
        check(differential, "differential");
    }
};

namespace detail {

inline int sign_pow(long e) { return e % 2 == 0 ? 1 : -1; }

template <class S>
void add_term(std::map<std::size_t, S>& acc, std::size_t k, const S& v) {
    auto it = acc.find(k);
    if (it == acc.end()) acc.emplace(k, v);
    else it->second += v;
}

template <class S>
Terms<S> finish(const std::map<std::size_t, S>& acc) {
    Terms<S> out;
    for (const auto& [k, v] : acc)
        if (!ScalarTraits<S>::is_zero(v)) out.emplace_back(k, v);
    return out;
}

template <class K>
HbarPoly<K> hconst(const BDPresentation<K>& p, const Rational& r) {
    return HbarPoly<K>::constant(ScalarTraits<K>::one_like(p.zero) * r);
}

/// Rational-combination times basis element via the product table (left or
/// right factor fixed); nullopt when some product leaves the window.
template <class K, class S>
std::optional<Terms<S>> mul_terms(const BDPresentation<K>& p, const Terms<S>& a, const Terms<S>& b) {
    std::map<std::size_t, S> acc;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) {
            const auto& e = p.prod(i, j);
            if (!e) return std::nullopt;
            for (const auto& [k, c] : *e) add_term(acc, k, S(x * y * c));
        }
    return finish(acc);
}

template <class K, class S>
std::optional<Terms<S>> bracket_terms(const BDPresentation<K>& p, const Terms<S>& a, const Terms<S>& b) {
    std::map<std::size_t, S> acc;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) {
            const auto& e = p.br(i, j);
            if (!e) return std::nullopt;
            for (const auto& [k, c] : *e) add_term(acc, k, S(x * y * c));
        }
    return finish(acc);
}

/// D applied to a combination with K[hbar] coefficients.
template <class K>
std::optional<Terms<HbarPoly<K>>> apply_d(const BDPresentation<K>& p, const Terms<HbarPoly<K>>& a) {
    std::map<std::size_t, HbarPoly<K>> acc;
    for (const auto& [i, x] : a) {
        const auto& e = p.differential[i];
        if (!e) return std::nullopt;
        for (const auto& [k, c] : *e) add_term(acc, k, x * c);
    }
    return finish(acc);
}

/// Products with K[hbar] coefficients: (sum h_i e_i)(sum g_j e_j).
template <class K>
std::optional<Terms<HbarPoly<K>>> mul_h(const BDPresentation<K>& p, const Terms<HbarPoly<K>>& a,
                                        const Terms<HbarPoly<K>>& b) {
    std::map<std::size_t, HbarPoly<K>> acc;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) {
            const auto& e = p.prod(i, j);
            if (!e) return std::nullopt;
            const HbarPoly<K> xy = x * y;
            for (const auto& [k, c] : *e) add_term(acc, k, xy * c);
        }
    return finish(acc);
}

template <class K>
Terms<HbarPoly<K>> lift(const BDPresentation<K>& p, const Terms<Rational>& t) {
    Terms<HbarPoly<K>> out;
    for (const auto& [k, c] : t) out.emplace_back(k, hconst(p, c));
    return out;
}

template <class K>
Terms<HbarPoly<K>> basis_h(const BDPresentation<K>& p, std::size_t i) {
    return {{i, hconst(p, Rational(1))}};
}

template <class S>
Terms<S> combine(const std::vector<std::pair<Rational, const Terms<S>*>>& parts) {
    std::map<std::size_t, S> acc;
    for (const auto& [s, t] : parts)
        for (const auto& [k, v] : *t) add_term(acc, k, S(v * s));
    return finish(acc);
}

}  // namespace detail

template <class K, class S>
std::string terms_text(const BDPresentation<K>& p, const Terms<S>& t) {
    std::string out;
    for (const auto& [k, v] : t) {
        if (!out.empty()) out += " + ";
        out += "(" + ScalarTraits<S>::text(v) + ")*" + p.basis[k].name;
    }
    return out.empty() ? "0" : out;
}

struct BDViolation {
    std::string identity;
    std::vector<std::string> witness;
    std::string detail;
    friend bool operator<(const BDViolation& a, const BDViolation& b) {
        return std::tie(a.identity, a.witness, a.detail) < std::tie(b.identity, b.witness, b.detail);
    }
};

struct BDReport {
    std::vector<BDViolation> violations;
    /// Identity name -> number of instances checked.
    std::map<std::string, std::size_t> checked;
    /// Instances skipped because an operation left the window.
    std::size_t skipped = 0;
    bool passed() const { return violations.empty(); }
    std::size_t count(const std::string& identity) const {
        return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                      [&](const BDViolation& v) { return v.identity == identity; }));
    }
};

struct BDCheckOptions {
    /// Run the identities quantified over triples (associativity, bracket
    /// Leibniz, Jacobi).
    bool triples = true;
};

/// Verifies the (filtered) BD axioms on every basis pair and triple inside
/// the window.
template <class K>
BDReport check_bd(const BDPresentation<K>& p, const BDCheckOptions& opt = {}) {
    using H = HbarPoly<K>;
    using detail::sign_pow;
    p.validate_shape();
    const std::size_t n = p.size();
    BDReport rep;
    auto deg = [&](std::size_t i) { return static_cast<long>(p.basis[i].degree); };
    auto name = [&](std::size_t i) { return p.basis[i].name; };
    auto fail = [&](const std::string& id, std::vector<std::size_t> w, std::string detail) {
        std::vector<std::string> names;
        for (auto i : w) names.push_back(name(i));
        rep.violations.push_back({id, std::move(names), std::move(detail)});
    };
    auto tick = [&](const std::string& id) { ++rep.checked[id]; };
    auto basis_r = [](std::size_t i) { return Terms<Rational>{{i, Rational(1)}}; };

    // Unit and product.
    for (std::size_t i = 0; i < n; ++i) {
        tick("unit");
        const auto& l = p.prod(p.unit, i);
        const auto& r = p.prod(i, p.unit);
        if (!l || !r || *l != basis_r(i) || *r != basis_r(i))
            fail("unit", {i}, "1 * " + name(i) + " or " + name(i) + " * 1 differs from " + name(i));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& ij = p.prod(i, j);
            if (!ij) {
                ++rep.skipped;
                continue;
            }
            tick("product_degree");
            for (const auto& [k, c] : *ij)
                if (deg(k) != deg(i) + deg(j)) {
                    fail("product_degree", {i, j, k}, "term " + name(k) + " has the wrong degree");
                    break;
                }
            if (p.has_weights()) {
                tick("product_weight");
                for (const auto& [k, c] : *ij)
                    if (*p.basis[k].weight != *p.basis[i].weight + *p.basis[j].weight) {
                        fail("product_weight", {i, j, k}, "term " + name(k) + " breaks weight additivity");
                        break;
                    }
            }
            if (j < i) continue;
            const auto& ji = p.prod(j, i);
            if (!ji) continue;
            tick("graded_commutativity");
            const auto diff = detail::combine<Rational>({{Rational(1), &*ij}, {Rational(-sign_pow(deg(i) * deg(j))), &*ji}});
            if (!diff.empty()) fail("graded_commutativity", {i, j}, "difference " + terms_text(p, diff));
        }

    // Bracket.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& ij = p.br(i, j);
            if (!ij) {
                ++rep.skipped;
                continue;
            }
            tick("bracket_degree");
            for (const auto& [k, c] : *ij)
                if (deg(k) != deg(i) + deg(j) + 1) {
                    fail("bracket_degree", {i, j, k}, "term " + name(k) + " is not in degree |a|+|b|+1");
                    break;
                }
            if (p.has_weights() && !p.hbar_value) {
                tick("bracket_weight");
                for (const auto& [k, c] : *ij)
                    if (*p.basis[k].weight != *p.basis[i].weight + *p.basis[j].weight - 1) {
                        fail("bracket_weight", {i, j, k}, "term " + name(k) + " does not have weight w(a)+w(b)-1");
                        break;
                    }
            }
            const auto& ji = p.br(j, i);
            if (j < i || !ji) continue;
            tick("bracket_symmetry");
            const auto diff = detail::combine<Rational>({{Rational(1), &*ij}, {Rational(-sign_pow(deg(i) * deg(j))), &*ji}});
            if (!diff.empty()) fail("bracket_symmetry", {i, j}, "difference " + terms_text(p, diff));
        }

    if (opt.triples) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const auto& ab = p.prod(a, b);
                if (!ab) continue;
                for (std::size_t c = 0; c < n; ++c) {
                    const auto& bc = p.prod(b, c);
                    if (!bc) continue;
                    const auto l = detail::mul_terms(p, *ab, basis_r(c));
                    const auto r = detail::mul_terms(p, basis_r(a), *bc);
                    if (!l || !r) {
                        ++rep.skipped;
                        continue;
                    }
                    tick("associativity");
                    if (*l != *r) {
                        const auto diff = detail::combine<Rational>({{Rational(1), &*l}, {Rational(-1), &*r}});
                        fail("associativity", {a, b, c}, "difference " + terms_text(p, diff));
                    }
                }
            }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const auto& ab = p.br(a, b);
                if (!ab) continue;
                for (std::size_t c = 0; c < n; ++c) {
                    const auto& ac = p.br(a, c);
                    if (!ac) continue;
                    // {a, bc} = {a,b}c + (-1)^{(|a|+1)|b|} b{a,c}
                    const auto& bc = p.prod(b, c);
                    if (bc) {
                        const auto lhs = detail::bracket_terms(p, basis_r(a), *bc);
                        const auto t1 = detail::mul_terms(p, *ab, basis_r(c));
                        const auto t2 = detail::mul_terms(p, basis_r(b), *ac);
                        if (lhs && t1 && t2) {
                            tick("bracket_leibniz");
                            const auto diff = detail::combine<Rational>(
                                {{Rational(1), &*lhs}, {Rational(-1), &*t1}, {Rational(-sign_pow((deg(a) + 1) * deg(b))), &*t2}});
                            if (!diff.empty()) fail("bracket_leibniz", {a, b, c}, "difference " + terms_text(p, diff));
                        } else {
                            ++rep.skipped;
                        }
                    }
                    // {a,{b,c}} = (-1)^{|a|+1}{{a,b},c} + (-1)^{(|a|+1)(|b|+1)}{b,{a,c}}
                    const auto& bc2 = p.br(b, c);
                    if (!bc2) continue;
                    const auto lhs = detail::bracket_terms(p, basis_r(a), *bc2);
                    const auto t1 = detail::bracket_terms(p, *ab, basis_r(c));
                    const auto t2 = detail::bracket_terms(p, basis_r(b), *ac);
                    if (!lhs || !t1 || !t2) {
                        ++rep.skipped;
                        continue;
                    }
                    tick("jacobi");
                    const auto diff = detail::combine<Rational>({{Rational(1), &*lhs},
                                                                 {Rational(-sign_pow(deg(a) + 1)), &*t1},
                                                                 {Rational(-sign_pow((deg(a) + 1) * (deg(b) + 1))), &*t2}});
                    if (!diff.empty()) fail("jacobi", {a, b, c}, "difference " + terms_text(p, diff));
                }
            }
    }

    // Differential.
    for (std::size_t i = 0; i < n; ++i) {
        const auto& di = p.differential[i];
        if (!di) {
            ++rep.skipped;
            continue;
        }
        tick("differential_degree");
        for (const auto& [k, c] : *di)
            if (deg(k) != deg(i) + 1) {
                fail("differential_degree", {i, k}, "D(" + name(i) + ") has a term " + name(k) + " of the wrong degree");
                break;
            }
        if (p.has_weights() && !p.hbar_value) {
            tick("differential_weight");
            for (const auto& [k, c] : *di) {
                bool bad = false;
                for (std::size_t e = 0; e < c.size(); ++e)
                    if (!ScalarTraits<K>::is_zero(c[e]) &&
                        *p.basis[k].weight + static_cast<int>(e) != *p.basis[i].weight)
                        bad = true;
                if (bad) {
                    fail("differential_weight", {i, k}, "D(" + name(i) + ") has a term " + name(k) + " of nonzero weight");
                    break;
                }
            }
        }
        if (i == p.unit) {
            tick("differential_unit");
            if (!di->empty()) fail("differential_unit", {i}, "D(1) = " + terms_text(p, *di));
        }
        const auto dd = detail::apply_d(p, *di);
        if (!dd) {
            ++rep.skipped;
            continue;
        }
        tick("differential_square");
        if (!dd->empty()) fail("differential_square", {i}, "D(D(" + name(i) + ")) = " + terms_text(p, *dd));
    }

    // D(ab) = D(a)b + (-1)^{|a|} a D(b) + hbar {a,b}
    const H hbar = p.hbar_value ? detail::hconst(p, *p.hbar_value)
                                : H::monomial(ScalarTraits<K>::one_like(p.zero), 1);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const auto& ab = p.prod(a, b);
            const auto& br = p.br(a, b);
            if (!ab || !br || !p.differential[a] || !p.differential[b]) continue;
            const auto lhs = detail::apply_d(p, detail::lift(p, *ab));
            const auto t1 = detail::mul_h(p, *p.differential[a], detail::basis_h(p, b));
            const auto t2 = detail::mul_h(p, detail::basis_h(p, a), *p.differential[b]);
            if (!lhs || !t1 || !t2) {
                ++rep.skipped;
                continue;
            }
            tick("bd_leibniz");
            Terms<H> t3;
            for (const auto& [k, c] : *br) t3.emplace_back(k, hbar * c);
            const auto diff = detail::combine<H>(
                {{Rational(1), &*lhs}, {Rational(-1), &*t1}, {Rational(-sign_pow(deg(a))), &*t2}, {Rational(-1), &t3}});
            if (!diff.empty()) fail("bd_leibniz", {a, b}, "difference " + terms_text(p, diff));
        }
    std::sort(rep.violations.begin(), rep.violations.end());
    return rep;
}

/// Negates the bracket constants {e_i, e_j} (a one-entry mutation).
template <class K>
BDPresentation<K> flip_bracket_sign(BDPresentation<K> p, std::size_t i, std::size_t j) {
    auto& e = p.bracket.at(i * p.size() + j);
    if (!e || e->empty()) throw DomainError("flip_bracket_sign: the bracket entry is zero or outside the window");
    for (auto& [k, c] : *e) c = -c;
    return p;
}

/// First (i, j) in row-major order with a nonzero bracket.
template <class K>
std::optional<std::pair<std::size_t, std::size_t>> first_nonzero_bracket(const BDPresentation<K>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p.br(i, j) && !p.br(i, j)->empty()) return std::make_pair(i, j);
    return std::nullopt;
}

/// The same presentation over a coefficient ring K (rational constants c
/// become c * 1_K).
template <class K>
BDPresentation<K> promote(const BDPresentation<Rational>& p, const K& zero) {
    BDPresentation<K> out;
    out.basis = p.basis;
    out.unit = p.unit;
    out.product = p.product;
    out.bracket = p.bracket;
    out.hbar_value = p.hbar_value;
    out.zero = ScalarTraits<K>::zero_like(zero);
    for (const auto& e : p.differential) {
        if (!e) {
            out.differential.emplace_back(std::nullopt);
            continue;
        }
        Terms<HbarPoly<K>> t;
        for (const auto& [k, c] : *e) {
            HbarPoly<K> h(out.zero);
            for (std::size_t d = 0; d < c.size(); ++d)
                if (c[d] != 0) h += HbarPoly<K>::monomial(ScalarTraits<K>::one_like(out.zero) * c[d], d);
            t.emplace_back(k, h);
        }
        out.differential.emplace_back(std::move(t));
    }
    return out;
}

/// hbar set to 0 (a P0 algebra: D must be a derivation) or 1.
template <class K>
BDPresentation<K> specialize_hbar(const BDPresentation<K>& p, int value) {
    if (value != 0 && value != 1) throw DomainError("specialize_hbar: hbar may be set to 0 or 1");
    if (p.hbar_value) throw DomainError("specialize_hbar: hbar is already specialised");
    BDPresentation<K> out = p;
    out.hbar_value = Rational(value);
    for (auto& e : out.differential) {
        if (!e) continue;
        Terms<HbarPoly<K>> t;
        for (const auto& [k, c] : *e) {
            const K v = c.evaluate(Rational(value));
            if (!ScalarTraits<K>::is_zero(v)) t.emplace_back(k, HbarPoly<K>::constant(v));
        }
        e = std::move(t);
    }
    return out;
}

template <class K>
struct ModifiedPresentation {
    BDPresentation<K> presentation;
    /// Basis elements whose new differential could not be computed inside
    /// the window (their entries are nullopt).
    std::vector<std::string> window_violations;
};

/// D + hbar {alpha, -}.
template <class K>
ModifiedPresentation<K> twist_differential(const BDPresentation<K>& p, const Terms<K>& alpha) {
    ModifiedPresentation<K> out{p, {}};
    const std::size_t n = p.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (!p.differential[j]) continue;
        std::map<std::size_t, HbarPoly<K>> acc;
        for (const auto& [k, c] : *p.differential[j]) detail::add_term(acc, k, c);
        bool ok = true;
        for (const auto& [i, a] : alpha) {
            const auto& e = p.br(i, j);
            if (!e) {
                ok = false;
                break;
            }
            for (const auto& [k, c] : *e) detail::add_term(acc, k, HbarPoly<K>::monomial(a * c, 1));
        }
        if (!ok) {
            out.presentation.differential[j] = std::nullopt;
            out.window_violations.push_back(p.basis[j].name);
            continue;
        }
        out.presentation.differential[j] = detail::finish(acc);
    }
    return out;
}

template <class K>
struct Conjugation {
    BDPresentation<K> presentation;
    /// The chain map a -> T a (nullopt outside the window).
    std::vector<std::optional<Terms<K>>> multiplication;
    std::vector<std::string> window_violations;
};

/// T^{-1} o D o T for T with constant term 1; T^{-1} is the finite
/// geometric series in T - 1.
template <class K>
Conjugation<K> conjugate(const BDPresentation<K>& p, const Terms<K>& t) {
    const K one = ScalarTraits<K>::one_like(p.zero);
    Terms<K> nil;
    bool has_const = false;
    for (const auto& [k, c] : t) {
        if (k == p.unit) {
            has_const = true;
            if (!(c == one)) throw DomainError("conjugate: T must have constant term 1");
        } else {
            nil.emplace_back(k, c);
        }
    }
    if (!has_const) throw DomainError("conjugate: T is not invertible (constant term 0)");

    // T^{-1} = sum_k (-N)^k.
    std::map<std::size_t, K> inv_acc;
    inv_acc.emplace(p.unit, one);
    Terms<K> power{{p.unit, one}};
    Terms<K> minus_nil;
    for (const auto& [k, c] : nil) minus_nil.emplace_back(k, -c);
    for (std::size_t step = 0; !power.empty(); ++step) {
        if (step > p.size()) throw DomainError("conjugate: T - 1 is not nilpotent");
        const auto next = detail::mul_terms(p, power, minus_nil);
        if (!next) throw DomainError("conjugate: T^{-1} leaves the truncation window");
        power = *next;
        for (const auto& [k, c] : power) detail::add_term(inv_acc, k, c);
    }
    const Terms<K> inverse = detail::finish(inv_acc);
    Terms<HbarPoly<K>> inverse_h;
    for (const auto& [k, c] : inverse) inverse_h.emplace_back(k, HbarPoly<K>::constant(c));

    Conjugation<K> out{p, {}, {}};
    for (std::size_t a = 0; a < p.size(); ++a) {
        out.presentation.differential[a] = std::nullopt;
        const auto ta = detail::mul_terms(p, t, Terms<K>{{a, one}});
        if (!ta) {
            out.multiplication.emplace_back(std::nullopt);
            out.window_violations.push_back(p.basis[a].name);
            continue;
        }
        out.multiplication.emplace_back(*ta);
        Terms<HbarPoly<K>> ta_h;
        for (const auto& [k, c] : *ta) ta_h.emplace_back(k, HbarPoly<K>::constant(c));
        const auto dta = detail::apply_d(p, ta_h);
        if (!dta) {
            out.window_violations.push_back(p.basis[a].name);
            continue;
        }
        const auto res = detail::mul_h(p, inverse_h, *dta);
        if (!res) {
            out.window_violations.push_back(p.basis[a].name);
            continue;
        }
        out.presentation.differential[a] = *res;
    }
    return out;
}

struct DifferentialComparison {
    std::size_t compared = 0;
    std::vector<std::string> mismatches;
    bool agree() const { return mismatches.empty(); }
};

/// Compares the differentials of two presentations on a common basis,
/// wherever both are defined.
template <class K>
DifferentialComparison compare_differentials(const BDPresentation<K>& p, const BDPresentation<K>& q) {
    if (p.size() != q.size()) throw DomainError("compare_differentials: bases differ");
    DifferentialComparison out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p.differential[i] || !q.differential[i]) continue;
        ++out.compared;
        const auto diff =
            detail::combine<HbarPoly<K>>({{Rational(1), &*p.differential[i]}, {Rational(-1), &*q.differential[i]}});
        if (!diff.empty()) out.mismatches.push_back(p.basis[i].name);
    }
    return out;
}

/// The q^n coefficient of a presentation over q-series.
inline BDPresentation<Rational> q_coefficient(const BDPresentation<QSeries>& p, std::size_t n) {
    BDPresentation<Rational> out;
    out.basis = p.basis;
    out.unit = p.unit;
    out.product = p.product;
    out.bracket = p.bracket;
    out.hbar_value = p.hbar_value;
    for (const auto& e : p.differential) {
        if (!e) {
            out.differential.emplace_back(std::nullopt);
            continue;
        }
        Terms<HbarPoly<Rational>> t;
        for (const auto& [k, c] : *e) {
            HbarPoly<Rational> h(Rational(0));
            for (std::size_t d = 0; d < c.size(); ++d)
                if (c[d][n] != 0) h += HbarPoly<Rational>::monomial(c[d][n], d);
            if (!h.is_zero()) t.emplace_back(k, h);
        }
        out.differential.emplace_back(std::move(t));
    }
    return out;
}

}  // namespace wfh
