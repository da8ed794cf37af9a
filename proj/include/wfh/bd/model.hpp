#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wfh/bd/forms.hpp"
#include "wfh/bd/presentation.hpp"
#include "wfh/char_ring/ring.hpp"

namespace wfh {

/// The model (Omega^{-*}(T*A^n)[hbar], hbar L_pi) truncated at total
/// polynomial degree `bound`, with optional inert Dolbeault generators.
struct OddCotangentModel {
    FormAlgebra forms;
    std::size_t bound;
    std::vector<FormMonomial> monomials;  // basis order of the presentation
    std::map<FormMonomial, std::size_t> index;
    BDPresentation<Rational> presentation;

    /// Coordinates of an exact form; throws DomainError for monomials beyond
    /// the truncation.
    template <class K>
    Terms<K> terms(const Form<K>& f) const {
        Terms<K> out;
        for (const auto& [m, c] : f) {
            auto it = index.find(m);
            if (it == index.end())
                throw DomainError("monomial " + forms.text(m) + " lies outside the truncation window");
            out.emplace_back(it->second, c);
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }
    template <class K>
    Form<K> form(const Terms<K>& t) const {
        Form<K> f;
        for (const auto& [k, c] : t) f.emplace(monomials.at(k), c);
        return f;
    }
};

/// Presentation tables: products and brackets are kept when their result
/// stays within total degree `bound` (products that vanish by a repeated odd
/// generator are kept everywhere); D = hbar L_pi lowers the degree by 2
/// and is defined everywhere.
inline OddCotangentModel odd_cotangent_model(std::size_t n, std::size_t bound, std::size_t dolbeault = 0) {
    if (n < 1) throw DomainError("odd_cotangent_model: n must be at least 1");
    if (bound < 2) throw DomainError("odd_cotangent_model: bound must be at least 2");
    OddCotangentModel model{FormAlgebra(n, dolbeault), bound, {}, {}, {}};
    const FormAlgebra& fa = model.forms;
    const std::size_t g = fa.generator_count();

    // Monomials by total degree, then exponent vector descending.
    FormMonomial m = fa.one();
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos == g) {
            model.monomials.push_back(m);
            return;
        }
        const std::size_t cap = fa.generators()[pos].odd() ? 1 : left;
        for (std::size_t e = std::min(cap, left) + 1; e-- > 0;) {
            m[pos] = static_cast<std::uint8_t>(e);
            rec(pos + 1, left - e);
        }
        m[pos] = 0;
    };
    rec(0, bound);
    std::stable_sort(model.monomials.begin(), model.monomials.end(),
                     [&](const FormMonomial& a, const FormMonomial& b) { return fa.size(a) < fa.size(b); });
    for (std::size_t i = 0; i < model.monomials.size(); ++i) model.index.emplace(model.monomials[i], i);

    const std::size_t dim = model.monomials.size();
    BDPresentation<Rational>& p = model.presentation;
    p.zero = Rational(0);
    p.unit = 0;
    for (const auto& mono : model.monomials)
        p.basis.push_back({fa.text(mono), fa.degree(mono), fa.weight(mono)});

    std::map<FormMonomial, Form<Rational>> lie_cache;
    auto lie = [&](const FormMonomial& mono) -> const Form<Rational>& {
        auto it = lie_cache.find(mono);
        if (it == lie_cache.end()) it = lie_cache.emplace(mono, fa.lie_pi(Form<Rational>{{mono, Rational(1)}})).first;
        return it->second;
    };

    p.product.assign(dim * dim, std::nullopt);
    p.bracket.assign(dim * dim, std::nullopt);
    FormMonomial prod;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const auto& a = model.monomials[i];
            const auto& b = model.monomials[j];
            const std::size_t s = fa.size(a) + fa.size(b);
            const int sign = fa.monomial_product(a, b, prod);
            if (s <= bound || sign == 0) {
                Terms<Rational> t;
                if (sign != 0) t.emplace_back(model.index.at(prod), Rational(sign));
                p.product[i * dim + j] = std::move(t);
            }
            if (s <= bound + 2) {
                const Form<Rational> fa_a{{a, Rational(1)}}, fa_b{{b, Rational(1)}};
                Form<Rational> br;
                if (sign != 0) FormAlgebra::accumulate(br, lie(prod), Rational(sign));
                FormAlgebra::accumulate(br, fa.multiply(lie(a), fa_b), Rational(-1));
                FormAlgebra::accumulate(br, fa.multiply(fa_a, lie(b)), Rational(fa.degree(a) % 2 == 0 ? -1 : 1));
                p.bracket[i * dim + j] = model.terms(br);
            }
        }
    for (std::size_t i = 0; i < dim; ++i) {
        Terms<HbarPoly<Rational>> d;
        for (const auto& [k, c] : model.terms(lie(model.monomials[i])))
            d.emplace_back(k, HbarPoly<Rational>::monomial(c, 1));
        p.differential.emplace_back(std::move(d));
    }
    return model;
}

/// A ring map from a characteristic-class ring to even base forms of
/// positive form degree, fixed by the images of the ring generators. Images
/// must be base forms (no xi, dxi) of cohomological degree 0 with no
/// zero-form part, and the map must respect every product of the ring.
class ClassEmbedding {
public:
    ClassEmbedding(RingPtr ring, const FormAlgebra& forms, const std::map<std::string, Form<Rational>>& images)
        : ring_(std::move(ring)) {
        const auto& gens = ring_->generators();
        for (const auto& [name, img] : images)
            if (!ring_->generator_index(name)) throw DomainError("ClassEmbedding: unknown ring generator '" + name + "'");
        std::vector<Form<Rational>> gen_images;
        for (const auto& g : gens) {
            auto it = images.find(g.name);
            if (it == images.end()) throw DomainError("ClassEmbedding: no image for generator '" + g.name + "'");
            for (const auto& [m, c] : it->second) {
                if (!forms.is_base(m))
                    throw DomainError("ClassEmbedding: image of " + g.name + " has the non-base term " + forms.text(m));
                if (forms.degree(m) != 0)
                    throw DomainError("ClassEmbedding: image of " + g.name + " has the term " + forms.text(m) +
                                      " of nonzero degree");
                if (forms.form_degree(m) == 0)
                    throw DomainError("ClassEmbedding: image of " + g.name + " has a zero-form component");
            }
            gen_images.push_back(it->second);
        }
        for (std::size_t i = 0; i < ring_->dimension(); ++i) {
            Form<Rational> f{{forms.one(), Rational(1)}};
            const Exponents& e = ring_->monomial(i);
            for (std::size_t g = 0; g < e.size(); ++g)
                for (unsigned k = 0; k < e[g]; ++k) f = forms.multiply(f, gen_images[g]);
            basis_images_.push_back(std::move(f));
        }
        for (std::size_t i = 0; i < ring_->dimension(); ++i)
            for (std::size_t j = 0; j < ring_->dimension(); ++j) {
                const std::size_t k = ring_->product(i, j);
                const Form<Rational> lhs = forms.multiply(basis_images_[i], basis_images_[j]);
                const Form<Rational> rhs = k == RingSpec::npos ? Form<Rational>{} : basis_images_[k];
                if (lhs != rhs)
                    throw DomainError("ClassEmbedding: not a ring map on " + ring_->monomial_name(i) + " * " +
                                      ring_->monomial_name(j));
            }
    }

    const RingPtr& ring() const { return ring_; }
    const Form<Rational>& image(std::size_t ring_basis_index) const { return basis_images_.at(ring_basis_index); }

    template <class K>
    Form<K> operator()(const MixedClass<K>& c) const {
        if (c.ring() != ring_) throw DomainError("ClassEmbedding: class lives in a different ring");
        Form<K> out;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (ScalarTraits<K>::is_zero(c[i])) continue;
            for (const auto& [m, r] : basis_images_[i]) {
                K v = c[i] * r;
                auto it = out.find(m);
                if (it == out.end()) out.emplace(m, v);
                else it->second += v;
            }
        }
        for (auto it = out.begin(); it != out.end();)
            it = ScalarTraits<K>::is_zero(it->second) ? out.erase(it) : std::next(it);
        return out;
    }

private:
    RingPtr ring_;
    std::vector<Form<Rational>> basis_images_;
};

}  // namespace wfh
