#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polynomial.hpp"
#include "signs.hpp"

namespace formality {

// Sorts an index tuple, returning the permutation sign; nullopt on repeats.
inline std::optional<std::pair<int, std::vector<int>>>
sort_index_tuple(std::vector<int> idx) {
    int sign = 1;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return std::nullopt;
            if (idx[i] > idx[j]) { std::swap(idx[i], idx[j]); sign = -sign; }
        }
    return std::make_pair(sign, std::move(idx));
}

// Order-k antisymmetric polynomial-coefficient tensor on R^d, stored on
// strictly increasing index tuples (1-based).  Degree in T_poly is k-1.
template <typename R>
class MultiVector {
public:
    using Tuple = std::vector<int>;

    MultiVector() : dim_(0), order_(0) {}
    MultiVector(int dim, int order) : dim_(dim), order_(order) {
        if (order < 0) throw std::invalid_argument("order must be >= 0");
    }

    static MultiVector from_function(Polynomial<R> f) {
        MultiVector v(f.dim(), 0);
        v.add_component({}, std::move(f));
        return v;
    }
    // coeff * d_{i1} ^ ... ^ d_{ik}
    static MultiVector basis(int dim, Tuple const& idx, Polynomial<R> coeff) {
        MultiVector v(dim, static_cast<int>(idx.size()));
        v.add_component(idx, std::move(coeff));
        return v;
    }

    int dim() const { return dim_; }
    int order() const { return order_; }
    int degree() const { return order_ - 1; }  // shifted frame
    bool is_zero() const { return components_.empty(); }
    std::map<Tuple, Polynomial<R>> const& components() const { return components_; }

    // Adds coeff on an arbitrary distinct-index tuple (antisymmetrized in).
    void add_component(Tuple const& idx, Polynomial<R> coeff) {
        if (static_cast<int>(idx.size()) != order_)
            throw std::invalid_argument("tuple length != order");
        for (int i : idx)
            if (i < 1 || i > dim_) throw std::invalid_argument("index out of range");
        auto sorted = sort_index_tuple(idx);
        if (!sorted) return;
        auto& [sg, key] = *sorted;
        if (sg < 0) coeff = -coeff;
        auto it = components_.find(key);
        if (it == components_.end()) {
            if (!coeff.is_zero()) components_.emplace(key, std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second.is_zero()) components_.erase(it);
        }
    }

    // Fully antisymmetric component on an arbitrary tuple.
    Polynomial<R> component(Tuple const& idx) const {
        auto sorted = sort_index_tuple(idx);
        if (!sorted) return Polynomial<R>(dim_);
        auto it = components_.find(sorted->second);
        if (it == components_.end()) return Polynomial<R>(dim_);
        return sorted->first < 0 ? -it->second : it->second;
    }

    MultiVector& operator+=(MultiVector const& o) {
        check_compat(o, true);
        for (auto const& [t, c] : o.components_) add_component(t, c);
        return *this;
    }
    MultiVector operator+(MultiVector const& o) const { auto r = *this; r += o; return r; }
    MultiVector operator-() const { return *this * R(-1); }
    MultiVector operator-(MultiVector const& o) const { return *this + (-o); }
    MultiVector operator*(R const& s) const {
        MultiVector r(dim_, order_);
        for (auto const& [t, c] : components_) r.add_component(t, c * s);
        return r;
    }

    bool operator==(MultiVector const& o) const {
        return dim_ == o.dim_ && order_ == o.order_ && components_ == o.components_;
    }

    template <typename S>
    MultiVector<S> convert() const {
        MultiVector<S> r(dim_, order_);
        for (auto const& [t, c] : components_) r.add_component(t, c.template convert<S>());
        return r;
    }

private:
    void check_compat(MultiVector const& o, bool same_order) const {
        if (dim_ != o.dim_) throw std::invalid_argument("multivector dimension mismatch");
        if (same_order && order_ != o.order_)
            throw std::invalid_argument("multivector order mismatch");
    }
    int dim_, order_;
    std::map<Tuple, Polynomial<R>> components_;
};

namespace detail {
// All tuples in {1..d}^k with pairwise distinct entries.
inline void distinct_tuples(int d, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> t(k, 1);
    if (k == 0) { out.push_back({}); return; }
    for (;;) {
        bool distinct = true;
        for (int i = 0; i < k && distinct; ++i)
            for (int j = i + 1; j < k; ++j)
                if (t[i] == t[j]) { distinct = false; break; }
        if (distinct) out.push_back(t);
        int i = k - 1;
        while (i >= 0 && t[i] == d) t[i--] = 1;
        if (i < 0) break;
        ++t[i];
    }
}
} // namespace detail

template <typename R>
MultiVector<R> wedge(MultiVector<R> const& a, MultiVector<R> const& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    MultiVector<R> r(a.dim(), a.order() + b.order());
    if (r.order() > a.dim()) return r;  // structurally zero
    for (auto const& [ta, ca] : a.components())
        for (auto const& [tb, cb] : b.components()) {
            std::vector<int> idx = ta;
            idx.insert(idx.end(), tb.begin(), tb.end());
            r.add_component(idx, ca * cb);
        }
    return r;
}

// a_1 . a_2 = sum_{l=1}^{k1} (-1)^{l-1} a_1^{i_1..i_{k1}} (d_{i_l} a_2^{j_1..j_{k2}})
//             d_{i_1}^..^d_{i_l}-hat^..^d_{j_{k2}}   (implicit full index sums)
//
// The tensor coefficients here are the Einstein-convention ones (each wedge
// monomial spread over all k! index tuples), while components() stores the
// increasing-tuple coefficient; the 1/(k1! k2!) below converts between the
// two so that schouten() agrees with the Lie-bracket extension on
// decomposables and satisfies the graded Jacobi identity.
template <typename R>
MultiVector<R> bullet(MultiVector<R> const& a, MultiVector<R> const& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("bullet: dimension mismatch");
    int const d = a.dim(), k1 = a.order(), k2 = b.order();
    int const out_order = k1 + k2 - 1;
    if (k1 == 0 || out_order < 0) return MultiVector<R>(d, std::max(out_order, 0));
    MultiVector<R> r(d, out_order);
    if (out_order > d) return r;
    int fact = 1;
    for (int t = 2; t <= k1; ++t) fact *= t;
    for (int t = 2; t <= k2; ++t) fact *= t;
    R const scale = R(1) / R(fact);
    std::vector<std::vector<int>> is, js;
    detail::distinct_tuples(d, k1, is);
    detail::distinct_tuples(d, k2, js);
    for (auto const& I : is) {
        Polynomial<R> ca = a.component(I);
        if (ca.is_zero()) continue;
        for (auto const& J : js) {
            Polynomial<R> cb = b.component(J);
            if (cb.is_zero()) continue;
            for (int l = 0; l < k1; ++l) {
                Polynomial<R> dcb = cb.derivative(I[l]);
                if (dcb.is_zero()) continue;
                std::vector<int> idx;
                idx.reserve(out_order);
                for (int t = 0; t < k1; ++t)
                    if (t != l) idx.push_back(I[t]);
                idx.insert(idx.end(), J.begin(), J.end());
                Polynomial<R> term = ca * dcb * scale;
                if (l % 2) term = -term;
                r.add_component(idx, term);
            }
        }
    }
    return r;
}

// [a,b]_S = (-1)^{k1-1} a.b - (-1)^{k1(k2-1)} b.a
template <typename R>
MultiVector<R> schouten(MultiVector<R> const& a, MultiVector<R> const& b) {
    int const k1 = a.order(), k2 = b.order();
    MultiVector<R> r = bullet(a, b);
    if ((k1 - 1) % 2) r = -r;
    MultiVector<R> s = bullet(b, a);
    if ((k1 * (k2 - 1)) % 2 == 0) s = -s;
    return r + s;
}

// [a,b]'_S = -[b,a]_S
template <typename R>
MultiVector<R> bracket_prime(MultiVector<R> const& a, MultiVector<R> const& b) {
    return -schouten(b, a);
}

// Q_2(a.b) = (-1)^{(k1-1)k2} [a,b]'_S = a.b + (-1)^{k1 k2} b.a
template <typename R>
MultiVector<R> q2_tpoly(MultiVector<R> const& a, MultiVector<R> const& b) {
    MultiVector<R> r = bullet(a, b);
    MultiVector<R> s = bullet(b, a);
    if ((a.order() * b.order()) % 2) s = -s;
    return r + s;
}

} // namespace formality
