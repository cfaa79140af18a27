#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "polynomial.hpp"

namespace formality {

namespace detail {
// All ways of writing n as an ordered sum of `parts` nonnegative integers.
inline std::vector<std::vector<int>> compositions(int n, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == parts - 1) { cur[pos] = left; out.push_back(cur); return; }
        for (int v = 0; v <= left; ++v) { cur[pos] = v; self(self, pos + 1, left - v); }
    };
    if (parts == 0) { if (n == 0) out.push_back({}); return out; }
    rec(rec, 0, n);
    return out;
}

inline long long ll_factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
} // namespace detail

// m-ary polydifferential operator on R^d: a sum of terms
// coefficient(x) * d^{orders_1} (x) ... (x) d^{orders_m},  degree |A| = m-1.
template <typename R>
class PolyDiffOperator {
public:
    using Exponents = std::vector<int>;
    using OrderKey = std::vector<Exponents>;  // length = arity

    PolyDiffOperator() : dim_(0), arity_(1) {}
    PolyDiffOperator(int dim, int arity) : dim_(dim), arity_(arity) {
        if (arity < 1) throw std::invalid_argument("operator arity must be >= 1");
    }

    // mu(f,g) = f*g
    static PolyDiffOperator mu(int dim) {
        PolyDiffOperator a(dim, 2);
        a.add_term({Exponents(dim, 0), Exponents(dim, 0)}, Polynomial<R>::constant(dim, R(1)));
        return a;
    }
    static PolyDiffOperator identity(int dim) {
        PolyDiffOperator a(dim, 1);
        a.add_term({Exponents(dim, 0)}, Polynomial<R>::constant(dim, R(1)));
        return a;
    }

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    int degree() const { return arity_ - 1; }
    bool is_zero() const { return terms_.empty(); }
    std::map<OrderKey, Polynomial<R>> const& terms() const { return terms_; }

    void add_term(OrderKey const& orders, Polynomial<R> coeff) {
        if (static_cast<int>(orders.size()) != arity_)
            throw std::invalid_argument("order-key length != arity");
        for (auto const& e : orders)
            if (static_cast<int>(e.size()) != dim_)
                throw std::invalid_argument("derivative multi-index length != dim");
        auto it = terms_.find(orders);
        if (it == terms_.end()) {
            if (!coeff.is_zero()) terms_.emplace(orders, std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial<R> apply(std::vector<Polynomial<R>> const& fs) const {
        if (static_cast<int>(fs.size()) != arity_)
            throw std::invalid_argument("apply: argument count != arity");
        Polynomial<R> out(dim_);
        for (auto const& [orders, coeff] : terms_) {
            Polynomial<R> prod = coeff;
            for (int j = 0; j < arity_ && !prod.is_zero(); ++j)
                prod = prod * fs[j].derivative(orders[j]);
            out += prod;
        }
        return out;
    }

    PolyDiffOperator& operator+=(PolyDiffOperator const& o) {
        check_compat(o);
        for (auto const& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    PolyDiffOperator operator+(PolyDiffOperator const& o) const { auto r = *this; r += o; return r; }
    PolyDiffOperator operator*(R const& s) const {
        PolyDiffOperator r(dim_, arity_);
        for (auto const& [k, c] : terms_) r.add_term(k, c * s);
        return r;
    }
    PolyDiffOperator operator-() const { return *this * R(-1); }
    PolyDiffOperator operator-(PolyDiffOperator const& o) const { return *this + (-o); }

    bool operator==(PolyDiffOperator const& o) const {
        return dim_ == o.dim_ && arity_ == o.arity_ && terms_ == o.terms_;
    }

    double max_abs_coeff() const {
        double m = 0;
        for (auto const& [k, c] : terms_) m = std::max(m, c.max_abs_coeff());
        return m;
    }

    // Drops terms whose coefficients are below `tol` in every monomial
    // (numeric instantiations only).
    PolyDiffOperator pruned(double tol) const {
        PolyDiffOperator r(dim_, arity_);
        for (auto const& [k, c] : terms_)
            if (c.max_abs_coeff() > tol) r.add_term(k, c);
        return r;
    }

private:
    void check_compat(PolyDiffOperator const& o) const {
        if (dim_ != o.dim_ || arity_ != o.arity_)
            throw std::invalid_argument("operator dim/arity mismatch");
    }
    int dim_, arity_;
    std::map<OrderKey, Polynomial<R>> terms_;
};

// (A1 o A2)(f_1,...,f_{m1+m2-1}) =
//   sum_j (-1)^{(m2-1)(j-1)} A1(f_1,..,A2(f_j,..,f_{j+m2-1}),..)
// computed symbolically: the outer derivative hitting the inner slot is
// distributed by the multivariate Leibniz rule over the inner coefficient and
// the inner argument slots.
template <typename R>
PolyDiffOperator<R> circ(PolyDiffOperator<R> const& a1, PolyDiffOperator<R> const& a2) {
    if (a1.dim() != a2.dim()) throw std::invalid_argument("circ: dimension mismatch");
    int const d = a1.dim(), m1 = a1.arity(), m2 = a2.arity();
    PolyDiffOperator<R> out(d, m1 + m2 - 1);
    for (auto const& [bord, c1] : a1.terms()) {
        for (int j = 0; j < m1; ++j) {
            int sgn = ((m2 - 1) * j) % 2 ? -1 : 1;
            for (auto const& [gord, c2] : a2.terms()) {
                // split bord[j] over (inner coefficient, inner slots 0..m2-1)
                std::vector<std::vector<std::vector<int>>> coord_splits(d);
                for (int i = 0; i < d; ++i)
                    coord_splits[i] = detail::compositions(bord[j][i], m2 + 1);
                std::vector<size_t> pick(d, 0);
                for (;;) {
                    long long mult = 1;
                    for (int i = 0; i < d; ++i) {
                        auto const& parts = coord_splits[i][pick[i]];
                        long long m = detail::ll_factorial(bord[j][i]);
                        for (int p : parts) m /= detail::ll_factorial(p);
                        mult *= m;
                    }
                    std::vector<int> delta0(d);
                    for (int i = 0; i < d; ++i) delta0[i] = coord_splits[i][pick[i]][0];
                    Polynomial<R> coeff = c1 * c2.derivative(delta0);
                    if (!coeff.is_zero()) {
                        typename PolyDiffOperator<R>::OrderKey orders;
                        orders.reserve(m1 + m2 - 1);
                        for (int s = 0; s < j; ++s) orders.push_back(bord[s]);
                        for (int t = 0; t < m2; ++t) {
                            std::vector<int> o = gord[t];
                            for (int i = 0; i < d; ++i) o[i] += coord_splits[i][pick[i]][t + 1];
                            orders.push_back(std::move(o));
                        }
                        for (int s = j + 1; s < m1; ++s) orders.push_back(bord[s]);
                        out.add_term(orders, coeff * R(sgn * mult));
                    }
                    int i = d - 1;
                    while (i >= 0 && pick[i] + 1 == coord_splits[i].size()) pick[i--] = 0;
                    if (i < 0) break;
                    ++pick[i];
                }
            }
        }
    }
    return out;
}

// [A1,A2]_G = A1 o A2 - (-1)^{|A1||A2|} A2 o A1
template <typename R>
PolyDiffOperator<R> gerstenhaber(PolyDiffOperator<R> const& a1, PolyDiffOperator<R> const& a2) {
    PolyDiffOperator<R> r = circ(a1, a2);
    PolyDiffOperator<R> s = circ(a2, a1);
    if ((a1.degree() * a2.degree()) % 2 == 0) s = -s;
    return r + s;
}

// (d_H A)(f_1,...,f_{m+1}) = f_1 A(f_2,..) - A(f_1 f_2, ..) + ...
//                            + (-1)^{m+1} A(..., f_m) f_{m+1}
template <typename R>
PolyDiffOperator<R> hochschild_dH(PolyDiffOperator<R> const& a) {
    int const d = a.dim(), m = a.arity();
    PolyDiffOperator<R> out(d, m + 1);
    std::vector<int> zero(d, 0);
    for (auto const& [orders, coeff] : a.terms()) {
        {   // f_1 * A(f_2,...,f_{m+1})
            typename PolyDiffOperator<R>::OrderKey k;
            k.push_back(zero);
            for (auto const& o : orders) k.push_back(o);
            out.add_term(k, coeff);
        }
        for (int i = 0; i < m; ++i) {  // (-1)^{i+1} A(..., f_{i+1} f_{i+2}, ...)
            int sgn = (i + 1) % 2 ? -1 : 1;
            // Leibniz split of orders[i] over the merged pair
            std::vector<std::vector<std::vector<int>>> coord_splits(d);
            for (int c = 0; c < d; ++c)
                coord_splits[c] = detail::compositions(orders[i][c], 2);
            std::vector<size_t> pick(d, 0);
            for (;;) {
                long long mult = 1;
                std::vector<int> left(d), right(d);
                for (int c = 0; c < d; ++c) {
                    left[c] = coord_splits[c][pick[c]][0];
                    right[c] = coord_splits[c][pick[c]][1];
                    mult *= detail::ll_factorial(orders[i][c]) /
                            (detail::ll_factorial(left[c]) * detail::ll_factorial(right[c]));
                }
                typename PolyDiffOperator<R>::OrderKey k;
                for (int s = 0; s < i; ++s) k.push_back(orders[s]);
                k.push_back(left);
                k.push_back(right);
                for (int s = i + 1; s < m; ++s) k.push_back(orders[s]);
                out.add_term(k, coeff * R(sgn * mult));
                int c = d - 1;
                while (c >= 0 && pick[c] + 1 == coord_splits[c].size()) pick[c--] = 0;
                if (c < 0) break;
                ++pick[c];
            }
        }
        {   // (-1)^{m+1} A(f_1,...,f_m) * f_{m+1}
            typename PolyDiffOperator<R>::OrderKey k = orders;
            k.push_back(zero);
            out.add_term(k, (m + 1) % 2 ? -coeff : coeff);
        }
    }
    return out;
}

// Q'_1(A) = [A,mu]_G = -d_H A
template <typename R>
PolyDiffOperator<R> q1_dpoly(PolyDiffOperator<R> const& a) {
    return -hochschild_dH(a);
}

// Q'_2(A1.A2) = (-1)^{|A1|(|A2|-1)} [A1,A2]_G
template <typename R>
PolyDiffOperator<R> q2_dpoly(PolyDiffOperator<R> const& a1, PolyDiffOperator<R> const& a2) {
    PolyDiffOperator<R> r = gerstenhaber(a1, a2);
    if ((a1.degree() * (a2.degree() - 1)) % 2) r = -r;
    return r;
}

} // namespace formality
