#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace formality {

// Sparse multivariate polynomial over the scalar ring R, in d variables
// x_1..x_d.  Keys are exponent vectors of length d; zero coefficients are
// never stored.
template <typename R>
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() : dim_(0) {}
    explicit Polynomial(int dim) : dim_(dim) {}

    static Polynomial constant(int dim, R value) {
        Polynomial p(dim);
        p.add_term(Exponents(dim, 0), std::move(value));
        return p;
    }
    static Polynomial variable(int dim, int i) {  // x_i, 1-based
        if (i < 1 || i > dim) throw std::invalid_argument("variable index out of range");
        Polynomial p(dim);
        Exponents e(dim, 0);
        e[i - 1] = 1;
        p.add_term(e, R(1));
        return p;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::map<Exponents, R> const& terms() const { return terms_; }

    void add_term(Exponents const& e, R c) {
        if (static_cast<int>(e.size()) != dim_)
            throw std::invalid_argument("exponent vector length != dim");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!scalar_traits<R>::is_zero(c)) terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (scalar_traits<R>::is_zero(it->second)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(Polynomial const& o) {
        check_dim(o);
        for (auto const& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(Polynomial const& o) {
        check_dim(o);
        for (auto const& [e, c] : o.terms_) add_term(e, R(-1) * c);
        return *this;
    }
    Polynomial operator+(Polynomial const& o) const { Polynomial r = *this; r += o; return r; }
    Polynomial operator-(Polynomial const& o) const { Polynomial r = *this; r -= o; return r; }
    Polynomial operator-() const { return *this * R(-1); }

    Polynomial operator*(Polynomial const& o) const {
        check_dim(o);
        Polynomial r(dim_);
        for (auto const& [e1, c1] : terms_)
            for (auto const& [e2, c2] : o.terms_) {
                Exponents e = e1;
                for (int i = 0; i < dim_; ++i) e[i] += e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    Polynomial operator*(R const& s) const {
        Polynomial r(dim_);
        for (auto const& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    // d/dx_i, 1-based.
    Polynomial derivative(int i) const {
        if (i < 1 || i > dim_) throw std::invalid_argument("derivative index out of range");
        Polynomial r(dim_);
        for (auto const& [e, c] : terms_) {
            if (e[i - 1] == 0) continue;
            Exponents e2 = e;
            --e2[i - 1];
            r.add_term(e2, c * R(e[i - 1]));
        }
        return r;
    }

    // Iterated derivative by a multi-index.
    Polynomial derivative(Exponents const& multi) const {
        Polynomial r = *this;
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < multi[i]; ++k) r = r.derivative(i + 1);
        return r;
    }

    bool operator==(Polynomial const& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

    double max_abs_coeff() const {
        double m = 0;
        for (auto const& [e, c] : terms_) {
            double a = scalar_traits<R>::to_double(c);
            if (a < 0) a = -a;
            if (a > m) m = a;
        }
        return m;
    }

    template <typename S>
    Polynomial<S> convert() const {
        Polynomial<S> r(dim_);
        for (auto const& [e, c] : terms_) r.add_term(e, static_cast<S>(scalar_traits<R>::to_double(c)));
        return r;
    }

private:
    void check_dim(Polynomial const& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("polynomial dimension mismatch");
    }
    int dim_;
    std::map<Exponents, R> terms_;
};

template <typename R>
Polynomial<R> operator*(R const& s, Polynomial<R> const& p) { return p * s; }

} // namespace formality
