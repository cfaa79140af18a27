#pragma once

// Random-instance generators and independent oracles used by the property
// tests, the verification subcommands and the acceptance suite.

#include <random>
#include <vector>

#include "diffop.hpp"
#include "multivector.hpp"
#include "polynomial.hpp"
#include "weights.hpp"

namespace formality::testing {

inline Polynomial<Rat> random_polynomial(std::mt19937_64& rng, int dim, int max_degree,
                                         int max_terms = 3) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    Polynomial<Rat> p(dim);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        std::vector<int> e(dim);
        int budget = deg(rng);
        for (int c = 0; c < dim && budget > 0; ++c) {
            std::uniform_int_distribution<int> part(0, budget);
            e[c] = part(rng);
            budget -= e[c];
        }
        p.add_term(e, Rat(coeff(rng)));
    }
    return p;
}

inline MultiVector<Rat> random_multivector(std::mt19937_64& rng, int dim, int order,
                                           int max_degree) {
    MultiVector<Rat> v(dim, order);
    if (order > dim) return v;
    // fill a couple of increasing tuples
    std::vector<std::vector<int>> tuples;
    std::vector<int> t;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(t.size()) == order) { tuples.push_back(t); return; }
        for (int i = start; i <= dim; ++i) { t.push_back(i); self(self, i + 1); t.pop_back(); }
    };
    rec(rec, 1);
    std::uniform_int_distribution<int> pickcount(1, static_cast<int>(tuples.size()));
    int c = pickcount(rng);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(tuples.size()) - 1);
    for (int i = 0; i < c; ++i) {
        Polynomial<Rat> p = random_polynomial(rng, dim, max_degree);
        v.add_component(tuples[pick(rng)], p);
    }
    return v;
}

inline MultiVector<Rat> random_vector_field(std::mt19937_64& rng, int dim, int max_degree) {
    return random_multivector(rng, dim, 1, max_degree);
}

inline PolyDiffOperator<Rat> random_operator(std::mt19937_64& rng, int dim, int arity,
                                             int max_order, int max_degree,
                                             int max_terms = 2) {
    PolyDiffOperator<Rat> a(dim, arity);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> ord(0, max_order);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        typename PolyDiffOperator<Rat>::OrderKey k;
        for (int j = 0; j < arity; ++j) {
            std::vector<int> o(dim, 0);
            int budget = ord(rng);
            for (int c = 0; c < dim && budget > 0; ++c) {
                std::uniform_int_distribution<int> part(0, budget);
                o[c] = part(rng);
                budget -= o[c];
            }
            k.push_back(std::move(o));
        }
        a.add_term(k, random_polynomial(rng, dim, max_degree));
    }
    return a;
}

// Lie bracket of vector fields, computed directly from components:
// [xi, eta]^i = xi^j d_j eta^i - eta^j d_j xi^i.
inline MultiVector<Rat> lie_bracket_vf(MultiVector<Rat> const& xi, MultiVector<Rat> const& eta) {
    int const d = xi.dim();
    MultiVector<Rat> out(d, 1);
    for (int i = 1; i <= d; ++i) {
        Polynomial<Rat> comp(d);
        for (int j = 1; j <= d; ++j) {
            comp += xi.component({j}) * eta.component({i}).derivative(j);
            comp -= eta.component({j}) * xi.component({i}).derivative(j);
        }
        out.add_component({i}, comp);
    }
    return out;
}

// Defining double sum of the Schouten bracket on decomposable wedges:
// [xi_1^..^xi_k, eta_1^..^eta_l]_S =
//   sum_{i,j} (-1)^{i+j} [xi_i,eta_j] ^ xi_1 ^..^ xi_i-hat ^..^ eta_j-hat ^..
inline MultiVector<Rat> schouten_double_sum(std::vector<MultiVector<Rat>> const& xis,
                                            std::vector<MultiVector<Rat>> const& etas) {
    int const d = xis.at(0).dim();
    int const k = static_cast<int>(xis.size());
    int const l = static_cast<int>(etas.size());
    MultiVector<Rat> out(d, k + l - 1);
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= l; ++j) {
            MultiVector<Rat> term = lie_bracket_vf(xis[i - 1], etas[j - 1]);
            for (int a = 1; a <= k; ++a)
                if (a != i) term = wedge(term, xis[a - 1]);
            for (int b = 1; b <= l; ++b)
                if (b != j) term = wedge(term, etas[b - 1]);
            if ((i + j) % 2) term = -term;
            out += term;
        }
    return out;
}

inline MultiVector<Rat> wedge_all(std::vector<MultiVector<Rat>> const& factors) {
    MultiVector<Rat> out = factors.at(0);
    for (size_t i = 1; i < factors.size(); ++i) out = wedge(out, factors[i]);
    return out;
}

// Order-p coefficient of the exponential (Moyal) series generated by the
// first-order operator c * pi^{ij} d_i (x) d_j on R^2 with constant pi:
// (c^p / p!) * sum pi^{i1 j1}..pi^{ip jp} d_{i1..ip} (x) d_{j1..jp}.
inline PolyDiffOperator<double> moyal_term(MultiVector<double> const& pi, double c, int p) {
    int const d = pi.dim();
    PolyDiffOperator<double> out(d, 2);
    double fac = 1;
    for (int i = 2; i <= p; ++i) fac *= i;
    std::vector<int> idx(2 * p, 1);  // (i_1, j_1, ..., i_p, j_p)
    for (;;) {
        double coeff = std::pow(c, p) / fac;
        for (int e = 0; e < p; ++e) {
            auto comp = pi.component({idx[2 * e], idx[2 * e + 1]});
            double v = 0;
            if (!comp.is_zero()) v = comp.terms().begin()->second;
            coeff *= v;
            if (coeff == 0) break;
        }
        if (coeff != 0) {
            std::vector<int> left(d, 0), right(d, 0);
            for (int e = 0; e < p; ++e) {
                ++left[idx[2 * e] - 1];
                ++right[idx[2 * e + 1] - 1];
            }
            PolyDiffOperator<double> term(d, 2);
            term.add_term({left, right}, Polynomial<double>::constant(d, coeff));
            out += term;
        }
        int e = 2 * p - 1;
        while (e >= 0 && idx[e] == d) idx[e--] = 1;
        if (e < 0) break;
        ++idx[e];
    }
    return out;
}

// Deterministic midpoint-rule quadrature of the wedge-graph weight (one
// aerial point, both edges to the fixed ground points 0 and 1; chart 3),
// for cross-checking the Monte-Carlo estimate.
inline double wedge_weight_quadrature(Normalization norm, int cells = 1500) {
    AdmissibleGraph g{1, 2, {{1, true, 1}, {1, true, 2}}};
    auto frame = detail::build_frame(Chart{3, 1, 1, 2}, 1, 2);
    double const scale = frame.prefactor / detail::normalization_factor(g, norm);
    double total = 0;
    std::vector<std::vector<double>> mat(2);
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j < cells; ++j) {
            double ux = (i + 0.5) / cells, uy = (j + 0.5) / cells;
            detail::Sample s;
            auto [x, jx] = detail::map_full_line(ux);
            auto [y, jy] = detail::map_half_line(uy);
            s.cfg.aerial = {Complex(x, y)};
            s.cfg.ground = {0.0, 1.0};
            s.jacobian = jx * jy;
            s.in_domain = true;
            s.theta.assign(2, 0.0);
            if (detail::min_separation(s.cfg, false) < 1e-9) continue;
            detail::angle_partials(frame, s, g.edges[0], mat[0]);
            detail::angle_partials(frame, s, g.edges[1], mat[1]);
            total += scale * s.jacobian * detail::det_inplace(mat);
        }
    return total / (static_cast<double>(cells) * cells);
}

} // namespace formality::testing
