#pragma once

// Verification suites shared by `formality verify` and the acceptance
// runner.  Each suite returns one CheckResult per identity or estimate.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "faces.hpp"
#include "linfinity.hpp"
#include "signs.hpp"
#include "testing.hpp"
#include "weights.hpp"
#include "word.hpp"

namespace formality::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // tolerance / observed value
};

namespace detail {
inline std::string fmt(char const* f, double a, double b) {
    char buf[128];
    snprintf(buf, sizeof buf, f, a, b);
    return buf;
}
} // namespace detail

// --- exact sign identities -------------------------------------------------

inline std::vector<CheckResult> suite_signs(std::uint64_t seed, int cases = 200) {
    std::vector<CheckResult> out;
    bool ok = true;
    for (int px = 0; px <= 1 && ok; ++px)
        for (int py = 0; py <= 1; ++py)
            if (unshuffle_sign({px, py}).value != sign_pow(px * (py - 1)).value) {
                ok = false;
                break;
            }
    out.push_back({"two-letter unshuffle sign matches (-1)^{|x|(|y|-1)}", ok, "exact"});

    std::mt19937_64 rng(seed);
    ok = true;
    for (int c = 0; c < cases && ok; ++c) {
        std::uniform_int_distribution<int> nd(2, 6), pd(0, 1);
        int n = nd(rng);
        DegreeVector parities(n);
        for (auto& p : parities) p = pd(rng);
        std::uniform_int_distribution<int> split(1, n - 1);
        int s = split(rng);
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) labels[i] = i;
        std::shuffle(labels.begin(), labels.end(), rng);
        std::vector<int> I(labels.begin(), labels.begin() + s);
        std::vector<int> J(labels.begin() + s, labels.end());
        std::sort(I.begin(), I.end());
        std::sort(J.begin(), J.end());
        int oi = 0, oj = 0;
        for (int i : I) oi += parities[i] % 2;
        for (int j : J) oj += parities[j] % 2;
        Sign lhs = koszul_sign({I, J}, parities);
        Sign rhs = koszul_sign({J, I}, parities) * sign_pow(oi * oj);
        ok = lhs.value == rhs.value;
    }
    out.push_back({"block swap eps(I,J) = eps(J,I)(-1)^{#odd(I)#odd(J)}", ok,
                   std::to_string(cases) + " random assignments"});
    return out;
}

// --- multivector bracket identities ----------------------------------------

inline std::vector<CheckResult> suite_tpoly(std::uint64_t seed, int cases = 100) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dd(1, 3);

    bool anti = true, jacobi = true, twopath = true;
    for (int c = 0; c < cases; ++c) {
        int d = dd(rng);
        std::uniform_int_distribution<int> kd(0, std::min(3, d));
        auto a = testing::random_multivector(rng, d, kd(rng), 2);
        auto b = testing::random_multivector(rng, d, kd(rng), 2);
        // graded antisymmetry of the shifted bracket:
        // [a,b]' = -(-1)^{(ka-1)(kb-1)} [b,a]'
        int sg = ((a.order() - 1) * (b.order() - 1)) % 2 ? -1 : 1;
        if (!(bracket_prime(a, b) + bracket_prime(b, a) * Rat(sg)).is_zero()) anti = false;

        if (c < cases / 2) {  // Jacobi is cubic in cost; half the instances
            auto e = testing::random_multivector(rng, d, kd(rng), 2);
            int ka = a.order() - 1, kb = b.order() - 1;
            // zero results of nested brackets carry a clamped order; compare
            // term by term instead of forming a single difference
            auto sub = [](MultiVector<Rat> const& x, MultiVector<Rat> const& y) {
                if (y.is_zero()) return x;
                if (x.is_zero()) return -y;
                return x - y;
            };
            auto lhs = bracket_prime(a, bracket_prime(b, e));
            auto r1 = bracket_prime(bracket_prime(a, b), e);
            auto r2 = bracket_prime(b, bracket_prime(a, e));
            if ((ka * kb) % 2) r2 = -r2;
            if (!sub(sub(lhs, r1), r2).is_zero()) jacobi = false;
        }
        // bullet-built Schouten vs the defining double sum on decomposables
        if (d >= 2) {
            std::uniform_int_distribution<int> wd(1, 2);
            int k = wd(rng), l = wd(rng);
            std::vector<MultiVector<Rat>> xis, etas;
            for (int i = 0; i < k; ++i) xis.push_back(testing::random_vector_field(rng, d, 2));
            for (int i = 0; i < l; ++i) etas.push_back(testing::random_vector_field(rng, d, 2));
            auto lhs = schouten(testing::wedge_all(xis), testing::wedge_all(etas));
            if (!(lhs == testing::schouten_double_sum(xis, etas))) twopath = false;
        }
    }
    out.push_back({"graded antisymmetry of [.,.]'", anti, std::to_string(cases) + " cases"});
    out.push_back({"graded Jacobi of [.,.]'", jacobi, std::to_string(cases / 2) + " cases"});
    out.push_back({"bullet formula vs defining double sum", twopath, "decomposable wedges"});
    return out;
}

// --- Hochschild / Gerstenhaber identities ----------------------------------

inline std::vector<CheckResult> suite_dpoly(std::uint64_t seed, int cases = 100) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dd(1, 2), md(1, 3);

    bool dsq = true, q1id = true, leibniz = true;
    for (int c = 0; c < cases; ++c) {
        int d = dd(rng);
        auto a = testing::random_operator(rng, d, md(rng), 2, 2);
        if (!hochschild_dH(hochschild_dH(a)).is_zero()) dsq = false;

        // Q'_1(A) = -d_H(A) = [A, mu]_G
        auto mu = PolyDiffOperator<Rat>::mu(d);
        if (!(q1_dpoly(a) == -hochschild_dH(a))) q1id = false;
        if (!(q1_dpoly(a) == gerstenhaber(a, mu))) q1id = false;

        if (c < cases / 2) {
            auto b = testing::random_operator(rng, d, md(rng), 2, 2);
            // d[a,b] = [da,b] + (-1)^{|a|} [a,db],  d = -[mu,.],  |a| = arity-1
            auto dbr = [&](PolyDiffOperator<Rat> const& x) { return -gerstenhaber(mu, x); };
            int sa = (a.arity() - 1) % 2 ? -1 : 1;
            auto lhs = dbr(gerstenhaber(a, b));
            auto rhs = gerstenhaber(dbr(a), b) + gerstenhaber(a, dbr(b)) * Rat(sa);
            if (!(lhs == rhs)) leibniz = false;
        }
    }
    out.push_back({"d_H squared = 0", dsq, std::to_string(cases) + " cases"});
    out.push_back({"Q'_1 = -d_H = [., mu]_G", q1id, std::to_string(cases) + " cases"});
    out.push_back({"graded Leibniz of d over [.,.]_G", leibniz,
                   std::to_string(cases / 2) + " cases"});
    return out;
}

// --- coalgebra residuals -----------------------------------------------------

inline std::vector<CheckResult> suite_coalgebra(std::uint64_t seed, int cases = 50,
                                                int max_n = 4) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nd(2, max_n), degd(0, 3);

    bool coder = true, morph = true;
    for (int c = 0; c < cases; ++c) {
        int n = nd(rng);
        Word w;
        for (int i = 0; i < n; ++i) w.push_back(Atom{"", i + 1, degd(rng), {}});
        FormalFamily Q{"Q", 1};   // odd coderivation family
        FormalFamily F{"F", 0};   // even morphism family
        if (!coderivation_residual(Q, w).is_zero()) coder = false;
        if (!morphism_residual(F, w).is_zero()) morph = false;
    }
    out.push_back({"coderivation extension is a coderivation", coder,
                   std::to_string(cases) + " words, n <= " + std::to_string(max_n)});
    out.push_back({"morphism extension is a coalgebra morphism", morph,
                   std::to_string(cases) + " words, n <= " + std::to_string(max_n)});
    return out;
}

// --- weight estimates ---------------------------------------------------------

inline std::vector<CheckResult> suite_weights(std::uint64_t seed, long long samples = 100000) {
    std::vector<CheckResult> out;
    AdmissibleGraph one_edge{1, 1, {{1, true, 1}}};
    WeightEstimate w = weight_mc(one_edge, samples, seed);
    bool ok = std::abs(w.mean - 1.0) <= 3 * std::max(w.stderr_, 1e-12) && w.stderr_ < 0.01;
    out.push_back({"single-edge (1,1) weight = 1", ok,
                   detail::fmt("mean %.6f, stderr %.2e", w.mean, w.stderr_)});

    AdmissibleGraph wedge{1, 2, {{1, true, 1}, {1, true, 2}}};
    WeightEstimate ws[3];
    for (int c = 1; c <= 3; ++c) {
        Chart chart{c, 1, 1, 2};
        ws[c - 1] = weight_mc(wedge, chart, samples, formality::detail::mix_seed(seed, c));
    }
    bool charts_ok = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double diff = std::abs(ws[i].mean - ws[j].mean);
            double sig = std::hypot(ws[i].stderr_, ws[j].stderr_);
            if (diff > 3 * sig) charts_ok = false;
        }
    out.push_back({"wedge (1,2) weight chart-independent", charts_ok,
                   detail::fmt("chart1 %.6f, chart3 %.6f", ws[0].mean, ws[2].mean)});

    double quad = testing::wedge_weight_quadrature(Normalization::Ordered, 400);
    double diff = std::abs(quad - ws[2].mean);
    bool quad_ok = diff <= 3 * ws[2].stderr_ + 2e-3;  // quadrature bias allowance
    out.push_back({"wedge weight matches quadrature oracle", quad_ok,
                   detail::fmt("quadrature %.6f, mc %.6f", quad, ws[2].mean)});
    return out;
}

inline std::vector<CheckResult> suite_stokes(int n, int m, std::uint64_t seed,
                                             long long samples = 200000) {
    std::vector<CheckResult> out;
    int const E = 2 * n + m - 3;
    for (auto const& g : enumerate_graphs(n, m, E)) {
        WeightEstimate r = stokes_residual(g, samples, seed ^ graph_hash(g));
        double sig = std::max(r.stderr_, 1e-12);
        bool ok = std::abs(r.mean) <= 3 * sig && r.stderr_ < 0.02;
        std::string name = "stokes residual";
        for (auto const& e : g.edges)
            name += " " + std::to_string(e.src) + (e.to_ground ? "g" : "a") +
                    std::to_string(e.dst);
        out.push_back({name, ok, detail::fmt("residual %.5f, stderr %.2e", r.mean, r.stderr_)});
    }
    return out;
}

inline CheckResult check_triangle_cluster(std::uint64_t seed, long long samples = 400000) {
    // 3-point internal cluster with a directed triangle: dimension 3 = #edges
    AdmissibleGraph tri{3, 0, {{1, false, 2}, {2, false, 3}, {3, false, 1}}};
    WeightEstimate w = internal_weight_mc(tri, samples, seed);
    double sig = std::max(w.stderr_, 1e-12);
    bool ok = std::abs(w.mean) <= 3 * sig;
    return {"triangle cluster integral vanishes", ok,
            detail::fmt("mean %.5f, stderr %.2e", w.mean, w.stderr_)};
}

// --- formality / star-product suites -----------------------------------------

inline std::vector<CheckResult> suite_formality_n1(std::uint64_t seed) {
    std::vector<CheckResult> out;
    WeightProvider provider(20000, seed);
    std::mt19937_64 rng(seed);
    bool vf = true, bv = true;
    for (int c = 0; c < 5; ++c) {
        auto x = testing::random_multivector(rng, 2, 1, 2);
        FormalityResult r = formality_residual({x}, provider);
        if (!r.residual.is_zero()) vf = false;
        auto p = testing::random_multivector(rng, 2, 2, 2);
        FormalityResult rp = formality_residual({p}, provider);
        if (!rp.residual.is_zero()) bv = false;
    }
    out.push_back({"n=1 formality residual vanishes on vector fields", vf, "exact"});
    out.push_back({"n=1 formality residual vanishes on bivectors", bv, "exact"});
    return out;
}

inline std::vector<CheckResult> suite_formality_n2(int d, std::uint64_t seed,
                                                   long long samples = 60000) {
    std::vector<CheckResult> out;
    WeightProvider provider(samples, seed);
    std::mt19937_64 rng(seed);
    bool ok = true;
    double worst = 0, bound = 0;
    for (int c = 0; c < 3; ++c) {
        auto a = testing::random_multivector(rng, d, 2, 1);
        auto b = testing::random_multivector(rng, d, 2, 1);
        FormalityResult r = formality_residual({a, b}, provider);
        double v = r.residual.max_abs_coeff();
        if (v > worst) { worst = v; bound = r.error_bound; }
        if (v > r.error_bound + 1e-9) ok = false;
    }
    out.push_back({"n=2 formality residual within propagated weight error", ok,
                   detail::fmt("worst %.4f, bound %.4f", worst, bound)});
    return out;
}

inline std::vector<CheckResult> suite_associativity(int N, std::uint64_t seed,
                                                    long long samples = 200000,
                                                    double tol = 0.02) {
    std::vector<CheckResult> out;
    MultiVector<double> pi(2, 2);
    pi.add_component({1, 2}, Polynomial<double>::constant(2, 1.0));
    WeightProvider provider(samples, seed);
    auto star = star_product(pi, N, provider);

    // monomial test functions x^a y^b, total degree <= 2
    std::vector<Polynomial<double>> fs;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b) {
            Polynomial<double> p(2);
            p.add_term({a, b}, 1.0);
            fs.push_back(p);
        }
    auto star_apply = [&](int p, Polynomial<double> const& f,
                          Polynomial<double> const& g) {
        return star.at(p).apply({f, g});
    };
    for (int p = 0; p <= N; ++p) {
        double worst = 0;
        for (auto const& f : fs)
            for (auto const& g : fs)
                for (auto const& h : fs) {
                    Polynomial<double> lhs(2), rhs(2);
                    for (int a = 0; a <= p; ++a) {
                        lhs += star_apply(p - a, star_apply(a, f, g), h);
                        rhs += star_apply(p - a, f, star_apply(a, g, h));
                    }
                    double v = (lhs - rhs).max_abs_coeff();
                    if (v > worst) worst = v;
                }
        double limit = p <= 1 ? 1e-12 : tol;
        out.push_back({"associativity defect at hbar^" + std::to_string(p),
                       worst <= limit, detail::fmt("defect %.2e (tol %.2e)", worst, limit)});
    }
    // hbar^1 and hbar^2 against the exponential series of the computed hbar^1
    if (N >= 2) {
        auto h1 = star.at(1);
        double c = 0;
        auto it = h1.terms().find({{1, 0}, {0, 1}});
        if (it != h1.terms().end() && !it->second.is_zero())
            c = it->second.terms().begin()->second;
        auto moyal2 = testing::moyal_term(pi, c, 2);
        double diff = (star.at(2) - moyal2).max_abs_coeff();
        out.push_back({"hbar^2 term matches exponential (Moyal) series",
                       diff <= tol, detail::fmt("max diff %.2e (tol %.2e)", diff, tol)});
    }
    return out;
}

inline std::vector<CheckResult> suite_mc_transport(std::uint64_t seed,
                                                   long long samples = 200000,
                                                   double tol = 0.02) {
    std::vector<CheckResult> out;
    // linear so(3)-type bivector: x3 d1^d2 + x1 d2^d3 + x2 d3^d1
    MultiVector<Rat> pi(3, 2);
    {
        Polynomial<Rat> p1(3), p2(3), p3(3);
        p1.add_term({0, 0, 1}, 1);
        p2.add_term({1, 0, 0}, 1);
        p3.add_term({0, 1, 0}, 1);
        pi.add_component({1, 2}, p1);
        pi.add_component({2, 3}, p2);
        pi.add_component({1, 3}, -p3);  // x2 d3^d1 = -x2 d1^d3
    }
    auto v = FormalSeries<MultiVector<Rat>>::zero(2, MultiVector<Rat>(3, 2));
    v.at(1) = pi;
    auto r = mc_residual(v);
    bool exact = true;
    for (int p = 0; p <= 2; ++p)
        if (!r.at(p).is_zero()) exact = false;
    out.push_back({"so(3) bivector satisfies Maurer-Cartan exactly", exact, "exact Schouten"});

    MultiVector<double> cpi(2, 2);
    cpi.add_component({1, 2}, Polynomial<double>::constant(2, 1.0));
    auto vs = FormalSeries<MultiVector<double>>::zero(2, MultiVector<double>(2, 2));
    vs.at(1) = cpi;
    WeightProvider provider(samples, seed);
    auto w = pushforward(provider, vs, 2);
    auto rd = mc_residual_dpoly(w);
    double worst = 0;
    for (int p = 0; p <= 2; ++p) {
        double m = rd.at(p).max_abs_coeff();
        if (m > worst) worst = m;
    }
    out.push_back({"pushforward of constant pi has bounded MC residual", worst <= tol,
                   detail::fmt("worst coefficient %.4f (tol %.2e)", worst, tol)});
    return out;
}

} // namespace formality::verify
