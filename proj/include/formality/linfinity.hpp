#pragma once

#include <stdexcept>
#include <vector>

#include "diffop.hpp"
#include "graph.hpp"
#include "multivector.hpp"
#include "signs.hpp"
#include "weights.hpp"
#include "word.hpp"

namespace formality {

// Formal series in hbar, truncated at order N: coefficients[p] is the
// hbar^p coefficient.  T is MultiVector<..> or PolyDiffOperator<..>.
template <typename T>
struct FormalSeries {
    int truncation_order = 0;
    std::vector<T> coefficients;  // size truncation_order + 1

    static FormalSeries zero(int N, T const& model) {
        FormalSeries s;
        s.truncation_order = N;
        s.coefficients.assign(N + 1, model);
        return s;
    }
    T const& at(int p) const { return coefficients.at(p); }
    T& at(int p) { return coefficients.at(p); }
};

// Taylor coefficient U_n of the graph expansion, evaluated on n multivectors
// at the (unique) compatible arity: sum over admissible graphs of
// (grouped weight) * B_Gamma.  Also reports the propagated weight error as a
// bound on each coefficient.
struct UnResult {
    PolyDiffOperator<double> op;
    double error_bound = 0;
};

inline UnResult u_n(WeightProvider const& weights,
                    std::vector<MultiVector<double>> const& alphas, int m) {
    int const n = static_cast<int>(alphas.size());
    if (n < 1 || m < 1) throw std::invalid_argument("u_n: need n >= 1, m >= 1");
    int const d = alphas[0].dim();
    int sum_k = 0;
    for (auto const& a : alphas) sum_k += a.order();
    UnResult out{PolyDiffOperator<double>(d, m), 0.0};
    if (sum_k != 2 * n + m - 2) return out;  // weight vanishes off-dimension
    for (auto const& g : enumerate_graphs(n, m, sum_k)) {
        PolyDiffOperator<double> b = b_gamma(g, alphas);
        if (b.is_zero()) continue;           // skip the weight integral
        WeightEstimate w = weights.get(g);
        out.op += b * w.mean;
        out.error_bound += b.max_abs_coeff() * w.stderr_;
    }
    return out;
}

// Star product mu + sum_{p=1..N} hbar^p/p! U_p(pi,...,pi) for a bivector pi.
inline FormalSeries<PolyDiffOperator<double>> star_product(
    MultiVector<double> const& pi, int N, WeightProvider const& weights) {
    if (pi.order() != 2) throw std::invalid_argument("star_product: input must be a bivector");
    int const d = pi.dim();
    auto star = FormalSeries<PolyDiffOperator<double>>::zero(N, PolyDiffOperator<double>(d, 2));
    star.at(0) = PolyDiffOperator<double>::mu(d);
    Rat fact = 1;
    for (int p = 1; p <= N; ++p) {
        fact *= p;
        std::vector<MultiVector<double>> args(p, pi);
        UnResult u = u_n(weights, args, 2);
        star.at(p) = u.op * (1.0 / scalar_traits<Rat>::to_double(fact));
    }
    return star;
}

// Pushforward of a Maurer-Cartan element: w_p = sum over ways of building
// hbar^p from coefficients of v, weighted by 1/n!.  Arity m is the target
// operator arity (2 for star products).
inline FormalSeries<PolyDiffOperator<double>> pushforward(
    WeightProvider const& weights, FormalSeries<MultiVector<double>> const& v, int m) {
    int const N = v.truncation_order;
    int const d = v.coefficients.empty() ? 1 : v.coefficients[0].dim();
    auto w = FormalSeries<PolyDiffOperator<double>>::zero(N, PolyDiffOperator<double>(d, m));
    // compositions of p into n parts >= 1, n = 1..p
    for (int p = 1; p <= N; ++p) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int left) -> void {
            if (left == 0) { comps.push_back(cur); return; }
            for (int v2 = 1; v2 <= left; ++v2) {
                cur.push_back(v2);
                self(self, left - v2);
                cur.pop_back();
            }
        };
        rec(rec, p);
        for (auto const& comp : comps) {
            int const n = static_cast<int>(comp.size());
            std::vector<MultiVector<double>> args;
            bool ok = true;
            for (int part : comp) {
                if (part > v.truncation_order || v.at(part).is_zero()) { ok = false; break; }
                args.push_back(v.at(part));
            }
            if (!ok) continue;
            UnResult u = u_n(weights, args, m);
            double fac = 1.0 / scalar_traits<Rat>::to_double(rat_factorial(n));
            w.at(p) += u.op * fac;
        }
    }
    return w;
}

// Generalized Maurer-Cartan residual on T_poly (Q_1 = 0, Q_{>=3} = 0):
// residual_p = (1/2) sum_{a+b=p} Q_2(v_a . v_b).
template <typename R>
FormalSeries<MultiVector<R>> mc_residual(FormalSeries<MultiVector<R>> const& v) {
    int const N = v.truncation_order;
    int const d = v.coefficients.empty() ? 1 : v.coefficients[0].dim();
    int order = 0;
    for (auto const& c : v.coefficients)
        if (!c.is_zero()) order = c.order();
    int const out_order = order > 0 ? 2 * order - 1 : 0;
    auto r = FormalSeries<MultiVector<R>>::zero(N, MultiVector<R>(d, out_order));
    for (int p = 2; p <= N; ++p)
        for (int a = 1; a < p; ++a) {
            auto const& va = v.at(a);
            auto const& vb = v.at(p - a);
            if (va.is_zero() || vb.is_zero()) continue;
            r.at(p) += q2_tpoly(va, vb) * (R(1) / R(2));
        }
    return r;
}

// Maurer-Cartan residual on D_poly for a deformation w of mu (w has arity 2,
// no hbar^0 part): residual_p = Q'_1(w_p) + (1/2) sum_{a+b=p} Q'_2(w_a . w_b).
inline FormalSeries<PolyDiffOperator<double>> mc_residual_dpoly(
    FormalSeries<PolyDiffOperator<double>> const& w) {
    int const N = w.truncation_order;
    int const d = w.coefficients.empty() ? 1 : w.coefficients[0].dim();
    auto r = FormalSeries<PolyDiffOperator<double>>::zero(N, PolyDiffOperator<double>(d, 3));
    for (int p = 1; p <= N; ++p) {
        if (!w.at(p).is_zero()) r.at(p) += q1_dpoly(w.at(p));
        for (int a = 1; a < p; ++a) {
            if (w.at(a).is_zero() || w.at(p - a).is_zero()) continue;
            r.at(p) += q2_dpoly(w.at(a), w.at(p - a)) * 0.5;
        }
    }
    return r;
}

// LHS - RHS of the L-infinity morphism equation for the graph expansion,
// evaluated on homogeneous multivectors alpha_1..alpha_n.  The output arity
// is forced by the dimension count: m_out = sum k_i - 2n + 3.
//
//   Q'_1 U_n(a_1...a_n) + 1/2 sum_{I,J != 0} eps(I,J) Q'_2(U_I(a_I).U_J(a_J))
//     - 1/2 sum_{k != l} eps(k,l,rest) U_{n-1}(Q_2(a_k.a_l).a_rest)
//
// (the Q_1 sum on the right vanishes: T_poly carries no differential).
struct FormalityResult {
    PolyDiffOperator<double> residual;
    double error_bound = 0;
};

inline FormalityResult formality_residual(std::vector<MultiVector<Rat>> const& alphas,
                                          WeightProvider const& weights) {
    int const n = static_cast<int>(alphas.size());
    if (n < 1) throw std::invalid_argument("formality_residual: need n >= 1");
    int const d = alphas[0].dim();
    int sum_k = 0;
    DegreeVector parities;
    std::vector<MultiVector<double>> dalphas;
    for (auto const& a : alphas) {
        sum_k += a.order();
        parities.push_back(a.order() % 2);  // g[1]-parity of a k-vector is k mod 2
        dalphas.push_back(a.convert<double>());
    }
    int const m_out = sum_k - 2 * n + 3;
    if (m_out < 1) throw std::invalid_argument("formality_residual: output arity < 1");
    FormalityResult out{PolyDiffOperator<double>(d, m_out), 0.0};

    {   // Q'_1 U_n
        int const m = m_out - 1;
        if (m >= 1) {
            UnResult u = u_n(weights, dalphas, m);
            out.residual += q1_dpoly(u.op);
            out.error_bound += (m + 2) * u.error_bound;  // d_H has m+2 summands
        }
    }
    for (auto const& split : splits_with_optional_tail(n)) {  // pairs (I,J)
        if (split[1].empty()) continue;
        auto const& I = split[0];
        auto const& J = split[1];
        int eI = 0, eJ = 0;
        for (int i : I) eI += alphas[i].order();
        for (int j : J) eJ += alphas[j].order();
        int const mI = eI - 2 * static_cast<int>(I.size()) + 2;
        int const mJ = eJ - 2 * static_cast<int>(J.size()) + 2;
        if (mI < 1 || mJ < 1) continue;
        Sign eps = koszul_sign(split, parities);
        std::vector<MultiVector<double>> aI, aJ;
        for (int i : I) aI.push_back(dalphas[i]);
        for (int j : J) aJ.push_back(dalphas[j]);
        UnResult uI = u_n(weights, aI, mI);
        UnResult uJ = u_n(weights, aJ, mJ);
        PolyDiffOperator<double> term = q2_dpoly(uI.op, uJ.op);
        out.residual += term * (0.5 * eps.value);
        out.error_bound += 0.5 * (uI.error_bound * uJ.op.max_abs_coeff() +
                                  uJ.error_bound * uI.op.max_abs_coeff()) *
                           2 * (mI + mJ);  // coarse bound over circ summands
    }
    if (n >= 2) {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                if (k == l) continue;
                std::vector<int> perm{k, l};
                for (int i = 0; i < n; ++i)
                    if (i != k && i != l) perm.push_back(i);
                Sign eps = quillen_sign(perm, parities);
                MultiVector<Rat> q2 = q2_tpoly(alphas[k], alphas[l]);
                if (q2.is_zero()) continue;
                std::vector<MultiVector<double>> args{q2.convert<double>()};
                for (size_t i = 2; i < perm.size(); ++i) args.push_back(dalphas[perm[i]]);
                UnResult u = u_n(weights, args, m_out);
                out.residual += u.op * (-0.5 * eps.value);
                out.error_bound += 0.5 * u.error_bound;
            }
    }
    return out;
}

// Infinitesimal gauge action alpha . gamma = d(alpha) + [alpha, gamma]_G.
// The differential convention (d = -[mu,.]_G or d_H = -Q'_1) is supplied by
// the caller.
template <typename R, typename Differential>
PolyDiffOperator<R> gauge_infinitesimal(PolyDiffOperator<R> const& alpha,
                                        PolyDiffOperator<R> const& gamma,
                                        Differential&& differential) {
    return differential(alpha) + gerstenhaber(alpha, gamma);
}

} // namespace formality
