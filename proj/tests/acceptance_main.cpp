// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <cstdio>
#include <vector>

#include "formality/verify.hpp"

using namespace formality;

namespace {

bool all_pass(std::vector<verify::CheckResult> const& rs, std::string* why = nullptr) {
    for (auto const& r : rs)
        if (!r.passed) {
            if (why) *why = r.name + " [" + r.detail + "]";
            return false;
        }
    return true;
}

struct Gate {
    int failures = 0;

    void criterion(int no, char const* what, bool ok, std::string const& why = "") {
        std::printf("criterion %2d: %s - %s%s%s\n", no, ok ? "PASS" : "FAIL", what,
                    why.empty() ? "" : ": ", why.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

} // namespace

int main() {
    Gate gate;
    std::string why;

    why.clear();
    gate.criterion(1, "exact sign suite (unshuffle, block swap)",
                   all_pass(verify::suite_signs(101, 200), &why), why);

    why.clear();
    gate.criterion(2, "bracket suite (antisymmetry, Jacobi, two-path equality)",
                   all_pass(verify::suite_tpoly(102, 100), &why), why);

    why.clear();
    gate.criterion(3, "Hochschild/Gerstenhaber suite (d_H^2, Q'_1, Leibniz)",
                   all_pass(verify::suite_dpoly(103, 100), &why), why);

    why.clear();
    gate.criterion(4, "coalgebra residuals vanish up to n=4",
                   all_pass(verify::suite_coalgebra(104, 50, 4), &why), why);

    auto weights = verify::suite_weights(105, 100000);
    gate.criterion(5, "analytic weight w((1,1) one-edge) = 1", weights.at(0).passed,
                   weights.at(0).detail);
    gate.criterion(6, "wedge weight chart-independent and matches quadrature",
                   weights.at(1).passed && weights.at(2).passed,
                   weights.at(1).detail + "; " + weights.at(2).detail);

    {
        auto s12 = verify::suite_stokes(1, 2, 106, 200000);
        auto s21 = verify::suite_stokes(2, 1, 107, 200000);
        s12.insert(s12.end(), s21.begin(), s21.end());
        why.clear();
        gate.criterion(7, "Stokes residuals vanish for (1,2) and (2,1) graphs",
                       all_pass(s12, &why), why);
    }

    {
        auto tri = verify::check_triangle_cluster(108, 400000);
        gate.criterion(8, "triangle cluster integral vanishes", tri.passed, tri.detail);
    }

    why.clear();
    gate.criterion(9, "n=1 formality residual is the exact zero operator",
                   all_pass(verify::suite_formality_n1(109), &why), why);

    why.clear();
    gate.criterion(10, "star-product associativity at N=2 (constant pi, R^2)",
                   all_pass(verify::suite_associativity(2, 110, 400000, 0.02), &why), why);

    why.clear();
    gate.criterion(11, "Maurer-Cartan transport (so(3) exact, pushforward bounded)",
                   all_pass(verify::suite_mc_transport(111, 400000, 0.02), &why), why);

    return gate.failures == 0 ? 0 : 1;
}
