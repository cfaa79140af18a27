#include <doctest.h>

#include "formality/linfinity.hpp"
#include "formality/testing.hpp"
#include "formality/verify.hpp"

using namespace formality;

TEST_CASE("u_1 of a bivector is its graph operator") {
    MultiVector<double> pi(2, 2);
    pi.add_component({1, 2}, Polynomial<double>::constant(2, 1.0));
    WeightProvider provider(20000, 99);
    UnResult u = u_n(provider, {pi}, 2);
    // single wedge graph, weight 1/4 (grouped), both index assignments folded
    // into the antisymmetric component
    auto x = Polynomial<double>::variable(2, 1);
    auto y = Polynomial<double>::variable(2, 2);
    double v = u.op.apply({x, y}).max_abs_coeff();
    CHECK(v == doctest::Approx(0.25).epsilon(0.05));
    CHECK(u.op.apply({x, x}).is_zero());
}

TEST_CASE("u_n is zero off the dimension count") {
    MultiVector<double> pi(2, 2);
    pi.add_component({1, 2}, Polynomial<double>::constant(2, 1.0));
    WeightProvider provider(1000, 1);
    CHECK(u_n(provider, {pi}, 1).op.is_zero());  // sum k = 2 != 2n+m-2 = 1
    CHECK(u_n(provider, {pi}, 3).op.is_zero());
}

TEST_CASE("star product order 0 and 1") {
    MultiVector<double> pi(2, 2);
    pi.add_component({1, 2}, Polynomial<double>::constant(2, 1.0));
    WeightProvider provider(50000, 7);
    auto star = star_product(pi, 1, provider);
    CHECK(star.at(0) == PolyDiffOperator<double>::mu(2));
    auto x = Polynomial<double>::variable(2, 1);
    auto y = Polynomial<double>::variable(2, 2);
    // hbar coefficient of x*y - y*x is 2*w*pi^{12} = 1/2 up to MC error
    auto comm = star.at(1).apply({x, y}) - star.at(1).apply({y, x});
    CHECK(comm.max_abs_coeff() == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("T_poly Maurer-Cartan residual is exact for so(3)") {
    MultiVector<Rat> pi(3, 2);
    Polynomial<Rat> p1(3), p2(3), p3(3);
    p1.add_term({0, 0, 1}, 1);
    p2.add_term({1, 0, 0}, 1);
    p3.add_term({0, 1, 0}, 1);
    pi.add_component({1, 2}, p1);
    pi.add_component({2, 3}, p2);
    pi.add_component({1, 3}, -p3);
    CHECK(q2_tpoly(pi, pi).is_zero());  // [pi,pi]_S = 0
    auto v = FormalSeries<MultiVector<Rat>>::zero(3, MultiVector<Rat>(3, 2));
    v.at(1) = pi;
    auto r = mc_residual(v);
    for (int p = 0; p <= 3; ++p) CHECK(r.at(p).is_zero());
}

TEST_CASE("a non-Poisson bivector fails Maurer-Cartan") {
    // pi = z^2 d1^d2 + y d2^d3 has Jacobiator -z^2 d1^d2^d3
    MultiVector<Rat> b(3, 2);
    Polynomial<Rat> p(3);
    p.add_term({0, 0, 2}, 1);
    b.add_component({1, 2}, p);
    Polynomial<Rat> q(3);
    q.add_term({0, 1, 0}, 1);
    b.add_component({2, 3}, q);
    CHECK_FALSE(q2_tpoly(b, b).is_zero());
}

TEST_CASE("n=1 formality residual vanishes identically") {
    for (auto const& r : verify::suite_formality_n1(3))
        CHECK_MESSAGE(r.passed, r.name);
}

TEST_CASE("gauge action reduces to the differential at gamma = 0") {
    auto a = PolyDiffOperator<Rat>::identity(2);
    PolyDiffOperator<Rat> zero(2, 2);
    auto dH = [](PolyDiffOperator<Rat> const& x) { return hochschild_dH(x); };
    CHECK(gauge_infinitesimal(a, zero, dH) == hochschild_dH(a));
}

TEST_CASE("gauge action adds the gerstenhaber term") {
    std::mt19937_64 rng(29);
    auto a = testing::random_operator(rng, 2, 1, 1, 1);
    auto g = testing::random_operator(rng, 2, 2, 1, 1);
    auto dH = [](PolyDiffOperator<Rat> const& x) { return hochschild_dH(x); };
    CHECK(gauge_infinitesimal(a, g, dH) == hochschild_dH(a) + gerstenhaber(a, g));
}
