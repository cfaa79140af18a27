#include <doctest.h>

#include "formality/diffop.hpp"
#include "formality/testing.hpp"
#include "formality/verify.hpp"

using namespace formality;

TEST_CASE("apply evaluates derivative tensors") {
    // A = x * d1 (x) d2 on R^2, A(f,g) = x f_x g_y
    PolyDiffOperator<Rat> a(2, 2);
    a.add_term({{1, 0}, {0, 1}}, Polynomial<Rat>::variable(2, 1));
    auto x = Polynomial<Rat>::variable(2, 1);
    auto y = Polynomial<Rat>::variable(2, 2);
    CHECK(a.apply({x * x, y}) == x * x * Rat(2));
    CHECK(a.apply({y, y}).is_zero());
}

TEST_CASE("mu is associative: [mu,mu]_G = 0") {
    auto mu = PolyDiffOperator<Rat>::mu(2);
    CHECK(gerstenhaber(mu, mu).is_zero());
    // equivalently d_H(mu) = 0
    CHECK(hochschild_dH(mu).is_zero());
}

TEST_CASE("circ against a direct evaluation") {
    // first-order operators: (A1 o A2)(f,g,h) carries the alternating slots
    PolyDiffOperator<Rat> a1(1, 2), a2(1, 2);
    a1.add_term({{1}, {0}}, Polynomial<Rat>::constant(1, Rat(1)));  // f' g
    a2.add_term({{0}, {1}}, Polynomial<Rat>::constant(1, Rat(1)));  // f g'
    auto c = circ(a1, a2);
    auto x = Polynomial<Rat>::variable(1, 1);
    auto f = x * x, g = x, h = x * x * x;
    // slot 1: A1(A2(f,g), h) = (f g')' h ; slot 2: -A1(f, A2(g,h)) deriv on f
    auto direct = a1.apply({a2.apply({f, g}), h}) * Rat(1)
                + a1.apply({f, a2.apply({g, h})}) * Rat(-1);
    CHECK(c.apply({f, g, h}) == direct);
}

TEST_CASE("hochschild differential of the identity is mu") {
    auto id = PolyDiffOperator<Rat>::identity(2);
    auto d = hochschild_dH(id);
    // d(id)(f,g) = f id(g) - id(fg) + id(f) g = fg
    CHECK(d == PolyDiffOperator<Rat>::mu(2));
}

TEST_CASE("vector fields are hochschild cocycles") {
    // X = x d1 as a unary operator
    PolyDiffOperator<Rat> X(2, 1);
    X.add_term({{1, 0}}, Polynomial<Rat>::variable(2, 1));
    CHECK(hochschild_dH(X).is_zero());
}

TEST_CASE("evaluated form of d_H matches the operator form") {
    std::mt19937_64 rng(3);
    auto x = Polynomial<Rat>::variable(2, 1);
    auto y = Polynomial<Rat>::variable(2, 2);
    for (int c = 0; c < 10; ++c) {
        auto a = testing::random_operator(rng, 2, 2, 2, 2);
        auto d = hochschild_dH(a);
        std::vector<Polynomial<Rat>> f{x * y, x + y, y * y};
        auto direct = f[0] * a.apply({f[1], f[2]}) - a.apply({f[0] * f[1], f[2]}) +
                      a.apply({f[0], f[1] * f[2]}) - a.apply({f[0], f[1]}) * f[2];
        CHECK(d.apply(f) == direct);
    }
}

TEST_CASE("hochschild/gerstenhaber suite passes") {
    for (auto const& r : verify::suite_dpoly(31, 40))
        CHECK_MESSAGE(r.passed, r.name);
}

TEST_CASE("q2 on operators is koszul-symmetric with parity = arity mod 2") {
    std::mt19937_64 rng(5);
    for (int c = 0; c < 10; ++c) {
        auto a = testing::random_operator(rng, 2, 1 + c % 3, 1, 1);
        auto b = testing::random_operator(rng, 2, 1 + (c / 2) % 3, 1, 1);
        auto lhs = q2_dpoly(a, b);
        auto rhs = q2_dpoly(b, a);
        if ((a.arity() * b.arity()) % 2) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}
