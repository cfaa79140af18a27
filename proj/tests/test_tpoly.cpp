#include <doctest.h>

#include "formality/multivector.hpp"
#include "formality/testing.hpp"
#include "formality/verify.hpp"

using namespace formality;

namespace {
MultiVector<Rat> vf(int dim, int i, Polynomial<Rat> c) {
    return MultiVector<Rat>::basis(dim, {i}, std::move(c));
}
} // namespace

TEST_CASE("antisymmetric storage of components") {
    MultiVector<Rat> v(2, 2);
    v.add_component({2, 1}, Polynomial<Rat>::constant(2, Rat(1)));
    CHECK(v.component({1, 2}) == Polynomial<Rat>::constant(2, Rat(-1)));
    CHECK(v.component({1, 1}).is_zero());
}

TEST_CASE("wedge is graded-commutative and nilpotent on repeats") {
    auto x = Polynomial<Rat>::variable(2, 1);
    auto a = vf(2, 1, x);
    auto b = vf(2, 2, Polynomial<Rat>::constant(2, Rat(1)));
    CHECK(wedge(a, b) == -wedge(b, a));
    CHECK(wedge(a, a).is_zero());
    CHECK(wedge(wedge(a, b), b).is_zero());  // order 3 on R^2
}

TEST_CASE("schouten bracket of vector fields is the Lie bracket") {
    std::mt19937_64 rng(7);
    for (int c = 0; c < 20; ++c) {
        auto xi = testing::random_vector_field(rng, 3, 2);
        auto eta = testing::random_vector_field(rng, 3, 2);
        CHECK(schouten(xi, eta) == testing::lie_bracket_vf(xi, eta));
    }
}

TEST_CASE("schouten bracket with a function is the directional derivative") {
    auto x = Polynomial<Rat>::variable(2, 1);
    auto y = Polynomial<Rat>::variable(2, 2);
    auto X = vf(2, 1, y) + vf(2, 2, x * x);     // y d1 + x^2 d2
    auto f = MultiVector<Rat>::from_function(x * y);
    auto r = schouten(X, f);
    REQUIRE(r.order() == 0);
    CHECK(r.component({}) == y * y + x * x * x);  // X(xy)
}

TEST_CASE("bullet formula agrees with the defining double sum") {
    std::mt19937_64 rng(11);
    for (int c = 0; c < 10; ++c) {
        std::vector<MultiVector<Rat>> xis{testing::random_vector_field(rng, 3, 1),
                                          testing::random_vector_field(rng, 3, 1)};
        std::vector<MultiVector<Rat>> etas{testing::random_vector_field(rng, 3, 1)};
        CHECK(schouten(testing::wedge_all(xis), testing::wedge_all(etas)) ==
              testing::schouten_double_sum(xis, etas));
    }
}

TEST_CASE("q2 is the graded-symmetric avatar of the shifted bracket") {
    std::mt19937_64 rng(13);
    for (int c = 0; c < 20; ++c) {
        auto a = testing::random_multivector(rng, 2, 1 + (c % 2), 2);
        auto b = testing::random_multivector(rng, 2, 1 + ((c / 2) % 2), 2);
        int k1 = a.order(), k2 = b.order();
        auto lhs = q2_tpoly(a, b);
        auto rhs = bracket_prime(a, b);
        if (((k1 - 1) * k2) % 2) rhs = -rhs;
        CHECK(lhs == rhs);
        // Koszul symmetry with parity k mod 2
        auto sym = q2_tpoly(b, a);
        if ((k1 * k2) % 2) sym = -sym;
        CHECK(lhs == sym);
    }
}

TEST_CASE("bracket suite passes") {
    for (auto const& r : verify::suite_tpoly(21, 40))
        CHECK_MESSAGE(r.passed, r.name);
}
