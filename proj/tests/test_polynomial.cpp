#include <doctest.h>

#include "formality/polynomial.hpp"

using namespace formality;

TEST_CASE("ring operations on sparse polynomials") {
    auto x = Polynomial<Rat>::variable(2, 1);
    auto y = Polynomial<Rat>::variable(2, 2);
    auto p = x * x + y * Rat(3);      // x^2 + 3y
    auto q = p - p;
    CHECK(q.is_zero());
    CHECK((p * p).terms().size() == 3);  // x^4 + 6x^2 y + 9y^2
    CHECK(p.derivative(1) == x * Rat(2));
    CHECK(p.derivative(2) == Polynomial<Rat>::constant(2, Rat(3)));
}

TEST_CASE("zero coefficients are never stored") {
    Polynomial<Rat> p(1);
    p.add_term({2}, Rat(5));
    p.add_term({2}, Rat(-5));
    CHECK(p.is_zero());
    CHECK(p.terms().empty());
}

TEST_CASE("multi-index derivative iterates coordinates") {
    auto x = Polynomial<Rat>::variable(2, 1);
    auto y = Polynomial<Rat>::variable(2, 2);
    auto p = x * x * y;               // x^2 y
    CHECK(p.derivative({1, 1}) == x * Rat(2));
    CHECK(p.derivative({3, 0}).is_zero());
}

TEST_CASE("dimension mismatches are rejected") {
    Polynomial<Rat> p(2), q(3);
    CHECK_THROWS(p + q);
    CHECK_THROWS(p.add_term({1}, Rat(1)));
    CHECK_THROWS(Polynomial<Rat>::variable(2, 3));
}
