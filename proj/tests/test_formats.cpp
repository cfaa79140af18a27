#include <doctest.h>

#include <sstream>

#include "formality/io.hpp"
#include "formality/testing.hpp"

using namespace formality;

TEST_CASE("multivector text round-trips exactly") {
    std::mt19937_64 rng(19);
    for (int c = 0; c < 20; ++c) {
        auto v = testing::random_multivector(rng, 3, c % 4, 2);
        std::stringstream ss;
        write_multivector(ss, v);
        auto w = read_multivector<Rat>(ss);
        CHECK(v == w);
    }
}

TEST_CASE("order-zero multivectors use the unit placeholder") {
    auto f = MultiVector<Rat>::from_function(Polynomial<Rat>::variable(2, 1));
    std::stringstream ss;
    write_multivector(ss, f);
    CHECK(ss.str().find("* 1") != std::string::npos);
    CHECK(read_multivector<Rat>(ss) == f);
}

TEST_CASE("operator text round-trips exactly") {
    std::mt19937_64 rng(23);
    for (int c = 0; c < 20; ++c) {
        auto a = testing::random_operator(rng, 2, 1 + c % 3, 2, 2);
        std::stringstream ss;
        write_operator(ss, a);
        auto b = read_operator<Rat>(ss);
        CHECK(a == b);
    }
}

TEST_CASE("double-precision payloads survive a round-trip") {
    PolyDiffOperator<double> a(2, 2);
    a.add_term({{1, 0}, {0, 1}}, Polynomial<double>::constant(2, 0.1234567890123456789));
    std::stringstream ss;
    write_operator(ss, a);
    auto b = read_operator<double>(ss);
    CHECK(a == b);
}

TEST_CASE("malformed input is rejected") {
    std::stringstream empty;
    CHECK_THROWS(read_multivector<Rat>(empty));
    std::stringstream bad("multivector dim=2 order=1\nnonsense\n");
    CHECK_THROWS(read_multivector<Rat>(bad));
    std::stringstream badop("operator dim=2 arity=2\n1*x^[0,0] | 0 0\n");  // arity 1 term
    CHECK_THROWS(read_operator<Rat>(badop));
}

TEST_CASE("rational coefficients keep exact denominators") {
    MultiVector<Rat> v(2, 1);
    Polynomial<Rat> p(2);
    p.add_term({1, 1}, Rat(1) / 3);
    v.add_component({2}, p);
    std::stringstream ss;
    write_multivector(ss, v);
    CHECK(ss.str().find("1/3") != std::string::npos);
    CHECK(read_multivector<Rat>(ss) == v);
}
