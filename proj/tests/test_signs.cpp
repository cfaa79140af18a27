#include <doctest.h>

#include "formality/signs.hpp"
#include "formality/verify.hpp"

using namespace formality;

TEST_CASE("arrangement signature counts inversions") {
    CHECK(arrangement_signature({0, 1, 2}).value == 1);
    CHECK(arrangement_signature({1, 0, 2}).value == -1);
    CHECK(arrangement_signature({2, 1, 0}).value == -1);
    CHECK(arrangement_signature({1, 2, 0}).value == 1);
}

TEST_CASE("restricted signature only sees odd entries") {
    // swap of (even, odd) is free; swap of (odd, odd) costs a sign
    CHECK(restricted_signature({1, 0}, {0, 1}).value == 1);
    CHECK(restricted_signature({1, 0}, {1, 1}).value == -1);
    CHECK(restricted_signature({2, 0, 1}, {1, 0, 1}).value == -1);
}

TEST_CASE("koszul sign validates its partition") {
    CHECK_THROWS(koszul_sign({{0, 1}, {1}}, {0, 0, 0}));   // repeated index
    CHECK_THROWS(koszul_sign({{0}}, {0, 0}));              // not covering
    CHECK(koszul_sign({{1}, {0}}, {1, 1}).value == -1);
}

TEST_CASE("quillen sign = signature on odd elements") {
    CHECK(quillen_sign({1, 0, 2}, {1, 1, 0}).value == -1);
    CHECK(quillen_sign({1, 0, 2}, {1, 0, 0}).value == 1);
    CHECK_THROWS(quillen_sign({0, 0}, {1, 1}));
}

TEST_CASE("two-letter unshuffle sign is (-1)^{|x|(|y|-1)}") {
    for (int px = 0; px <= 1; ++px)
        for (int py = 0; py <= 1; ++py)
            CHECK(unshuffle_sign({px, py}).value == sign_pow(px * (py - 1)).value);
}

TEST_CASE("phi carries the unshuffle sign and the shifted degree") {
    auto [sg, deg] = phi({2, 1, 3});
    CHECK(sg.value == unshuffle_sign({2, 1, 3}).value);
    CHECK(deg == (2 - 1) + (1 - 1) + (3 - 1));
}

TEST_CASE("ordered partitions enumerate surjections onto blocks") {
    CHECK(ordered_partitions(3, 1).size() == 1);
    CHECK(ordered_partitions(3, 2).size() == 6);   // 2^3 - 2
    CHECK(ordered_partitions(3, 3).size() == 6);   // 3!
    CHECK(ordered_partitions(2, 3).empty());
}

TEST_CASE("splits with optional tail cover all nonempty I") {
    CHECK(splits_with_optional_tail(3).size() == 7);  // 2^3 - 1
    for (auto const& s : splits_with_optional_tail(4)) {
        CHECK(s.size() == 2);
        CHECK(!s[0].empty());
        CHECK(s[0].size() + s[1].size() == 4);
    }
}

TEST_CASE("sign suite passes") {
    for (auto const& r : verify::suite_signs(42))
        CHECK_MESSAGE(r.passed, r.name);
}
