#include <doctest.h>

#include "formality/faces.hpp"
#include "formality/verify.hpp"
#include "formality/weights.hpp"

using namespace formality;

TEST_CASE("face enumeration counts") {
    CHECK(enumerate_faces(1, 2).size() == 6);
    CHECK(enumerate_faces(2, 1).size() == 9);
    CHECK(enumerate_faces(0, 2).empty());  // the (0,2) space is a point
}

TEST_CASE("face orientation signs") {
    CHECK(face_sign({1, {1, 2}, 0, 0}).value == -1);
    CHECK(face_sign({2, {}, 0, 2}).value == 1);
    CHECK(face_sign({2, {1}, 1, 1}).value == -1);
}

TEST_CASE("type-1 collapse splits internal and quotient graphs") {
    // 2<->1 pair inside a (3,1) graph
    AdmissibleGraph g{3, 1, {{1, false, 2}, {2, false, 1}, {3, true, 1}, {3, false, 1}}};
    auto cp = collapse_type1(g, {1, 2});
    REQUIRE(cp.has_value());
    CHECK(cp->inner.n == 2);
    CHECK(cp->inner.edges.size() == 2);
    CHECK(cp->outer.n == 2);
    CHECK(cp->outer.m == 1);
    // p3 keeps its ground edge and now points at the collapsed vertex p2'
    REQUIRE(cp->outer.edges.size() == 2);
    CHECK(cp->outer.edges[0] == GraphEdge{1, true, 1});
    CHECK(cp->outer.edges[1] == GraphEdge{1, false, 2});
    CHECK_FALSE(cp->vanishing_cluster);
    auto big = collapse_type1(g, {1, 2, 3});
    REQUIRE(big.has_value());
    CHECK(big->vanishing_cluster);
}

TEST_CASE("type-1 collapse without an internal edge is a no-term") {
    AdmissibleGraph g{2, 1, {{1, true, 1}, {2, true, 1}}};
    CHECK_FALSE(collapse_type1(g, {1, 2}).has_value());
}

TEST_CASE("type-2 collapse relabels grounds around the insertion slot") {
    // p1 -> q2 collapses with segment {q2}; p2 -> q1 and p2 -> p1 stay outside
    AdmissibleGraph g{2, 3, {{1, true, 2}, {2, true, 1}, {2, false, 1}}};
    auto cp = collapse_type2(g, {1}, 1, 1);
    REQUIRE(cp.has_value());
    CHECK(cp->inner.n == 1);
    CHECK(cp->inner.m == 1);
    REQUIRE(cp->inner.edges.size() == 1);
    CHECK(cp->inner.edges[0] == GraphEdge{1, true, 1});
    CHECK(cp->outer.n == 1);
    CHECK(cp->outer.m == 3);
    REQUIRE(cp->outer.edges.size() == 2);
    CHECK(cp->outer.edges[0] == GraphEdge{1, true, 1});
    CHECK(cp->outer.edges[1] == GraphEdge{1, true, 2});  // aimed at the new ground
}

TEST_CASE("cluster-exiting edges kill a type-2 face") {
    AdmissibleGraph g{2, 2, {{1, true, 2}, {1, false, 2}, {2, true, 1}, {2, true, 2}}};
    CHECK_FALSE(collapse_type2(g, {1}, 1, 1).has_value());  // 1 -> p2 exits
}

TEST_CASE("orientation multiplicity is the factorial ratio") {
    AdmissibleGraph a{1, 1, {{1, true, 1}}};
    AdmissibleGraph b{1, 2, {{1, true, 1}, {1, true, 2}}};
    CHECK(orientation_multiplicity(a, b) == Rat(1, 3));  // 1!2!/3!
    AdmissibleGraph e{0, 2, {}};
    CHECK(orientation_multiplicity(e, a) == Rat(1));
}

TEST_CASE("two-point cluster with one internal edge has weight one") {
    AdmissibleGraph g{2, 0, {{1, false, 2}}};
    WeightEstimate w = internal_weight_mc(g, 5000, 3);
    CHECK(w.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.stderr_ < 1e-12);
}

TEST_CASE("face integrals of the (1,2) one-edge graph cancel in pairs") {
    AdmissibleGraph g{1, 2, {{1, true, 1}}};
    BoundaryFace inner_face{2, {1}, 0, 1};  // p1 + q1 collapse
    BoundaryFace outer_face{2, {}, 0, 2};   // q1, q2 merge
    WeightEstimate a = face_integral(g, inner_face, 20000, 4);
    WeightEstimate b = face_integral(g, outer_face, 20000, 4);
    CHECK(a.mean == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(b.mean == doctest::Approx(1.0).epsilon(1e-9));
    WeightEstimate r = stokes_residual(g, 20000, 4);
    CHECK(std::abs(r.mean) < 1e-9);
}

TEST_CASE("stokes residuals vanish for the (2,1) two-edge graphs") {
    for (auto const& r : verify::suite_stokes(2, 1, 321, 60000))
        CHECK_MESSAGE(r.passed, r.name << " " << r.detail);
}

TEST_CASE("triangle cluster integral vanishes") {
    auto r = verify::check_triangle_cluster(77, 150000);
    CHECK_MESSAGE(r.passed, r.detail);
}
