#include <doctest.h>

#include <set>
#include <sstream>

#include "formality/graph.hpp"
#include "formality/testing.hpp"

using namespace formality;

TEST_CASE("enumeration counts") {
    CHECK(enumerate_graphs(1, 2, 2).size() == 1);   // wedge only
    CHECK(enumerate_graphs(2, 0, 2).size() == 1);   // 1<->2
    CHECK(enumerate_graphs(0, 2, 0).size() == 1);   // the empty graph
    CHECK(enumerate_graphs(1, 1, 1).size() == 1);
    CHECK(enumerate_graphs(2, 1, 3).size() == 4);   // choose 3 of 4 candidates
    for (auto const& g : enumerate_graphs(2, 2, 4))
        CHECK(g.is_admissible());
}

TEST_CASE("admissibility rejects loops, range errors and repeats") {
    CHECK(AdmissibleGraph{1, 1, {{1, true, 1}}}.is_admissible());
    CHECK_FALSE(AdmissibleGraph{1, 1, {{1, false, 1}}}.is_admissible());   // loop
    CHECK_FALSE(AdmissibleGraph{1, 1, {{1, true, 2}}}.is_admissible());    // range
    CHECK_FALSE(AdmissibleGraph{1, 1, {{1, true, 1}, {1, true, 1}}}.is_admissible());
}

TEST_CASE("b_gamma of the wedge graph is the bivector operator") {
    // pi = x d1 ^ d2 on R^2; wedge graph contracts both edges to the grounds
    MultiVector<Rat> pi(2, 2);
    pi.add_component({1, 2}, Polynomial<Rat>::variable(2, 1));
    AdmissibleGraph wedge{1, 2, {{1, true, 1}, {1, true, 2}}};
    auto b = b_gamma(wedge, std::vector<MultiVector<Rat>>{pi});
    auto x = Polynomial<Rat>::variable(2, 1);
    auto y = Polynomial<Rat>::variable(2, 2);
    // B(f,g) = pi^{ij} d_i f d_j g = x (f_x g_y - f_y g_x)
    CHECK(b.apply({x, y}) == x);
    CHECK(b.apply({y, x}) == -x);
    CHECK(b.apply({x, x}).is_zero());
}

TEST_CASE("b_gamma vanishing rule: order must match out-degree") {
    MultiVector<Rat> X(2, 1);
    X.add_component({1}, Polynomial<Rat>::constant(2, Rat(1)));
    AdmissibleGraph wedge{1, 2, {{1, true, 1}, {1, true, 2}}};
    CHECK(b_gamma(wedge, std::vector<MultiVector<Rat>>{X}).is_zero());
}

TEST_CASE("aerial edges differentiate the target coefficient") {
    // 2 aerial: alpha1 = d1^d2 wedge to grounds... take the (2,1,3) graph
    // p1 -> q1, p1 -> p2, p2 -> q1 with alpha1 bivector, alpha2 = x^2 d1
    MultiVector<Rat> a1(2, 2);
    a1.add_component({1, 2}, Polynomial<Rat>::constant(2, Rat(1)));
    MultiVector<Rat> a2(2, 1);
    auto x = Polynomial<Rat>::variable(2, 1);
    a2.add_component({1}, x * x);
    AdmissibleGraph g{2, 1, {{1, true, 1}, {1, false, 2}, {2, true, 1}}};
    auto b = b_gamma(g, std::vector<MultiVector<Rat>>{a1, a2});
    // B(f) = a1^{ij} d_j(a2^k) d_i d_k f; only (i,j,k) = (2,1,1) survives:
    // a1^{21} d_1(x^2) = -2x, acting as d_2 d_1 on f
    auto y = Polynomial<Rat>::variable(2, 2);
    auto f = x * x * y;
    auto direct = -(x * Rat(2)) * f.derivative(1).derivative(2);
    CHECK(b.apply({f}) == direct);
}

TEST_CASE("reordering the edge list flips b_gamma by the signature") {
    MultiVector<Rat> pi(2, 2);
    pi.add_component({1, 2}, Polynomial<Rat>::variable(2, 2));
    AdmissibleGraph g{1, 2, {{1, true, 1}, {1, true, 2}}};
    AdmissibleGraph swapped{1, 2, {{1, true, 2}, {1, true, 1}}};
    Sign s = reorder_sign(g, {1, 0});
    CHECK(s.value == -1);
    // vertex tuples follow the edge order, so the swapped graph picks up s
    auto b = b_gamma(g, std::vector<MultiVector<Rat>>{pi});
    auto b2 = b_gamma(swapped, std::vector<MultiVector<Rat>>{pi});
    CHECK(b2 == b * Rat(s.value));
}

TEST_CASE("graph text format round-trips") {
    for (auto const& g : enumerate_graphs(2, 2, 4)) {
        std::stringstream ss;
        write_graph(ss, g);
        AdmissibleGraph h = read_graph(ss);
        CHECK(g == h);
        CHECK(graph_hash(g) == graph_hash(h));
    }
}

TEST_CASE("graph hashes separate distinct graphs in the acceptance set") {
    std::set<std::uint64_t> hashes;
    size_t count = 0;
    for (auto const& g : enumerate_graphs(2, 2, 4)) {
        hashes.insert(graph_hash(g));
        ++count;
    }
    CHECK(hashes.size() == count);
}
