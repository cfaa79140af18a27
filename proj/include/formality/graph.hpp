#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multivector.hpp"
#include "diffop.hpp"
#include "signs.hpp"

namespace formality {

// Directed edge from an aerial vertex; targets are aerial or ground (1-based).
struct GraphEdge {
    int src = 1;
    bool to_ground = false;
    int dst = 1;

    // canonical target key: ground targets sort before aerial, each by index
    auto key() const { return std::tuple(src, to_ground ? 0 : 1, dst); }
    bool operator==(GraphEdge const&) const = default;
    bool operator<(GraphEdge const& o) const { return key() < o.key(); }
};

// n aerial + m ground vertices with an ordered edge list, all edges sourced
// at aerial vertices, no loops.  Enumeration additionally rules out repeated
// edges; collapse outputs may carry them (their weight forms vanish).
struct AdmissibleGraph {
    int n = 0, m = 0;
    std::vector<GraphEdge> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    int expected_edge_count() const { return 2 * n + m - 2; }

    std::vector<int> out_degrees() const {
        std::vector<int> k(n, 0);
        for (auto const& e : edges) ++k[e.src - 1];
        return k;
    }

    bool is_admissible() const {
        for (auto const& e : edges) {
            if (e.src < 1 || e.src > n) return false;
            if (e.to_ground ? (e.dst < 1 || e.dst > m)
                            : (e.dst < 1 || e.dst > n || e.dst == e.src))
                return false;
        }
        for (size_t i = 0; i < edges.size(); ++i)
            for (size_t j = i + 1; j < edges.size(); ++j)
                if (edges[i] == edges[j]) return false;
        return true;
    }

    bool operator==(AdmissibleGraph const&) const = default;
    bool operator<(AdmissibleGraph const& o) const {
        return std::tie(n, m, edges) < std::tie(o.n, o.m, o.edges);
    }
};

// All admissible edge sets of the given size, edges in canonical compatible
// order (grouped by source; ground targets before aerial, by index).
inline std::vector<AdmissibleGraph> enumerate_graphs(int n, int m, int edge_count) {
    std::vector<GraphEdge> candidates;
    for (int s = 1; s <= n; ++s) {
        for (int g = 1; g <= m; ++g) candidates.push_back({s, true, g});
        for (int a = 1; a <= n; ++a)
            if (a != s) candidates.push_back({s, false, a});
    }
    std::vector<AdmissibleGraph> out;
    int const c = static_cast<int>(candidates.size());
    if (edge_count < 0 || edge_count > c) return out;
    std::vector<int> pick(edge_count);
    for (int i = 0; i < edge_count; ++i) pick[i] = i;
    for (;;) {
        AdmissibleGraph g{n, m, {}};
        for (int i : pick) g.edges.push_back(candidates[i]);
        out.push_back(std::move(g));
        int i = edge_count - 1;
        while (i >= 0 && pick[i] == c - edge_count + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < edge_count; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

// Sign relating the operator of a reordered edge list to the canonical one:
// B_{sigma(Gamma)} picks up the plain signature of sigma.
inline Sign reorder_sign(AdmissibleGraph const&, std::vector<int> const& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (int i : sigma) {
        if (i < 0 || i >= static_cast<int>(sigma.size()) || seen[i])
            throw std::invalid_argument("edge permutation is not a bijection");
        seen[i] = true;
    }
    return arrangement_signature(sigma);
}

// B_Gamma(alpha_1...alpha_n): contract multivector indices along edges;
// derivatives land on the coefficient of the edge's target.  Zero unless
// order(alpha_j) equals the out-degree of p_j for every j.
template <typename R>
PolyDiffOperator<R> b_gamma(AdmissibleGraph const& g,
                            std::vector<MultiVector<R>> const& alphas) {
    if (static_cast<int>(alphas.size()) != g.n)
        throw std::invalid_argument("b_gamma: need one multivector per aerial vertex");
    if (g.m < 1) throw std::invalid_argument("b_gamma: graphs need at least one ground vertex");
    if (g.n < 1) throw std::invalid_argument("b_gamma: graphs need at least one aerial vertex");
    int const d = alphas[0].dim();
    for (auto const& a : alphas)
        if (a.dim() != d) throw std::invalid_argument("b_gamma: dimension mismatch");
    PolyDiffOperator<R> out(d, g.m);
    auto k = g.out_degrees();
    for (int j = 0; j < g.n; ++j)
        if (alphas[j].order() != k[j]) return out;  // vanishing rule
    int const E = g.edge_count();
    std::vector<int> idx(E, 1);
    std::vector<std::vector<int>> out_edges(g.n);  // edge positions per source
    for (int e = 0; e < E; ++e) out_edges[g.edges[e].src - 1].push_back(e);
    for (;;) {
        // derivative multi-indices per target vertex
        std::vector<std::vector<int>> d_air(g.n, std::vector<int>(d, 0));
        std::vector<std::vector<int>> d_gnd(g.m, std::vector<int>(d, 0));
        for (int e = 0; e < E; ++e) {
            auto const& ed = g.edges[e];
            (ed.to_ground ? d_gnd[ed.dst - 1] : d_air[ed.dst - 1])[idx[e] - 1] += 1;
        }
        Polynomial<R> coeff = Polynomial<R>::constant(d, R(1));
        for (int j = 0; j < g.n && !coeff.is_zero(); ++j) {
            std::vector<int> tuple;
            for (int e : out_edges[j]) tuple.push_back(idx[e]);
            Polynomial<R> comp = alphas[j].component(tuple);
            if (comp.is_zero()) { coeff = Polynomial<R>(d); break; }
            coeff = coeff * comp.derivative(d_air[j]);
        }
        if (!coeff.is_zero()) out.add_term(d_gnd, coeff);
        int e = E - 1;
        while (e >= 0 && idx[e] == d) idx[e--] = 1;
        if (e < 0) break;
        ++idx[e];
    }
    return out;
}

// --- text format: header "n m E", then E lines "src kind idx" (kind g|a) ---

inline void write_graph(std::ostream& os, AdmissibleGraph const& g) {
    os << g.n << ' ' << g.m << ' ' << g.edge_count() << '\n';
    for (auto const& e : g.edges)
        os << e.src << ' ' << (e.to_ground ? 'g' : 'a') << ' ' << e.dst << '\n';
}

inline AdmissibleGraph read_graph(std::istream& is) {
    AdmissibleGraph g;
    int ec = 0;
    if (!(is >> g.n >> g.m >> ec)) throw std::runtime_error("graph header parse error");
    for (int i = 0; i < ec; ++i) {
        GraphEdge e;
        char kind = 0;
        if (!(is >> e.src >> kind >> e.dst)) throw std::runtime_error("graph edge parse error");
        if (kind != 'g' && kind != 'a') throw std::runtime_error("graph edge kind must be g|a");
        e.to_ground = (kind == 'g');
        g.edges.push_back(e);
    }
    return g;
}

inline std::uint64_t graph_hash(AdmissibleGraph const& g) {
    std::ostringstream oss;
    write_graph(oss, g);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : oss.str()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace formality
