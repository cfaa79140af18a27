#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"
#include "signs.hpp"

namespace formality {

// Codimension-1 boundary face of the compactified configuration space.
// type 1: an aerial cluster S (|S| >= 2) collapses to an aerial point.
// type 2: a cluster of n1 aerial points S plus the consecutive ground segment
//         q_{l+1}..q_{l+m1} collapses to a ground point inserted at slot l+1.
struct BoundaryFace {
    int kind = 1;              // 1 or 2
    std::vector<int> S;        // aerial vertices (1-based, sorted)
    int l = 0, m1 = 0;         // type 2 only

    int n1() const { return static_cast<int>(S.size()); }
};

inline std::vector<BoundaryFace> enumerate_faces(int n, int m) {
    std::vector<BoundaryFace> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> S;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) S.push_back(i + 1);
        int const n1 = static_cast<int>(S.size());
        if (n1 >= 2) out.push_back({1, S, 0, 0});
        for (int m1 = 0; m1 <= m; ++m1) {
            if (2 * n1 + m1 < 2) continue;            // face must exist
            if (n1 + m1 >= n + m) continue;           // something must remain
            for (int l = 0; l + m1 <= m; ++l)
                out.push_back({2, S, l, m1});
        }
    }
    return out;
}

// Orientation of the face relative to the product of the factor orientations.
inline Sign face_sign(BoundaryFace const& f) {
    if (f.kind == 1) return Sign(-1);
    return sign_pow(f.l * f.m1 + f.l + f.m1);
}

struct CollapsedPair {
    AdmissibleGraph inner;     // graph on the collapsing cluster
    AdmissibleGraph outer;     // quotient graph
    Sign edge_shuffle{1};      // sign of sorting the edge list internal-first
    bool vanishing_cluster = false;  // type-1 clusters with |S| >= 3
    int insertion_slot = 0;    // type 2: the collapsed ground lands at l+1
};

namespace detail {
inline Sign internal_first_sign(std::vector<bool> const& is_internal) {
    // signature of the stable permutation moving internal edges to the front
    std::vector<int> arrangement;
    for (size_t i = 0; i < is_internal.size(); ++i)
        if (is_internal[i]) arrangement.push_back(static_cast<int>(i));
    for (size_t i = 0; i < is_internal.size(); ++i)
        if (!is_internal[i]) arrangement.push_back(static_cast<int>(i));
    return arrangement_signature(arrangement);
}

inline int relabel(std::vector<int> const& sorted_set, int v) {
    auto it = std::lower_bound(sorted_set.begin(), sorted_set.end(), v);
    return static_cast<int>(it - sorted_set.begin()) + 1;
}
} // namespace detail

// Aerial cluster S collapses to a new aerial point p.  For |S| = 2 the face
// contributes only when the internal edge exists; otherwise no-term.
inline std::optional<CollapsedPair> collapse_type1(AdmissibleGraph const& g,
                                                   std::vector<int> S) {
    std::sort(S.begin(), S.end());
    int const n1 = static_cast<int>(S.size());
    if (n1 < 2) throw std::invalid_argument("collapse_type1: |S| must be >= 2");
    auto in_S = [&](int v) { return std::binary_search(S.begin(), S.end(), v); };

    std::vector<bool> internal(g.edges.size());
    int internal_count = 0;
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto const& e = g.edges[i];
        internal[i] = in_S(e.src) && !e.to_ground && in_S(e.dst);
        internal_count += internal[i];
    }
    if (n1 == 2 && internal_count == 0) return std::nullopt;

    std::vector<int> rest;
    for (int v = 1; v <= g.n; ++v)
        if (!in_S(v)) rest.push_back(v);
    int const p = static_cast<int>(rest.size()) + 1;  // new aerial vertex

    CollapsedPair out;
    out.vanishing_cluster = (n1 >= 3);
    out.inner = AdmissibleGraph{n1, 0, {}};
    out.outer = AdmissibleGraph{g.n - n1 + 1, g.m, {}};
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto const& e = g.edges[i];
        if (internal[i]) {
            out.inner.edges.push_back(
                {detail::relabel(S, e.src), false, detail::relabel(S, e.dst)});
        } else {
            GraphEdge e2;
            e2.src = in_S(e.src) ? p : detail::relabel(rest, e.src);
            if (e.to_ground) { e2.to_ground = true; e2.dst = e.dst; }
            else { e2.to_ground = false; e2.dst = in_S(e.dst) ? p : detail::relabel(rest, e.dst); }
            out.outer.edges.push_back(e2);
        }
    }
    out.edge_shuffle = detail::internal_first_sign(internal);
    return out;
}

// Cluster S + ground segment q_{l+1}..q_{l+m1} collapses to a ground point.
// Edges leaving the cluster toward an outside vertex kill the face (the
// limiting angle form from a real source vanishes identically): no-term.
inline std::optional<CollapsedPair> collapse_type2(AdmissibleGraph const& g,
                                                   std::vector<int> S, int l, int m1) {
    std::sort(S.begin(), S.end());
    auto in_S = [&](int v) { return std::binary_search(S.begin(), S.end(), v); };
    auto in_segment = [&](int q) { return q > l && q <= l + m1; };

    std::vector<bool> internal(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto const& e = g.edges[i];
        if (!in_S(e.src)) { internal[i] = false; continue; }
        bool target_inside = e.to_ground ? in_segment(e.dst) : in_S(e.dst);
        if (!target_inside) return std::nullopt;  // cluster-exiting edge
        internal[i] = true;
    }

    std::vector<int> rest;
    for (int v = 1; v <= g.n; ++v)
        if (!in_S(v)) rest.push_back(v);

    CollapsedPair out;
    out.insertion_slot = l;
    out.inner = AdmissibleGraph{static_cast<int>(S.size()), m1, {}};
    out.outer = AdmissibleGraph{static_cast<int>(rest.size()), g.m - m1 + 1, {}};
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto const& e = g.edges[i];
        if (internal[i]) {
            GraphEdge e2;
            e2.src = detail::relabel(S, e.src);
            e2.to_ground = e.to_ground;
            e2.dst = e.to_ground ? e.dst - l : detail::relabel(S, e.dst);
            out.inner.edges.push_back(e2);
        } else {
            GraphEdge e2;
            e2.src = detail::relabel(rest, e.src);
            if (e.to_ground) {
                e2.to_ground = true;
                e2.dst = e.dst <= l ? e.dst
                       : in_segment(e.dst) ? l + 1
                       : e.dst - m1 + 1;
            } else if (in_S(e.dst)) {
                e2.to_ground = true;
                e2.dst = l + 1;
            } else {
                e2.to_ground = false;
                e2.dst = detail::relabel(rest, e.dst);
            }
            out.outer.edges.push_back(e2);
        }
    }
    out.edge_shuffle = detail::internal_first_sign(internal);
    return out;
}

// Converts the 1/E! normalization of the full form into the product of the
// two factor normalizations; reproduces both boundary orientation counts
// (|k_I|!|k_J|!/|k|! and (|k|-1)!/|k|!).
inline Rat orientation_multiplicity(AdmissibleGraph const& inner,
                                    AdmissibleGraph const& outer) {
    unsigned const ei = static_cast<unsigned>(inner.edge_count());
    unsigned const eo = static_cast<unsigned>(outer.edge_count());
    return rat_factorial(ei) * rat_factorial(eo) / rat_factorial(ei + eo);
}

} // namespace formality
