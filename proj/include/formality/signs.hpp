#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace formality {

// Sign in {+1, -1}, closed under multiplication.
struct Sign {
    int value = 1;

    Sign() = default;
    explicit Sign(int v) : value(v) {
        if (v != 1 && v != -1) throw std::invalid_argument("Sign must be +1 or -1");
    }
    Sign operator*(Sign o) const { return Sign(value * o.value); }
    Sign& operator*=(Sign o) { value *= o.value; return *this; }
    Sign operator-() const { return Sign(-value); }
    bool operator==(Sign const&) const = default;
};

inline Sign sign_pow(int exponent) { return Sign(exponent % 2 ? -1 : 1); }

// Degrees of a list of homogeneous elements.  Whether the entries live in V
// or in the shifted space V[1] is a convention of each call site; only the
// parities (mod 2) enter the sign computations.
using DegreeVector = std::vector<int>;

// Ordered sequence of disjoint nonempty blocks covering {0..n-1}.
using OrderedPartition = std::vector<std::vector<int>>;

// Signature of an arrangement: `arrangement[i]` is the original index placed
// at position i.  Counts inversions (fine at these sizes).
inline Sign arrangement_signature(std::vector<int> const& arrangement) {
    int inv = 0;
    for (size_t i = 0; i < arrangement.size(); ++i)
        for (size_t j = i + 1; j < arrangement.size(); ++j)
            if (arrangement[i] > arrangement[j]) ++inv;
    return sign_pow(inv);
}

// Signature of the arrangement restricted to odd-parity entries: the sign an
// odd permutation of graded elements picks up (even elements move freely).
inline Sign restricted_signature(std::vector<int> const& arrangement,
                                 DegreeVector const& parities) {
    std::vector<int> odd;
    for (int idx : arrangement) {
        if (idx < 0 || idx >= static_cast<int>(parities.size()))
            throw std::invalid_argument("arrangement index out of range");
        if (parities[idx] & 1) odd.push_back(idx);
    }
    return arrangement_signature(odd);
}

inline std::vector<int> partition_arrangement(OrderedPartition const& partition) {
    std::vector<int> arrangement;
    for (auto const& block : partition)
        arrangement.insert(arrangement.end(), block.begin(), block.end());
    return arrangement;
}

// Koszul ("battement") sign of the shuffle permutation attached to an ordered
// partition: signature of its effect on the odd-degree elements.
inline Sign koszul_sign(OrderedPartition const& partition, DegreeVector const& parities) {
    auto arrangement = partition_arrangement(partition);
    std::vector<bool> seen(parities.size(), false);
    for (int idx : arrangement) {
        if (idx < 0 || idx >= static_cast<int>(parities.size()) || seen[idx])
            throw std::invalid_argument("partition is not a partition of {0..n-1}");
        seen[idx] = true;
    }
    if (arrangement.size() != parities.size())
        throw std::invalid_argument("partition does not cover {0..n-1}");
    return restricted_signature(arrangement, parities);
}

// Quillen sign of a permutation: signature of its trace on the odd elements.
// `perm[i]` is the original position placed at slot i; parities are taken in
// the shifted space g[1].
inline Sign quillen_sign(std::vector<int> const& perm, DegreeVector const& parities) {
    if (perm.size() != parities.size())
        throw std::invalid_argument("perm/parity length mismatch");
    std::vector<bool> seen(perm.size(), false);
    for (int idx : perm) {
        if (idx < 0 || idx >= static_cast<int>(perm.size()) || seen[idx])
            throw std::invalid_argument("perm is not a bijection");
        seen[idx] = true;
    }
    return restricted_signature(perm, parities);
}

// Plain signature of the stable permutation sorting even-degree-in-V entries
// to the front.  For n=2 this is (-1)^{|x|(|y|-1)}.
inline Sign unshuffle_sign(DegreeVector const& degrees_in_V) {
    std::vector<int> arrangement;
    for (size_t i = 0; i < degrees_in_V.size(); ++i)
        if (!(degrees_in_V[i] & 1)) arrangement.push_back(static_cast<int>(i));
    for (size_t i = 0; i < degrees_in_V.size(); ++i)
        if (degrees_in_V[i] & 1) arrangement.push_back(static_cast<int>(i));
    return arrangement_signature(arrangement);
}

// The sym/ext isomorphism on a word x_1...x_n of V-degrees: returns the
// unshuffle sign and the degree of the image in Lambda^n(V)[n] (the sum of
// the V[1]-degrees; unchanged by the isomorphism).  The inverse carries the
// same sign.
inline std::pair<Sign, int> phi(DegreeVector const& word_degrees_in_V) {
    int deg = 0;
    for (int d : word_degrees_in_V) deg += d - 1;
    return {unshuffle_sign(word_degrees_in_V), deg};
}

// All ordered tuples of j disjoint nonempty blocks covering {0..n-1}, in
// lexicographic order of the block-label assignment.
inline std::vector<OrderedPartition> ordered_partitions(int n, int j) {
    std::vector<OrderedPartition> out;
    if (j < 1 || j > n) return out;
    std::vector<int> label(n, 0);
    for (;;) {
        OrderedPartition p(j);
        for (int i = 0; i < n; ++i) p[label[i]].push_back(i);
        bool ok = true;
        for (auto const& block : p) ok = ok && !block.empty();
        if (ok) out.push_back(std::move(p));
        int i = n - 1;
        while (i >= 0 && label[i] == j - 1) label[i--] = 0;
        if (i < 0) break;
        ++label[i];
    }
    return out;
}

// Two-block splits (I, J) of {0..n-1} with I nonempty and J possibly empty,
// as used by the coderivation expansion.
inline std::vector<OrderedPartition> splits_with_optional_tail(int n) {
    std::vector<OrderedPartition> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        OrderedPartition p(2);
        for (int i = 0; i < n; ++i)
            p[(mask >> i) & 1 ? 0 : 1].push_back(i);
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace formality
