#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "signs.hpp"

namespace formality {

// Homogeneous element of the abstract graded space: either an uninterpreted
// generator or a formal application of a Taylor coefficient to a word.
// Degrees live in g[1].
struct Atom {
    std::string op;          // empty for generators, family tag otherwise
    int id = 0;              // generator id (generators only)
    int degree = 0;          // g[1]-degree
    std::vector<Atom> args;  // canonically ordered (applications only)

    bool is_generator() const { return op.empty(); }

    bool operator<(Atom const& o) const {
        if (op != o.op) return op < o.op;
        if (id != o.id) return id < o.id;
        if (degree != o.degree) return degree < o.degree;
        return args < o.args;
    }
    bool operator==(Atom const& o) const {
        return op == o.op && id == o.id && degree == o.degree && args == o.args;
    }
};

using Word = std::vector<Atom>;  // product x_1 . ... . x_n in S(g[1])

inline int word_degree(Word const& w) {
    int d = 0;
    for (auto const& a : w) d += a.degree;
    return d;
}

// Canonically sorts a word by adjacent transpositions, tracking the Koszul
// sign; returns 0 coefficient when the word contains a repeated odd factor.
inline std::pair<int, Word> canonicalize_word(Word w) {
    int sign = 1;
    for (size_t i = 1; i < w.size(); ++i)
        for (size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
            if ((w[j].degree & 1) && (w[j - 1].degree & 1)) sign = -sign;
            std::swap(w[j], w[j - 1]);
        }
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1] && (w[i].degree & 1)) return {0, {}};
    return {sign, std::move(w)};
}

// Finitely supported rational combination of canonical words.
struct FormalSum {
    std::map<Word, Rat> terms;

    void add(Word const& w, Rat c) {
        auto [sg, cw] = canonicalize_word(w);
        if (sg == 0) return;
        c *= sg;
        auto it = terms.find(cw);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(std::move(cw), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    FormalSum& operator+=(FormalSum const& o) {
        for (auto const& [w, c] : o.terms) add(w, c);
        return *this;
    }
    FormalSum operator-(FormalSum const& o) const {
        FormalSum r = *this;
        for (auto const& [w, c] : o.terms) r.add(w, -c);
        return r;
    }
};

struct TensorSum {
    std::map<std::pair<Word, Word>, Rat> terms;

    void add(Word const& u, Word const& v, Rat c) {
        auto [su, cu] = canonicalize_word(u);
        auto [sv, cv] = canonicalize_word(v);
        if (su == 0 || sv == 0) return;
        c *= su * sv;
        auto key = std::make_pair(std::move(cu), std::move(cv));
        auto it = terms.find(key);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(std::move(key), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    TensorSum operator-(TensorSum const& o) const {
        TensorSum r = *this;
        for (auto const& [k, c] : o.terms) r.add(k.first, k.second, -c);
        return r;
    }
};

// A Taylor family in abstract-symbol mode: applications stay uninterpreted.
struct FormalFamily {
    std::string tag;      // e.g. "Q" or "F"
    int parity_shift;     // +1 for coderivations, 0 for morphisms

    // Graded symmetry of the coefficient: arguments are canonically sorted
    // and the Koszul sign of the sort is returned alongside the application.
    std::pair<int, Atom> apply_signed(std::vector<Atom> args) const {
        auto [sg, sorted] = canonicalize_word(std::move(args));
        if (sg == 0) return {0, {}};
        Atom a;
        a.op = tag;
        a.degree = parity_shift;
        for (auto const& x : sorted) a.degree += x.degree;
        a.args = std::move(sorted);
        return {sg, std::move(a)};
    }
};

inline DegreeVector word_parities(Word const& w) {
    DegreeVector p;
    p.reserve(w.size());
    for (auto const& a : w) p.push_back(a.degree);
    return p;
}

inline Word subword(Word const& w, std::vector<int> const& idx) {
    Word s;
    s.reserve(idx.size());
    for (int i : idx) s.push_back(w[i]);
    return s;
}

// Q(x_1...x_n) = sum_{I+J={1..n}, I nonempty} eps_x(I,J) (Q_{|I|}(x_I)).x_J
// (the J-empty term is the top coefficient Q_n(x)).
inline FormalSum extend_coderivation(FormalFamily const& q, Word const& w) {
    FormalSum out;
    if (w.empty()) return out;
    auto parities = word_parities(w);
    for (auto const& split : splits_with_optional_tail(static_cast<int>(w.size()))) {
        Sign eps = koszul_sign(split, parities);
        auto [sg, app] = q.apply_signed(subword(w, split[0]));
        if (sg == 0) continue;
        Word result;
        result.push_back(std::move(app));
        for (int i : split[1]) result.push_back(w[i]);
        out.add(result, Rat(eps.value * sg));
    }
    return out;
}

// F(x_1...x_n) = sum_{j>=1} 1/j! sum_{I_1+...+I_j} eps_x(I_1,..,I_j)
//                F_{|I_1|}(x_{I_1}) . ... . F_{|I_j|}(x_{I_j})
inline FormalSum extend_morphism(FormalFamily const& f, Word const& w) {
    FormalSum out;
    int const n = static_cast<int>(w.size());
    if (n == 0) return out;
    auto parities = word_parities(w);
    for (int j = 1; j <= n; ++j) {
        Rat factor = Rat(1) / rat_factorial(static_cast<unsigned>(j));
        for (auto const& part : ordered_partitions(n, j)) {
            Sign eps = koszul_sign(part, parities);
            Word result;
            int sg = 1;
            for (auto const& block : part) {
                auto [s, app] = f.apply_signed(subword(w, block));
                sg *= s;
                if (s == 0) break;
                result.push_back(std::move(app));
            }
            if (sg == 0) continue;
            out.add(result, factor * Rat(eps.value * sg));
        }
    }
    return out;
}

// Reduced comultiplication: Delta(x_1...x_n) = sum_{I,J nonempty} eps x_I (x) x_J.
inline TensorSum comult(Word const& w) {
    TensorSum out;
    int const n = static_cast<int>(w.size());
    auto parities = word_parities(w);
    for (auto const& split : splits_with_optional_tail(n)) {
        if (split[1].empty()) continue;
        Sign eps = koszul_sign(split, parities);
        out.add(subword(w, split[0]), subword(w, split[1]), Rat(eps.value));
    }
    return out;
}

inline TensorSum comult(FormalSum const& s) {
    TensorSum out;
    for (auto const& [w, c] : s.terms) {
        TensorSum dw = comult(w);
        for (auto const& [k, cc] : dw.terms) out.add(k.first, k.second, c * cc);
    }
    return out;
}

// Delta Q(w) - (Q (x) I + I (x) Q) Delta(w); identically zero iff the closed
// coderivation formula really is a coderivation.
inline TensorSum coderivation_residual(FormalFamily const& q, Word const& w) {
    TensorSum lhs = comult(extend_coderivation(q, w));
    TensorSum rhs;
    TensorSum dw = comult(w);
    for (auto const& [uv, c] : dw.terms) {
        auto const& [u, v] = uv;
        FormalSum qu = extend_coderivation(q, u);
        for (auto const& [w2, c2] : qu.terms) rhs.add(w2, v, c * c2);
        // I (x) Q crosses the left factor: Koszul sign (-1)^{|u|} (Q is odd)
        int sg = (word_degree(u) & 1) ? -1 : 1;
        FormalSum qv = extend_coderivation(q, v);
        for (auto const& [w2, c2] : qv.terms) rhs.add(u, w2, c * c2 * sg);
    }
    return lhs - rhs;
}

// Delta F(w) - (F (x) F) Delta(w).
inline TensorSum morphism_residual(FormalFamily const& f, Word const& w) {
    TensorSum lhs = comult(extend_morphism(f, w));
    TensorSum rhs;
    TensorSum dw = comult(w);
    for (auto const& [uv, c] : dw.terms) {
        FormalSum fu = extend_morphism(f, uv.first);
        FormalSum fv = extend_morphism(f, uv.second);
        for (auto const& [wu, cu] : fu.terms)
            for (auto const& [wv, cv] : fv.terms)
                rhs.add(wu, wv, c * cu * cv);
    }
    return lhs - rhs;
}

} // namespace formality
