#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffop.hpp"
#include "multivector.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace formality {

namespace detail {

inline std::string scalar_str(Rat const& x) { return x.str(); }
inline std::string scalar_str(double x) { return rat_to_string(x); }

inline void scalar_parse(std::string const& s, Rat& out) { out = Rat(s); }
inline void scalar_parse(std::string const& s, double& out) {
    size_t pos = 0;
    out = std::stod(s, &pos);
    if (pos != s.size()) throw std::runtime_error("bad numeric literal: " + s);
}

inline std::string exponents_str(std::vector<int> const& e) {
    std::string s = "[";
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]);
    }
    return s + "]";
}

inline std::vector<int> parse_exponents(std::string const& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::runtime_error("bad exponent vector: " + s);
    std::vector<int> out;
    std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) return out;
    std::istringstream iss(body);
    std::string tok;
    while (std::getline(iss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

// polynomial as `c*x^[e..] + c*x^[e..] + ...`; "0" for the zero polynomial
template <typename R>
std::string poly_str(Polynomial<R> const& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto const& [e, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        s += scalar_str(c) + "*x^" + exponents_str(e);
    }
    return s;
}

template <typename R>
Polynomial<R> parse_poly(std::string const& s, int dim) {
    Polynomial<R> p(dim);
    if (s == "0") return p;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) {
        if (tok == "+") continue;
        auto star = tok.find("*x^");
        if (star == std::string::npos)
            throw std::runtime_error("bad polynomial term: " + tok);
        R c;
        scalar_parse(tok.substr(0, star), c);
        auto e = parse_exponents(tok.substr(star + 3));
        if (static_cast<int>(e.size()) != dim)
            throw std::runtime_error("polynomial term has wrong dimension: " + tok);
        p.add_term(e, c);
    }
    return p;
}

} // namespace detail

// --- multivector text: one term per line, `coeff * x^[e..] * d_1^d_2` ---

template <typename R>
void write_multivector(std::ostream& os, MultiVector<R> const& v) {
    os << "multivector dim=" << v.dim() << " order=" << v.order() << '\n';
    for (auto const& [tuple, poly] : v.components())
        for (auto const& [e, c] : poly.terms()) {
            os << detail::scalar_str(c) << " * x^" << detail::exponents_str(e) << " * ";
            if (tuple.empty()) os << '1';
            for (size_t i = 0; i < tuple.size(); ++i) {
                if (i) os << '^';
                os << "d_" << tuple[i];
            }
            os << '\n';
        }
}

template <typename R>
MultiVector<R> read_multivector(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty multivector file");
    int dim = 0, order = 0;
    if (sscanf(line.c_str(), "multivector dim=%d order=%d", &dim, &order) != 2)
        throw std::runtime_error("bad multivector header: " + line);
    MultiVector<R> v(dim, order);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream iss(line);
        std::string ctok, star1, xtok, star2, dtok;
        if (!(iss >> ctok >> star1 >> xtok >> star2 >> dtok) || star1 != "*" || star2 != "*")
            throw std::runtime_error("bad multivector term: " + line);
        R c;
        detail::scalar_parse(ctok, c);
        if (xtok.rfind("x^", 0) != 0) throw std::runtime_error("bad monomial: " + xtok);
        auto e = detail::parse_exponents(xtok.substr(2));
        std::vector<int> tuple;
        if (dtok != "1") {
            std::istringstream dss(dtok);
            std::string part;
            while (std::getline(dss, part, '^')) {
                if (part.rfind("d_", 0) != 0) throw std::runtime_error("bad wedge factor: " + part);
                tuple.push_back(std::stoi(part.substr(2)));
            }
        }
        Polynomial<R> p(dim);
        p.add_term(e, c);
        if (static_cast<int>(tuple.size()) != order)
            throw std::runtime_error("term order mismatch: " + line);
        v.add_component(tuple, p);
    }
    return v;
}

// --- operator text: one term per line, `coeffpoly | orders_1 | ... | orders_m`
//     with orders_j a space-separated multi-index of length dim ---

template <typename R>
void write_operator(std::ostream& os, PolyDiffOperator<R> const& a) {
    os << "operator dim=" << a.dim() << " arity=" << a.arity() << '\n';
    for (auto const& [orders, coeff] : a.terms()) {
        os << detail::poly_str(coeff);
        for (auto const& o : orders) {
            os << " |";
            for (int x : o) os << ' ' << x;
        }
        os << '\n';
    }
}

template <typename R>
PolyDiffOperator<R> read_operator(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty operator file");
    int dim = 0, arity = 0;
    if (sscanf(line.c_str(), "operator dim=%d arity=%d", &dim, &arity) != 2)
        throw std::runtime_error("bad operator header: " + line);
    PolyDiffOperator<R> a(dim, arity);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        fields.push_back("");
        for (char ch : line) {
            if (ch == '|') fields.push_back("");
            else fields.back() += ch;
        }
        if (static_cast<int>(fields.size()) != arity + 1)
            throw std::runtime_error("operator term has wrong arity: " + line);
        Polynomial<R> coeff = detail::parse_poly<R>(fields[0], dim);
        typename PolyDiffOperator<R>::OrderKey orders;
        for (int j = 1; j <= arity; ++j) {
            std::istringstream oss(fields[j]);
            std::vector<int> o;
            int x;
            while (oss >> x) o.push_back(x);
            if (static_cast<int>(o.size()) != dim)
                throw std::runtime_error("multi-index has wrong dimension: " + line);
            orders.push_back(std::move(o));
        }
        a.add_term(orders, coeff);
    }
    return a;
}

} // namespace formality
