#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace formality {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Rat rat_factorial(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

// Scalar traits shared by the exact (Rat) and numeric (double) instantiations
// of the symbolic containers.
template <typename R>
struct scalar_traits {
    static bool is_zero(R const& x) { return x == R(0); }
    static double to_double(R const& x) { return static_cast<double>(x); }
};

template <>
struct scalar_traits<Rat> {
    static bool is_zero(Rat const& x) { return x.is_zero(); }
    static double to_double(Rat const& x) { return x.convert_to<double>(); }
};

inline std::string rat_to_string(Rat const& x) { return x.str(); }
inline std::string rat_to_string(double x) {
    char buf[64];
    snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace formality
