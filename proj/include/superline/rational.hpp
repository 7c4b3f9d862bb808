#ifndef SUPERLINE_RATIONAL_HPP
#define SUPERLINE_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace superline {

// Exact rational coefficients throughout; no floating point anywhere.
using Rational = mpq_class;

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = base;
    long n = e;
    if (n < 0) {
        b = Rational(1) / b;
        n = -n;
    }
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

// Canonical "p" or "p/q" with q > 0.
inline std::string rat_str(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

} // namespace superline

#endif
