#pragma once

// Seeded random generators shared by the property suites.  Every test fixes
// its own seed, so failures replay deterministically.

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "superline/diffop.hpp"
#include "superline/supermatrix.hpp"

namespace testutil {

using namespace superline;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, bool nonzero = false) {
    int num = uniform(rng, -4, 4);
    while (nonzero && num == 0) num = uniform(rng, -4, 4);
    Rational q(num, uniform(rng, 1, 3));
    q.canonicalize();
    return q;
}

// Homogeneous element on the first ngens generators; sparse on purpose.
inline Grassmann random_grassmann(Rng& rng, int ngens, Parity p) {
    Grassmann g;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << ngens); ++m) {
        bool odd = std::popcount(m) % 2 != 0;
        if (odd != (p == Parity::Odd)) continue;
        if (uniform(rng, 0, 2) == 0)
            g = g + Grassmann::monomial(m, random_rational(rng, true));
    }
    return g;
}

inline Series random_series(Rng& rng, int deg, int ngens, Parity p) {
    std::vector<Grassmann> c;
    for (int d = 0; d <= deg; ++d) c.push_back(random_grassmann(rng, ngens, p));
    return Series::exact(std::move(c));
}

inline SuperFunction random_superfun(Rng& rng, Parity p, int deg, int ngens) {
    return SuperFunction(p, random_series(rng, deg, ngens, p),
                         random_series(rng, deg, ngens, flip(p)));
}

inline SuperFunction random_invertible(Rng& rng, int deg, int ngens) {
    for (;;) {
        SuperFunction f = random_superfun(rng, Parity::Even, deg, ngens);
        if (f.is_invertible()) return f;
    }
}

// Even matrix in the standard r|s format with polynomial entries, kept only
// if its Berezinian is defined.
inline FormatMatrix random_even_matrix(Rng& rng, int r, int s, int deg, int ngens,
                                       int trunc = 8) {
    MatrixFormat fmt = MatrixFormat::standard(r, s);
    for (;;) {
        std::vector<std::vector<Scalar>> e;
        for (int i = 0; i < r + s; ++i) {
            std::vector<Scalar> row;
            for (int j = 0; j < r + s; ++j) {
                Parity p = fmt.rows[i] + fmt.cols[j];
                SuperFunction f = random_superfun(rng, p, deg, ngens);
                if (i == j)
                    f = f + SuperFunction::rational(random_rational(rng, true));
                row.push_back(Scalar(std::move(f)));
            }
            e.push_back(std::move(row));
        }
        FormatMatrix a(fmt, std::move(e));
        try {
            (void)berezinian(a, trunc);
            (void)berezinian(a.pi_transpose(), trunc);
        } catch (const Error&) {
            continue;
        }
        return a;
    }
}

// Monic operator of the given order; coefficient k has parity k mod 2, so
// the operator is homogeneous of parity order mod 2.
inline SuperDiffOp random_monic_operator(Rng& rng, int order, int deg, int ngens) {
    std::vector<Scalar> c{Scalar(SuperFunction::one())};
    for (int k = 1; k <= order; ++k)
        c.push_back(Scalar(random_superfun(rng, parity_of_int(k), deg, ngens)));
    return SuperDiffOp(std::move(c));
}

inline SuperDiffOp random_operator(Rng& rng, int order, int deg, int ngens) {
    std::vector<Scalar> c;
    for (int k = 0; k <= order; ++k)
        c.push_back(Scalar(random_superfun(rng, parity_of_int(k), deg, ngens)));
    return SuperDiffOp(std::move(c));
}

inline bool zero_op(const SuperDiffOp& a) {
    for (int k = 0; k <= a.order(); ++k)
        if (!is_zero(a.coeff(k))) return false;
    return true;
}

inline bool same_op(const SuperDiffOp& a, const SuperDiffOp& b) {
    return zero_op(a - b);
}

// Series solution of 2 dg/dx = -a2 g, g(0) = 1, through the truncation
// order; the gauge that strips the magnetic term of an order-4 operator.
// Both components are solved, so a2 may carry a xi part.
inline SuperFunction magnetic_gauge(const SuperFunction& a2, int trunc) {
    std::vector<Grassmann> g0(trunc + 1), g1(trunc + 1);
    g0[0] = Grassmann::one();
    auto at = [](const Series& s, int d) {
        return d <= s.degree_bound() ? s.coeff(d) : Grassmann();
    };
    for (int d = 0; d < trunc; ++d) {
        Grassmann s0, s1;
        for (int e = 0; e <= d; ++e) {
            s0 = s0 + at(a2.f0(), e) * g0[d - e];
            s1 = s1 + at(a2.f1(), e) * g0[d - e] + at(a2.f0(), e) * g1[d - e];
        }
        g0[d + 1] = s0.scaled(Rational(-1, 2 * (d + 1)));
        g1[d + 1] = s1.scaled(Rational(-1, 2 * (d + 1)));
    }
    return SuperFunction(Parity::Even, Series::truncated(std::move(g0), trunc),
                         Series::truncated(std::move(g1), trunc));
}

} // namespace testutil
