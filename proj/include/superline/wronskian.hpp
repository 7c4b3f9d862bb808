#pragma once

#include "superline/supermatrix.hpp"
#include "superline/diffop.hpp"

namespace superline {

// Column of iterated superderivatives f, Df, ..., D^n f.  Position parities
// alternate starting from the parity of the base function.
struct SuperJet {
    SuperFunction base;
    int depth = 0;
    std::vector<SuperFunction> coords;

    static SuperJet of(const SuperFunction& f, int depth);
};

// n x n matrix with entries D^i phi_j in the alternating format.  Requires
// parity(phi_j) = j mod 2.
FormatMatrix wronski_matrix(const std::vector<Scalar>& basis);

Scalar wronskian(const std::vector<Scalar>& basis, int fallback_trunc = kDefaultTrunc);
Scalar wronskian_star(const std::vector<Scalar>& basis, int fallback_trunc = kDefaultTrunc);

// The unique monic operator of order n with the given kernel basis, via the
// cofactor form of Cramer's rule on the coefficient system
// a_n phi_j + a_{n-1} D phi_j + ... + D^n phi_j = 0.
SuperDiffOp reconstruct_operator(const std::vector<Scalar>& basis,
                                 int fallback_trunc = kDefaultTrunc);

// Row-replacement formulas: a_k = -Ber(or Ber*)(Wronski matrix with row n-k
// replaced by the D^n row) / W (or W*), the variant alternating with k.
std::vector<Scalar> coefficient_formulas(const std::vector<Scalar>& basis,
                                         int fallback_trunc = kDefaultTrunc);

// Superderivative of W (star = false) or W* (star = true) via the bumped
// last-row formulas; the bumped matrices are wrong.
Scalar d_wronskian(const std::vector<Scalar>& basis, bool star = false,
                   int fallback_trunc = kDefaultTrunc);

} // namespace superline
