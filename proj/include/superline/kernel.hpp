#pragma once

#include "superline/supermatrix.hpp"
#include "superline/diffop.hpp"

namespace superline {

// First-order companion form D phihat = Gamma phihat of a monic operator,
// phihat = (phi, D phi, ..., D^{m-1} phi).  Gamma is an odd matrix: with the
// rows labelled alternately starting even, the column labels carry the
// extra parity shift.  gamma0/gamma1 are the series components of the
// entries, Gamma = Gamma_0(x) + xi Gamma_1(x).
struct CompanionSystem {
    int order = 0;
    FormatMatrix gamma;
    std::vector<std::vector<Series>> gamma0, gamma1;
};

CompanionSystem companion(const SuperDiffOp& l);

// Basis of Ker L as truncated series around x = 0, one function per unit
// initial superjet, parities alternating starting even.  Dimension is
// n+1 | n for order 2n+1 and n | n for order 2n.
std::vector<SuperFunction> kernel_basis(const SuperDiffOp& l, int truncation);

// Basis of the lambda eigenspace: kernel of L - lambda.  The eigenvalue
// parity must match the operator parity (order mod 2).
std::vector<SuperFunction> eigenfunctions(const SuperDiffOp& l, const Grassmann& lambda,
                                          int truncation);

} // namespace superline
