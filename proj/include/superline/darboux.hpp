#ifndef SUPERLINE_DARBOUX_HPP
#define SUPERLINE_DARBOUX_HPP

#include <optional>
#include <vector>

#include "superline/diffop.hpp"
#include "superline/scalar.hpp"

namespace superline {

// One Darboux step built from an invertible even eigenfunction phi of l0.
// The dressing operator m = D - (D phi) phi^{-1} annihilates phi, and l1
// satisfies the intertwining relation m l0 = l1 m.
struct ElementaryDT {
    Scalar phi;
    Scalar lambda; // constant eigenvalue, same parity as l0
    SuperDiffOp m;
    SuperDiffOp l0;
    SuperDiffOp l1;
};

// Requires monic l0, invertible even phi with l0 phi = lambda phi, and a
// constant lambda of the parity of l0.  Throws RemainderNotConstant when
// the eigenvalue relation fails.
ElementaryDT elementary_dt(const SuperDiffOp& l0, const Scalar& phi,
                           const Scalar& lambda,
                           int fallback_trunc = kDefaultTrunc);

// m l0 - l1 m; identically zero exactly when the transformation is valid.
SuperDiffOp intertwining_defect(const SuperDiffOp& m, const SuperDiffOp& l0,
                                const SuperDiffOp& l1);

// A Darboux transformation factored into elementary steps.  The flag
// functions are consumed in order; step i dresses the current operator by
// the image of flag[i] under the chain built so far.  m is the composition
// of the elementary operators, so ord m = number of steps and m l0 = l1 m.
struct DarbouxChain {
    std::vector<ElementaryDT> steps;
    SuperDiffOp m;
    SuperDiffOp l0;
    SuperDiffOp l1;
};

// Factors the transformation attached to an invariant flag spanned by
// eigenfunctions of l0 into elementary steps.  Each chain image must stay
// invertible (FlagNotInGeneralPosition) and each quotient of l0-image by
// function must be a constant (NotInvariantFlag).
DarbouxChain factorize_dt(const SuperDiffOp& l0,
                          const std::vector<Scalar>& flag,
                          int fallback_trunc = kDefaultTrunc);

// The dressing operator with prescribed kernel, built in one stroke as the
// normalized Wronskian quotient of the flag.  The flag must be alternating
// in parity starting even and the subspace it spans must be invariant
// under l0 (checked through the division remainder).
SuperDiffOp dt_from_invariant_subspace(const SuperDiffOp& l0,
                                       const std::vector<Scalar>& flag,
                                       int fallback_trunc = kDefaultTrunc);

// Closed dressing formulas for monic operators of order n transformed by a
// monic operator of order r, both with undetermined jet coefficients
// a1..an and c1..cr.  b[k-1] expresses the coefficient of D^(n-k) in the
// transformed operator; compatibility holds the residual conditions from
// the powers D^(r-1)..D^0 that the coefficients must satisfy for the
// intertwining relation to close.
struct DressingResult {
    int n = 0;
    int r = 0;
    std::vector<SymbolicScalar> b;
    std::vector<SymbolicScalar> compatibility;
};

DressingResult derive_dressing(int n, int r);

// Leading dressed coefficients under an elementary transformation D + mu,
// specialized from derive_dressing(n, 1) and cross-checked against the
// general pattern: odd n gives b1 = -a1 + 2 mu, b2 = a2 + D(a1) - D(mu);
// even n gives b1 = -a1, b2 = a2 + D(a1) + 2 mu a1, so a1 = 0 is preserved
// and then a2 is too.
struct DressingPatterns {
    int n = 0;
    SymbolicScalar b1;
    std::optional<SymbolicScalar> b2;
};

DressingPatterns dressing_patterns(int n);

// Dressing of the pair (alpha, u) in D^4 + alpha D + u by a monic operator
// of order r.  The form is preserved automatically: b1 and b2 vanish once
// a1 = a2 = 0, and beta, w are the dressed alpha, u.
struct SturmLiouvilleDressing {
    int r = 0;
    SymbolicScalar beta;
    SymbolicScalar w;
    std::vector<SymbolicScalar> compatibility;
};

SturmLiouvilleDressing dress_sturm_liouville(int r);

} // namespace superline

#endif
