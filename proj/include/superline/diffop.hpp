#ifndef SUPERLINE_DIFFOP_HPP
#define SUPERLINE_DIFFOP_HPP

#include <utility>
#include <vector>

#include "superline/scalar.hpp"

namespace superline {

// Super binomial coefficient <k p>: the coefficient of D^p f * D^(k-p) in
// the expansion of D^k(fg) (up to the Koszul sign (-1)^((k-p)|f|)).
// Vanishes iff k is even and p is odd; otherwise it equals the ordinary
// binomial C(floor(k/2), floor(p/2)).
Rational super_binomial(int k, int p);

// Differential operator a0 D^m + a1 D^(m-1) + ... + am on the 1|1 line.
// Coefficients multiply from the left and carry a declared order: leading
// zeros are kept unless trimmed explicitly.  Solution spaces are right
// modules; all signs in composition and division follow from that.
class SuperDiffOp {
public:
    explicit SuperDiffOp(std::vector<Scalar> coeffs);

    static SuperDiffOp constant(Scalar c);
    static SuperDiffOp d(const Scalar& proto);
    // c * D^p as an operator of order exactly p
    static SuperDiffOp monomial(const Scalar& c, int p);
    static SuperDiffOp zero(const Scalar& proto, int order);

    int order() const { return (int)coeffs_.size() - 1; }
    const Scalar& coeff(int k) const { return coeffs_.at(k); }
    const Scalar& coeff_at_power(int p) const { return coeffs_.at(order() - p); }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    const Scalar& proto() const { return coeffs_.front(); }

    bool concrete() const { return is_concrete(coeffs_.front()); }
    bool is_monic() const;
    bool is_nondegenerate() const { return is_invertible(coeffs_.front()); }
    Parity parity() const { return parity_of_int(order()); }

    SuperDiffOp operator-() const;
    SuperDiffOp operator+(const SuperDiffOp& o) const;
    SuperDiffOp operator-(const SuperDiffOp& o) const;
    SuperDiffOp scale_left(const Scalar& c) const;
    SuperDiffOp scaled(const Rational& q) const;

    // Drops leading coefficients that are exactly zero (never implicit).
    SuperDiffOp trimmed() const;

    SuperDiffOp monicized(int fallback_trunc = kDefaultTrunc) const;

    Scalar apply(const Scalar& f) const;

    bool is_zero_op() const;

private:
    std::vector<Scalar> coeffs_;
};

bool agree(const SuperDiffOp& a, const SuperDiffOp& b);

// Composition via the operator Leibniz formula
//   D^k o f = sum_p <k p> (-1)^((k-p)|f|) (D^p f) D^(k-p).
SuperDiffOp compose(const SuperDiffOp& a, const SuperDiffOp& b);

struct DivisionResult {
    SuperDiffOp quotient;
    SuperDiffOp remainder; // declared order = ord M - 1 (or 0 for order-0 M)
};

// N = Q o M + R with ord R < ord M; M must be non-degenerate.
DivisionResult divide_right(const SuperDiffOp& n, const SuperDiffOp& m, int fallback_trunc = kDefaultTrunc);
// N = M o Q + R.
DivisionResult divide_left(const SuperDiffOp& n, const SuperDiffOp& m, int fallback_trunc = kDefaultTrunc);

// Independent re-implementation of right division that accumulates the
// coefficient recurrences lazily instead of updating a running remainder;
// used to cross-check divide_right.
DivisionResult divide_right_alt(const SuperDiffOp& n, const SuperDiffOp& m, int fallback_trunc = kDefaultTrunc);

// M_phi = D - (D phi) phi^-1 = phi o D o phi^-1, for even invertible phi.
SuperDiffOp m_phi(const Scalar& phi, int fallback_trunc = kDefaultTrunc);

// g^-1 o A o g for an even invertible function g.
SuperDiffOp gauge(const SuperDiffOp& a, const Scalar& g, int fallback_trunc = kDefaultTrunc);

// Factors L through a flag of kernel elements: with phi_1, ..., phi_m a
// basis adapted to increasing order, L = a0 o M_m o ... o M_1 where each
// M_i is first order monic.  Returns the factors in application order
// (M_1 first).  Every flag element must lie in Ker L and every transformed
// function must stay invertible.
std::vector<SuperDiffOp> factorize(const SuperDiffOp& l,
                                   const std::vector<SuperFunction>& flag,
                                   int fallback_trunc = kDefaultTrunc);

} // namespace superline

#endif
