#include "superline/darboux.hpp"

#include <map>
#include <string>
#include <utility>

#include "superline/errors.hpp"
#include "superline/wronskian.hpp"

namespace superline {

namespace {

bool is_zero_op(const SuperDiffOp& a) {
    for (int k = 0; k <= a.order(); ++k)
        if (!is_zero(a.coeff(k))) return false;
    return true;
}

// Monic operator of the given order whose lower coefficients are the jet
// symbols prefix1..prefixN; the coefficient of D^(n-k) has parity k.
SuperDiffOp generic_monic(const std::string& prefix, int n) {
    std::vector<Scalar> cs;
    cs.reserve(n + 1);
    cs.emplace_back(SymbolicScalar::one());
    for (int k = 1; k <= n; ++k)
        cs.emplace_back(SymbolicScalar::jet(prefix + std::to_string(k),
                                            parity_of_int(k)));
    return SuperDiffOp(std::move(cs));
}

} // namespace

ElementaryDT elementary_dt(const SuperDiffOp& l0, const Scalar& phi,
                           const Scalar& lambda, int fallback_trunc) {
    if (!l0.is_monic())
        throw Error("elementary_dt: the operator must be monic");
    if (!parity_compatible(phi, Parity::Even))
        throw ParityError("elementary_dt: the eigenfunction must be even");
    if (!is_invertible(phi))
        throw NotInvertible("elementary_dt: the eigenfunction must be invertible");
    if (!is_zero(superderivative(lambda)))
        throw Error("elementary_dt: the eigenvalue must be a constant");
    if (!parity_compatible(lambda, l0.parity()))
        throw ParityError("elementary_dt: eigenvalue parity must match the operator");

    SuperDiffOp m = m_phi(phi, fallback_trunc);
    DivisionResult div = divide_right(l0, m, fallback_trunc);
    if (!agree(div.remainder.coeff(0), lambda))
        throw RemainderNotConstant(
            "elementary_dt: the function does not satisfy the eigenvalue relation");

    // l0 = q m + lambda, so m l0 = (m q) m + m lambda; the constant hops
    // over the odd operator m at the cost of a sign when it is odd itself.
    Scalar hopped = (l0.order() % 2 != 0) ? -lambda : lambda;
    SuperDiffOp l1 = compose(m, div.quotient) + SuperDiffOp::constant(hopped);
    return ElementaryDT{phi, lambda, std::move(m), l0, std::move(l1)};
}

SuperDiffOp intertwining_defect(const SuperDiffOp& m, const SuperDiffOp& l0,
                                const SuperDiffOp& l1) {
    return compose(m, l0) - compose(l1, m);
}

DarbouxChain factorize_dt(const SuperDiffOp& l0,
                          const std::vector<Scalar>& flag,
                          int fallback_trunc) {
    if (flag.empty())
        throw Error("factorize_dt: the flag must contain at least one function");
    DarbouxChain chain{{}, SuperDiffOp::constant(one_like(l0.coeff(0))), l0, l0};
    for (const Scalar& f : flag) {
        // After i steps the chain has order i and flag[i] has parity i, so
        // the image is even; it must stay invertible for the next step.
        Scalar v = chain.m.apply(f);
        if (!is_invertible(v))
            throw FlagNotInGeneralPosition(
                "factorize_dt: a chain image of a flag function is not invertible");
        Scalar u = chain.l1.apply(v) * invert(v, fallback_trunc);
        if (!is_zero(superderivative(u)))
            throw NotInvariantFlag(
                "factorize_dt: a flag function is not an eigenfunction modulo "
                "the previous ones");
        ElementaryDT step = elementary_dt(chain.l1, v, u, fallback_trunc);
        chain.m = compose(step.m, chain.m);
        chain.l1 = step.l1;
        chain.steps.push_back(std::move(step));
    }
    return chain;
}

SuperDiffOp dt_from_invariant_subspace(const SuperDiffOp& l0,
                                       const std::vector<Scalar>& flag,
                                       int fallback_trunc) {
    SuperDiffOp m = [&] {
        try {
            return reconstruct_operator(flag, fallback_trunc);
        } catch (const KernelNotInGeneralPosition& e) {
            throw FlagNotInGeneralPosition(e.what());
        }
    }();
    DivisionResult div = divide_right(compose(m, l0), m, fallback_trunc);
    if (!is_zero_op(div.remainder))
        throw NotInvariantFlag(
            "dt_from_invariant_subspace: the span of the flag is not invariant");
    return m;
}

DressingResult derive_dressing(int n, int r) {
    if (n < 1 || r < 1)
        throw Error("derive_dressing: both orders must be positive");
    SuperDiffOp l0 = generic_monic("a", n);
    SuperDiffOp m = generic_monic("c", r);
    SuperDiffOp l1 = generic_monic("b", n);
    SuperDiffOp defect = intertwining_defect(m, l0, l1);

    // The defect coefficient at D^(n+r-k) contains b_k only in the single
    // term -b_k coming from b_k D^(n-k) D^r, so once b_1..b_(k-1) are
    // substituted the system is triangular with unit pivots.
    DressingResult res{n, r, {}, {}};
    std::map<std::string, SymbolicScalar> solved;
    for (int k = 1; k <= n; ++k) {
        SymbolicScalar eq =
            as_symbolic(defect.coeff_at_power(n + r - k)).substitute(solved);
        std::string bk = "b" + std::to_string(k);
        Monomial pivot{{JetKey{bk, 0, parity_of_int(k), false}, 1}};
        if (eq.coefficient_of(pivot) != Rational(-1))
            throw Error("derive_dressing: the dressing system lost its unit pivot");
        SymbolicScalar sol = eq.without_term(pivot);
        solved[bk] = sol;
        res.b.push_back(std::move(sol));
    }
    for (int p = r - 1; p >= 0; --p)
        res.compatibility.push_back(
            as_symbolic(defect.coeff_at_power(p)).substitute(solved));
    return res;
}

DressingPatterns dressing_patterns(int n) {
    if (n < 1) throw Error("dressing_patterns: the order must be positive");
    DressingResult res = derive_dressing(n, 1);
    std::map<std::string, SymbolicScalar> mu_name{
        {"c1", SymbolicScalar::jet("mu", Parity::Odd)}};

    SymbolicScalar a1 = SymbolicScalar::jet("a1", Parity::Odd);
    SymbolicScalar a2 = SymbolicScalar::jet("a2", Parity::Even);
    SymbolicScalar mu = SymbolicScalar::jet("mu", Parity::Odd);

    DressingPatterns pat{n, res.b[0].substitute(mu_name), std::nullopt};
    SymbolicScalar b1_expect =
        (n % 2 != 0) ? a1.scaled(-1) + mu.scaled(2) : a1.scaled(-1);
    if (pat.b1 != b1_expect)
        throw Error("dressing_patterns: leading coefficient pattern mismatch");
    if (n >= 2) {
        pat.b2 = res.b[1].substitute(mu_name);
        SymbolicScalar b2_expect =
            (n % 2 != 0)
                ? a2 + a1.superderivative() - mu.superderivative()
                : a2 + a1.superderivative() + (mu * a1).scaled(2);
        if (*pat.b2 != b2_expect)
            throw Error("dressing_patterns: second coefficient pattern mismatch");
    }
    return pat;
}

SturmLiouvilleDressing dress_sturm_liouville(int r) {
    DressingResult res = derive_dressing(4, r);
    std::map<std::string, SymbolicScalar> subs{
        {"a1", SymbolicScalar()},
        {"a2", SymbolicScalar()},
        {"a3", SymbolicScalar::jet("alpha", Parity::Odd)},
        {"a4", SymbolicScalar::jet("u", Parity::Even)}};
    if (!res.b[0].substitute(subs).is_zero() ||
        !res.b[1].substitute(subs).is_zero())
        throw Error("dress_sturm_liouville: the operator form is not preserved");
    SturmLiouvilleDressing out{r, res.b[2].substitute(subs),
                               res.b[3].substitute(subs), {}};
    out.compatibility.reserve(res.compatibility.size());
    for (const auto& c : res.compatibility)
        out.compatibility.push_back(c.substitute(subs));
    return out;
}

} // namespace superline
