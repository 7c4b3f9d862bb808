#include "superline/diffop.hpp"

namespace superline {

Rational super_binomial(int k, int p) {
    if (k < 0 || p < 0 || p > k) return 0;
    if (k % 2 == 0 && p % 2 != 0) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), (unsigned long)(k / 2), (unsigned long)(p / 2));
    return Rational(b);
}

SuperDiffOp::SuperDiffOp(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error("operator needs at least one coefficient");
    for (const auto& c : coeffs_)
        if (!same_model(c, coeffs_.front()))
            throw ModelMismatch("operator coefficients mix scalar models");
}

SuperDiffOp SuperDiffOp::constant(Scalar c) {
    return SuperDiffOp(std::vector<Scalar>{std::move(c)});
}

SuperDiffOp SuperDiffOp::d(const Scalar& proto) {
    return SuperDiffOp({one_like(proto), zero_like(proto)});
}

SuperDiffOp SuperDiffOp::monomial(const Scalar& c, int p) {
    std::vector<Scalar> v;
    v.push_back(c);
    for (int i = 0; i < p; ++i) v.push_back(zero_like(c));
    return SuperDiffOp(std::move(v));
}

SuperDiffOp SuperDiffOp::zero(const Scalar& proto, int order) {
    return monomial(zero_like(proto), order);
}

bool SuperDiffOp::is_monic() const {
    return agree(coeffs_.front(), one_like(coeffs_.front()));
}

SuperDiffOp SuperDiffOp::operator-() const {
    std::vector<Scalar> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(-c);
    return SuperDiffOp(std::move(v));
}

SuperDiffOp SuperDiffOp::operator+(const SuperDiffOp& o) const {
    int m = std::max(order(), o.order());
    std::vector<Scalar> v;
    v.reserve(m + 1);
    for (int p = m; p >= 0; --p) {
        Scalar s = zero_like(proto());
        if (p <= order()) s = s + coeff_at_power(p);
        if (p <= o.order()) s = s + o.coeff_at_power(p);
        v.push_back(std::move(s));
    }
    return SuperDiffOp(std::move(v));
}

SuperDiffOp SuperDiffOp::operator-(const SuperDiffOp& o) const { return *this + (-o); }

SuperDiffOp SuperDiffOp::scale_left(const Scalar& c) const {
    std::vector<Scalar> v;
    v.reserve(coeffs_.size());
    for (const auto& a : coeffs_) v.push_back(c * a);
    return SuperDiffOp(std::move(v));
}

SuperDiffOp SuperDiffOp::scaled(const Rational& q) const {
    std::vector<Scalar> v;
    v.reserve(coeffs_.size());
    for (const auto& a : coeffs_) v.push_back(superline::scaled(a, q));
    return SuperDiffOp(std::move(v));
}

SuperDiffOp SuperDiffOp::trimmed() const {
    size_t lead = 0;
    while (lead + 1 < coeffs_.size() && is_zero(coeffs_[lead])) ++lead;
    return SuperDiffOp(std::vector<Scalar>(coeffs_.begin() + lead, coeffs_.end()));
}

SuperDiffOp SuperDiffOp::monicized(int fallback_trunc) const {
    if (!is_nondegenerate())
        throw DegenerateDivisor("top coefficient is not invertible");
    return scale_left(invert(coeffs_.front(), fallback_trunc));
}

Scalar SuperDiffOp::apply(const Scalar& f) const {
    int m = order();
    std::vector<Scalar> dpow;
    dpow.reserve(m + 1);
    dpow.push_back(f);
    for (int p = 1; p <= m; ++p) dpow.push_back(superderivative(dpow.back()));
    Scalar acc = zero_like(f);
    for (int k = 0; k <= m; ++k) {
        if (is_zero(coeffs_[k])) continue;
        acc = acc + coeffs_[k] * dpow[m - k];
    }
    return acc;
}

bool SuperDiffOp::is_zero_op() const {
    for (const auto& c : coeffs_)
        if (!is_zero(c)) return false;
    return true;
}

bool agree(const SuperDiffOp& a, const SuperDiffOp& b) {
    return (a - b).is_zero_op();
}

// Homogeneous pieces of a scalar (symbolic values may mix parities).
static std::vector<std::pair<Scalar, Parity>> parity_parts(const Scalar& s) {
    std::vector<std::pair<Scalar, Parity>> parts;
    if (is_zero(s)) return parts;
    ParityClass pc = parity_class(s);
    if (pc != ParityClass::Mixed) {
        parts.emplace_back(s, pc == ParityClass::Odd ? Parity::Odd : Parity::Even);
        return parts;
    }
    const SymbolicScalar& y = as_symbolic(s);
    SymbolicScalar even, odd;
    for (const auto& [m, q] : y.terms()) {
        SymbolicScalar t = SymbolicScalar::from_term(m, q);
        if (monomial_parity(m) == Parity::Odd) odd = odd + t;
        else even = even + t;
    }
    if (!even.is_zero()) parts.emplace_back(Scalar(even), Parity::Even);
    if (!odd.is_zero()) parts.emplace_back(Scalar(odd), Parity::Odd);
    return parts;
}

SuperDiffOp compose(const SuperDiffOp& a, const SuperDiffOp& b) {
    if (!same_model(a.proto(), b.proto()))
        throw ModelMismatch("composition across scalar models");
    int m = a.order(), n = b.order();
    std::vector<Scalar> r(m + n + 1, zero_like(a.proto()));
    for (int k = 0; k <= m; ++k) {
        const Scalar& ak = a.coeff(k);
        if (is_zero(ak)) continue;
        int da = m - k;
        for (int l = 0; l <= n; ++l) {
            for (const auto& [bl, pb] : parity_parts(b.coeff(l))) {
                int db = n - l;
                Scalar df = bl;
                for (int p = 0; p <= da; ++p) {
                    if (p > 0) df = superderivative(df);
                    Rational w = super_binomial(da, p);
                    if (w == 0) continue;
                    int q = da - p;
                    if (q % 2 != 0 && pb == Parity::Odd) w = -w;
                    int power = q + db;
                    int idx = m + n - power;
                    r[idx] = r[idx] + scaled(ak * df, w);
                }
            }
        }
    }
    return SuperDiffOp(std::move(r));
}

static Parity scalar_parity_or_throw(const Scalar& s, const char* what) {
    ParityClass pc = parity_class(s);
    if (pc == ParityClass::Mixed)
        throw ParityError(std::string("mixed parity where homogeneous required: ") + what);
    return pc == ParityClass::Odd ? Parity::Odd : Parity::Even;
}

DivisionResult divide_right(const SuperDiffOp& n, const SuperDiffOp& m, int fallback_trunc) {
    if (!m.is_nondegenerate())
        throw DegenerateDivisor("right division by a degenerate operator");
    int no = n.order(), r = m.order();
    Scalar m0_inv = invert(m.proto(), fallback_trunc);
    Parity pm0 = scalar_parity_or_throw(m.proto(), "divisor top coefficient");
    SuperDiffOp rem = n;
    int qord = std::max(no - r, 0);
    std::vector<Scalar> qc(qord + 1, zero_like(n.proto()));
    for (int t = no; t >= r; --t) {
        int d = t - r;
        Scalar c = rem.coeff_at_power(t);
        if (is_zero(c)) continue;
        int sign = (d % 2 != 0 && pm0 == Parity::Odd) ? -1 : 1;
        Scalar qd = scaled(c * m0_inv, sign);
        qc[qord - d] = qd;
        rem = rem - compose(SuperDiffOp::monomial(qd, d), m);
    }
    for (int t = no; t >= r; --t)
        if (!is_zero(rem.coeff_at_power(t)))
            throw Error("right division failed to eliminate the leading term");
    std::vector<Scalar> rc;
    for (int p = std::max(r - 1, 0); p >= 0; --p)
        rc.push_back(p <= rem.order() ? rem.coeff_at_power(p) : zero_like(n.proto()));
    return {SuperDiffOp(std::move(qc)), SuperDiffOp(std::move(rc))};
}

DivisionResult divide_left(const SuperDiffOp& n, const SuperDiffOp& m, int fallback_trunc) {
    if (!m.is_nondegenerate())
        throw DegenerateDivisor("left division by a degenerate operator");
    int no = n.order(), r = m.order();
    Scalar m0_inv = invert(m.proto(), fallback_trunc);
    Parity pm0 = scalar_parity_or_throw(m.proto(), "divisor top coefficient");
    SuperDiffOp rem = n;
    int qord = std::max(no - r, 0);
    std::vector<Scalar> qc(qord + 1, zero_like(n.proto()));
    for (int t = no; t >= r; --t) {
        int d = t - r;
        Scalar qd = zero_like(n.proto());
        // The leading contribution of M o (q D^d) is (-1)^(r|q|) m0 q D^(r+d);
        // solve for q piecewise on homogeneous parts of the current coefficient.
        for (const auto& [c, pc] : parity_parts(rem.coeff_at_power(t))) {
            Parity pq = pc + pm0;
            int sign = (r % 2 != 0 && pq == Parity::Odd) ? -1 : 1;
            qd = qd + scaled(m0_inv * c, sign);
        }
        if (is_zero(qd)) continue;
        qc[qord - d] = qd;
        rem = rem - compose(m, SuperDiffOp::monomial(qd, d));
    }
    for (int t = no; t >= r; --t)
        if (!is_zero(rem.coeff_at_power(t)))
            throw Error("left division failed to eliminate the leading term");
    std::vector<Scalar> rc;
    for (int p = std::max(r - 1, 0); p >= 0; --p)
        rc.push_back(p <= rem.order() ? rem.coeff_at_power(p) : zero_like(n.proto()));
    return {SuperDiffOp(std::move(qc)), SuperDiffOp(std::move(rc))};
}

// Lazy right division: instead of a running remainder, each coefficient of
// N is reduced by the explicitly expanded Leibniz contributions of the
// quotient terms found so far.
DivisionResult divide_right_alt(const SuperDiffOp& n, const SuperDiffOp& m, int fallback_trunc) {
    if (!m.is_nondegenerate())
        throw DegenerateDivisor("right division by a degenerate operator");
    int no = n.order(), r = m.order();
    Scalar m0_inv = invert(m.proto(), fallback_trunc);
    Parity pm0 = scalar_parity_or_throw(m.proto(), "divisor top coefficient");
    int qord = std::max(no - r, 0);
    std::vector<Scalar> qc(qord + 1, zero_like(n.proto()));

    // contribution to the coefficient of D^t from q_d D^d o m_l D^(r-l)
    auto contribution = [&](const Scalar& qd, int d, int t) {
        Scalar acc = zero_like(n.proto());
        for (int l = 0; l <= r; ++l) {
            for (const auto& [ml, pl] : parity_parts(m.coeff(l))) {
                int q = t - (r - l); // power left on D after the derivative
                int p = d - q;
                if (q < 0 || p < 0 || p > d) continue;
                Rational w = super_binomial(d, p);
                if (w == 0) continue;
                if (q % 2 != 0 && pl == Parity::Odd) w = -w;
                acc = acc + scaled(qd * superderivative(Scalar(ml), p), w);
            }
        }
        return acc;
    };

    for (int t = no; t >= r; --t) {
        int d = t - r;
        Scalar c = n.coeff_at_power(t);
        for (int d2 = d + 1; d2 <= qord; ++d2) {
            const Scalar& q2 = qc[qord - d2];
            if (is_zero(q2)) continue;
            c = c - contribution(q2, d2, t);
        }
        int sign = (d % 2 != 0 && pm0 == Parity::Odd) ? -1 : 1;
        qc[qord - d] = scaled(c * m0_inv, sign);
    }
    std::vector<Scalar> rc;
    for (int p = std::max(r - 1, 0); p >= 0; --p) {
        Scalar c = p <= no ? n.coeff_at_power(p) : zero_like(n.proto());
        for (int d2 = 0; d2 <= qord; ++d2) {
            const Scalar& q2 = qc[qord - d2];
            if (is_zero(q2)) continue;
            c = c - contribution(q2, d2, p);
        }
        rc.push_back(std::move(c));
    }
    return {SuperDiffOp(std::move(qc)), SuperDiffOp(std::move(rc))};
}

SuperDiffOp m_phi(const Scalar& phi, int fallback_trunc) {
    if (!parity_compatible(phi, Parity::Even))
        throw ParityError("m_phi needs an even function");
    Scalar a1 = -(superderivative(phi) * invert(phi, fallback_trunc));
    return SuperDiffOp({one_like(phi), a1});
}

SuperDiffOp gauge(const SuperDiffOp& a, const Scalar& g, int fallback_trunc) {
    if (!parity_compatible(g, Parity::Even))
        throw ParityError("gauge by a non-even function");
    SuperDiffOp inner = compose(a, SuperDiffOp::constant(g));
    return compose(SuperDiffOp::constant(invert(g, fallback_trunc)), inner);
}

std::vector<SuperDiffOp> factorize(const SuperDiffOp& l,
                                   const std::vector<SuperFunction>& flag,
                                   int fallback_trunc) {
    if ((int)flag.size() != l.order())
        throw Error("flag size must match the operator order");
    std::vector<SuperDiffOp> factors;
    SuperDiffOp chain = SuperDiffOp::constant(one_like(l.proto()));
    for (const auto& phi : flag) {
        Scalar f = phi;
        if (!is_zero(l.apply(f)))
            throw NotAKernelElement("flag element is not annihilated by the operator");
        Scalar v = chain.apply(f);
        if (!is_invertible(v))
            throw FlagNotInGeneralPosition("transformed flag element is not invertible");
        SuperDiffOp mi = m_phi(v, fallback_trunc);
        factors.push_back(mi);
        chain = compose(mi, chain);
    }
    DivisionResult dr = divide_right(l, chain, fallback_trunc);
    if (!dr.remainder.is_zero_op() || !agree(dr.quotient, SuperDiffOp::constant(l.coeff(0))))
        throw Error("factorization check failed");
    return factors;
}

} // namespace superline
