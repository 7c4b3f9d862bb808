#ifndef SUPERLINE_SUPERFUN_HPP
#define SUPERLINE_SUPERFUN_HPP

#include "superline/series.hpp"

namespace superline {

// Homogeneous function f(x, xi) = f0(x) + xi * f1(x) on the 1|1 line.
// The odd coordinate xi is structural: only the two component series are
// stored.  For an even function f0 takes even Grassmann values and f1 odd
// ones; for an odd function the roles swap.  The zero function is
// compatible with either parity.
class SuperFunction {
public:
    SuperFunction() : parity_(Parity::Even) {}

    SuperFunction(Parity p, Series f0, Series f1)
        : parity_(p), f0_(std::move(f0)), f1_(std::move(f1)) {
        if (!f0_.parity_compatible(p))
            throw ParityError("component f0 incompatible with declared parity");
        if (!f1_.parity_compatible(flip(p)))
            throw ParityError("component f1 incompatible with declared parity");
    }

    static SuperFunction zero() { return SuperFunction(); }
    static SuperFunction one() {
        return SuperFunction(Parity::Even, Series::constant(Grassmann::one()), Series());
    }
    static SuperFunction x() {
        return SuperFunction(Parity::Even, Series::x(), Series());
    }
    static SuperFunction xi() {
        return SuperFunction(Parity::Odd, Series(), Series::constant(Grassmann::one()));
    }
    static SuperFunction constant(const Grassmann& c) {
        ParityClass pc = c.parity_class();
        if (pc == ParityClass::Mixed)
            throw ParityError("constant with mixed parity");
        Parity p = (pc == ParityClass::Odd) ? Parity::Odd : Parity::Even;
        return SuperFunction(p, Series::constant(c), Series());
    }
    // For constants of ambiguous parity class (zero), the caller picks.
    static SuperFunction constant(const Grassmann& c, Parity p) {
        if (!c.parity_compatible(p)) throw ParityError("constant parity mismatch");
        return SuperFunction(p, Series::constant(c), Series());
    }
    static SuperFunction rational(const Rational& q) {
        return constant(Grassmann::rational(q));
    }

    Parity parity() const { return parity_; }
    const Series& f0() const { return f0_; }
    const Series& f1() const { return f1_; }
    bool is_zero() const { return f0_.is_zero() && f1_.is_zero(); }

    SuperFunction operator-() const {
        SuperFunction r = *this;
        r.f0_ = -r.f0_;
        r.f1_ = -r.f1_;
        return r;
    }

    SuperFunction operator+(const SuperFunction& o) const {
        if (is_zero()) {
            SuperFunction r = o;
            r.f0_ = f0_ + o.f0_; // keeps the smaller known range
            r.f1_ = f1_ + o.f1_;
            return r;
        }
        if (!o.is_zero() && parity_ != o.parity_)
            throw ParityError("sum of functions of opposite parity");
        SuperFunction r = *this;
        r.f0_ = f0_ + o.f0_;
        r.f1_ = f1_ + o.f1_;
        return r;
    }

    SuperFunction operator-(const SuperFunction& o) const { return *this + (-o); }

    // (f0 + xi f1)(g0 + xi g1): moving xi past f0 costs the parity sign of
    // f0, which equals the parity of f itself.
    SuperFunction operator*(const SuperFunction& o) const {
        SuperFunction r;
        r.parity_ = parity_ + o.parity_;
        r.f0_ = f0_ * o.f0_;
        Series cross = f0_ * o.f1_;
        if (parity_ == Parity::Odd) cross = -cross;
        r.f1_ = f1_ * o.f0_ + cross;
        return r;
    }

    SuperFunction scaled(const Rational& q) const {
        SuperFunction r = *this;
        r.f0_ = r.f0_.scaled(q);
        r.f1_ = r.f1_.scaled(q);
        return r;
    }

    // D = d/dxi + xi d/dx, so D f = f1 + xi f0'.
    SuperFunction superderivative() const {
        SuperFunction r;
        r.parity_ = flip(parity_);
        r.f0_ = f1_;
        r.f1_ = f0_.derivative();
        return r;
    }

    SuperFunction partial() const { return superderivative().superderivative(); }

    SuperFunction superderivative(int k) const {
        SuperFunction r = *this;
        for (int i = 0; i < k; ++i) r = r.superderivative();
        return r;
    }

    bool is_invertible() const {
        if (parity_ == Parity::Odd && !is_zero()) return false;
        return f0_.coeff(0).body() != 0;
    }

    // Inverse of an even function with invertible f0: g0 = f0^-1 and
    // g1 = -f1 f0^-2 (components commute as needed, f0 is even-valued).
    SuperFunction invert(int fallback_trunc) const {
        if (parity_ == Parity::Odd && !is_zero())
            throw NotInvertible("odd function cannot be inverted");
        Series g0 = f0_.invert(fallback_trunc);
        SuperFunction r;
        r.parity_ = Parity::Even;
        r.f0_ = g0;
        r.f1_ = -(f1_ * (g0 * g0));
        return r;
    }

    // Exact division by an even g whose f0 is a unit times a power of x.
    SuperFunction divide_exact(const SuperFunction& g, int fallback_trunc) const {
        if (g.parity_ == Parity::Odd && !g.is_zero())
            throw NotInvertible("division by an odd function");
        Series h0 = f0_.divide_exact(g.f0_, fallback_trunc);
        Series num = f1_ - h0 * g.f1_;
        if (parity_ == Parity::Odd) num = f1_ + h0 * g.f1_;
        Series h1 = num.divide_exact(g.f0_, fallback_trunc);
        return SuperFunction(parity_, h0, h1);
    }

    SuperFunction truncate_to(int t) const {
        SuperFunction r = *this;
        r.f0_ = r.f0_.truncate_to(t);
        r.f1_ = r.f1_.truncate_to(t);
        return r;
    }

    bool operator==(const SuperFunction& o) const {
        return f0_ == o.f0_ && f1_ == o.f1_ &&
               (is_zero() || o.is_zero() || parity_ == o.parity_);
    }
    bool operator!=(const SuperFunction& o) const { return !(*this == o); }

private:
    Parity parity_;
    Series f0_, f1_;
};

inline bool agree(const SuperFunction& a, const SuperFunction& b) {
    return (a - b).is_zero();
}

} // namespace superline

#endif
