#ifndef SUPERLINE_SCALAR_HPP
#define SUPERLINE_SCALAR_HPP

#include <variant>

#include "superline/superfun.hpp"
#include "superline/symbolic.hpp"

namespace superline {

// Coefficient scalar: either a concrete function on the 1|1 line or a
// symbolic jet polynomial.  The two models never mix inside one value.
using Scalar = std::variant<SuperFunction, SymbolicScalar>;

inline bool is_concrete(const Scalar& s) { return s.index() == 0; }
inline bool same_model(const Scalar& a, const Scalar& b) { return a.index() == b.index(); }

inline const SuperFunction& as_concrete(const Scalar& s) {
    if (!is_concrete(s)) throw ModelMismatch("expected a concrete scalar");
    return std::get<SuperFunction>(s);
}
inline const SymbolicScalar& as_symbolic(const Scalar& s) {
    if (is_concrete(s)) throw ModelMismatch("expected a symbolic scalar");
    return std::get<SymbolicScalar>(s);
}

template <class F, class G>
Scalar scalar_map2(const Scalar& a, const Scalar& b, F f, G g) {
    if (!same_model(a, b)) throw ModelMismatch("mixed concrete and symbolic scalars");
    if (is_concrete(a)) return f(std::get<SuperFunction>(a), std::get<SuperFunction>(b));
    return g(std::get<SymbolicScalar>(a), std::get<SymbolicScalar>(b));
}

inline Scalar operator+(const Scalar& a, const Scalar& b) {
    return scalar_map2(a, b,
        [](const SuperFunction& x, const SuperFunction& y) -> Scalar { return x + y; },
        [](const SymbolicScalar& x, const SymbolicScalar& y) -> Scalar { return x + y; });
}

inline Scalar operator-(const Scalar& a, const Scalar& b) {
    return scalar_map2(a, b,
        [](const SuperFunction& x, const SuperFunction& y) -> Scalar { return x - y; },
        [](const SymbolicScalar& x, const SymbolicScalar& y) -> Scalar { return x - y; });
}

inline Scalar operator*(const Scalar& a, const Scalar& b) {
    return scalar_map2(a, b,
        [](const SuperFunction& x, const SuperFunction& y) -> Scalar { return x * y; },
        [](const SymbolicScalar& x, const SymbolicScalar& y) -> Scalar { return x * y; });
}

inline Scalar operator-(const Scalar& a) {
    if (is_concrete(a)) return -std::get<SuperFunction>(a);
    return -std::get<SymbolicScalar>(a);
}

inline Scalar scaled(const Scalar& a, const Rational& q) {
    if (is_concrete(a)) return std::get<SuperFunction>(a).scaled(q);
    return std::get<SymbolicScalar>(a).scaled(q);
}

inline Scalar superderivative(const Scalar& a) {
    if (is_concrete(a)) return std::get<SuperFunction>(a).superderivative();
    return std::get<SymbolicScalar>(a).superderivative();
}

inline Scalar superderivative(const Scalar& a, int k) {
    Scalar r = a;
    for (int i = 0; i < k; ++i) r = superderivative(r);
    return r;
}

inline Scalar spartial(const Scalar& a) { return superderivative(a, 2); }

inline bool is_zero(const Scalar& a) {
    if (is_concrete(a)) return std::get<SuperFunction>(a).is_zero();
    return std::get<SymbolicScalar>(a).is_zero();
}

inline bool is_invertible(const Scalar& a) {
    if (is_concrete(a)) return std::get<SuperFunction>(a).is_invertible();
    return std::get<SymbolicScalar>(a).is_invertible();
}

inline Scalar invert(const Scalar& a, int fallback_trunc = kDefaultTrunc) {
    if (is_concrete(a)) return std::get<SuperFunction>(a).invert(fallback_trunc);
    return std::get<SymbolicScalar>(a).invert();
}

inline Scalar divide_exact(const Scalar& a, const Scalar& b, int fallback_trunc = kDefaultTrunc) {
    return scalar_map2(a, b,
        [&](const SuperFunction& x, const SuperFunction& y) -> Scalar {
            return x.divide_exact(y, fallback_trunc);
        },
        [](const SymbolicScalar& x, const SymbolicScalar& y) -> Scalar {
            return x.divide_exact(y);
        });
}

inline ParityClass parity_class(const Scalar& a) {
    if (is_concrete(a)) {
        const SuperFunction& f = std::get<SuperFunction>(a);
        if (f.is_zero()) return ParityClass::Zero;
        return f.parity() == Parity::Odd ? ParityClass::Odd : ParityClass::Even;
    }
    return std::get<SymbolicScalar>(a).parity_class();
}

inline bool parity_compatible(const Scalar& a, Parity p) {
    ParityClass c = parity_class(a);
    if (c == ParityClass::Zero) return true;
    if (c == ParityClass::Mixed) return false;
    return (c == ParityClass::Odd) == (p == Parity::Odd);
}

// Equality on the known range (structural equality for symbolic values).
inline bool agree(const Scalar& a, const Scalar& b) { return is_zero(a - b); }

inline Scalar zero_like(const Scalar& a) {
    if (is_concrete(a)) return SuperFunction::zero();
    return SymbolicScalar();
}

inline Scalar one_like(const Scalar& a) {
    if (is_concrete(a)) return SuperFunction::one();
    return SymbolicScalar::one();
}

inline Scalar rational_like(const Scalar& a, const Rational& q) {
    if (is_concrete(a)) return SuperFunction::rational(q);
    return SymbolicScalar::constant(q);
}

// Evaluates a symbolic expression at concrete data: every symbol and odd
// constant must be bound to a concrete function in env.
inline SuperFunction evaluate(const SymbolicScalar& s,
                              const std::map<std::string, SuperFunction>& env,
                              int fallback_trunc = kDefaultTrunc) {
    SuperFunction total;
    for (const auto& [m, q] : s.terms()) {
        SuperFunction acc = SuperFunction::rational(q);
        for (const auto& [k, e] : m) {
            auto it = env.find(k.name);
            if (it == env.end())
                throw Error("evaluate: unbound symbol " + k.name);
            SuperFunction v = it->second.superderivative(k.level);
            if (e < 0) v = v.invert(fallback_trunc);
            int n = e < 0 ? -e : e;
            for (int i = 0; i < n; ++i) acc = acc * v;
        }
        total = total + acc;
    }
    return total;
}

} // namespace superline

#endif
