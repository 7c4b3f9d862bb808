#ifndef SUPERLINE_SYMBOLIC_HPP
#define SUPERLINE_SYMBOLIC_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "superline/errors.hpp"
#include "superline/parity.hpp"
#include "superline/rational.hpp"

namespace superline {

// Jet variable D^level(name) of a declared symbol, or a named odd
// constant (killed by D).  The parity of a jet flips with each level.
struct JetKey {
    std::string name;
    int level = 0;
    Parity base = Parity::Even;
    bool is_constant = false;

    Parity parity() const {
        return is_constant ? base : base + parity_of_int(level);
    }

    static std::pair<std::string, long> split(const std::string& s) {
        size_t i = s.size();
        while (i > 0 && s[i - 1] >= '0' && s[i - 1] <= '9') --i;
        if (i == s.size() || i == 0) return {s, -1};
        return {s.substr(0, i), std::stol(s.substr(i))};
    }

    // Natural order: jets before constants, names with numeric suffixes in
    // numeric order (a2 before a10), then jet level.
    friend bool operator<(const JetKey& a, const JetKey& b) {
        if (a.is_constant != b.is_constant) return !a.is_constant;
        auto [pa, na] = split(a.name);
        auto [pb, nb] = split(b.name);
        if (pa != pb) return pa < pb;
        if (na != nb) return na < nb;
        if (a.name != b.name) return a.name < b.name;
        return a.level < b.level;
    }
    friend bool operator==(const JetKey& a, const JetKey& b) {
        return a.is_constant == b.is_constant && a.name == b.name &&
               a.level == b.level && a.base == b.base;
    }
    friend bool operator!=(const JetKey& a, const JetKey& b) { return !(a == b); }
};

// Sorted factor list; odd factors carry exponent 1, even factors any
// nonzero integer exponent (negative powers of even jets are allowed so
// that invertible monomials form a group).
using SymFactor = std::pair<JetKey, int>;
using Monomial = std::vector<SymFactor>;

inline bool monomial_less(const Monomial& a, const Monomial& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first;
        if (a[i].second != b[i].second) return a[i].second < b[i].second;
    }
    return a.size() < b.size();
}

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return monomial_less(a, b);
    }
};

inline Parity monomial_parity(const Monomial& m) {
    Parity p = Parity::Even;
    for (const auto& [k, e] : m)
        if (k.parity() == Parity::Odd && e % 2 != 0) p = flip(p);
    return p;
}

inline bool monomial_has_no_odd(const Monomial& m) {
    for (const auto& [k, e] : m)
        if (k.parity() == Parity::Odd) return false;
    return true;
}

// Polynomial (Laurent in the even jets) over Q in jet variables and odd
// constants, with supercommutative multiplication.  The map keys are
// sorted normal forms, so equality is structural equality.
class SymbolicScalar {
public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    SymbolicScalar() = default;

    static SymbolicScalar constant(const Rational& q) {
        SymbolicScalar s;
        if (q != 0) s.terms_[{}] = q;
        return s;
    }
    static SymbolicScalar one() { return constant(1); }

    static SymbolicScalar jet(const std::string& name, Parity base, int level = 0) {
        JetKey k{name, level, base, false};
        SymbolicScalar s;
        s.terms_[Monomial{{k, 1}}] = 1;
        return s;
    }

    static SymbolicScalar symbol_constant(const std::string& name, Parity p) {
        JetKey k{name, 0, p, true};
        SymbolicScalar s;
        s.terms_[Monomial{{k, 1}}] = 1;
        return s;
    }

    static SymbolicScalar odd_constant(const std::string& name) {
        return symbol_constant(name, Parity::Odd);
    }

    static SymbolicScalar from_term(Monomial m, const Rational& q) {
        SymbolicScalar s;
        int sign = 1;
        if (q != 0 && normalize(m, sign)) s.terms_[std::move(m)] = q * sign;
        return s;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Sorts a factor list, collecting Koszul signs from odd-odd swaps and
    // merging equal keys.  Returns false when the monomial vanishes
    // (repeated odd factor).
    static bool normalize(Monomial& f, int& sign) {
        for (size_t i = 1; i < f.size(); ++i) {
            SymFactor cur = f[i];
            size_t j = i;
            while (j > 0 && cur.first < f[j - 1].first) {
                if (cur.first.parity() == Parity::Odd &&
                    f[j - 1].first.parity() == Parity::Odd &&
                    cur.second % 2 != 0 && f[j - 1].second % 2 != 0)
                    sign = -sign;
                f[j] = f[j - 1];
                --j;
            }
            f[j] = cur;
        }
        Monomial out;
        for (const auto& fac : f) {
            if (fac.second == 0) continue;
            if (!out.empty() && out.back().first == fac.first) {
                out.back().second += fac.second;
                if (out.back().second == 0) out.pop_back();
            } else {
                out.push_back(fac);
            }
        }
        for (const auto& fac : out) {
            if (fac.first.parity() == Parity::Odd && fac.second != 1) {
                if (fac.second < 0)
                    throw Error("negative power of an odd symbol");
                return false;
            }
        }
        f = std::move(out);
        return true;
    }

    SymbolicScalar operator-() const {
        SymbolicScalar r;
        for (const auto& [m, q] : terms_) r.terms_[m] = -q;
        return r;
    }

    SymbolicScalar operator+(const SymbolicScalar& o) const {
        SymbolicScalar r = *this;
        for (const auto& [m, q] : o.terms_) r.add_term(m, q);
        return r;
    }

    SymbolicScalar operator-(const SymbolicScalar& o) const { return *this + (-o); }

    SymbolicScalar operator*(const SymbolicScalar& o) const {
        SymbolicScalar r;
        for (const auto& [ma, qa] : terms_) {
            for (const auto& [mb, qb] : o.terms_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                int sign = 1;
                if (!normalize(m, sign)) continue;
                r.add_term(m, qa * qb * sign);
            }
        }
        return r;
    }

    SymbolicScalar scaled(const Rational& q) const {
        SymbolicScalar r;
        if (q == 0) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * q;
        return r;
    }

    // Odd derivation: D(uv) = Du v + (-1)^|u| u Dv, jets bump their level,
    // odd constants die.
    SymbolicScalar superderivative() const {
        SymbolicScalar r;
        for (const auto& [m, q] : terms_) {
            int prefix_sign = 1;
            for (size_t i = 0; i < m.size(); ++i) {
                const auto& [k, e] = m[i];
                if (!k.is_constant) {
                    Monomial nm;
                    nm.reserve(m.size() + 1);
                    for (size_t j = 0; j < i; ++j) nm.push_back(m[j]);
                    Rational c = q * prefix_sign;
                    JetKey dk = k;
                    dk.level += 1;
                    if (k.parity() == Parity::Even) {
                        c *= e;
                        if (e != 1) nm.push_back({k, e - 1});
                        nm.push_back({dk, 1});
                    } else {
                        nm.push_back({dk, 1});
                    }
                    for (size_t j = i + 1; j < m.size(); ++j) nm.push_back(m[j]);
                    int sign = 1;
                    if (normalize(nm, sign)) r.add_term(nm, c * sign);
                }
                if (k.parity() == Parity::Odd && e % 2 != 0)
                    prefix_sign = -prefix_sign;
            }
        }
        return r;
    }

    SymbolicScalar superderivative(int n) const {
        SymbolicScalar r = *this;
        for (int i = 0; i < n; ++i) r = r.superderivative();
        return r;
    }

    SymbolicScalar partial() const { return superderivative(2); }

    ParityClass parity_class() const {
        ParityClass acc = ParityClass::Zero;
        for (const auto& [m, q] : terms_) {
            ParityClass pc = (monomial_parity(m) == Parity::Odd)
                                 ? ParityClass::Odd
                                 : ParityClass::Even;
            if (acc == ParityClass::Zero) acc = pc;
            else if (acc != pc) return ParityClass::Mixed;
        }
        return acc;
    }

    bool parity_compatible(Parity p) const {
        ParityClass c = parity_class();
        if (c == ParityClass::Zero) return true;
        if (c == ParityClass::Mixed) return false;
        return (c == ParityClass::Odd) == (p == Parity::Odd);
    }

    // The symbolic model is the free supercommutative ring localized at even
    // monomials.  A sum is invertible when exactly one of its terms is a pure
    // even monomial; the remaining, nilpotent part is handled by a terminating
    // geometric series.
    bool is_invertible() const {
        int even_terms = 0;
        for (const auto& [m, q] : terms_)
            if (monomial_has_no_odd(m)) ++even_terms;
        return even_terms == 1;
    }

    SymbolicScalar invert() const {
        const Monomial* um = nullptr;
        Rational uq;
        for (const auto& [m, q] : terms_) {
            if (!monomial_has_no_odd(m)) continue;
            if (um) throw NotInvertible("symbolic inverse needs a unique even monomial term");
            um = &m;
            uq = q;
        }
        if (!um) throw NotInvertible("symbolic inverse needs an even monomial term");
        Monomial im = *um;
        for (auto& [k, e] : im) e = -e;
        SymbolicScalar u_inv;
        u_inv.terms_[std::move(im)] = Rational(1) / uq;
        SymbolicScalar nil = *this;
        nil.terms_.erase(*um);
        if (nil.is_zero()) return u_inv;
        // (u + nil)^{-1} = u^{-1} sum_k (-nil u^{-1})^k; odd factors square to
        // zero, so the powers die out.
        SymbolicScalar w = nil * u_inv;
        w = w.scaled(-1);
        SymbolicScalar acc = one();
        SymbolicScalar pow = w;
        while (!pow.is_zero()) {
            acc = acc + pow;
            pow = pow * w;
        }
        return u_inv * acc;
    }

    SymbolicScalar divide_exact(const SymbolicScalar& b) const {
        if (b.is_zero()) throw NotInvertible("symbolic division by zero");
        return *this * b.invert();
    }

    // Replaces whole symbols (all their jets) by expressions; factors are
    // expanded in monomial order, so the Koszul signs come out of the
    // multiplication.
    SymbolicScalar substitute(const std::map<std::string, SymbolicScalar>& subs) const {
        SymbolicScalar r;
        for (const auto& [m, q] : terms_) {
            SymbolicScalar acc = constant(q);
            for (const auto& [k, e] : m) {
                auto it = k.is_constant ? subs.end() : subs.find(k.name);
                if (it == subs.end()) {
                    acc = acc * from_term(Monomial{{k, e}}, 1);
                } else {
                    if (e < 1)
                        throw Error("substitution into a negative power");
                    SymbolicScalar v = it->second.superderivative(k.level);
                    for (int i = 0; i < e; ++i) acc = acc * v;
                }
            }
            r = r + acc;
        }
        return r;
    }

    bool contains_symbol(const std::string& name) const {
        for (const auto& [m, q] : terms_)
            for (const auto& [k, e] : m)
                if (k.name == name) return true;
        return false;
    }

    std::set<std::string> symbol_names() const {
        std::set<std::string> s;
        for (const auto& [m, q] : terms_)
            for (const auto& [k, e] : m) s.insert(k.name);
        return s;
    }

    Rational coefficient_of(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    SymbolicScalar without_term(const Monomial& m) const {
        SymbolicScalar r = *this;
        r.terms_.erase(m);
        return r;
    }

    bool operator==(const SymbolicScalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const SymbolicScalar& o) const { return !(*this == o); }

private:
    void add_term(const Monomial& m, const Rational& q) {
        if (q == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, q);
        } else {
            it->second += q;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

} // namespace superline

#endif
