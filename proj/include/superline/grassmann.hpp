#ifndef SUPERLINE_GRASSMANN_HPP
#define SUPERLINE_GRASSMANN_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <optional>

#include "superline/errors.hpp"
#include "superline/parity.hpp"
#include "superline/rational.hpp"

namespace superline {

enum class ParityClass { Zero, Even, Odd, Mixed };

// Element of the Grassmann algebra over Q on at most 64 odd generators.
// A term is a product of distinct generators, stored as a bitmask with
// generator indices in increasing order; the map keeps the normal form
// unique, so equality is map equality.
class Grassmann {
public:
    using Mask = std::uint64_t;

    Grassmann() = default;

    static Grassmann rational(const Rational& q) {
        Grassmann g;
        if (q != 0) g.terms_[0] = q;
        return g;
    }
    static Grassmann one() { return rational(1); }
    static Grassmann generator(int i) {
        if (i < 0 || i >= 64) throw Error("generator index out of range");
        Grassmann g;
        g.terms_[Mask(1) << i] = 1;
        return g;
    }
    static Grassmann monomial(Mask m, const Rational& q) {
        Grassmann g;
        if (q != 0) g.terms_[m] = q;
        return g;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Mask, Rational>& terms() const { return terms_; }

    // Coefficient of the empty product; invertibility is body() != 0.
    Rational body() const {
        auto it = terms_.find(0);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    ParityClass parity_class() const {
        if (terms_.empty()) return ParityClass::Zero;
        bool even = false, odd = false;
        for (const auto& [m, q] : terms_)
            (std::popcount(m) % 2 ? odd : even) = true;
        if (even && odd) return ParityClass::Mixed;
        return odd ? ParityClass::Odd : ParityClass::Even;
    }

    bool parity_compatible(Parity p) const {
        ParityClass c = parity_class();
        if (c == ParityClass::Zero) return true;
        if (c == ParityClass::Mixed) return false;
        return (c == ParityClass::Odd) == (p == Parity::Odd);
    }

    Grassmann operator-() const {
        Grassmann r;
        for (const auto& [m, q] : terms_) r.terms_[m] = -q;
        return r;
    }

    Grassmann operator+(const Grassmann& o) const {
        Grassmann r = *this;
        for (const auto& [m, q] : o.terms_) {
            Rational& c = r.terms_[m];
            c += q;
            if (c == 0) r.terms_.erase(m);
        }
        return r;
    }

    Grassmann operator-(const Grassmann& o) const { return *this + (-o); }

    // Product in the written order: (this) * (o).  The sign of merging two
    // disjoint index sets counts the transpositions needed to interleave
    // them into increasing order.
    Grassmann operator*(const Grassmann& o) const {
        Grassmann r;
        for (const auto& [ma, qa] : terms_) {
            for (const auto& [mb, qb] : o.terms_) {
                if (ma & mb) continue;
                int inversions = 0;
                Mask b = mb;
                while (b) {
                    int j = std::countr_zero(b);
                    inversions += std::popcount(ma >> (j + 1));
                    b &= b - 1;
                }
                Rational c = qa * qb;
                if (inversions % 2) c = -c;
                Rational& slot = r.terms_[ma | mb];
                slot += c;
                if (slot == 0) r.terms_.erase(ma | mb);
            }
        }
        return r;
    }

    Grassmann scaled(const Rational& q) const {
        Grassmann r;
        if (q == 0) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * q;
        return r;
    }

    // Inverse of body + soul as body^-1 * geometric series in the nilpotent
    // part; terminates because every soul term carries at least one generator.
    Grassmann invert() const {
        Rational b = body();
        if (b == 0) throw NotInvertible("Grassmann element has zero body");
        Grassmann u = (*this - rational(b)).scaled(Rational(-1) / b);
        Grassmann acc = one();
        Grassmann term = one();
        while (true) {
            term = term * u;
            if (term.is_zero()) break;
            acc = acc + term;
        }
        return acc.scaled(Rational(1) / b);
    }

    bool operator==(const Grassmann& o) const { return terms_ == o.terms_; }
    bool operator!=(const Grassmann& o) const { return !(*this == o); }

private:
    std::map<Mask, Rational> terms_;
};

} // namespace superline

#endif
