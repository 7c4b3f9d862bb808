#ifndef SUPERLINE_SERIES_HPP
#define SUPERLINE_SERIES_HPP

#include <climits>
#include <vector>

#include "superline/grassmann.hpp"

namespace superline {

// Truncation order used when an exact input forces a series inversion and
// the caller gives no other bound.  The CLI can override it per session.
inline constexpr int kDefaultTrunc = 16;

// Power series in the even coordinate x with Grassmann coefficients.
//
// A series is either exact (a polynomial, all coefficients known) or
// truncated (coefficients known through degree trunc(), nothing beyond).
// Every operation propagates the known range honestly and raises
// TruncationExceeded instead of inventing or silently dropping
// coefficients.  Stored coefficients always have trailing zeros trimmed,
// so the representation is a normal form.
class Series {
public:
    static constexpr int kExact = INT_MAX;

    Series() : trunc_(kExact) {}

    static Series exact(std::vector<Grassmann> coeffs) {
        Series s;
        s.coeffs_ = std::move(coeffs);
        s.trim();
        return s;
    }

    static Series truncated(std::vector<Grassmann> coeffs, int trunc) {
        if (trunc < 0) throw TruncationExceeded("series with empty known range");
        Series s;
        s.trunc_ = trunc;
        s.coeffs_ = std::move(coeffs);
        if ((int)s.coeffs_.size() > trunc + 1) s.coeffs_.resize(trunc + 1);
        s.trim();
        return s;
    }

    static Series constant(const Grassmann& c) { return exact({c}); }
    static Series x() { return exact({Grassmann(), Grassmann::one()}); }

    bool is_exact() const { return trunc_ == kExact; }
    int trunc() const { return trunc_; }
    bool is_zero() const { return coeffs_.empty(); }

    int degree_bound() const { return (int)coeffs_.size() - 1; }

    // Lowest index of a known nonzero coefficient.  For a series that is
    // zero on its whole known range this is a conservative lower bound
    // (trunc + 1), and kExact for the exact zero.
    int valuation_bound() const {
        for (int d = 0; d < (int)coeffs_.size(); ++d)
            if (!coeffs_[d].is_zero()) return d;
        return is_exact() ? kExact : trunc_ + 1;
    }

    const Grassmann& coeff(int d) const {
        if (d > trunc_)
            throw TruncationExceeded("series coefficient beyond truncation order");
        if (d < (int)coeffs_.size()) return coeffs_[d];
        static const Grassmann zero;
        return zero;
    }

    Series operator-() const {
        Series r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Series operator+(const Series& o) const {
        Series r;
        r.trunc_ = std::min(trunc_, o.trunc_);
        size_t n = std::max(coeffs_.size(), o.coeffs_.size());
        if (r.trunc_ != kExact) n = std::min(n, (size_t)r.trunc_ + 1);
        r.coeffs_.resize(n);
        for (size_t d = 0; d < n; ++d) {
            if (d < coeffs_.size()) r.coeffs_[d] = r.coeffs_[d] + coeffs_[d];
            if (d < o.coeffs_.size()) r.coeffs_[d] = r.coeffs_[d] + o.coeffs_[d];
        }
        r.trim();
        return r;
    }

    Series operator-(const Series& o) const { return *this + (-o); }

    // Coefficient products are taken in the written order; Grassmann
    // multiplication supplies the signs.  The known range of the product
    // uses the factor valuations: coefficient k of the product only needs
    // the other factor through degree k - val.
    Series operator*(const Series& o) const {
        Series r;
        r.trunc_ = std::min(sat_add(trunc_, o.valuation_bound()),
                            sat_add(o.trunc_, valuation_bound()));
        if (r.trunc_ < 0)
            throw TruncationExceeded("product has empty known range");
        int bound = sat_add(degree_bound(), o.degree_bound());
        if (bound < 0) return r; // one factor is zero
        int n = (r.trunc_ == kExact) ? bound : std::min(bound, r.trunc_);
        r.coeffs_.assign(n + 1, Grassmann());
        for (int i = 0; i <= degree_bound(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (int j = 0; j <= o.degree_bound(); ++j) {
                if (i + j > n) break;
                r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
            }
        }
        r.trim();
        return r;
    }

    Series scaled(const Rational& q) const {
        Series r = *this;
        if (q == 0) { r.coeffs_.clear(); return r; }
        for (auto& c : r.coeffs_) c = c.scaled(q);
        r.trim();
        return r;
    }

    Series mul_const_left(const Grassmann& g) const {
        Series r = *this;
        for (auto& c : r.coeffs_) c = g * c;
        r.trim();
        return r;
    }

    Series mul_const_right(const Grassmann& g) const {
        Series r = *this;
        for (auto& c : r.coeffs_) c = c * g;
        r.trim();
        return r;
    }

    Series derivative() const {
        Series r;
        if (trunc_ != kExact) {
            if (trunc_ == 0)
                throw TruncationExceeded("derivative of series known only at order 0");
            r.trunc_ = trunc_ - 1;
        }
        for (int d = 1; d < (int)coeffs_.size(); ++d)
            r.coeffs_.push_back(coeffs_[d].scaled(d));
        r.trim();
        return r;
    }

    // Inverse of a series whose constant coefficient has nonzero body.
    // An exact series with a nilpotent tail keeps an exact inverse (the
    // geometric series terminates); otherwise the inverse is truncated,
    // at fallback_trunc for exact input and at the input's own range else.
    Series invert(int fallback_trunc) const {
        Grassmann c0 = coeff(0);
        if (c0.body() == 0)
            throw NotInvertible("series constant term has zero body");
        if (is_exact()) {
            if (degree_bound() <= 0) return constant(c0.invert());
            bool nilpotent_tail = true;
            for (int d = 1; d <= degree_bound(); ++d)
                if (coeffs_[d].body() != 0) { nilpotent_tail = false; break; }
            if (nilpotent_tail) {
                Grassmann u_inv = c0.invert();
                Series w = (*this - constant(c0)).mul_const_left(u_inv);
                Series acc = constant(Grassmann::one());
                Series term = acc;
                Series neg_w = -w;
                while (true) {
                    term = term * neg_w;
                    if (term.is_zero()) break;
                    acc = acc + term;
                }
                return acc.mul_const_right(u_inv);
            }
        }
        int t = is_exact() ? fallback_trunc : trunc_;
        if (t < 0) throw TruncationExceeded("inverse has empty known range");
        std::vector<Grassmann> q(t + 1);
        Grassmann c0_inv = c0.invert();
        q[0] = c0_inv;
        for (int d = 1; d <= t; ++d) {
            Grassmann s;
            for (int e = 1; e <= d; ++e) s = s + coeff(e) * q[d - e];
            q[d] = -(c0_inv * s);
        }
        return truncated(std::move(q), t);
    }

    // Division h with h * b = a, for b = x^l * (unit + tail); coefficients
    // of a below x^l must be known and zero.  When both operands are exact
    // polynomials and the quotient is too, the result stays exact.
    Series divide_exact(const Series& b, int fallback_trunc) const {
        int l = b.valuation_bound();
        if (l == kExact) throw NotInvertible("division by zero series");
        if (b.coeff(l).body() == 0)
            throw NotInvertible("divisor valuation coefficient has zero body");
        if (is_exact() && is_zero()) return Series();
        if (is_exact() && b.is_exact() && b.coeffs_.back().body() != 0) {
            // polynomial long division from the top
            Grassmann lead_inv = b.coeffs_.back().invert();
            int db = b.degree_bound();
            Series rem = *this;
            Series quo;
            while (!rem.is_zero() && rem.degree_bound() >= db) {
                Grassmann q = rem.coeffs_.back() * lead_inv;
                Series term = constant(q).shifted_up(rem.degree_bound() - db);
                quo = quo + term;
                rem = rem - term * b;
            }
            if (rem.is_zero()) return quo;
        }
        for (int d = 0; d < l; ++d)
            if (!coeff(d).is_zero())
                throw Error("series division is not exact");
        return shifted_down(l) * b.shifted_down(l).invert(fallback_trunc);
    }

    Series shifted_down(int l) const {
        if (l == 0) return *this;
        Series r;
        if (trunc_ != kExact) {
            if (trunc_ - l < 0)
                throw TruncationExceeded("shift below known range");
            r.trunc_ = trunc_ - l;
        }
        for (int d = l; d < (int)coeffs_.size(); ++d) r.coeffs_.push_back(coeffs_[d]);
        r.trim();
        return r;
    }

    Series shifted_up(int l) const {
        if (l == 0) return *this;
        Series r;
        if (trunc_ != kExact) r.trunc_ = sat_add(trunc_, l);
        if (!coeffs_.empty()) {
            r.coeffs_.assign(l, Grassmann());
            r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
        }
        return r;
    }

    Series truncate_to(int t) const {
        if (t >= trunc_) return *this;
        Series r = *this;
        r.trunc_ = t;
        if ((int)r.coeffs_.size() > t + 1) r.coeffs_.resize(t + 1);
        r.trim();
        return r;
    }

    ParityClass parity_class() const {
        ParityClass acc = ParityClass::Zero;
        for (const auto& c : coeffs_) {
            ParityClass pc = c.parity_class();
            if (pc == ParityClass::Zero) continue;
            if (pc == ParityClass::Mixed) return ParityClass::Mixed;
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

    bool operator==(const Series& o) const {
        return trunc_ == o.trunc_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Series& o) const { return !(*this == o); }

    static int sat_add(int a, int b) {
        if (a == kExact || b == kExact) return kExact;
        long s = (long)a + (long)b;
        if (s >= kExact) return kExact;
        return (int)s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Grassmann> coeffs_;
    int trunc_;
};

// Equality on the common known range.
inline bool agree(const Series& a, const Series& b) { return (a - b).is_zero(); }

} // namespace superline

#endif
