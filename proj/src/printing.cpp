#include "superline/printing.hpp"

#include <cstdint>

namespace superline {

namespace {

// A printed sum is a list of signed atoms; the joiner renders the sign of
// the first atom as a leading minus and the rest as separators.
struct PTerm {
    bool neg = false;
    std::string body;
};

std::string join(const std::vector<PTerm>& ts) {
    if (ts.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < ts.size(); ++i) {
        if (i == 0)
            out += ts[i].neg ? "-" : "";
        else
            out += ts[i].neg ? " - " : " + ";
        out += ts[i].body;
    }
    return out;
}

std::string magnitude(const Rational& q) {
    Rational a = q < 0 ? Rational(-q) : q;
    return a.get_str();
}

// Renders |q| * tail with the unit coefficient omitted; an empty tail
// renders the bare magnitude.
PTerm coeff_term(const Rational& q, const std::string& tail) {
    PTerm t;
    t.neg = q < 0;
    if (tail.empty())
        t.body = magnitude(q);
    else if (q == 1 || q == -1)
        t.body = tail;
    else
        t.body = magnitude(q) + "*" + tail;
    return t;
}

std::string gens_of_mask(std::uint64_t mask, const NameTable& names) {
    std::string out;
    for (int i = 0; mask != 0; ++i, mask >>= 1) {
        if (!(mask & 1)) continue;
        if (!out.empty()) out += "*";
        out += names.name(i);
    }
    return out;
}

std::vector<PTerm> grassmann_terms(const Grassmann& g, const NameTable& names) {
    std::vector<PTerm> ts;
    for (const auto& [mask, q] : g.terms())
        ts.push_back(coeff_term(q, gens_of_mask(mask, names)));
    return ts;
}

std::string xpow(int d) {
    if (d == 1) return "x";
    return "x^" + std::to_string(d);
}

std::vector<PTerm> series_terms(const Series& s, const NameTable& names) {
    std::vector<PTerm> ts;
    for (int d = 0; d <= s.degree_bound(); ++d) {
        const Grassmann& c = s.coeff(d);
        if (c.is_zero()) continue;
        std::vector<PTerm> cs = grassmann_terms(c, names);
        if (cs.size() == 1) {
            PTerm t = cs[0];
            if (d > 0) {
                if (t.body == "1")
                    t.body = xpow(d);
                else
                    t.body += "*" + xpow(d);
            }
            ts.push_back(std::move(t));
        } else {
            PTerm t;
            t.body = "(" + join(cs) + ")";
            if (d > 0) t.body += "*" + xpow(d);
            ts.push_back(std::move(t));
        }
    }
    if (!s.is_exact())
        ts.push_back(PTerm{false, "O(" + xpow(s.trunc() + 1) + ")"});
    return ts;
}

std::vector<PTerm> superfun_terms(const SuperFunction& f, const NameTable& names) {
    std::vector<PTerm> ts = series_terms(f.f0(), names);
    if (!f.f1().is_zero() || !f.f1().is_exact())
        ts.push_back(PTerm{false, "xi*(" + join(series_terms(f.f1(), names)) + ")"});
    return ts;
}

std::string jet_name(const JetKey& k) {
    if (k.is_constant || k.level == 0) return k.name;
    if (k.level == 1) return "D(" + k.name + ")";
    return "D^" + std::to_string(k.level) + "(" + k.name + ")";
}

std::vector<PTerm> symbolic_terms(const SymbolicScalar& s) {
    std::vector<PTerm> ts;
    for (const auto& [m, q] : s.terms()) {
        std::string tail;
        for (const auto& [k, e] : m) {
            if (!tail.empty()) tail += "*";
            tail += jet_name(k);
            if (e != 1) tail += "^" + std::to_string(e);
        }
        ts.push_back(coeff_term(q, tail));
    }
    return ts;
}

std::vector<PTerm> scalar_terms(const Scalar& s, const NameTable& names) {
    if (is_concrete(s)) return superfun_terms(as_concrete(s), names);
    return symbolic_terms(as_symbolic(s));
}

} // namespace

std::string print_rational(const Rational& q) { return q.get_str(); }

std::string print_grassmann(const Grassmann& g, const NameTable& names) {
    return join(grassmann_terms(g, names));
}

std::string print_series(const Series& s, const NameTable& names) {
    std::vector<PTerm> ts = series_terms(s, names);
    if (ts.empty()) return "0";
    return join(ts);
}

std::string print_superfun(const SuperFunction& f, const NameTable& names) {
    return join(superfun_terms(f, names));
}

std::string print_symbolic(const SymbolicScalar& s) {
    return join(symbolic_terms(s));
}

std::string print_scalar(const Scalar& s, const NameTable& names) {
    return join(scalar_terms(s, names));
}

std::string print_operator(const SuperDiffOp& a, const NameTable& names) {
    std::vector<PTerm> ts;
    for (int p = a.order(); p >= 0; --p) {
        const Scalar& c = a.coeff_at_power(p);
        bool show = !is_zero(c);
        if (!show && is_concrete(c)) {
            // a truncated zero keeps its O-marker visible
            const SuperFunction& f = as_concrete(c);
            show = !f.f0().is_exact() || !f.f1().is_exact();
        }
        if (!show) continue;
        if (p == 0) {
            std::vector<PTerm> cs = scalar_terms(c, names);
            if (!(cs.size() == 1 && cs[0].body == "0"))
                ts.insert(ts.end(), cs.begin(), cs.end());
            continue;
        }
        std::string dpart = p == 1 ? "D" : "D^" + std::to_string(p);
        std::vector<PTerm> cs = scalar_terms(c, names);
        if (cs.size() == 1) {
            PTerm t = cs[0];
            if (t.body == "1")
                t.body = dpart;
            else
                t.body += "*" + dpart;
            ts.push_back(std::move(t));
        } else {
            ts.push_back(PTerm{false, "(" + join(cs) + ")*" + dpart});
        }
    }
    if (ts.empty()) return "0";
    return join(ts);
}

std::string print_parity_class(ParityClass c) {
    switch (c) {
        case ParityClass::Zero: return "zero";
        case ParityClass::Even: return "even";
        case ParityClass::Odd: return "odd";
        default: return "mixed";
    }
}

} // namespace superline
