#ifndef SUPERLINE_PRINTING_HPP
#define SUPERLINE_PRINTING_HPP

#include <string>
#include <vector>

#include "superline/diffop.hpp"
#include "superline/scalar.hpp"

namespace superline {

// Maps Grassmann generator indices to their declared names; indices past
// the declared list fall back to g1, g2, ...
struct NameTable {
    std::vector<std::string> gens;
    std::string name(int i) const {
        if (i >= 0 && i < (int)gens.size()) return gens[i];
        return "g" + std::to_string(i + 1);
    }
};

// Canonical text forms.  Reparsing a printed value under the same session
// yields the same value, and reprinting yields the same text, so printed
// canonical forms are parse/print fixed points.
std::string print_rational(const Rational& q);
std::string print_grassmann(const Grassmann& g, const NameTable& names);
std::string print_series(const Series& s, const NameTable& names);
std::string print_superfun(const SuperFunction& f, const NameTable& names);
std::string print_symbolic(const SymbolicScalar& s);
std::string print_scalar(const Scalar& s, const NameTable& names = {});
std::string print_operator(const SuperDiffOp& a, const NameTable& names = {});
std::string print_parity_class(ParityClass c);

} // namespace superline

#endif
