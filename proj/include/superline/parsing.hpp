#ifndef SUPERLINE_PARSING_HPP
#define SUPERLINE_PARSING_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "superline/diffop.hpp"
#include "superline/printing.hpp"
#include "superline/scalar.hpp"
#include "superline/supermatrix.hpp"

namespace superline {

// Declarations scoped to one input document.  Jet symbols and odd
// constants select the symbolic model; generators, x and xi select the
// concrete model; one document cannot mix the two.
struct Session {
    int trunc = kDefaultTrunc;
    std::vector<std::string> gens;
    std::map<std::string, Parity> jets;
    std::set<std::string> odd_consts;

    bool symbolic() const { return !jets.empty() || !odd_consts.empty(); }
    NameTable names() const { return NameTable{gens}; }
};

// Consumes declaration lines (truncation N | generators a b | declare
// odd|even|oddconst names) from the front of the document and returns the
// index of the first line that is not a declaration.
size_t parse_declarations(const std::vector<std::string>& lines, Session& s);

Scalar parse_scalar(const std::string& src, const Session& s);
std::vector<Scalar> parse_scalar_list(const std::string& src, const Session& s);
SuperDiffOp parse_operator(const std::string& src, const Session& s);

// A matrix literal: a "format rows=.. cols=.. [wrong=row:i|col:j]" header
// followed by a row-major nested list of entries.
FormatMatrix parse_matrix(const std::string& src, const Session& s);

} // namespace superline

#endif
