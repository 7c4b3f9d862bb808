#include <doctest.h>

#include <string>

#include "superline/darboux.hpp"
#include "superline/parsing.hpp"
#include "superline/printing.hpp"

using namespace superline;

namespace {

Session concrete_session() {
    Session s;
    s.gens = {"l1", "l2"};
    return s;
}

Session symbolic_session() {
    Session s;
    s.jets = {{"a1", Parity::Odd},  {"a2", Parity::Even}, {"a3", Parity::Odd},
              {"a4", Parity::Even}, {"c1", Parity::Odd},  {"c2", Parity::Even}};
    s.odd_consts = {"eps"};
    return s;
}

std::string rt_scalar(const std::string& src, const Session& s) {
    return print_scalar(parse_scalar(src, s), s.names());
}

std::string rt_op(const std::string& src, const Session& s) {
    return print_operator(parse_operator(src, s), s.names());
}

} // namespace

TEST_CASE("scalar printing is canonical") {
    Session con = concrete_session(), sym = symbolic_session();
    CHECK(rt_scalar("1/2 + x^2", con) == "1/2 + x^2");
    CHECK(rt_scalar("x + O(x^3)", con) == "x + O(x^3)");
    CHECK(rt_scalar("1 + xi*(l1)", con) == "1 + xi*(l1)");
    CHECK(rt_scalar("l1*l2*x", con) == "l1*l2*x");
    CHECK(rt_scalar("3/6", con) == "1/2");
    CHECK(rt_scalar("-a1 + 2*c1", sym) == "-a1 + 2*c1");
    CHECK(rt_scalar("D(a1)*c1", sym) == "D(a1)*c1");
    CHECK(rt_scalar("a2^-1", sym) == "a2^-1");
    CHECK(rt_scalar("D^2(c1)", sym) == "D^2(c1)");
    // products reorder into the canonical monomial with the Koszul sign
    CHECK(rt_scalar("c1*a1", sym) == "-a1*c1");
    CHECK(rt_scalar("eps*a1*eps", sym) == "0");
}

TEST_CASE("operator printing is canonical") {
    Session con = concrete_session(), sym = symbolic_session();
    CHECK(rt_op("D^2 + a1*D + a2", sym) == "D^2 + a1*D + a2");
    CHECK(rt_op("(D + xi) o (D + xi)", con) == "D^2 + 1");
    CHECK(rt_op("(a2 + D(a1))*D", sym) == "(D(a1) + a2)*D");
    CHECK(rt_op("-D^3", sym) == "-D^3");
    CHECK(rt_op("2*x*D - 1/2", con) == "2*x*D - 1/2");
    CHECK(rt_op("D o D o D", con) == "D^3");
    CHECK(rt_op("xi*(1)*D", con) == "xi*(1)*D");
}

TEST_CASE("parse print roundtrips are stable") {
    Session con = concrete_session(), sym = symbolic_session();
    auto fix_scalar = [&](const std::string& src, const Session& s) {
        std::string p1 = print_scalar(parse_scalar(src, s), s.names());
        std::string p2 = print_scalar(parse_scalar(p1, s), s.names());
        CHECK(p2 == p1);
    };
    auto fix_op = [&](const std::string& src, const Session& s) {
        std::string p1 = print_operator(parse_operator(src, s), s.names());
        std::string p2 = print_operator(parse_operator(p1, s), s.names());
        CHECK(p2 == p1);
    };
    fix_scalar("1/3*x^4 + l1*l2*x + (1 + l1*l2)*x^2 + O(x^7)", con);
    fix_scalar("D(a1)*D(a2)^2*eps - 5*a2^-3", sym);
    fix_op("D^4 + a1*D^3 + a2*D^2 + a3*D + a4", sym);
    fix_op("(1 + x)*D^2 + xi*(1 + x)*D + l1*l2", con);
    fix_op("D^2 - x", con);
}

TEST_CASE("dressing formulas print in canonical order") {
    DressingResult r = derive_dressing(1, 1);
    CHECK(print_symbolic(r.b[0]) == "-a1 + 2*c1");
    CHECK(print_symbolic(r.compatibility[0]) == "D(a1) - D(c1)");

    DressingResult r3 = derive_dressing(3, 1);
    CHECK(print_symbolic(r3.b[2]) ==
          "D(a1)*c1 + 2*a2*c1 + D(a2) - a3 - c1*D(c1) + D^2(c1)");
}

TEST_CASE("matrix parsing reads formats and wrongness") {
    Session con = concrete_session();
    FormatMatrix a = parse_matrix(
        "format rows=+- cols=+- [[1 + x, xi*(1)], [xi*(x), 1 - x]]", con);
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 2);
    CHECK(a.wrongness().is_none());
    CHECK(agree(berezinian(a), a.entry(0, 0) * invert(a.entry(1, 1)) -
                                   a.entry(0, 1) * a.entry(1, 0) *
                                       invert(a.entry(1, 1) * a.entry(1, 1))));

    FormatMatrix w = parse_matrix(
        "format rows=+- cols=+- wrong=row:0 [[xi*(1), x], [xi*(x), 1]]", con);
    CHECK(w.wrongness().is_row(0));
}

TEST_CASE("parse errors identify the offending input") {
    Session con = concrete_session(), sym = symbolic_session();
    CHECK_THROWS_AS((void)parse_scalar("1 + zz", con), ParseError);
    CHECK_THROWS_AS((void)parse_scalar("x + a1", sym), ParseError);
    CHECK_THROWS_AS((void)parse_scalar("1 + xi", con), ParseError);
    CHECK_THROWS_AS((void)parse_scalar("D", con), ParseError);
    CHECK_THROWS_AS((void)parse_operator("D * a1", sym), ParseError);
    CHECK_THROWS_AS((void)parse_scalar("x^-1", con), ParseError);
    CHECK_THROWS_AS((void)parse_operator("(D + xi^", con), ParseError);

    try {
        (void)parse_scalar("1 + zz", con);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col >= 5);
    }
}
