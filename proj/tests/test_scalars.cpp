#include <doctest.h>

#include "superline/scalar.hpp"
#include "testutil.hpp"

using namespace superline;
using testutil::Rng;

TEST_CASE("grassmann arithmetic") {
    Grassmann a = Grassmann::generator(0), b = Grassmann::generator(1);

    CHECK(a * b == -(b * a));
    CHECK((a * a).is_zero());
    CHECK(a.parity_class() == ParityClass::Odd);
    CHECK((a * b).parity_class() == ParityClass::Even);
    CHECK((Grassmann::one() + a).parity_class() == ParityClass::Mixed);

    Rng rng(101);
    for (int t = 0; t < 30; ++t) {
        Parity p = t % 2 ? Parity::Odd : Parity::Even;
        Parity q = t % 3 ? Parity::Odd : Parity::Even;
        Grassmann u = testutil::random_grassmann(rng, 4, p);
        Grassmann v = testutil::random_grassmann(rng, 4, q);
        Grassmann w = testutil::random_grassmann(rng, 4, Parity::Even);
        CHECK((u * v) * w == u * (v * w));
        CHECK(u * (v + w) == u * v + u * w);
        // supercommutativity of homogeneous elements
        Grassmann vu = v * u;
        if (p == Parity::Odd && q == Parity::Odd) vu = -vu;
        CHECK(u * v == vu);
    }
}

TEST_CASE("grassmann inverse") {
    Rng rng(102);
    for (int t = 0; t < 20; ++t) {
        Grassmann u = testutil::random_grassmann(rng, 4, Parity::Even) +
                      Grassmann::rational(testutil::random_rational(rng, true));
        if (u.body() == 0) continue;
        CHECK(u * u.invert() == Grassmann::one());
        CHECK(u.invert() * u == Grassmann::one());
    }
    CHECK_THROWS_AS(Grassmann::generator(0).invert(), NotInvertible);
}

TEST_CASE("series ring operations") {
    Rng rng(103);
    for (int t = 0; t < 20; ++t) {
        Series a = testutil::random_series(rng, 3, 3, Parity::Even);
        Series b = testutil::random_series(rng, 3, 3, Parity::Even);
        Series c = testutil::random_series(rng, 2, 3, Parity::Odd);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b).derivative() ==
              a.derivative() * b + a * b.derivative());
    }
}

TEST_CASE("series known range is honest") {
    Series t3 = Series::truncated({Grassmann::one(), Grassmann::one()}, 3);
    CHECK(t3.coeff(3).is_zero());
    CHECK_THROWS_AS(t3.coeff(4), TruncationExceeded);

    // the product range shrinks to what both factors support
    Series p = t3 * Series::x();
    CHECK(p.trunc() == 4);
    CHECK_THROWS_AS(p.coeff(5), TruncationExceeded);

    CHECK(t3.derivative().trunc() == 2);
    CHECK(Series::x().trunc() == Series::kExact);
}

TEST_CASE("series inverse and exact division") {
    // nilpotent tail keeps the inverse exact
    Grassmann g01 = Grassmann::monomial(0b11, 1);
    Series u = Series::exact({Grassmann::rational(2), g01});
    Series ui = u.invert(16);
    CHECK(ui.is_exact());
    CHECK(u * ui == Series::constant(Grassmann::one()));

    // a unit with body tail inverts as a truncated geometric series
    Series v = Series::exact({Grassmann::one(), Grassmann::rational(-1)});
    Series vi = v.invert(6);
    CHECK(vi.trunc() == 6);
    for (int d = 0; d <= 6; ++d) CHECK(vi.coeff(d) == Grassmann::one());
    CHECK(agree(v * vi, Series::constant(Grassmann::one())));

    // polynomial division stays exact when it closes
    Series q = Series::exact({Grassmann::rational(3), Grassmann::one()});
    CHECK((q * v).divide_exact(v, 16) == q);

    // division by x demands valuation
    Series xv = Series::x() * q;
    CHECK(xv.divide_exact(Series::x(), 16) == q);
    CHECK_THROWS_AS(Series::constant(Grassmann::one()).divide_exact(Series::x(), 16),
                    Error);
    CHECK_THROWS_AS(Series().invert(8), NotInvertible);
}

TEST_CASE("superfunction derivative laws") {
    Rng rng(104);
    for (int t = 0; t < 25; ++t) {
        Parity p = t % 2 ? Parity::Odd : Parity::Even;
        Parity q = t % 3 ? Parity::Odd : Parity::Even;
        SuperFunction f = testutil::random_superfun(rng, p, 3, 3);
        SuperFunction g = testutil::random_superfun(rng, q, 3, 3);

        // D is an odd derivation and D^2 is the x derivative
        SuperFunction lhs = (f * g).superderivative();
        SuperFunction rhs = f.superderivative() * g;
        SuperFunction cross = f * g.superderivative();
        if (p == Parity::Odd) cross = -cross;
        CHECK(agree(lhs, rhs + cross));
        CHECK(agree(f.partial(), f.superderivative(2)));
        // the even derivative obeys the plain Leibniz rule
        CHECK(agree((f * g).partial(), f.partial() * g + f * g.partial()));
    }
}

TEST_CASE("superfunction algebra") {
    SuperFunction xi = SuperFunction::xi();
    CHECK((xi * xi).is_zero());
    CHECK(xi.superderivative() == SuperFunction::one());
    CHECK(SuperFunction::x().superderivative() == xi);

    CHECK_THROWS_AS(SuperFunction::one() + xi, ParityError);
    CHECK_THROWS_AS(xi.invert(8), NotInvertible);

    Rng rng(105);
    for (int t = 0; t < 15; ++t) {
        SuperFunction f = testutil::random_invertible(rng, 3, 3);
        SuperFunction fi = f.invert(8);
        CHECK(agree(f * fi, SuperFunction::one()));
        CHECK(agree(fi * f, SuperFunction::one()));
        SuperFunction g = testutil::random_superfun(rng, Parity::Odd, 2, 3);
        CHECK(agree((g * f).divide_exact(f, 8), g));
    }
}

TEST_CASE("symbolic ring laws") {
    SymbolicScalar a1 = SymbolicScalar::jet("a1", Parity::Odd);
    SymbolicScalar a2 = SymbolicScalar::jet("a2", Parity::Even);
    SymbolicScalar eps = SymbolicScalar::odd_constant("eps");

    std::vector<std::pair<SymbolicScalar, Parity>> pool = {
        {a1, Parity::Odd},
        {a2, Parity::Even},
        {a1.superderivative(), Parity::Even},
        {a1 * a2 + a1.scaled(2), Parity::Odd},
        {a2 * a2 - a1 * a2.superderivative(), Parity::Even},
        {eps, Parity::Odd},
        {eps * a1 + SymbolicScalar::one(), Parity::Even},
    };
    for (const auto& [u, pu] : pool) {
        for (const auto& [v, pv] : pool) {
            SymbolicScalar vu = v * u;
            if (pu == Parity::Odd && pv == Parity::Odd) vu = -vu;
            CHECK(u * v == vu);
        }
    }

    // odd squares vanish
    CHECK((a1 * a1).is_zero());
    CHECK((eps * eps).is_zero());

    // D is an odd derivation; odd constants die
    SymbolicScalar u = a1 * a2;
    CHECK(u.superderivative() ==
          a1.superderivative() * a2 - a1 * a2.superderivative());
    CHECK(eps.superderivative().is_zero());
    CHECK(a2.superderivative(2) == SymbolicScalar::jet("a2", Parity::Even, 2));
}

TEST_CASE("symbolic localization") {
    SymbolicScalar a1 = SymbolicScalar::jet("a1", Parity::Odd);
    SymbolicScalar a2 = SymbolicScalar::jet("a2", Parity::Even);

    CHECK(a2.is_invertible());
    CHECK(a2.invert() * a2 == SymbolicScalar::one());

    // even monomial plus nilpotent tail
    SymbolicScalar s = a2 * a2 + a1 * a1.superderivative(2);
    CHECK(s.is_invertible());
    CHECK(s * s.invert() == SymbolicScalar::one());

    // two even monomials cannot be inverted in this model
    CHECK(!(a2 + SymbolicScalar::one()).is_invertible());
    CHECK_THROWS_AS((a2 + SymbolicScalar::one()).invert(), NotInvertible);
    CHECK(!a1.is_invertible());

    // divide_exact is inversion composed with product
    CHECK((s * a2).divide_exact(a2) == s);
}

TEST_CASE("symbolic substitution commutes with D") {
    SymbolicScalar a1 = SymbolicScalar::jet("a1", Parity::Odd);
    SymbolicScalar a2 = SymbolicScalar::jet("a2", Parity::Even);
    SymbolicScalar c1 = SymbolicScalar::jet("c1", Parity::Odd);

    SymbolicScalar c2 = SymbolicScalar::jet("c2", Parity::Even);
    SymbolicScalar s = a1 * a2.superderivative() + a2 * a2 + a1.superderivative();
    std::map<std::string, SymbolicScalar> sub = {
        {"a1", c1 * c2 + c1.scaled(3)},
        {"a2", c2 * c2 + c1 * c2.superderivative()},
    };
    CHECK(s.substitute(sub).superderivative() ==
          s.superderivative().substitute(sub));

    // substituting zero kills the symbol
    std::map<std::string, SymbolicScalar> kill = {{"a1", SymbolicScalar()}};
    CHECK(!s.substitute(kill).contains_symbol("a1"));
}

TEST_CASE("scalar evaluation binds jets to functions") {
    SymbolicScalar a1 = SymbolicScalar::jet("a1", Parity::Odd);
    SymbolicScalar a2 = SymbolicScalar::jet("a2", Parity::Even);
    SymbolicScalar expr = a1.superderivative() * a2 - a2 * a2 +
                          a1 * a1.superderivative(2);

    Rng rng(106);
    SuperFunction f = testutil::random_superfun(rng, Parity::Odd, 3, 3);
    SuperFunction g = testutil::random_superfun(rng, Parity::Even, 3, 3);
    std::map<std::string, SuperFunction> env = {{"a1", f}, {"a2", g}};
    SuperFunction want =
        f.superderivative() * g - g * g + f * f.superderivative(2);
    CHECK(agree(evaluate(expr, env), want));

    CHECK_THROWS_AS(evaluate(expr, {{"a1", f}}), Error);
}

TEST_CASE("scalar variant guards models") {
    Scalar c = Scalar(SuperFunction::x());
    Scalar s = Scalar(SymbolicScalar::jet("a2", Parity::Even));
    CHECK(is_concrete(c));
    CHECK(!is_concrete(s));
    CHECK_THROWS_AS(c + s, ModelMismatch);
    CHECK(parity_class(c) == ParityClass::Even);
    CHECK(parity_class(zero_like(c)) == ParityClass::Zero);
    CHECK(agree(superderivative(c), Scalar(SuperFunction::xi())));
}
