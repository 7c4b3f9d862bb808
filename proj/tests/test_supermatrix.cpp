#include <doctest.h>

#include "superline/supermatrix.hpp"
#include "testutil.hpp"

using namespace superline;
using testutil::Rng;

namespace {

Scalar sf(SuperFunction f) { return Scalar(std::move(f)); }
Scalar sym(SymbolicScalar s) { return Scalar(std::move(s)); }

FormatMatrix mat_mul(const FormatMatrix& a, const FormatMatrix& b) {
    int n = a.rows();
    std::vector<std::vector<Scalar>> c(n, std::vector<Scalar>(n, zero_like(a.proto())));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                c[i][j] = c[i][j] + a.entry(i, k) * b.entry(k, j);
    return FormatMatrix(a.format(), std::move(c));
}

} // namespace

TEST_CASE("berezinian of a symbolic 1|1 matrix") {
    Scalar a00 = sym(SymbolicScalar::symbol_constant("a00", Parity::Even));
    Scalar a01 = sym(SymbolicScalar::symbol_constant("a01", Parity::Odd));
    Scalar a10 = sym(SymbolicScalar::symbol_constant("a10", Parity::Odd));
    Scalar a11 = sym(SymbolicScalar::symbol_constant("a11", Parity::Even));
    FormatMatrix a(MatrixFormat::standard(1, 1), {{a00, a01}, {a10, a11}});

    Scalar ber = berezinian(a);
    CHECK(agree(ber, a00 * invert(a11) - a01 * a10 * invert(a11 * a11)));
    CHECK(agree(berezinian_block2(a), ber));

    Scalar bstar = berezinian_star(a);
    CHECK(agree(bstar, berezinian(a.pi_transpose())));
    CHECK(agree(ber * bstar, one_like(a00)));

    // the worked cofactors
    CHECK(agree(cofactor(a, 0, 0), invert(a11)));
    CHECK(agree(cofactor(a, 0, 1), -(a10 * invert(a11 * a11))));

    // expansions reproduce Ber along even lines and Ber* along odd ones
    CHECK(agree(expand_row(a, 0), ber));
    CHECK(agree(expand_col(a, 0), ber));
    CHECK(agree(expand_row(a, 1), bstar));
    CHECK(agree(expand_col(a, 1), bstar));

    // cofactor / inverse relation
    auto inv = matrix_inverse(a);
    Scalar ber_inv = invert(ber);
    CHECK(agree(cofactor(a, 0, 0) * ber_inv, inv[0][0]));
    CHECK(agree(cofactor(a, 0, 1) * ber_inv, inv[1][0]));
    CHECK(agree(cofactor(a, 1, 0) * ber_inv, inv[0][1]));
    CHECK(agree(cofactor_star(a, 1, 1) * invert(bstar), inv[1][1]));

    // undefined cofactor parities
    CHECK_THROWS_AS(cofactor(a, 1, 1), Error);
    CHECK_THROWS_AS(cofactor_star(a, 0, 0), Error);
}

TEST_CASE("wrong matrices") {
    Scalar xi = sf(SuperFunction::xi());
    Scalar x = sf(SuperFunction::x());
    Scalar z = zero_like(xi);

    // the worked example: both rows equal gives Ber zero
    FormatMatrix w(MatrixFormat::standard(1, 1), {{xi, x}, {xi, x}}, Wrongness::row(0));
    CHECK(is_zero(berezinian(w)));

    // a zero lower-right block leaves Ber undefined
    CHECK_THROWS_AS(berezinian(FormatMatrix(MatrixFormat::standard(1, 1),
                                            {{xi, x}, {z, z}}, Wrongness::row(0))),
                    BerUndefined);

    // adding a correct row to the wrong row keeps the value
    Scalar lam = one_like(xi);
    CHECK(is_zero(berezinian(w.row_op(0, 1, -lam))));
    CHECK_THROWS_AS(w.row_op(1, 0, lam), IllegalWrongness);

    // Berezinians of wrong matrices are odd
    Scalar one = one_like(xi);
    FormatMatrix w2(MatrixFormat::standard(1, 1), {{xi, x}, {xi, one}},
                    Wrongness::row(0));
    Scalar bw = berezinian(w2);
    CHECK(parity_class(bw) == ParityClass::Odd);
    CHECK(agree(bw, xi - x * xi));
}

TEST_CASE("random matrices satisfy the berezinian identities") {
    Rng rng(301);
    const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    for (int t = 0; t < 12; ++t) {
        auto [r, s] = shapes[t % 4];
        FormatMatrix a = testutil::random_even_matrix(rng, r, s, 1, 3);
        FormatMatrix b = testutil::random_even_matrix(rng, r, s, 1, 3);
        Scalar ber = berezinian(a);

        CHECK(agree(berezinian(mat_mul(a, b)), ber * berezinian(b)));
        CHECK(agree(berezinian(a.pi_transpose()), invert(ber)));
        CHECK(agree(berezinian_star(a), invert(ber)));
        CHECK(agree(berezinian_block2(a), ber));

        for (int i = 0; i < a.rows(); ++i) {
            Scalar want = a.format().rows[i] == Parity::Even ? ber : berezinian_star(a);
            CHECK(agree(expand_row(a, i), want));
            CHECK(agree(expand_col(a, i), want));
        }

        auto inv = matrix_inverse(a);
        Scalar ber_inv = invert(ber);
        Scalar bstar_inv = invert(berezinian_star(a));
        for (int i = 0; i < a.rows(); ++i) {
            for (int j = 0; j < a.cols(); ++j) {
                bool ie = a.format().rows[i] == Parity::Even;
                bool je = a.format().cols[j] == Parity::Even;
                if (ie || je)
                    CHECK(agree(cofactor(a, i, j) * ber_inv, inv[j][i]));
                if (!ie || !je)
                    CHECK(agree(cofactor_star(a, i, j) * bstar_inv, inv[j][i]));
            }
        }
    }
}

TEST_CASE("cofactors reduce to smaller berezinians") {
    Rng rng(302);
    for (int t = 0; t < 8; ++t) {
        FormatMatrix a = testutil::random_even_matrix(rng, 2, 2, 1, 3);

        // both indices even: a signed minor, the sign counting positions
        // within the lines of the same parity
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Scalar minor = berezinian(a.deleted(i, j));
                if ((i + j) % 2) minor = -minor;
                CHECK(agree(cofactor(a, i, j), minor));
            }

        // both indices odd: the dual version
        for (int i = 2; i < 4; ++i)
            for (int j = 2; j < 4; ++j) {
                Scalar minor = berezinian_star(a.deleted(i, j));
                if ((i + j) % 2) minor = -minor;
                CHECK(agree(cofactor_star(a, i, j), minor));
            }

        // odd row, even column: the wrong-matrix quotient
        //   adj_ij = -Ber*(d_jj(A with row i replaced by row j)) / Ber*(d_jj A)^2
        for (int i = 2; i < 4; ++i)
            for (int j = 0; j < 2; ++j) {
                FormatMatrix swapped = a.with_row(i, a.entries()[j], true);
                Scalar num = berezinian_star(swapped.deleted(j, j));
                Scalar den = berezinian_star(a.deleted(j, j));
                CHECK(agree(cofactor(a, i, j), -(num * invert(den * den))));
            }
    }
}

TEST_CASE("berezinian differentiation and linear solving") {
    Rng rng(303);
    for (int t = 0; t < 8; ++t) {
        auto [r, s] = std::pair<int, int>(t % 2 ? 2 : 1, t % 3 ? 1 : 2);
        FormatMatrix a = testutil::random_even_matrix(rng, r, s, 2, 3);
        Scalar ber = berezinian(a);

        CHECK(agree(differentiate_ber(a, Delta::SuperD), superderivative(ber)));
        CHECK(agree(differentiate_ber(a, Delta::Partial), spartial(ber)));

        std::vector<Scalar> rhs;
        for (int i = 0; i < a.rows(); ++i)
            rhs.push_back(sf(testutil::random_superfun(
                rng, a.format().rows[i], 1, 3)));
        std::vector<Scalar> x = solve_cramer(a, rhs);
        for (int i = 0; i < a.rows(); ++i) {
            Scalar acc = zero_like(rhs[i]);
            for (int j = 0; j < a.cols(); ++j)
                acc = acc + a.entry(i, j) * x[j];
            CHECK(agree(acc, rhs[i]));
        }
    }
}

TEST_CASE("row scaling scales the berezinian") {
    Rng rng(304);
    FormatMatrix a = testutil::random_even_matrix(rng, 2, 1, 1, 3);
    SuperFunction muf = testutil::random_invertible(rng, 1, 3);
    Scalar mu = sf(muf);
    Scalar ber = berezinian(a);
    // an even row multiplies Ber, an odd row divides it
    CHECK(agree(berezinian(a.scale_row(0, mu)), mu * ber));
    CHECK(agree(berezinian(a.scale_row(2, mu)), invert(mu) * ber));
    // row operations leave it unchanged
    Scalar lam = sf(testutil::random_superfun(rng, Parity::Odd, 1, 3));
    CHECK(agree(berezinian(a.row_op(0, 2, lam)), ber));
}
