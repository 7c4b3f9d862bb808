#ifndef SUPERLINE_SUPERMATRIX_HPP
#define SUPERLINE_SUPERMATRIX_HPP

#include <optional>
#include <vector>

#include "superline/scalar.hpp"

namespace superline {

struct MatrixFormat {
    std::vector<Parity> rows, cols;

    static MatrixFormat standard(int r, int s) {
        MatrixFormat f;
        for (int i = 0; i < r; ++i) f.rows.push_back(Parity::Even);
        for (int i = 0; i < s; ++i) f.rows.push_back(Parity::Odd);
        f.cols = f.rows;
        return f;
    }
    // even, odd, even, ... as used by Wronski matrices
    static MatrixFormat alternating(int n) {
        MatrixFormat f;
        for (int i = 0; i < n; ++i) f.rows.push_back(parity_of_int(i));
        f.cols = f.rows;
        return f;
    }
};

// Marks the unique line whose content parity is flipped against the
// format.  A wrong even line makes sense for Ber, a wrong odd line for
// Ber*; Berezinians of wrong matrices are odd-valued.
struct Wrongness {
    enum class Kind { None, Row, Col };
    Kind kind = Kind::None;
    int index = -1;

    static Wrongness none() { return {}; }
    static Wrongness row(int i) { return {Kind::Row, i}; }
    static Wrongness col(int j) { return {Kind::Col, j}; }
    bool is_none() const { return kind == Kind::None; }
    bool is_row(int i) const { return kind == Kind::Row && index == i; }
    bool is_col(int j) const { return kind == Kind::Col && index == j; }
};

// Matrix over one scalar model with a parity label on every row and
// column.  Entry (i, j) must be homogeneous of parity rows[i] + cols[j],
// flipped on the wrong line.  Formats are never rewritten: block
// extraction is stable and keeps the declared line order.
class FormatMatrix {
public:
    FormatMatrix(MatrixFormat fmt, std::vector<std::vector<Scalar>> entries,
                 Wrongness wrong = Wrongness::none());

    int rows() const { return (int)fmt_.rows.size(); }
    int cols() const { return (int)fmt_.cols.size(); }
    const MatrixFormat& format() const { return fmt_; }
    const Wrongness& wrongness() const { return wrong_; }
    const Scalar& entry(int i, int j) const { return a_.at(i).at(j); }
    const std::vector<std::vector<Scalar>>& entries() const { return a_; }
    const Scalar& proto() const { return a_.front().front(); }

    Parity expected_parity(int i, int j) const {
        Parity p = fmt_.rows[i] + fmt_.cols[j];
        if (wrong_.is_row(i) || wrong_.is_col(j)) p = flip(p);
        return p;
    }

    FormatMatrix pi_transpose() const;

    FormatMatrix with_row(int i, std::vector<Scalar> row, bool flip_wrong) const;
    FormatMatrix with_col(int j, std::vector<Scalar> col, bool flip_wrong) const;

    // r_i += lambda * r_j (lambda acts from the left).  On a wrong matrix
    // only adding a correct row to the wrong row is permitted.
    FormatMatrix row_op(int i, int j, const Scalar& lambda) const;
    FormatMatrix col_op(int j, int i, const Scalar& lambda) const; // c_j += c_i * lambda
    FormatMatrix scale_row(int i, const Scalar& mu) const;         // even invertible mu

    FormatMatrix deleted(int i, int j) const; // drop row i and column j

private:
    MatrixFormat fmt_;
    std::vector<std::vector<Scalar>> a_;
    Wrongness wrong_;
};

// Determinant over the (super)commutative scalar ring.  The matrix must be
// all even entries, except for at most one odd line, along which a Laplace
// expansion is taken.  Even matrices go through fraction-free elimination
// with invertible pivots and fall back to expansion when no invertible
// pivot exists.
Scalar ring_det(const std::vector<std::vector<Scalar>>& a, const Scalar& proto,
                int fallback_trunc = kDefaultTrunc,
                std::optional<std::pair<bool, int>> odd_line = std::nullopt);

// Classical adjugate of an all-even square block: A * adj(A) = det(A) * E.
std::vector<std::vector<Scalar>> ring_adjugate(const std::vector<std::vector<Scalar>>& a,
                                               const Scalar& proto, int fallback_trunc = kDefaultTrunc);

// Ber A = det(A00 - A01 A11^-1 A10) / det A11, computed with a single
// final division so that det A11 only needs to be a unit multiple of a
// power of x.
Scalar berezinian(const FormatMatrix& a, int fallback_trunc = kDefaultTrunc);

// The complementary block formula det A00 / det(A11 - A10 A00^-1 A01);
// defined for even matrices only.
Scalar berezinian_block2(const FormatMatrix& a, int fallback_trunc = kDefaultTrunc);

// Ber* A = Ber(A^Pi); inverse of Ber on even invertible matrices.
Scalar berezinian_star(const FormatMatrix& a, int fallback_trunc = kDefaultTrunc);

// Cofactor adj_ij: Berezinian of A with line i (or j) replaced by a unit
// line; defined when i or j is even.
Scalar cofactor(const FormatMatrix& a, int i, int j, int fallback_trunc = kDefaultTrunc);
// Cofactor adj*_ij built on Ber*; defined when i or j is odd.
Scalar cofactor_star(const FormatMatrix& a, int i, int j, int fallback_trunc = kDefaultTrunc);

// Row expansion: sum_j a_(i0 j) adj_(i0 j) = Ber A for an even row, and
// the Ber* analogue for an odd row.  Column expansions put the cofactor
// on the left.
Scalar expand_row(const FormatMatrix& a, int i0, int fallback_trunc = kDefaultTrunc);
Scalar expand_col(const FormatMatrix& a, int j0, int fallback_trunc = kDefaultTrunc);

// Gaussian inverse over the scalar ring (raw entries, labels transposed).
std::vector<std::vector<Scalar>> matrix_inverse(const FormatMatrix& a, int fallback_trunc = kDefaultTrunc);

// Solves A x = b through the cofactor form of A^-1.
std::vector<Scalar> solve_cramer(const FormatMatrix& a, const std::vector<Scalar>& b,
                                 int fallback_trunc = kDefaultTrunc);

enum class Delta { SuperD, Partial };

// Row-by-row differentiation:
//   delta Ber A = sum_(even i) Ber(row i -> delta row i)
//               - (Ber A)^2 * sum_(odd i) Ber*(row i -> delta row i).
// An odd delta makes every replaced matrix wrong.
Scalar differentiate_ber(const FormatMatrix& a, Delta delta, int fallback_trunc = kDefaultTrunc);

} // namespace superline

#endif
