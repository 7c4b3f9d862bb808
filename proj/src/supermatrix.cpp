#include "superline/supermatrix.hpp"

namespace superline {

FormatMatrix::FormatMatrix(MatrixFormat fmt, std::vector<std::vector<Scalar>> entries,
                           Wrongness wrong)
    : fmt_(std::move(fmt)), a_(std::move(entries)), wrong_(wrong) {
    if (fmt_.rows.empty() || fmt_.cols.empty())
        throw Error("empty matrix");
    if (a_.size() != fmt_.rows.size())
        throw Error("row count does not match the format");
    for (const auto& row : a_)
        if (row.size() != fmt_.cols.size())
            throw Error("column count does not match the format");
    if (wrong_.kind == Wrongness::Kind::Row &&
        (wrong_.index < 0 || wrong_.index >= rows()))
        throw IllegalWrongness("wrong row index out of range");
    if (wrong_.kind == Wrongness::Kind::Col &&
        (wrong_.index < 0 || wrong_.index >= cols()))
        throw IllegalWrongness("wrong column index out of range");
    for (int i = 0; i < rows(); ++i)
        for (int j = 0; j < cols(); ++j) {
            if (!same_model(a_[i][j], a_[0][0]))
                throw ModelMismatch("matrix entries mix scalar models");
            if (!parity_compatible(a_[i][j], expected_parity(i, j)))
                throw ParityError("matrix entry parity clashes with the format");
        }
}

FormatMatrix FormatMatrix::pi_transpose() const {
    MatrixFormat f = fmt_;
    for (auto& p : f.rows) p = flip(p);
    for (auto& p : f.cols) p = flip(p);
    return FormatMatrix(std::move(f), a_, wrong_);
}

FormatMatrix FormatMatrix::with_row(int i, std::vector<Scalar> row, bool flip_wrong) const {
    Wrongness w = wrong_;
    if (w.is_row(i)) w = Wrongness::none();
    if (flip_wrong) {
        if (!w.is_none())
            throw IllegalWrongness("matrix would acquire a second wrong line");
        w = Wrongness::row(i);
    }
    auto e = a_;
    e.at(i) = std::move(row);
    return FormatMatrix(fmt_, std::move(e), w);
}

FormatMatrix FormatMatrix::with_col(int j, std::vector<Scalar> col, bool flip_wrong) const {
    Wrongness w = wrong_;
    if (w.is_col(j)) w = Wrongness::none();
    if (flip_wrong) {
        if (!w.is_none())
            throw IllegalWrongness("matrix would acquire a second wrong line");
        w = Wrongness::col(j);
    }
    auto e = a_;
    for (int i = 0; i < rows(); ++i) e[i].at(j) = col.at(i);
    return FormatMatrix(fmt_, std::move(e), w);
}

FormatMatrix FormatMatrix::row_op(int i, int j, const Scalar& lambda) const {
    if (i == j) throw Error("row operation with identical rows");
    if (wrong_.kind == Wrongness::Kind::Col)
        throw IllegalWrongness("row operation on a matrix with a wrong column");
    if (wrong_.kind == Wrongness::Kind::Row && wrong_.index != i)
        throw IllegalWrongness("only the wrong row may receive multiples of other rows");
    auto e = a_;
    for (int k = 0; k < cols(); ++k) e[i][k] = e[i][k] + lambda * a_[j][k];
    return FormatMatrix(fmt_, std::move(e), wrong_);
}

FormatMatrix FormatMatrix::col_op(int j, int i, const Scalar& lambda) const {
    if (i == j) throw Error("column operation with identical columns");
    if (wrong_.kind == Wrongness::Kind::Row)
        throw IllegalWrongness("column operation on a matrix with a wrong row");
    if (wrong_.kind == Wrongness::Kind::Col && wrong_.index != j)
        throw IllegalWrongness("only the wrong column may receive multiples of other columns");
    auto e = a_;
    for (int r = 0; r < rows(); ++r) e[r][j] = e[r][j] + a_[r][i] * lambda;
    return FormatMatrix(fmt_, std::move(e), wrong_);
}

FormatMatrix FormatMatrix::scale_row(int i, const Scalar& mu) const {
    if (!parity_compatible(mu, Parity::Even))
        throw ParityError("row scaling needs an even scalar");
    auto e = a_;
    for (int k = 0; k < cols(); ++k) e[i][k] = mu * e[i][k];
    return FormatMatrix(fmt_, std::move(e), wrong_);
}

FormatMatrix FormatMatrix::deleted(int i, int j) const {
    if (rows() <= 1 || cols() <= 1) throw Error("deleting the last line");
    MatrixFormat f;
    Wrongness w = wrong_;
    if (w.is_row(i) || w.is_col(j)) w = Wrongness::none();
    else if (w.kind == Wrongness::Kind::Row && w.index > i) --w.index;
    else if (w.kind == Wrongness::Kind::Col && w.index > j) --w.index;
    std::vector<std::vector<Scalar>> e;
    for (int r = 0; r < rows(); ++r) {
        if (r == i) continue;
        f.rows.push_back(fmt_.rows[r]);
        std::vector<Scalar> row;
        for (int c = 0; c < cols(); ++c)
            if (c != j) row.push_back(a_[r][c]);
        e.push_back(std::move(row));
    }
    for (int c = 0; c < cols(); ++c)
        if (c != j) f.cols.push_back(fmt_.cols[c]);
    return FormatMatrix(std::move(f), std::move(e), w);
}

// ----- determinants over the scalar ring -----

using Mat = std::vector<std::vector<Scalar>>;

static Mat minor_of(const Mat& a, int i, int j) {
    Mat m;
    for (int r = 0; r < (int)a.size(); ++r) {
        if (r == i) continue;
        std::vector<Scalar> row;
        for (int c = 0; c < (int)a[r].size(); ++c)
            if (c != j) row.push_back(a[r][c]);
        m.push_back(std::move(row));
    }
    return m;
}

static Scalar det_laplace(const Mat& a, const Scalar& proto) {
    int n = (int)a.size();
    if (n == 0) return one_like(proto);
    if (n == 1) return a[0][0];
    Scalar acc = zero_like(proto);
    for (int j = 0; j < n; ++j) {
        if (is_zero(a[0][j])) continue;
        Scalar t = a[0][j] * det_laplace(minor_of(a, 0, j), proto);
        acc = (j % 2 == 0) ? acc + t : acc - t;
    }
    return acc;
}

// Fraction-free elimination (two-step minor identity); every pivot must be
// invertible, with row and column swaps allowed.  Returns nothing when the
// pivot search fails, in which case the caller expands instead.
static std::optional<Scalar> det_bareiss(Mat w, const Scalar& proto, int fallback_trunc) {
    int n = (int)w.size();
    if (n == 0) return one_like(proto);
    int sign = 1;
    Scalar prev = one_like(proto);
    for (int k = 0; k + 1 < n; ++k) {
        int pr = -1, pc = -1;
        for (int j = k; j < n && pr < 0; ++j)
            for (int i = k; i < n; ++i)
                if (is_invertible(w[i][j])) { pr = i; pc = j; break; }
        if (pr < 0) return std::nullopt;
        if (pr != k) { std::swap(w[pr], w[k]); sign = -sign; }
        if (pc != k) {
            for (int i = 0; i < n; ++i) std::swap(w[i][pc], w[i][k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w[i][j] = divide_exact(w[k][k] * w[i][j] - w[i][k] * w[k][j],
                                       prev, fallback_trunc);
        prev = w[k][k];
    }
    return sign == 1 ? w[n - 1][n - 1] : -w[n - 1][n - 1];
}

static Scalar det_even(const Mat& a, const Scalar& proto, int fallback_trunc) {
    // Bareiss divisions need ring division by earlier pivots, which the
    // symbolic model only supports for monomials; expand symbolically instead.
    if (is_concrete(proto) && a.size() > 2)
        if (auto d = det_bareiss(a, proto, fallback_trunc)) return *d;
    return det_laplace(a, proto);
}

Scalar ring_det(const Mat& a, const Scalar& proto, int fallback_trunc,
                std::optional<std::pair<bool, int>> odd_line) {
    int n = (int)a.size();
    if (n == 0) return one_like(proto);
    if ((int)a[0].size() != n) throw Error("determinant of a non-square block");
    if (!odd_line) return det_even(a, proto, fallback_trunc);
    auto [is_row, idx] = *odd_line;
    Scalar acc = zero_like(proto);
    if (is_row) {
        for (int j = 0; j < n; ++j) {
            if (is_zero(a[idx][j])) continue;
            Scalar t = a[idx][j] * det_even(minor_of(a, idx, j), proto, fallback_trunc);
            acc = ((idx + j) % 2 == 0) ? acc + t : acc - t;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            if (is_zero(a[i][idx])) continue;
            Scalar t = a[i][idx] * det_even(minor_of(a, i, idx), proto, fallback_trunc);
            acc = ((i + idx) % 2 == 0) ? acc + t : acc - t;
        }
    }
    return acc;
}

Mat ring_adjugate(const Mat& a, const Scalar& proto, int fallback_trunc) {
    int n = (int)a.size();
    Mat adj(n, std::vector<Scalar>(n, zero_like(proto)));
    if (n == 1) {
        adj[0][0] = one_like(proto);
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar d = det_even(minor_of(a, j, i), proto, fallback_trunc);
            adj[i][j] = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

static Mat matmul(const Mat& a, const Mat& b, const Scalar& proto) {
    int n = (int)a.size(), m = (int)b[0].size(), k = (int)b.size();
    Mat r(n, std::vector<Scalar>(m, zero_like(proto)));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (is_zero(a[i][l])) continue;
            for (int j = 0; j < m; ++j)
                r[i][j] = r[i][j] + a[i][l] * b[l][j];
        }
    return r;
}

static Scalar scalar_pow(const Scalar& s, int k) {
    Scalar acc = one_like(s);
    for (int i = 0; i < k; ++i) acc = acc * s;
    return acc;
}

struct BerSplit {
    std::vector<int> er, orr, ec, oc;
};

static BerSplit split_indices(const FormatMatrix& a) {
    BerSplit s;
    for (int i = 0; i < a.rows(); ++i)
        (a.format().rows[i] == Parity::Even ? s.er : s.orr).push_back(i);
    for (int j = 0; j < a.cols(); ++j)
        (a.format().cols[j] == Parity::Even ? s.ec : s.oc).push_back(j);
    return s;
}

static Mat extract(const FormatMatrix& a, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
    Mat m;
    for (int i : rows) {
        std::vector<Scalar> row;
        for (int j : cols) row.push_back(a.entry(i, j));
        m.push_back(std::move(row));
    }
    return m;
}

static int position_in(const std::vector<int>& v, int x) {
    for (int k = 0; k < (int)v.size(); ++k)
        if (v[k] == x) return k;
    return -1;
}

Scalar berezinian(const FormatMatrix& a, int fallback_trunc) {
    BerSplit s = split_indices(a);
    if (s.er.size() != s.ec.size() || s.orr.size() != s.oc.size())
        throw Error("berezinian of a non-square format");
    std::optional<std::pair<bool, int>> odd_line;
    if (!a.wrongness().is_none()) {
        bool is_row = a.wrongness().kind == Wrongness::Kind::Row;
        int idx = a.wrongness().index;
        Parity line = is_row ? a.format().rows[idx] : a.format().cols[idx];
        if (line != Parity::Even)
            throw IllegalWrongness("Ber needs the wrong line to be even");
        odd_line = {is_row, is_row ? position_in(s.er, idx) : position_in(s.ec, idx)};
    }
    try {
        if (s.orr.empty())
            return ring_det(extract(a, s.er, s.ec), a.proto(), fallback_trunc, odd_line);
        Mat a11 = extract(a, s.orr, s.oc);
        Scalar d = det_even(a11, a.proto(), fallback_trunc);
        if (s.er.empty())
            return divide_exact(one_like(a.proto()), d, fallback_trunc);
        Mat adj11 = ring_adjugate(a11, a.proto(), fallback_trunc);
        Mat a00 = extract(a, s.er, s.ec);
        Mat a01 = extract(a, s.er, s.oc);
        Mat a10 = extract(a, s.orr, s.ec);
        Mat p = matmul(matmul(a01, adj11, a.proto()), a10, a.proto());
        int re = (int)s.er.size();
        Mat num(re, std::vector<Scalar>(re, zero_like(a.proto())));
        for (int i = 0; i < re; ++i)
            for (int j = 0; j < re; ++j)
                num[i][j] = d * a00[i][j] - p[i][j];
        Scalar numdet = ring_det(num, a.proto(), fallback_trunc, odd_line);
        return divide_exact(numdet, scalar_pow(d, re + 1), fallback_trunc);
    } catch (const NotInvertible& e) {
        throw BerUndefined(std::string("berezinian undefined: ") + e.what());
    }
}

Scalar berezinian_block2(const FormatMatrix& a, int fallback_trunc) {
    if (!a.wrongness().is_none())
        throw IllegalWrongness("complementary block formula needs an even matrix");
    BerSplit s = split_indices(a);
    if (s.er.size() != s.ec.size() || s.orr.size() != s.oc.size())
        throw Error("berezinian of a non-square format");
    try {
        if (s.er.empty())
            return divide_exact(one_like(a.proto()),
                                det_even(extract(a, s.orr, s.oc), a.proto(), fallback_trunc),
                                fallback_trunc);
        Mat a00 = extract(a, s.er, s.ec);
        Scalar d0 = det_even(a00, a.proto(), fallback_trunc);
        if (s.orr.empty()) return d0;
        Mat adj00 = ring_adjugate(a00, a.proto(), fallback_trunc);
        Mat a01 = extract(a, s.er, s.oc);
        Mat a10 = extract(a, s.orr, s.ec);
        Mat a11 = extract(a, s.orr, s.oc);
        Mat p = matmul(matmul(a10, adj00, a.proto()), a01, a.proto());
        int ro = (int)s.orr.size();
        Mat den(ro, std::vector<Scalar>(ro, zero_like(a.proto())));
        for (int i = 0; i < ro; ++i)
            for (int j = 0; j < ro; ++j)
                den[i][j] = d0 * a11[i][j] - p[i][j];
        Scalar dendet = ring_det(den, a.proto(), fallback_trunc);
        return divide_exact(scalar_pow(d0, ro + 1), dendet, fallback_trunc);
    } catch (const NotInvertible& e) {
        throw BerUndefined(std::string("berezinian undefined: ") + e.what());
    }
}

Scalar berezinian_star(const FormatMatrix& a, int fallback_trunc) {
    if (!a.wrongness().is_none()) {
        bool is_row = a.wrongness().kind == Wrongness::Kind::Row;
        int idx = a.wrongness().index;
        Parity line = is_row ? a.format().rows[idx] : a.format().cols[idx];
        if (line != Parity::Odd)
            throw IllegalWrongness("Ber* needs the wrong line to be odd");
    }
    try {
        return berezinian(a.pi_transpose(), fallback_trunc);
    } catch (const BerUndefined& e) {
        throw BerStarUndefined(e.what());
    }
}

static std::vector<Scalar> unit_row(const FormatMatrix& a, int j) {
    std::vector<Scalar> r(a.cols(), zero_like(a.proto()));
    r[j] = one_like(a.proto());
    return r;
}

static std::vector<Scalar> unit_col(const FormatMatrix& a, int i) {
    std::vector<Scalar> c(a.rows(), zero_like(a.proto()));
    c[i] = one_like(a.proto());
    return c;
}

Scalar cofactor(const FormatMatrix& a, int i, int j, int fallback_trunc) {
    if (!a.wrongness().is_none())
        throw IllegalWrongness("cofactors are defined for even matrices");
    if (a.format().rows[i] == Parity::Even) {
        bool wrong = a.format().cols[j] == Parity::Odd;
        return berezinian(a.with_row(i, unit_row(a, j), wrong), fallback_trunc);
    }
    if (a.format().cols[j] == Parity::Even) {
        return berezinian(a.with_col(j, unit_col(a, i), true), fallback_trunc);
    }
    throw Error("cofactor needs an even row or column index");
}

Scalar cofactor_star(const FormatMatrix& a, int i, int j, int fallback_trunc) {
    if (!a.wrongness().is_none())
        throw IllegalWrongness("cofactors are defined for even matrices");
    if (a.format().rows[i] == Parity::Odd) {
        bool wrong = a.format().cols[j] == Parity::Even;
        return berezinian_star(a.with_row(i, unit_row(a, j), wrong), fallback_trunc);
    }
    if (a.format().cols[j] == Parity::Odd) {
        return berezinian_star(a.with_col(j, unit_col(a, i), true), fallback_trunc);
    }
    throw Error("starred cofactor needs an odd row or column index");
}

Scalar expand_row(const FormatMatrix& a, int i0, int fallback_trunc) {
    Scalar acc = zero_like(a.proto());
    bool even = a.format().rows[i0] == Parity::Even;
    for (int j = 0; j < a.cols(); ++j) {
        if (is_zero(a.entry(i0, j))) continue;
        Scalar c = even ? cofactor(a, i0, j, fallback_trunc)
                        : cofactor_star(a, i0, j, fallback_trunc);
        acc = acc + a.entry(i0, j) * c;
    }
    return acc;
}

Scalar expand_col(const FormatMatrix& a, int j0, int fallback_trunc) {
    Scalar acc = zero_like(a.proto());
    bool even = a.format().cols[j0] == Parity::Even;
    for (int i = 0; i < a.rows(); ++i) {
        if (is_zero(a.entry(i, j0))) continue;
        Scalar c = even ? cofactor(a, i, j0, fallback_trunc)
                        : cofactor_star(a, i, j0, fallback_trunc);
        acc = acc + c * a.entry(i, j0);
    }
    return acc;
}

std::vector<std::vector<Scalar>> matrix_inverse(const FormatMatrix& a, int fallback_trunc) {
    if (a.rows() != a.cols()) throw Error("inverse of a non-square matrix");
    int n = a.rows();
    Mat w = a.entries();
    Mat inv(n, std::vector<Scalar>(n, zero_like(a.proto())));
    for (int i = 0; i < n; ++i) inv[i][i] = one_like(a.proto());
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (is_invertible(w[i][k])) { p = i; break; }
        if (p < 0) throw NotInvertible("no invertible pivot during matrix inversion");
        std::swap(w[p], w[k]);
        std::swap(inv[p], inv[k]);
        Scalar piv_inv = invert(w[k][k], fallback_trunc);
        for (int j = 0; j < n; ++j) {
            w[k][j] = piv_inv * w[k][j];
            inv[k][j] = piv_inv * inv[k][j];
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || is_zero(w[i][k])) continue;
            Scalar f = w[i][k];
            for (int j = 0; j < n; ++j) {
                w[i][j] = w[i][j] - f * w[k][j];
                inv[i][j] = inv[i][j] - f * inv[k][j];
            }
        }
    }
    return inv;
}

std::vector<Scalar> solve_cramer(const FormatMatrix& a, const std::vector<Scalar>& b,
                                 int fallback_trunc) {
    if (!a.wrongness().is_none())
        throw IllegalWrongness("linear solving needs an even matrix");
    if ((int)b.size() != a.rows()) throw Error("right hand side size mismatch");
    int n = a.rows();
    Scalar ber = berezinian(a, fallback_trunc);
    Scalar ber_inv = invert(ber, fallback_trunc);
    std::optional<Scalar> bstar_inv;
    std::vector<Scalar> x(n, zero_like(a.proto()));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (is_zero(b[j])) continue;
            Scalar kij;
            if (a.format().rows[j] == Parity::Even || a.format().cols[i] == Parity::Even) {
                kij = cofactor(a, j, i, fallback_trunc) * ber_inv;
            } else {
                if (!bstar_inv)
                    bstar_inv = invert(berezinian_star(a, fallback_trunc), fallback_trunc);
                kij = cofactor_star(a, j, i, fallback_trunc) * *bstar_inv;
            }
            x[i] = x[i] + kij * b[j];
        }
    }
    return x;
}

Scalar differentiate_ber(const FormatMatrix& a, Delta delta, int fallback_trunc) {
    if (!a.wrongness().is_none())
        throw IllegalWrongness("differentiation needs an even matrix");
    bool odd_delta = delta == Delta::SuperD;
    Scalar even_sum = zero_like(a.proto());
    Scalar odd_sum = zero_like(a.proto());
    bool have_odd = false;
    for (int i = 0; i < a.rows(); ++i) {
        std::vector<Scalar> row;
        for (int j = 0; j < a.cols(); ++j) {
            Scalar d = superderivative(a.entry(i, j));
            if (delta == Delta::Partial) d = superderivative(d);
            row.push_back(std::move(d));
        }
        FormatMatrix m = a.with_row(i, std::move(row), odd_delta);
        if (a.format().rows[i] == Parity::Even) {
            even_sum = even_sum + berezinian(m, fallback_trunc);
        } else {
            odd_sum = odd_sum + berezinian_star(m, fallback_trunc);
            have_odd = true;
        }
    }
    if (!have_odd) return even_sum;
    Scalar ber = berezinian(a, fallback_trunc);
    return even_sum - (ber * ber) * odd_sum;
}

} // namespace superline
