#include "superline/wronskian.hpp"

namespace superline {

SuperJet SuperJet::of(const SuperFunction& f, int depth) {
    SuperJet j;
    j.base = f;
    j.depth = depth;
    j.coords.reserve(depth + 1);
    SuperFunction cur = f;
    for (int k = 0; k <= depth; ++k) {
        j.coords.push_back(cur);
        if (k < depth) cur = cur.superderivative();
    }
    return j;
}

// Iterated-derivative table: rows[i][j] = D^i phi_j for i = 0..depth.
static std::vector<std::vector<Scalar>> jet_rows(const std::vector<Scalar>& basis,
                                                 int depth) {
    std::vector<std::vector<Scalar>> rows;
    rows.push_back(basis);
    for (int i = 1; i <= depth; ++i) {
        std::vector<Scalar> row;
        row.reserve(basis.size());
        for (const Scalar& s : rows.back()) row.push_back(superderivative(s));
        rows.push_back(std::move(row));
    }
    return rows;
}

static void check_alternating(const std::vector<Scalar>& basis) {
    if (basis.empty()) throw Error("empty function system");
    for (size_t j = 0; j < basis.size(); ++j)
        if (!parity_compatible(basis[j], parity_of_int((long)j)))
            throw ParityError("function parities must alternate starting even");
}

FormatMatrix wronski_matrix(const std::vector<Scalar>& basis) {
    check_alternating(basis);
    int n = (int)basis.size();
    return FormatMatrix(MatrixFormat::alternating(n), jet_rows(basis, n - 1));
}

Scalar wronskian(const std::vector<Scalar>& basis, int fallback_trunc) {
    return berezinian(wronski_matrix(basis), fallback_trunc);
}

Scalar wronskian_star(const std::vector<Scalar>& basis, int fallback_trunc) {
    return berezinian_star(wronski_matrix(basis), fallback_trunc);
}

SuperDiffOp reconstruct_operator(const std::vector<Scalar>& basis, int fallback_trunc) {
    check_alternating(basis);
    int n = (int)basis.size();
    FormatMatrix a = wronski_matrix(basis);
    auto rows = jet_rows(basis, n);
    try {
        // Unknowns y = (a_n, ..., a_1) multiply the jets from the left:
        // sum_i y_i D^i phi_j = -D^n phi_j, so y_i = sum_j b_j (A^{-1})_{ji}
        // with the inverse entries given by cofactor ratios.
        Scalar ber_inv = invert(berezinian(a, fallback_trunc), fallback_trunc);
        std::optional<Scalar> bstar_inv;
        std::vector<Scalar> y(n, zero_like(basis[0]));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Scalar b = -rows[n][j];
                if (is_zero(b)) continue;
                Scalar kji;
                if (a.format().rows[j] == Parity::Even ||
                    a.format().cols[i] == Parity::Even) {
                    kji = cofactor(a, i, j, fallback_trunc) * ber_inv;
                } else {
                    if (!bstar_inv)
                        bstar_inv = invert(berezinian_star(a, fallback_trunc),
                                           fallback_trunc);
                    kji = cofactor_star(a, i, j, fallback_trunc) * *bstar_inv;
                }
                y[i] = y[i] + b * kji;
            }
        }
        std::vector<Scalar> coeffs;
        coeffs.push_back(one_like(basis[0]));
        for (int k = 1; k <= n; ++k) coeffs.push_back(y[n - k]);
        return SuperDiffOp(std::move(coeffs));
    } catch (const BerUndefined& e) {
        throw KernelNotInGeneralPosition(e.what());
    } catch (const NotInvertible& e) {
        throw KernelNotInGeneralPosition(e.what());
    }
}

std::vector<Scalar> coefficient_formulas(const std::vector<Scalar>& basis,
                                         int fallback_trunc) {
    check_alternating(basis);
    int n = (int)basis.size();
    FormatMatrix a = wronski_matrix(basis);
    auto rows = jet_rows(basis, n);
    try {
        Scalar w_inv = invert(berezinian(a, fallback_trunc), fallback_trunc);
        std::optional<Scalar> ws_inv;
        std::vector<Scalar> out;
        for (int k = 1; k <= n; ++k) {
            int i = n - k;
            FormatMatrix b = a.with_row(i, rows[n], k % 2 != 0);
            Scalar val;
            if (i % 2 == 0) {
                val = berezinian(b, fallback_trunc) * w_inv;
            } else {
                if (!ws_inv)
                    ws_inv = invert(berezinian_star(a, fallback_trunc), fallback_trunc);
                val = berezinian_star(b, fallback_trunc) * *ws_inv;
            }
            out.push_back(-val);
        }
        return out;
    } catch (const BerUndefined& e) {
        throw KernelNotInGeneralPosition(e.what());
    } catch (const NotInvertible& e) {
        throw KernelNotInGeneralPosition(e.what());
    }
}

Scalar d_wronskian(const std::vector<Scalar>& basis, bool star, int fallback_trunc) {
    check_alternating(basis);
    int n = (int)basis.size();
    FormatMatrix a = wronski_matrix(basis);
    FormatMatrix b = a.with_row(n - 1, jet_rows(basis, n)[n], true);
    bool last_even = (n - 1) % 2 == 0;
    if (!star) {
        if (last_even) return berezinian(b, fallback_trunc);
        Scalar w = berezinian(a, fallback_trunc);
        return -((w * w) * berezinian_star(b, fallback_trunc));
    }
    // Mirror formulas for W*, the two cases interchanged.
    if (!last_even) return berezinian_star(b, fallback_trunc);
    Scalar ws = berezinian_star(a, fallback_trunc);
    return -((ws * ws) * berezinian(b, fallback_trunc));
}

} // namespace superline
