#include "superline/kernel.hpp"

namespace superline {

CompanionSystem companion(const SuperDiffOp& l) {
    if (!l.concrete()) throw ModelMismatch("companion form needs series coefficients");
    if (!l.is_nondegenerate())
        throw InfiniteDimensionalKernel(
            "degenerate operator: the solution space is not finite dimensional");
    SuperDiffOp m = l.is_monic() ? l : l.monicized();
    int n = m.order();
    if (n == 0) throw Error("companion form of an order-zero operator");

    Scalar z = zero_like(m.coeff(0));
    std::vector<std::vector<Scalar>> e(n, std::vector<Scalar>(n, z));
    for (int i = 0; i + 1 < n; ++i) e[i][i + 1] = one_like(z);
    for (int j = 0; j < n; ++j) e[n - 1][j] = -m.coeff(n - j);

    MatrixFormat f;
    for (int i = 0; i < n; ++i) {
        f.rows.push_back(parity_of_int(i));
        f.cols.push_back(parity_of_int(i + 1));
    }
    CompanionSystem sys{n, FormatMatrix(std::move(f), std::move(e)), {}, {}};
    sys.gamma0.assign(n, std::vector<Series>(n));
    sys.gamma1.assign(n, std::vector<Series>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const SuperFunction& g = as_concrete(sys.gamma.entry(i, j));
            sys.gamma0[i][j] = g.f0();
            sys.gamma1[i][j] = g.f1();
        }
    return sys;
}

std::vector<SuperFunction> kernel_basis(const SuperDiffOp& l, int truncation) {
    if (truncation < 0) throw Error("negative truncation order");
    CompanionSystem sys = companion(l);
    int n = sys.order;

    // Splitting phihat = v(x) + xi w(x) and matching xi-components of
    // D phihat = Gamma phihat gives w = Gamma_0 v and
    // v' = B v,  B_ij = (Gamma_1)_ij + sum_k (-1)^{i+k+1} (Gamma_0)_ik (Gamma_0)_kj,
    // the sign being the parity of the entry (i,k) of the odd matrix Gamma.
    std::vector<std::vector<Series>> b(n, std::vector<Series>(n));
    int known = truncation;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Series acc = sys.gamma1[i][j];
            for (int k = 0; k < n; ++k) {
                Series t = sys.gamma0[i][k] * sys.gamma0[k][j];
                acc = acc + ((i + k + 1) % 2 == 0 ? t : t.scaled(-1));
            }
            b[i][j] = acc;
            if (!acc.is_exact()) known = std::min(known, acc.trunc() + 1);
        }

    std::vector<SuperFunction> out;
    out.reserve(n);
    for (int s = 0; s < n; ++s) {
        // v[i] holds the coefficient list of component i through degree `known`.
        std::vector<std::vector<Grassmann>> v(n, std::vector<Grassmann>(known + 1));
        v[s][0] = Grassmann::one();
        for (int d = 0; d < known; ++d) {
            for (int i = 0; i < n; ++i) {
                Grassmann acc;
                for (int k = 0; k < n; ++k)
                    for (int e = 0; e <= std::min(d, b[i][k].degree_bound()); ++e)
                        acc = acc + b[i][k].coeff(e) * v[k][d - e];
                v[i][d + 1] = acc.scaled(Rational(1, d + 1));
            }
        }
        Series f0 = Series::truncated(v[0], known);
        Series w0;
        {
            // first component of w = Gamma_0 v
            Series acc;
            for (int k = 0; k < n; ++k)
                acc = acc + sys.gamma0[0][k] * Series::truncated(v[k], known);
            w0 = acc.truncate_to(std::min(known, acc.is_exact() ? known : acc.trunc()));
        }
        out.push_back(SuperFunction(parity_of_int(s), f0, w0));
    }
    return out;
}

std::vector<SuperFunction> eigenfunctions(const SuperDiffOp& l, const Grassmann& lambda,
                                          int truncation) {
    Parity want = parity_of_int(l.order());
    if (!lambda.parity_compatible(want))
        throw ParityError("eigenvalue parity must match the operator parity");
    SuperFunction c = SuperFunction::constant(lambda, want);
    SuperDiffOp shifted = l - SuperDiffOp::monomial(Scalar(c), 0);
    return kernel_basis(shifted, truncation);
}

} // namespace superline
