#pragma once

// Matrix index and the three decompositions the generalized inverses rest on:
// Hartwig-Spindelbock (core) form, core-EP form, core-nilpotent form.

#include <string>
#include <vector>

#include "ginv/matcore.hpp"

namespace ginv {

/// A matrix power together with its numerical rank.
struct MatrixPower {
    Matrix value;
    Index rank = 0;
};

/// Rounding noise a computed a^p can carry: roughly p * n * eps * ||a||_F^p.
/// Singular values of a power at or below this level are not resolvable.
inline double power_noise_floor(const Matrix& a, int p) {
    if (p <= 1 || a.size() == 0) {
        return 0.0;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    return 10.0 * static_cast<double>(a.rows()) * p * eps * std::pow(a.norm(), p);
}

/// a^p by repeated squaring, truncated to its numerical rank so that
/// unresolvable noise (e.g. in powers of a nilpotent matrix) is removed.
inline MatrixPower power(const Matrix& a, int p, const Tolerance& tol) {
    require_square(a, "power");
    if (p == 0) {
        return {identity(a.rows()), a.rows()};
    }
    Matrix raw = matrix_power(a, p);
    SvdResult f = svd(raw);
    const Index r = rank_from_singular_values(f.singular_values, raw.rows(), raw.cols(), tol,
                                              power_noise_floor(a, p));
    if (r == f.singular_values.size()) {
        return {std::move(raw), r};
    }
    Matrix cleaned = f.u.leftCols(r) * f.singular_values.head(r).asDiagonal() * f.v.leftCols(r).adjoint();
    return {std::move(cleaned), r};
}

struct IndexResult {
    int index = 1;
    std::vector<Index> rank_sequence;  ///< rank(a^j) for j = 1 .. index + 1
};

/// Smallest k >= 1 with rank(a^{k+1}) == rank(a^k). Invertible and zero
/// matrices both have index 1.
inline IndexResult index(const Matrix& a, const Tolerance& tol) {
    require_square(a, "index");
    IndexResult out;
    Matrix p = a;
    out.rank_sequence.push_back(rank(a, tol));
    for (int j = 2; j <= a.rows() + 2; ++j) {
        p = p * a;
        out.rank_sequence.push_back(rank(p, tol, power_noise_floor(a, j)));
        const auto m = out.rank_sequence.size();
        if (out.rank_sequence[m - 1] >= out.rank_sequence[m - 2]) {
            out.rank_sequence[m - 1] = out.rank_sequence[m - 2];
            out.index = j - 1;
            return out;
        }
    }
    throw NumericalError("index: rank sequence failed to stabilize");
}

/// Hartwig-Spindelbock form: a = u * [[sigma*k, sigma*l], [0, 0]] * u^*,
/// with k*k^* + l*l^* = I_r.
struct HSParts {
    Matrix u;
    Matrix sigma_k;  ///< r x r
    Matrix sigma_l;  ///< r x (n - r)
    Matrix sigma;    ///< r x r diagonal, singular values of a
    Matrix k;        ///< r x r
    Matrix l;        ///< r x (n - r)
    Index r = 0;

    Matrix assemble() const {
        const Index n = u.rows();
        Matrix inner = Matrix::Zero(n, n);
        inner.topLeftCorner(r, r) = sigma_k;
        inner.topRightCorner(r, n - r) = sigma_l;
        return u * inner * u.adjoint();
    }
};

inline HSParts hs_decompose(const Matrix& a, const Tolerance& tol) {
    require_square(a, "hs_decompose");
    const Index n = a.rows();
    SvdResult f = svd(a);
    HSParts hs;
    hs.r = rank_from_singular_values(f.singular_values, n, n, tol);
    hs.u = f.u;
    const Matrix kl = (f.v.adjoint() * f.u).topRows(hs.r);
    hs.k = kl.leftCols(hs.r);
    hs.l = kl.rightCols(n - hs.r);
    hs.sigma = f.singular_values.head(hs.r).cast<Complex>().asDiagonal();
    hs.sigma_k = hs.sigma * hs.k;
    hs.sigma_l = hs.sigma * hs.l;
    return hs;
}

/// Core-EP form: a = u * [[t, s], [0, n]] * u^* with t invertible upper
/// triangular and n nilpotent; a1 and a2 are the core and nilpotent parts.
struct CoreEPParts {
    Matrix u;
    Matrix t;
    Matrix s;
    Matrix n;
    Index r = 0;   ///< rank(a^k)
    int k = 1;     ///< index of a
    Matrix a1;
    Matrix a2;
    std::vector<std::string> warnings;
};

inline CoreEPParts core_ep_decompose(const Matrix& a, const Tolerance& tol) {
    require_square(a, "core_ep_decompose");
    const Index dim = a.rows();
    const IndexResult idx = index(a, tol);

    CoreEPParts p;
    p.k = idx.index;
    p.r = idx.rank_sequence[static_cast<std::size_t>(p.k - 1)];

    // The r = rank(a^k) eigenvalues of largest modulus are exactly the nonzero
    // ones. Computed eigenvalues of a nilpotent block of size m sit near
    // eps^(1/m), far above any fixed zero cutoff, so the split is by count.
    SchurResult schur = schur_leading(a, p.r);
    p.u = std::move(schur.u);
    p.t = schur.t.topLeftCorner(p.r, p.r);
    p.s = schur.t.topRightCorner(p.r, dim - p.r);
    p.n = schur.t.bottomRightCorner(dim - p.r, dim - p.r);

    Matrix upper = Matrix::Zero(dim, dim);
    upper.topRows(p.r) = schur.t.topRows(p.r);
    Matrix lower = Matrix::Zero(dim, dim);
    lower.bottomRightCorner(dim - p.r, dim - p.r) = p.n;
    p.a1 = p.u * upper * p.u.adjoint();
    p.a2 = p.u * lower * p.u.adjoint();

    if (p.r > 0) {
        const double cutoff = tol.eig_zero_rtol * a.norm();
        const double smallest_kept = p.t.diagonal().cwiseAbs().minCoeff();
        if (smallest_kept <= 10.0 * cutoff) {
            p.warnings.push_back("ill-separated spectrum: smallest nonzero eigenvalue modulus " +
                                 format_sci(smallest_kept) + " is within 10x of the zero cutoff");
        }
        if (dim > p.r) {
            const double largest_dropped = p.n.diagonal().cwiseAbs().maxCoeff();
            if (largest_dropped >= smallest_kept) {
                throw IllConditioned("core_ep_decompose: nilpotent eigenvalues not separated from the core block");
            }
        }
        Eigen::JacobiSVD<Matrix> tsv(p.t);
        const RealVector& sv = tsv.singularValues();
        if (sv(p.r - 1) <= tol.rank_rtol * static_cast<double>(dim) * sv(0)) {
            throw IllConditioned("core_ep_decompose: leading triangular block is numerically singular");
        }
    }
    return p;
}

/// Core-nilpotent form a = c + nil; computed from the Drazin inverse (see geninv.hpp).
struct CNParts {
    Matrix c;
    Matrix nil;
    int k = 1;
};

}  // namespace ginv
