#pragma once

// Dense complex matrix arithmetic, factorizations and the tolerance policy
// shared by every other part of the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ginv/errors.hpp"

namespace ginv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical policy threaded through every operation.
///
/// rank_rtol     relative singular-value cutoff (scaled by max dimension and sigma_max)
/// eq_rtol       relative Frobenius tolerance used by approx_eq and all residual checks
/// eig_zero_rtol eigenvalues with |lambda| <= eig_zero_rtol * ||A||_F count as zero
struct Tolerance {
    double rank_rtol = 1e-12;
    double eq_rtol = 1e-9;
    double eig_zero_rtol = 1e-10;

    void validate() const {
        auto ok = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; };
        if (!ok(rank_rtol) || !ok(eq_rtol) || !ok(eig_zero_rtol)) {
            throw PreconditionError("tolerances must lie strictly between 0 and 1");
        }
    }
};

/// Short scientific rendering for diagnostics, e.g. "3.2e-11".
inline std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline bool all_finite(const Matrix& a) {
    return a.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
        .all();
}

inline void require_finite(const Matrix& a) {
    if (!all_finite(a)) {
        throw PreconditionError("matrix contains non-finite entries");
    }
}

inline void require_square(const Matrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch(std::string(what) + ": matrix must be square, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(what) + ": shapes differ (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
    }
}

/// Builds a validated matrix from row-major entries.
inline Matrix make_matrix(Index rows, Index cols, std::span<const Complex> entries) {
    if (rows < 0 || cols < 0) {
        throw PreconditionError("matrix dimensions must be nonnegative");
    }
    if (static_cast<std::size_t>(rows * cols) != entries.size()) {
        throw DimensionMismatch("entry count " + std::to_string(entries.size()) + " does not match " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = entries[static_cast<std::size_t>(i * cols + j)];
        }
    }
    require_finite(m);
    return m;
}

inline Matrix make_matrix(Index rows, Index cols, std::initializer_list<Complex> entries) {
    return make_matrix(rows, cols, std::span<const Complex>(entries.begin(), entries.size()));
}

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }
inline Matrix zeros(Index rows, Index cols) { return Matrix::Zero(rows, cols); }
inline Matrix zeros(Index n) { return Matrix::Zero(n, n); }

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("multiply: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + ")");
    }
    return a * b;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "add");
    return a + b;
}

inline Matrix subtract(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "subtract");
    return a - b;
}

inline Matrix scale(const Matrix& a, Complex s) { return a * s; }

inline Matrix conj_transpose(const Matrix& a) { return a.adjoint(); }

inline double frobenius_norm(const Matrix& a) { return a.norm(); }

/// a^p by repeated squaring; a^0 is the identity.
inline Matrix matrix_power(const Matrix& a, int p) {
    require_square(a, "matrix_power");
    if (p < 0) {
        throw PreconditionError("matrix_power: negative exponent");
    }
    Matrix result = identity(a.rows());
    Matrix base = a;
    bool first = true;
    while (p > 0) {
        if (p & 1) {
            result = first ? base : Matrix(result * base);
            first = false;
        }
        p >>= 1;
        if (p > 0) {
            base = base * base;
        }
    }
    return result;
}

/// ||a - b||_F / max(1, ||a||_F, ||b||_F): the relative distance every equality test uses.
inline double relative_distance(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "relative_distance");
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

inline bool approx_eq(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    return relative_distance(a, b) <= tol.eq_rtol;
}

struct SvdResult {
    Matrix u;                     ///< m x m unitary
    RealVector singular_values;   ///< min(m, n), non-increasing
    Matrix v;                     ///< n x n unitary
};

inline SvdResult svd(const Matrix& a) {
    const Index m = a.rows();
    const Index n = a.cols();
    if (m == 0 || n == 0) {
        return {identity(m), RealVector(0), identity(n)};
    }
    Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

/// Singular values above rank_rtol * max(m, n) * sigma_max, and above `noise_floor`.
inline Index rank_from_singular_values(const RealVector& sv, Index rows, Index cols, const Tolerance& tol,
                                       double noise_floor = 0.0) {
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    const double cutoff =
        std::max(tol.rank_rtol * static_cast<double>(std::max(rows, cols)) * sv(0), noise_floor);
    Index r = 0;
    while (r < sv.size() && sv(r) > cutoff) {
        ++r;
    }
    return r;
}

inline Index rank(const Matrix& a, const Tolerance& tol, double noise_floor = 0.0) {
    if (a.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Matrix> solver(a);
    return rank_from_singular_values(solver.singularValues(), a.rows(), a.cols(), tol, noise_floor);
}

/// Back substitution for t * x = b with t upper triangular.
inline Matrix solve_upper_triangular(const Matrix& t, const Matrix& b) {
    require_square(t, "solve_upper_triangular");
    if (t.rows() != b.rows()) {
        throw DimensionMismatch("solve_upper_triangular: right-hand side has wrong row count");
    }
    for (Index i = 0; i < t.rows(); ++i) {
        if (t(i, i) == Complex(0.0)) {
            throw NumericalError("solve_upper_triangular: zero on the diagonal");
        }
    }
    return t.triangularView<Eigen::Upper>().solve(b);
}

struct SchurResult {
    Matrix u;             ///< unitary, a = u * t * u^*
    Matrix t;             ///< upper triangular
    Index leading = 0;    ///< number of eigenvalues moved to the front
};

namespace detail {

inline SchurResult complex_schur(const Matrix& a) {
    const Index n = a.rows();
    if (n == 0) {
        return {Matrix(0, 0), Matrix(0, 0), 0};
    }
    Eigen::ComplexSchur<Matrix> schur(a, true);
    if (schur.info() != Eigen::Success) {
        throw ConvergenceError("complex Schur iteration did not converge");
    }
    Matrix t = schur.matrixT();
    t.triangularView<Eigen::StrictlyLower>().setZero();
    return {schur.matrixU(), t, 0};
}

// Exchanges the diagonal entries k and k+1 of the triangular factor with a
// plane rotation built from the eigenvector of the trailing entry.
inline void swap_adjacent(Matrix& u, Matrix& t, Index k) {
    const Complex a = t(k, k);
    const Complex b = t(k, k + 1);
    const Complex c = t(k + 1, k + 1);
    Complex x = b;
    Complex y = c - a;
    const double nrm = std::hypot(std::abs(x), std::abs(y));
    if (nrm == 0.0) {
        return;
    }
    x /= nrm;
    y /= nrm;
    Eigen::Matrix2cd g;
    g << x, -std::conj(y), y, std::conj(x);
    t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
    t.middleCols(k, 2) = t.middleCols(k, 2) * g;
    u.middleCols(k, 2) = u.middleCols(k, 2) * g;
    t(k + 1, k) = Complex(0.0);
}

// Stable partition of the Schur form: diagonal positions flagged in `lead`
// move to the front, keeping their relative order.
inline void reorder_schur(Matrix& u, Matrix& t, std::vector<bool> lead) {
    Index placed = 0;
    for (Index i = 0; i < t.rows(); ++i) {
        if (!lead[static_cast<std::size_t>(i)]) {
            continue;
        }
        for (Index j = i - 1; j >= placed; --j) {
            swap_adjacent(u, t, j);
            std::swap(lead[static_cast<std::size_t>(j)], lead[static_cast<std::size_t>(j + 1)]);
        }
        ++placed;
    }
}

}  // namespace detail

/// Complex Schur form with every eigenvalue |lambda| > eig_zero_rtol * ||a||_F
/// ahead of every eigenvalue classified as zero.
inline SchurResult schur_ordered(const Matrix& a, const Tolerance& tol) {
    require_square(a, "schur_ordered");
    SchurResult s = detail::complex_schur(a);
    const double cutoff = tol.eig_zero_rtol * a.norm();
    std::vector<bool> lead(static_cast<std::size_t>(a.rows()));
    for (Index i = 0; i < a.rows(); ++i) {
        lead[static_cast<std::size_t>(i)] = std::abs(s.t(i, i)) > cutoff;
    }
    s.leading = static_cast<Index>(std::count(lead.begin(), lead.end(), true));
    detail::reorder_schur(s.u, s.t, std::move(lead));
    return s;
}

/// Complex Schur form with the `count` eigenvalues of largest modulus first.
inline SchurResult schur_leading(const Matrix& a, Index count) {
    require_square(a, "schur_leading");
    if (count < 0 || count > a.rows()) {
        throw PreconditionError("schur_leading: count out of range");
    }
    SchurResult s = detail::complex_schur(a);
    std::vector<Index> order(static_cast<std::size_t>(a.rows()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index x, Index y) { return std::abs(s.t(x, x)) > std::abs(s.t(y, y)); });
    std::vector<bool> lead(static_cast<std::size_t>(a.rows()), false);
    for (Index i = 0; i < count; ++i) {
        lead[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
    }
    s.leading = count;
    detail::reorder_schur(s.u, s.t, std::move(lead));
    return s;
}

}  // namespace ginv
