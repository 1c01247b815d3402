#include <gtest/gtest.h>

#include <limits>

#include "ginv/fixtures.hpp"
#include "ginv/matcore.hpp"
#include "ginv/oracle.hpp"

namespace {

using namespace ginv;
using Complex = std::complex<double>;

const Tolerance kTol;
const Complex kI(0.0, 1.0);

TEST(MakeMatrix, RowMajorEntries) {
    const Matrix m = make_matrix(2, 3, {1, 2, 3, 4, 5, 6});
    EXPECT_EQ(m(0, 2), Complex(3));
    EXPECT_EQ(m(1, 0), Complex(4));
}

TEST(MakeMatrix, RejectsWrongEntryCount) {
    EXPECT_THROW(make_matrix(2, 2, {1, 2, 3}), DimensionMismatch);
}

TEST(MakeMatrix, RejectsNonFinite) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_THROW(make_matrix(1, 2, {1, nan}), PreconditionError);
    EXPECT_THROW(make_matrix(1, 1, {Complex(0, inf)}), PreconditionError);
}

TEST(Tolerance, Validation) {
    EXPECT_NO_THROW(Tolerance{}.validate());
    EXPECT_THROW((Tolerance{0.0, 1e-9, 1e-10}.validate()), PreconditionError);
    EXPECT_THROW((Tolerance{1e-12, 1.0, 1e-10}.validate()), PreconditionError);
    EXPECT_THROW((Tolerance{1e-12, 1e-9, -1.0}.validate()), PreconditionError);
}

TEST(Multiply, IdentityZeroAndNilpotentSquare) {
    oracle::Rng rng(11);
    const Matrix m = oracle::random_gaussian(3, 3, rng);
    EXPECT_EQ(multiply(identity(3), m), m);
    EXPECT_EQ(multiply(m, zeros(3)), zeros(3));
    const Matrix j = make_matrix(2, 2, {0, 1, 0, 0});
    EXPECT_EQ(multiply(j, j), zeros(2));
}

TEST(Multiply, DimensionMismatch) {
    EXPECT_THROW(multiply(zeros(2, 3), zeros(2, 3)), DimensionMismatch);
    EXPECT_THROW(add(zeros(2, 3), zeros(3, 2)), DimensionMismatch);
    EXPECT_THROW(subtract(zeros(2), zeros(3)), DimensionMismatch);
}

TEST(ConjTranspose, ConjugatesAndIsInvolution) {
    EXPECT_EQ(conj_transpose(make_matrix(1, 1, {kI}))(0, 0), -kI);
    oracle::Rng rng(12);
    const Matrix a = oracle::random_gaussian(3, 4, rng);
    EXPECT_EQ(conj_transpose(conj_transpose(a)), a);
    const Matrix sym = make_matrix(2, 2, {1, 2, 2, 5});
    EXPECT_EQ(conj_transpose(sym), sym);
}

TEST(Rank, Basics) {
    EXPECT_EQ(rank(identity(4), kTol), 4);
    EXPECT_EQ(rank(zeros(3), kTol), 0);
    EXPECT_EQ(rank(zeros(0, 0), kTol), 0);
    EXPECT_EQ(rank(fixtures::index_two(), kTol), 3);
}

TEST(Rank, NoiseFloorSuppressesRoundoff) {
    Matrix m = zeros(3);
    m(0, 0) = 1e-17;
    EXPECT_EQ(rank(m, kTol), 1);
    EXPECT_EQ(rank(m, kTol, 1e-15), 0);
}

TEST(ApproxEq, RelativeFrobeniusRule) {
    oracle::Rng rng(13);
    const Matrix m = oracle::random_gaussian(3, 3, rng);
    EXPECT_TRUE(approx_eq(m, m, kTol));
    EXPECT_TRUE(approx_eq(zeros(3), zeros(3), kTol));
    // ||10 eq I||_F / ||I + 10 eq I||_F is about 10 eq, well above eq.
    const Matrix i3 = identity(3);
    EXPECT_FALSE(approx_eq(i3, i3 + 10.0 * kTol.eq_rtol * i3, kTol));
    EXPECT_THROW(approx_eq(zeros(2), zeros(3), kTol), DimensionMismatch);
}

TEST(MatrixPower, AgreesWithRepeatedProduct) {
    oracle::Rng rng(14);
    const Matrix a = oracle::random_gaussian(4, 4, rng);
    Matrix expected = identity(4);
    for (int p = 0; p <= 7; ++p) {
        EXPECT_LE(relative_distance(matrix_power(a, p), expected), 1e-13) << "p = " << p;
        expected = expected * a;
    }
}

TEST(Svd, ReconstructsAndSorts) {
    oracle::Rng rng(15);
    for (auto [m, n] : {std::pair<Index, Index>{4, 4}, {3, 5}, {6, 2}}) {
        const Matrix a = oracle::random_gaussian(m, n, rng);
        const SvdResult f = svd(a);
        Matrix s = Matrix::Zero(m, n);
        for (Index i = 0; i < f.singular_values.size(); ++i) {
            s(i, i) = f.singular_values(i);
        }
        EXPECT_LE(relative_distance(f.u * s * f.v.adjoint(), a), 1e-13);
        for (Index i = 1; i < f.singular_values.size(); ++i) {
            EXPECT_GE(f.singular_values(i - 1), f.singular_values(i));
        }
    }
    const SvdResult id = svd(identity(2));
    EXPECT_NEAR(id.singular_values(0), 1.0, 1e-15);
    EXPECT_NEAR(id.singular_values(1), 1.0, 1e-15);
}

TEST(SolveUpperTriangular, MatchesDenseSolve) {
    oracle::Rng rng(16);
    Matrix t = oracle::random_gaussian(5, 5, rng).triangularView<Eigen::Upper>();
    t.diagonal().array() += 3.0;
    const Matrix b = oracle::random_gaussian(5, 2, rng);
    const Matrix x = solve_upper_triangular(t, b);
    EXPECT_LE(relative_distance(t * x, b), 1e-13);
}

void expect_valid_schur(const Matrix& a, const SchurResult& s) {
    const Index n = a.rows();
    EXPECT_LE(relative_distance(s.u * s.t * s.u.adjoint(), a), 1e-12);
    EXPECT_LE(relative_distance(s.u.adjoint() * s.u, identity(n)), 1e-12);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < i; ++j) {
            EXPECT_EQ(s.t(i, j), Complex(0.0));
        }
    }
}

TEST(SchurOrdered, MovesZeroEigenvaluesLast) {
    const Matrix d = make_matrix(2, 2, {0, 0, 0, 2});
    const SchurResult s = schur_ordered(d, kTol);
    expect_valid_schur(d, s);
    EXPECT_NEAR(std::abs(s.t(0, 0) - 2.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(s.t(1, 1)), 0.0, 1e-14);
    EXPECT_EQ(s.leading, 1);
}

TEST(SchurOrdered, IndexTwoFixtureSplitsOnesFromNilpotentBlock) {
    // Characteristic polynomial lambda^2 (lambda - 1)^2.
    const Matrix a = fixtures::index_two();
    const SchurResult s = schur_ordered(a, kTol);
    expect_valid_schur(a, s);
    EXPECT_EQ(s.leading, 2);
    EXPECT_NEAR(std::abs(s.t(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.t(1, 1) - 1.0), 0.0, 1e-12);
    const Matrix n = s.t.bottomRightCorner(2, 2);
    EXPECT_LE((n * n).norm(), 1e-12);
}

TEST(SchurOrdered, NoZeroBeforeNonzeroOnRandomInputs) {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const oracle::GenSpec spec = oracle::random_gen_spec(rng, 1, 8, 1, 100 + trial);
        const Matrix a = oracle::gen_matrix(spec);
        const SchurResult s = schur_ordered(a, kTol);
        expect_valid_schur(a, s);
        const double cutoff = kTol.eig_zero_rtol * a.norm();
        for (Index i = 0; i < s.leading; ++i) {
            EXPECT_GT(std::abs(s.t(i, i)), cutoff);
        }
        for (Index i = s.leading; i < a.rows(); ++i) {
            EXPECT_LE(std::abs(s.t(i, i)), cutoff);
        }
    }
}

TEST(SchurLeading, LargestModuliFirst) {
    oracle::Rng rng(18);
    const Matrix a = oracle::random_gaussian(7, 7, rng);
    for (Index count = 0; count <= 7; ++count) {
        const SchurResult s = schur_leading(a, count);
        expect_valid_schur(a, s);
        if (count > 0 && count < 7) {
            const double kept = s.t.diagonal().head(count).cwiseAbs().minCoeff();
            const double dropped = s.t.diagonal().tail(7 - count).cwiseAbs().maxCoeff();
            EXPECT_GE(kept, dropped);
        }
    }
}

TEST(Schur, RejectsNonSquare) {
    EXPECT_THROW(schur_ordered(zeros(2, 3), kTol), DimensionMismatch);
}

}  // namespace
