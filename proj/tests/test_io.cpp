#include <gtest/gtest.h>

#include "ginv/io.hpp"
#include "ginv/oracle.hpp"

namespace {

using namespace ginv;
using ginv::io::ParseError;
using ginv::io::parse_matrix;

TEST(ParseMatrix, AllEntrySpellings) {
    const Matrix m = parse_matrix("2 3\n1 2i -3.5j\n1+2i 2.5e-1-1e+0i -i\n");
    EXPECT_EQ(m(0, 0), Complex(1, 0));
    EXPECT_EQ(m(0, 1), Complex(0, 2));
    EXPECT_EQ(m(0, 2), Complex(0, -3.5));
    EXPECT_EQ(m(1, 0), Complex(1, 2));
    EXPECT_EQ(m(1, 1), Complex(0.25, -1));
    EXPECT_EQ(m(1, 2), Complex(0, -1));
}

TEST(ParseMatrix, ExponentSignsAreNotSplitPoints) {
    const Matrix m = parse_matrix("1 2\n1e-3+2E+2i -4e-1j\n");
    EXPECT_EQ(m(0, 0), Complex(1e-3, 200));
    EXPECT_EQ(m(0, 1), Complex(0, -0.4));
}

TEST(ParseMatrix, LayoutIsFreeAndCommentsAreSkipped) {
    const Matrix m = parse_matrix("# header comment\n2 2 1\n2 3\n\n   4\n# trailing\n");
    EXPECT_EQ(m, make_matrix(2, 2, {1, 2, 3, 4}));
    EXPECT_EQ(parse_matrix("0 0\n").size(), 0);
}

void expect_parse_error(const std::string& text, int line, int column) {
    try {
        (void)parse_matrix(text);
        FAIL() << "expected ParseError for: " << text;
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_EQ(e.column(), column) << e.what();
    }
}

TEST(ParseMatrix, ErrorsCarryPosition) {
    expect_parse_error("2 2\n1 2\n3 4x\n", 3, 3);
    expect_parse_error("2 2\n1 2\n3\n", 4, 1);
    expect_parse_error("2 2\n1 2\n3 4 5\n", 3, 5);
    expect_parse_error("x 2\n", 1, 1);
    expect_parse_error("2 -1\n", 1, 3);
    expect_parse_error("", 1, 1);
    expect_parse_error("1 1\n1+\n", 2, 1);
    expect_parse_error("1 1\n++1\n", 2, 1);
    expect_parse_error("1 1\n1 + 2i\n", 2, 3);
    expect_parse_error("1 1\nnan\n", 2, 1);
    expect_parse_error("1 1\ninfi\n", 2, 1);
}

TEST(FormatMatrix, UsesImaginaryUnitI) {
    const Matrix m = make_matrix(1, 4, {Complex(1, 0), Complex(0, 2), Complex(1.5, -2), Complex(-1, 1)});
    EXPECT_EQ(ginv::io::format_matrix(m), "1 4\n1 2i 1.5-2i -1+1i\n");
}

TEST(FormatMatrix, RoundTripIsExact) {
    oracle::Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const Index r = rng.uniform_int(0, 6);
        const Index c = rng.uniform_int(0, 6);
        Matrix m = oracle::random_gaussian(r, c, rng);
        for (Index i = 0; i < r; ++i) {
            for (Index j = 0; j < c; ++j) {
                const int kind = rng.uniform_int(0, 3);
                if (kind == 0) m(i, j).imag(0.0);
                if (kind == 1) m(i, j).real(0.0);
                if (kind == 2) m(i, j) *= 1e-200;
            }
        }
        EXPECT_EQ(parse_matrix(ginv::io::format_matrix(m)), m);
    }
}

TEST(ReadMatrixFile, MissingFile) {
    EXPECT_THROW(ginv::io::read_matrix_file("/nonexistent/matrix.mat"), ParseError);
}

}  // namespace
