#pragma once

// Independent verification: seeded random generators for structured matrices,
// a brute-force WG solver that shares no factorization code with the Schur
// path, and the property suites that exercise every module.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ginv/decomp.hpp"
#include "ginv/fixtures.hpp"
#include "ginv/geninv.hpp"
#include "ginv/matcore.hpp"
#include "ginv/orders.hpp"

namespace ginv::oracle {

/// Portable seeded generator: mt19937_64 bits with hand-rolled transforms so
/// sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(engine_() % span);
    }

    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_normal() { return Complex(normal(), normal()) / std::numbers::sqrt2; }

    Complex unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t case_seed(std::uint64_t seed, std::size_t case_id) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(case_id) + 1));
}

inline Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = rng.complex_normal();
        }
    }
    return m;
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of R removed.
inline Matrix random_unitary(Index n, Rng& rng) {
    if (n == 0) {
        return Matrix(0, 0);
    }
    const Matrix g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

/// Random matrix with singular values drawn uniformly from [0.5, 2].
inline Matrix random_invertible(Index n, Rng& rng) {
    const Matrix left = random_unitary(n, rng);
    const Matrix right = random_unitary(n, rng);
    RealVector sv(n);
    for (Index i = 0; i < n; ++i) {
        sv(i) = rng.uniform(0.5, 2.0);
    }
    return left * sv.cast<Complex>().asDiagonal() * right.adjoint();
}

/// Strictly upper shift: superdiagonal entries of modulus in [0.5, 1.5] where
/// `support[i]` is set, zero elsewhere. Rank equals the support size.
inline Matrix shift_matrix(Index m, const std::vector<bool>& support, Rng& rng) {
    Matrix s = Matrix::Zero(m, m);
    for (Index i = 0; i + 1 < m; ++i) {
        const Complex z = rng.uniform(0.5, 1.5) * rng.unit_phase();
        if (support[static_cast<std::size_t>(i)]) {
            s(i, i + 1) = z;
        }
    }
    return s;
}

/// Dense nilpotent matrix of nilpotency index m in a random unitary basis.
inline Matrix random_nilpotent(Index m, Rng& rng) {
    if (m == 0) {
        return Matrix(0, 0);
    }
    Matrix s = shift_matrix(m, std::vector<bool>(static_cast<std::size_t>(m), true), rng);
    for (Index i = 0; i < m; ++i) {
        for (Index j = i + 2; j < m; ++j) {
            s(i, j) = 0.5 * rng.complex_normal();
        }
    }
    const Matrix v = random_unitary(m, rng);
    return v * s * v.adjoint();
}

/// Parameters for a generated matrix Q [[T, S], [0, N]] Q^* of prescribed index.
struct GenSpec {
    Index n = 1;
    int target_index = 1;
    Index core_rank = 1;
    std::uint64_t seed = 0;
    bool sn_zero = false;

    /// Nilpotent blocks of size m = n - core_rank realize indices up to max(1, m).
    void validate() const {
        if (n < 1 || core_rank < 0 || core_rank > n) {
            throw PreconditionError("GenSpec: need n >= 1 and 0 <= core_rank <= n");
        }
        const Index m = n - core_rank;
        if (target_index < 1 || target_index > std::max<Index>(1, m)) {
            throw PreconditionError("GenSpec: index " + std::to_string(target_index) +
                                    " is infeasible with a nilpotent block of size " + std::to_string(m));
        }
    }
};

struct Generated {
    Matrix a;
    Matrix q;
    Matrix t;
    Matrix s;
    Matrix n;
};

inline Generated gen_parts(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const Index r = spec.core_rank;
    const Index m = spec.n - r;
    Generated g;
    g.q = random_unitary(spec.n, rng);
    g.t = random_invertible(r, rng);
    g.s = random_gaussian(r, m, rng);

    // Jordan-like shift blocks: the first has size target_index, the rest at most that.
    std::vector<bool> support(static_cast<std::size_t>(std::max<Index>(m, 1)), false);
    if (spec.target_index >= 2) {
        Index start = 0;
        Index size = spec.target_index;
        while (start < m) {
            size = std::min(size, m - start);
            for (Index i = start; i + 1 < start + size; ++i) {
                support[static_cast<std::size_t>(i)] = true;
            }
            start += size;
            size = rng.uniform_int(1, spec.target_index);
        }
    }
    g.n = shift_matrix(m, support, rng);

    if (spec.sn_zero) {
        for (Index i = 0; i < m; ++i) {
            if (support[static_cast<std::size_t>(i)]) {
                g.s.col(i).setZero();
            }
        }
    }

    Matrix inner = Matrix::Zero(spec.n, spec.n);
    inner.topLeftCorner(r, r) = g.t;
    inner.topRightCorner(r, m) = g.s;
    inner.bottomRightCorner(m, m) = g.n;
    g.a = g.q * inner * g.q.adjoint();
    return g;
}

inline Matrix gen_matrix(const GenSpec& spec) { return gen_parts(spec).a; }

/// Random feasible spec with n in [min_n, max_n] and index in [1, max_index].
inline GenSpec random_gen_spec(Rng& rng, Index min_n, Index max_n, int max_index, std::uint64_t seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.n = rng.uniform_int(static_cast<int>(min_n), static_cast<int>(max_n));
    spec.target_index = rng.uniform_int(1, static_cast<int>(std::min<Index>(max_index, spec.n)));
    if (spec.target_index >= 2) {
        spec.core_rank = rng.uniform_int(0, static_cast<int>(spec.n) - spec.target_index);
    } else {
        spec.core_rank = rng.uniform_int(0, static_cast<int>(spec.n));
    }
    return spec;
}

/// Solves A X = A^cep A together with A X^2 = X without touching the Schur
/// path. A^cep comes from a^k ((a^*)^k a^{k+1})^+ (a^*)^k. On the affine solution
/// set X = X0 + Z C of A X = M (Z spans null(A)), A X^2 = (A X) X = M X, so the
/// remaining condition (M - I) X = 0 is linear in C.
inline Matrix brute_force_wg(const Matrix& a, const Tolerance& tol) {
    require_square(a, "brute_force_wg");
    const Index n = a.rows();
    if (n > 5) {
        throw PreconditionError("brute_force_wg: limited to n <= 5");
    }
    const int k = index(a, tol).index;
    const Matrix ak = power(a, k, tol).value;
    const Matrix ak1 = power(a, k + 1, tol).value;
    const Matrix cep = ak * mp_inverse(ak.adjoint() * ak1, tol).value * ak.adjoint();
    const Matrix m = cep * a;

    SvdResult f = svd(a);
    const Index r = rank_from_singular_values(f.singular_values, n, n, tol);
    const Matrix x0 = mp_inverse(a, tol).value * m;
    const Matrix null_basis = f.v.rightCols(n - r);

    Matrix x = x0;
    if (n - r > 0) {
        const Matrix coeff = (m - identity(n)) * null_basis;
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(coeff);
        cod.setThreshold(tol.rank_rtol * static_cast<double>(n));
        if (cod.rank() != coeff.cols()) {
            throw InconsistentSystem("brute_force_wg: solution set is not a single point");
        }
        const Matrix c = cod.solve(Matrix(-(m - identity(n)) * x0));
        x = x0 + null_basis * c;
    }

    const double lin = relative_distance(a * x, m);
    const double quad = relative_distance(a * x * x, x);
    if (lin > 100.0 * tol.eq_rtol || quad > 100.0 * tol.eq_rtol) {
        std::ostringstream msg;
        msg << "brute_force_wg: no solution within tolerance (AX=M residual " << lin << ", AX^2=X residual "
            << quad << ")";
        throw InconsistentSystem(msg.str());
    }
    return x;
}

// ---------------------------------------------------------------------------
// Constructed pairs and chains for the order suites.

namespace detail {

inline Matrix block_diag(const Matrix& x, const Matrix& y) {
    Matrix out = Matrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
    out.topLeftCorner(x.rows(), x.cols()) = x;
    out.bottomRightCorner(y.rows(), y.cols()) = y;
    return out;
}

}  // namespace detail

inline WGPairSpec random_wg_spec(Rng& rng, Index r, Index r1, Index m) {
    WGPairSpec s;
    s.t = random_invertible(r, rng);
    s.s1hat = random_gaussian(r, r1, rng);
    s.s2hat = random_gaussian(r, m, rng);
    s.t1 = random_invertible(r1, rng);
    s.s_one = random_gaussian(r1, m, rng);
    s.nblock = random_nilpotent(r1 + m, rng);
    s.n2 = random_nilpotent(m, rng);
    s.uhat = random_unitary(r + r1 + m, rng);
    return s;
}

struct MatrixChain {
    Matrix a;
    Matrix b;
    Matrix c;
};

/// A <= B <= C under the WG order (ce = false) or the C-E order (ce = true).
/// The second pair reuses B's canonical form as the first block row of C's.
inline MatrixChain random_chain(Rng& rng, bool ce, const Tolerance& tol) {
    const Index r = rng.uniform_int(1, 2);
    const Index r1 = rng.uniform_int(0, 2);
    const Index r2 = rng.uniform_int(0, 2);
    const Index m2 = ce ? rng.uniform_int(2, 3) : rng.uniform_int(1, 3);
    const Index m = r2 + m2;

    WGPairSpec first = random_wg_spec(rng, r, r1, m);
    Matrix next_n2;
    if (ce) {
        // Nested superdiagonal supports give a minus-order chain Ma <= Mb <= Mc.
        std::vector<bool> sc(static_cast<std::size_t>(m2), false);
        for (Index i = 0; i + 1 < m2; ++i) {
            sc[static_cast<std::size_t>(i)] = true;
        }
        std::vector<bool> sb = sc;
        std::vector<bool> sa = sc;
        for (Index i = 0; i + 1 < m2; ++i) {
            const int draw = rng.uniform_int(0, 2);  // 0: in c only, 1: in b and c, 2: in all
            sb[static_cast<std::size_t>(i)] = draw >= 1;
            sa[static_cast<std::size_t>(i)] = draw >= 2;
        }
        const Matrix w = random_unitary(m2, rng);
        Rng values(case_seed(static_cast<std::uint64_t>(rng.uniform_int(0, 1 << 30)), 0));
        Rng vb = values, va = values;
        const Matrix shift_c = shift_matrix(m2, sc, values);
        const Matrix shift_b = shift_matrix(m2, sb, vb);
        const Matrix shift_a = shift_matrix(m2, sa, va);
        const Matrix mc = w * shift_c * w.adjoint();
        const Matrix mb = w * shift_b * w.adjoint();
        const Matrix ma = w * shift_a * w.adjoint();
        first.n2 = detail::block_diag(zeros(r2), mb);
        first.nblock = detail::block_diag(zeros(r1), detail::block_diag(zeros(r2), ma));
        next_n2 = mc;
    } else {
        next_n2 = random_nilpotent(m2, rng);
    }

    const MatrixPair ab = ce ? make_ce_pair(first, tol) : make_wg_pair(first, tol);

    // B = uhat [[T', S'], [0, N2]] uhat^* with T' the leading (r + r1) block.
    const Matrix inner_b = first.uhat.adjoint() * ab.b * first.uhat;
    WGPairSpec second;
    second.t = inner_b.topLeftCorner(r + r1, r + r1);
    const Matrix s_prime = inner_b.topRightCorner(r + r1, m);
    second.s1hat = s_prime.leftCols(r2);
    second.s2hat = s_prime.rightCols(m2);
    second.t1 = random_invertible(r2, rng);
    second.s_one = random_gaussian(r2, m2, rng);
    second.nblock = first.n2;
    second.n2 = next_n2;
    second.uhat = first.uhat;
    const MatrixPair bc = ce ? make_ce_pair(second, tol) : make_wg_pair(second, tol);
    return {ab.a, bc.a, bc.b};
}

/// Pair in the canonical form of the core-EP order:
///   A = U [[T1, T2, S1], [0, N11, N12], [0, N21, N22]] U^*
///   B = U [[T1, T2, S1], [0, T3,  S2 ], [0, 0,   N2 ]] U^*
inline MatrixPair random_core_ep_pair(Rng& rng) {
    const Index r1 = rng.uniform_int(0, 3);
    const Index r3 = rng.uniform_int(0, 2);
    const Index m = rng.uniform_int(0, 3);
    const Index n = std::max<Index>(r1 + r3 + m, 1);
    const Index pad = n - (r1 + r3 + m);  // all-zero case becomes a 1x1 nilpotent block
    const Index mm = m + pad;
    const Matrix top_t = random_invertible(r1, rng);
    const Matrix top_rest = random_gaussian(r1, r3 + mm, rng);
    Matrix a = Matrix::Zero(n, n);
    Matrix b = Matrix::Zero(n, n);
    a.topLeftCorner(r1, r1) = top_t;
    a.topRightCorner(r1, r3 + mm) = top_rest;
    b.topRows(r1) = a.topRows(r1);
    a.bottomRightCorner(r3 + mm, r3 + mm) = random_nilpotent(r3 + mm, rng);
    b.block(r1, r1, r3, r3) = random_invertible(r3, rng);
    b.block(r1, r1 + r3, r3, mm) = random_gaussian(r3, mm, rng);
    b.bottomRightCorner(mm, mm) = random_nilpotent(mm, rng);
    const Matrix u = random_unitary(n, rng);
    return {u * a * u.adjoint(), u * b * u.adjoint()};
}

// ---------------------------------------------------------------------------
// Property suites.

struct Failure {
    std::size_t case_id = 0;
    std::string property;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t cases_run = 0;
    std::size_t cases_passed = 0;
    std::vector<Failure> failures;

    bool ok() const { return cases_passed == cases_run; }
};

/// Per-case state: a private RNG and the failure log.
class CaseContext {
public:
    CaseContext(std::size_t id, std::uint64_t suite_seed, const Tolerance& tol)
        : id_(id), seed_(case_seed(suite_seed, id)), rng_(seed_), tol_(tol) {}

    std::size_t id() const { return id_; }
    std::uint64_t seed() const { return seed_; }
    Rng& rng() { return rng_; }
    const Tolerance& tol() const { return tol_; }

    void check(bool ok, const std::string& property, const std::string& detail = {}) {
        if (!ok) {
            failures.push_back({id_, property, detail.empty() ? "seed " + std::to_string(seed_) : detail});
        }
    }

    void check_le(double value, double threshold, const std::string& property) {
        std::ostringstream msg;
        msg << "value " << value << " > " << threshold << " (case seed " << seed_ << ")";
        check(value <= threshold, property, msg.str());
    }

    void check_ge(double value, double threshold, const std::string& property) {
        std::ostringstream msg;
        msg << "value " << value << " < " << threshold << " (case seed " << seed_ << ")";
        check(value >= threshold, property, msg.str());
    }

    std::vector<Failure> failures;

private:
    std::size_t id_;
    std::uint64_t seed_;
    Rng rng_;
    Tolerance tol_;
};

using CaseBody = std::function<void(CaseContext&)>;

struct Suite {
    std::string name;
    std::string description;
    CaseBody body;
    std::size_t fixed_cases = 0;  ///< nonzero: the count argument is ignored
    bool always_empty = false;
};

namespace detail {

// Scale-aware "is zero" for a product of `factors` matrices of norm ~scale.
inline double relative_size(const Matrix& x, double scale, int factors = 1) {
    return x.norm() / std::pow(std::max(1.0, scale), factors);
}

inline Matrix suite_matrix(CaseContext& ctx, Index min_n = 1, Index max_n = 10, int max_index = 4) {
    return gen_matrix(random_gen_spec(ctx.rng(), min_n, max_n, max_index, ctx.seed()));
}

inline double max_abs_diff(const Matrix& x, const Matrix& y) { return (x - y).cwiseAbs().maxCoeff(); }

inline bool pairwise_distinct(const std::vector<Matrix>& ms, double threshold) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
            if (max_abs_diff(ms[i], ms[j]) <= threshold) {
                return false;
            }
        }
    }
    return true;
}

inline void fixture_index_two(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix a = fixtures::index_two();
    const auto expected = fixtures::index_two_inverses();
    ctx.check(index(a, tol).index == 2, "index == 2");
    ctx.check(rank(a, tol) == 3, "rank == 3");
    const std::vector<std::pair<std::string, std::pair<Matrix, Matrix>>> pairs = {
        {"mp", {mp_inverse(a, tol).value, expected.mp}},
        {"drazin", {drazin_inverse(a, tol).value, expected.drazin}},
        {"dmp", {dmp_inverse(a, tol).value, expected.dmp}},
        {"bt", {bt_inverse(a, tol).value, expected.bt}},
        {"core-ep", {core_ep_inverse(a, tol).value, expected.core_ep}},
        {"wg", {wg_inverse(a, tol).value, expected.wg}},
    };
    std::vector<Matrix> computed;
    for (const auto& [name, got_want] : pairs) {
        ctx.check_le(max_abs_diff(got_want.first, got_want.second), 1e-9, name + " matches reference entrywise");
        computed.push_back(got_want.first);
    }
    ctx.check(pairwise_distinct(computed, 1e-6), "six inverses pairwise distinct");
    bool rejected = false;
    try {
        (void)group_inverse(a, tol);
    } catch (const NotGroupInvertible& e) {
        rejected = e.index() == 2;
    }
    ctx.check(rejected, "group inverse rejected with index 2");
    for (const auto& [label, r] : verify_wg(expected.wg, a, tol)) {
        ctx.check_le(r.absolute, 1e-9, "reference WG satisfies " + label);
    }
}

inline void fixture_wg_antisymmetry(CaseContext& ctx) {
    const Matrix a = fixtures::wg_antisymmetry_a();
    const Matrix b = fixtures::wg_antisymmetry_b();
    ctx.check(wg_order(a, b, ctx.tol()).holds, "A <=WG B");
    ctx.check(wg_order(b, a, ctx.tol()).holds, "B <=WG A");
    ctx.check(!approx_eq(a, b, ctx.tol()), "A != B");
}

inline void fixture_wg_not_drazin(CaseContext& ctx) {
    const Matrix a = fixtures::wg_not_drazin_a();
    const Matrix b = fixtures::wg_not_drazin_b();
    ctx.check(wg_order(a, b, ctx.tol()).holds, "A <=WG B");
    ctx.check(!drazin_order(a, b, ctx.tol()).holds, "not A <=D B");
    ctx.check_le(max_abs_diff(drazin_inverse(a, ctx.tol()).value, fixtures::wg_not_drazin_a_drazin()), 1e-9,
                 "A^D matches reference");
}

inline void fixture_drazin_not_wg(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix a = fixtures::drazin_not_wg_a();
    const Matrix b = fixtures::drazin_not_wg_b();
    ctx.check(drazin_order(a, b, tol).holds, "A <=D B");
    ctx.check(cn_order(a, b, tol).holds, "A <=CN B");
    ctx.check(!wg_order(a, b, tol).holds, "not A <=WG B");
    ctx.check(!ce_order(a, b, tol).holds, "not A <=CE B");
    const CoreEPParts pb = core_ep_decompose(b, tol);
    ctx.check_le(max_abs_diff(pb.a1, fixtures::drazin_not_wg_b1()), 1e-9, "B1 matches reference");
    ctx.check_le(max_abs_diff(pb.a2, fixtures::drazin_not_wg_b2()), 1e-9, "B2 matches reference");
    const CoreEPParts pa = core_ep_decompose(a, tol);
    ctx.check(minus_order(pa.a2, pb.a2, tol).holds, "A2 <=- B2");
}

inline void fixture_wg_not_squared(CaseContext& ctx) {
    const Matrix a = fixtures::wg_not_squared_a();
    const Matrix b = fixtures::wg_not_squared_b();
    ctx.check(wg_order(a, b, ctx.tol()).holds, "A <=WG B");
    ctx.check(!wg_order(a * a, b * b, ctx.tol()).holds, "not A^2 <=WG B^2");
}

inline std::vector<CaseBody> fixture_cases() {
    return {fixture_index_two, fixture_wg_antisymmetry, fixture_wg_not_drazin, fixture_drazin_not_wg,
            fixture_wg_not_squared};
}

inline void wg_defining_case(CaseContext& ctx) {
    const Matrix a = suite_matrix(ctx);
    for (WGRoute route : kAllWGRoutes) {
        const InverseResult w = wg_inverse(a, ctx.tol(), route);
        const std::string tag = std::string(to_string(route)) + ": ";
        ctx.check_le(w.residuals.at("AX^2=X").relative, 10.0 * ctx.tol().eq_rtol, tag + "AX^2=X");
        ctx.check_le(w.residuals.at("AX=A^cep*A").relative, 10.0 * ctx.tol().eq_rtol, tag + "AX=A^cep*A");
    }
}

inline void wg_uniqueness_case(CaseContext& ctx) {
    const Matrix a = suite_matrix(ctx);
    std::vector<Matrix> values;
    for (WGRoute route : kAllWGRoutes) {
        values.push_back(wg_inverse(a, ctx.tol(), route).value);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            ctx.check_le(relative_distance(values[i], values[j]), 100.0 * ctx.tol().eq_rtol,
                         std::string(to_string(kAllWGRoutes[i])) + " vs " + std::string(to_string(kAllWGRoutes[j])));
        }
    }
}

inline void wg_oracle_case(CaseContext& ctx) {
    const Matrix a = suite_matrix(ctx, 1, 5, 3);
    const Matrix brute = brute_force_wg(a, ctx.tol());
    const Matrix block = wg_inverse(a, ctx.tol(), WGRoute::BlockForm).value;
    ctx.check_le(relative_distance(brute, block), 10.0 * ctx.tol().eq_rtol, "brute force vs block form");
}

inline void rank_identity_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix a = suite_matrix(ctx);
    const int k = index(a, tol).index;
    const Index rw = rank(wg_inverse(a, tol).value, tol);
    const Index rd = rank(drazin_inverse(a, tol).value, tol);
    const Index rk = power(a, k, tol).rank;
    std::ostringstream msg;
    msg << "rk(W)=" << rw << " rk(D)=" << rd << " rk(A^k)=" << rk << " (case seed " << ctx.seed() << ")";
    ctx.check(rw == rd && rd == rk, "rk(W) == rk(A^D) == rk(A^k)", msg.str());
}

inline void weak_drazin_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix a = suite_matrix(ctx);
    const int k = index(a, tol).index;
    const Matrix w = wg_inverse(a, tol).value;
    ctx.check_le(relative_distance(w * power(a, k + 1, tol).value, power(a, k, tol).value), 10.0 * tol.eq_rtol,
                 "W A^(k+1) = A^k");
}

// Index at most 3: the power formula for (A^(t+1))^cep at t = k + 2 involves
// A^(3t+3), which is unresolvable in double precision beyond that.
inline GenSpec structured_spec(CaseContext& ctx, bool sn_zero) {
    GenSpec spec;
    spec.seed = ctx.seed();
    spec.sn_zero = sn_zero;
    spec.target_index = ctx.rng().uniform_int(2, 3);
    spec.n = ctx.rng().uniform_int(spec.target_index + 1, 10);
    spec.core_rank = ctx.rng().uniform_int(1, static_cast<int>(spec.n) - spec.target_index);
    return spec;
}

inline void sn_zero_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const double bound = 10.0 * tol.eq_rtol;
    const Matrix a = gen_matrix(structured_spec(ctx, true));
    const int k = index(a, tol).index;
    const Matrix w = wg_inverse(a, tol).value;
    ctx.check_le(relative_distance(wg_inverse(a * a, tol).value, w * w), bound, "(A^2)^W = (A^W)^2");
    ctx.check_le(relative_distance(a * w, w * a), bound, "A A^W = A^W A");
    ctx.check_le(relative_distance(w, drazin_inverse(a, tol).value), bound, "A^W = A^D");
    const MatrixPower ak = power(a, k, tol);
    const MatrixPower ak1 = power(a, k + 1, tol);
    ctx.check_le(relative_distance(w, core_inverse(ak1.value, tol).value * ak.value), bound,
                 "A^W = core(A^(k+1)) A^k");
    for (int t = k; t <= k + 2; ++t) {
        const Matrix rhs = core_ep_inverse(power(a, t + 1, tol).value, tol).value * power(a, t, tol).value;
        ctx.check_le(relative_distance(w, rhs), bound, "A^W = cep(A^(t+1)) A^t, t = k+" + std::to_string(t - k));
    }
}

inline void sn_nonzero_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix a = gen_matrix(structured_spec(ctx, false));
    const Matrix w = wg_inverse(a, tol).value;
    ctx.check_ge((wg_inverse(a * a, tol).value - w * w).norm(), 1e-3, "(A^2)^W != (A^W)^2");
    ctx.check_ge((a * w - w * a).norm(), 1e-3, "A A^W != A^W A");
}

inline void index_one_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    GenSpec spec;
    spec.seed = ctx.seed();
    spec.n = ctx.rng().uniform_int(1, 10);
    spec.core_rank = ctx.rng().uniform_int(0, static_cast<int>(spec.n));
    spec.target_index = 1;
    const Matrix a = gen_matrix(spec);
    const double bound = 10.0 * tol.eq_rtol;
    const Matrix w = wg_inverse(a, tol).value;
    ctx.check_le(relative_distance(w, group_inverse(a, tol).value), bound, "W = A^#");
    ctx.check_le(relative_distance(w, drazin_inverse(a, tol).value), bound, "W = A^D");
    const Matrix c = core_inverse(a, tol).value;
    ctx.check_le(relative_distance(c, core_ep_inverse(a, tol).value), bound, "core = core-EP");
    ctx.check_le(relative_distance(c, dmp_inverse(a, tol).value), bound, "core = DMP");
    ctx.check_le(relative_distance(c, bt_inverse(a, tol).value), bound, "core = B-T");
}

inline void gen_index_case(CaseContext& ctx) {
    const GenSpec spec = random_gen_spec(ctx.rng(), 1, 10, 10, ctx.seed());
    const Matrix a = gen_matrix(spec);
    const Matrix again = gen_matrix(spec);
    ctx.check(a == again, "generation is deterministic");
    const int k = index(a, ctx.tol()).index;
    ctx.check(k == spec.target_index, "index matches target",
              "got " + std::to_string(k) + ", wanted " + std::to_string(spec.target_index));
}

inline void decomp_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix a = suite_matrix(ctx);
    const Index n = a.rows();
    const double na = a.norm();
    const double bound = 10.0 * tol.eq_rtol;

    const IndexResult idx = index(a, tol);
    const int k = idx.index;
    ctx.check(power(a, k + 2, tol).rank == power(a, k, tol).rank, "rank(A^(k+2)) == rank(A^k)");

    const HSParts hs = hs_decompose(a, tol);
    ctx.check_le(relative_distance(hs.assemble(), a), bound, "HS reconstructs A");
    ctx.check_le(relative_distance(hs.k * hs.k.adjoint() + hs.l * hs.l.adjoint(), identity(hs.r)), bound,
                 "KK* + LL* = I");
    ctx.check_le(relative_distance(hs.u.adjoint() * hs.u, identity(n)), bound, "HS U unitary");

    const CoreEPParts p = core_ep_decompose(a, tol);
    Matrix inner = Matrix::Zero(n, n);
    inner.topLeftCorner(p.r, p.r) = p.t;
    inner.topRightCorner(p.r, n - p.r) = p.s;
    inner.bottomRightCorner(n - p.r, n - p.r) = p.n;
    ctx.check_le(relative_distance(p.u * inner * p.u.adjoint(), a), bound, "core-EP form reconstructs A");
    ctx.check_le(relative_distance(p.a1 + p.a2, a), bound, "A1 + A2 = A");
    ctx.check_le(relative_distance(p.u.adjoint() * p.u, identity(n)), bound, "core-EP U unitary");
    ctx.check_le(relative_size(p.a1.adjoint() * p.a2, na, 2), bound, "A1* A2 = 0");
    ctx.check_le(relative_size(p.a2 * p.a1, na, 2), bound, "A2 A1 = 0");
    ctx.check_le(relative_size(matrix_power(p.a2, k), na, k), bound, "A2^k = 0");
    ctx.check_le(relative_size(matrix_power(p.n, static_cast<int>(n - p.r)), na, static_cast<int>(n - p.r)),
                 bound, "N nilpotent");
    ctx.check(index(p.a1, tol).index <= 1, "index(A1) <= 1");
    ctx.check(rank(p.a1, tol) == p.r && power(a, k, tol).rank == p.r, "r == rank(A1) == rank(A^k)");

    const CNParts cn = core_nilpotent_decompose(a, tol);
    ctx.check_le(relative_distance(cn.c + cn.nil, a), bound, "C + Nil = A");
    ctx.check(index(cn.c, tol).index <= 1, "index(C) <= 1");
    ctx.check_le(relative_size(matrix_power(cn.nil, k), na, k), bound, "Nil^k = 0");
    ctx.check_le(relative_size(cn.c * cn.nil, na, 2), bound, "C Nil = 0");
    ctx.check_le(relative_size(cn.nil * cn.c, na, 2), bound, "Nil C = 0");
}

inline void unitary_invariance_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix a = suite_matrix(ctx);
    const Matrix q = random_unitary(a.rows(), ctx.rng());
    const CoreEPParts p = core_ep_decompose(a, tol);
    const CoreEPParts pq = core_ep_decompose(q * a * q.adjoint(), tol);
    ctx.check_le(relative_distance(pq.a1, q * p.a1 * q.adjoint()), 10.0 * tol.eq_rtol, "A1 unitarily covariant");
    ctx.check_le(relative_distance(pq.a2, q * p.a2 * q.adjoint()), 10.0 * tol.eq_rtol, "A2 unitarily covariant");
    ctx.check(rank(q * a * q.adjoint(), tol) == rank(a, tol), "rank unitarily invariant");
}

inline void wg_preorder_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix x = suite_matrix(ctx);
    ctx.check(wg_order(x, x, tol).holds, "reflexive");
    const MatrixChain ch = random_chain(ctx.rng(), false, tol);
    ctx.check(wg_order(ch.a, ch.b, tol).holds, "A <=WG B (constructed)");
    ctx.check(wg_order(ch.b, ch.c, tol).holds, "B <=WG C (constructed)");
    ctx.check(wg_order(ch.a, ch.c, tol).holds, "transitive: A <=WG C");
}

inline void ce_partial_order_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const Matrix x = suite_matrix(ctx);
    ctx.check(ce_order(x, x, tol).holds, "reflexive");
    const MatrixChain ch = random_chain(ctx.rng(), true, tol);
    const bool ab = ce_order(ch.a, ch.b, tol).holds;
    const bool bc = ce_order(ch.b, ch.c, tol).holds;
    ctx.check(ab, "A <=CE B (constructed)");
    ctx.check(bc, "B <=CE C (constructed)");
    ctx.check(ce_order(ch.a, ch.c, tol).holds, "transitive: A <=CE C");
    for (const auto& [lo, hi] : {std::pair{ch.a, ch.b}, std::pair{ch.b, ch.c}, std::pair{ch.a, ch.c}}) {
        const bool both = ce_order(lo, hi, tol).holds && ce_order(hi, lo, tol).holds;
        ctx.check(!both || approx_eq(lo, hi, tol), "anti-symmetric");
    }
}

inline void ce_implies_minus_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    const MatrixChain ch = random_chain(ctx.rng(), true, tol);
    ctx.check(ce_order(ch.a, ch.b, tol).holds, "A <=CE B (constructed)");
    ctx.check(minus_order(ch.a, ch.b, tol).holds, "A <=- B");
    ctx.check(minus_order(ch.a, ch.c, tol).holds, "A <=- C");
}

inline void core_ep_equivalence_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    MatrixPair pr;
    const bool canonical = ctx.id() % 2 == 0;
    if (canonical) {
        pr = random_core_ep_pair(ctx.rng());
    } else if (ctx.id() % 4 == 1) {
        pr.a = suite_matrix(ctx);
        Rng& rng = ctx.rng();
        pr.b = pr.a + 0.1 * random_gaussian(pr.a.rows(), pr.a.cols(), rng);
    } else {
        pr.a = suite_matrix(ctx);
        pr.b = random_gaussian(pr.a.rows(), pr.a.cols(), ctx.rng());
    }
    const bool direct = core_ep_order(pr.a, pr.b, tol).holds;
    const bool via_wg = core_ep_order_via_wg(pr.a, pr.b, tol).holds;
    ctx.check(direct == via_wg, "core-EP verdict equals WG characterization");
    if (canonical) {
        ctx.check(direct, "canonical pair is comparable");
    }
}

inline void wg_sharp_index_one_case(CaseContext& ctx) {
    const Tolerance& tol = ctx.tol();
    MatrixPair pr;
    if (ctx.id() % 2 == 0) {
        const Index r = ctx.rng().uniform_int(1, 3);
        const Index r1 = ctx.rng().uniform_int(0, 3);
        WGPairSpec s = random_wg_spec(ctx.rng(), r, r1, 0);
        s.nblock = zeros(r1);
        pr = make_wg_pair(s, tol);
    } else {
        GenSpec spec;
        spec.seed = ctx.seed();
        spec.n = ctx.rng().uniform_int(1, 8);
        spec.core_rank = ctx.rng().uniform_int(0, static_cast<int>(spec.n));
        pr.a = gen_matrix(spec);
        spec.seed = splitmix64(spec.seed);
        pr.b = gen_matrix(spec);
    }
    ctx.check(wg_order(pr.a, pr.b, tol).holds == sharp_order(pr.a, pr.b, tol).holds,
              "WG verdict equals sharp verdict on index-1 matrices");
}

}  // namespace detail

inline const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"empty", "runs no cases", {}, 0, true},
        {"paper-examples", "reference matrices: six inverses of the index-2 fixture and four order counterexamples",
         [](CaseContext& ctx) { detail::fixture_cases()[ctx.id()](ctx); }, detail::fixture_cases().size()},
        {"wg-defining", "WG defining-equation residuals for every route", detail::wg_defining_case},
        {"wg-uniqueness", "the four WG routes agree pairwise", detail::wg_uniqueness_case},
        {"wg-oracle", "brute-force WG solver agrees with the block form (n <= 5)", detail::wg_oracle_case},
        {"rank-identity", "rk(A^W) == rk(A^D) == rk(A^k)", detail::rank_identity_case},
        {"weak-drazin", "A^W is a weak Drazin inverse", detail::weak_drazin_case},
        {"sn-zero", "SN = 0: squaring, commutativity and Drazin coincidence", detail::sn_zero_case},
        {"sn-nonzero", "SN != 0: squaring and commutativity fail", detail::sn_nonzero_case},
        {"index-one", "index-1 coincidences among the inverses", detail::index_one_case},
        {"gen-index", "generator determinism and prescribed index", detail::gen_index_case},
        {"decomp", "index, HS, core-EP and core-nilpotent invariants", detail::decomp_case},
        {"unitary-invariance", "core-EP parts transform covariantly under unitary similarity",
         detail::unitary_invariance_case},
        {"wg-preorder", "WG order: reflexive and transitive", detail::wg_preorder_case},
        {"ce-partial-order", "C-E order: reflexive, anti-symmetric, transitive", detail::ce_partial_order_case},
        {"ce-implies-minus", "C-E order implies the minus order", detail::ce_implies_minus_case},
        {"core-ep-equivalence", "core-EP order equals its WG characterization", detail::core_ep_equivalence_case},
        {"wg-sharp-index-one", "WG and sharp orders coincide on index-1 matrices", detail::wg_sharp_index_one_case},
    };
    return all;
}

inline std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const Suite& s : suites()) {
        names.push_back(s.name);
    }
    return names;
}

/// Runs `count` cases of the named suite. Cases may execute in parallel;
/// failures are reported in case order, so the report depends only on the seed.
inline SuiteReport run_suite(const std::string& name, std::size_t count, std::uint64_t seed,
                             const Tolerance& tol = {}) {
    tol.validate();
    const auto& all = suites();
    const auto it = std::find_if(all.begin(), all.end(), [&](const Suite& s) { return s.name == name; });
    if (it == all.end()) {
        throw PreconditionError("unknown suite: " + name);
    }
    const Suite& suite = *it;
    const std::size_t cases = suite.always_empty ? 0 : (suite.fixed_cases ? suite.fixed_cases : count);

    std::vector<std::vector<Failure>> results(cases);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases; i = next++) {
            CaseContext ctx(i, seed, tol);
            try {
                suite.body(ctx);
            } catch (const std::exception& e) {
                ctx.failures.push_back({i, "exception", std::string(e.what()) + " (case seed " +
                                                            std::to_string(ctx.seed()) + ")"});
            }
            results[i] = std::move(ctx.failures);
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = static_cast<unsigned>(std::min<std::size_t>(hw, cases));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }

    SuiteReport report;
    report.name = name;
    report.seed = seed;
    report.cases_run = cases;
    for (auto& r : results) {
        if (r.empty()) {
            ++report.cases_passed;
        }
        report.failures.insert(report.failures.end(), r.begin(), r.end());
    }
    return report;
}

}  // namespace ginv::oracle
