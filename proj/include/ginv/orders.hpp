#pragma once

// Decision procedures for matrix orders (minus, sharp, Drazin, C-N, WG, C-E,
// core-EP) and constructors for pairs in the canonical WG / C-E forms.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ginv/decomp.hpp"
#include "ginv/geninv.hpp"
#include "ginv/matcore.hpp"

namespace ginv {

/// One checked quantity: passes iff value <= threshold.
struct Witness {
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct OrderVerdict {
    bool holds = false;
    std::string order_name;
    std::map<std::string, Witness> witnesses;
    std::map<std::string, double> details;  ///< informational (ranks, norms)
    std::vector<OrderVerdict> parts;        ///< sub-verdicts of composite orders

    void add(const std::string& name, double value, double threshold) {
        witnesses[name] = {value, threshold, value <= threshold};
    }

    void finish() {
        holds = true;
        for (const auto& [name, w] : witnesses) {
            holds = holds && w.pass;
        }
    }
};

namespace detail {

inline void require_pair(const Matrix& a, const Matrix& b, const char* what) {
    require_square(a, what);
    require_same_shape(a, b, what);
}

inline void add_sub_verdict(OrderVerdict& v, OrderVerdict sub) {
    v.add(sub.order_name, sub.holds ? 0.0 : 1.0, 0.0);
    v.parts.push_back(std::move(sub));
}

}  // namespace detail

/// A <=^- B  iff  rank(B - A) == rank(B) - rank(A). All three ranks share one
/// cutoff, relative to the largest of sigma_max(A), sigma_max(B) and `scale`.
/// Composite orders pass the norm of the matrices the parts were split from,
/// so rounding noise in a vanishing part is not counted as rank.
inline OrderVerdict minus_order(const Matrix& a, const Matrix& b, const Tolerance& tol, double scale = 0.0) {
    require_same_shape(a, b, "minus_order");
    const Matrix d = b - a;
    const SvdResult fa = svd(a);
    const SvdResult fb = svd(b);
    const SvdResult fd = svd(d);
    auto top = [](const SvdResult& f) { return f.singular_values.size() ? f.singular_values(0) : 0.0; };
    const double reference = std::max({scale, top(fa), top(fb)});
    const double floor = tol.rank_rtol * static_cast<double>(std::max(a.rows(), a.cols())) * reference;
    auto count = [&](const SvdResult& f) {
        return static_cast<double>(rank_from_singular_values(f.singular_values, a.rows(), a.cols(), tol, floor));
    };
    OrderVerdict v;
    v.order_name = "minus";
    const double ra = count(fa);
    const double rb = count(fb);
    const double rd = count(fd);
    v.details["rank(A)"] = ra;
    v.details["rank(B)"] = rb;
    v.details["rank(B-A)"] = rd;
    v.add("|rank(B-A)-(rank(B)-rank(A))|", std::abs(rd - (rb - ra)), 0.0);
    v.finish();
    return v;
}

namespace detail {

inline double spectral_norm(const Matrix& x) {
    const SvdResult f = svd(x);
    return f.singular_values.size() ? f.singular_values(0) : 0.0;
}

inline double pair_scale(const Matrix& a, const Matrix& b) { return std::max(spectral_norm(a), spectral_norm(b)); }

}  // namespace detail

/// A <=^# B  iff  A^# A == A^# B and A A^# == B A^#. Needs index(A) <= 1.
inline OrderVerdict sharp_order(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    detail::require_pair(a, b, "sharp_order");
    const Matrix g = group_inverse(a, tol).value;
    OrderVerdict v;
    v.order_name = "sharp";
    v.add("A#A=A#B", relative_distance(g * a, g * b), tol.eq_rtol);
    v.add("AA#=BA#", relative_distance(a * g, b * g), tol.eq_rtol);
    v.finish();
    return v;
}

/// Drazin order: sharp order between the core parts of the core-nilpotent decompositions.
inline OrderVerdict drazin_order(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    detail::require_pair(a, b, "drazin_order");
    const CNParts pa = core_nilpotent_decompose(a, tol);
    const CNParts pb = core_nilpotent_decompose(b, tol);
    OrderVerdict v;
    v.order_name = "drazin";
    detail::add_sub_verdict(v, sharp_order(pa.c, pb.c, tol));
    v.finish();
    return v;
}

/// C-N order: Drazin order plus minus order between the nilpotent parts.
inline OrderVerdict cn_order(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    detail::require_pair(a, b, "cn_order");
    const CNParts pa = core_nilpotent_decompose(a, tol);
    const CNParts pb = core_nilpotent_decompose(b, tol);
    OrderVerdict v;
    v.order_name = "cn";
    detail::add_sub_verdict(v, sharp_order(pa.c, pb.c, tol));
    detail::add_sub_verdict(v, minus_order(pa.nil, pb.nil, tol, detail::pair_scale(a, b)));
    v.finish();
    return v;
}

/// WG order: sharp order between the core parts of the core-EP decompositions.
inline OrderVerdict wg_order(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    detail::require_pair(a, b, "wg_order");
    const CoreEPParts pa = core_ep_decompose(a, tol);
    const CoreEPParts pb = core_ep_decompose(b, tol);
    OrderVerdict v;
    v.order_name = "wg";
    detail::add_sub_verdict(v, sharp_order(pa.a1, pb.a1, tol));
    v.finish();
    return v;
}

/// C-E order: WG order plus minus order between the core-EP nilpotent parts.
inline OrderVerdict ce_order(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    detail::require_pair(a, b, "ce_order");
    const CoreEPParts pa = core_ep_decompose(a, tol);
    const CoreEPParts pb = core_ep_decompose(b, tol);
    OrderVerdict v;
    v.order_name = "ce";
    detail::add_sub_verdict(v, sharp_order(pa.a1, pb.a1, tol));
    detail::add_sub_verdict(v, minus_order(pa.a2, pb.a2, tol, detail::pair_scale(a, b)));
    v.finish();
    return v;
}

/// Core-EP order: A^cep A == A^cep B and A A^cep == B A^cep.
inline OrderVerdict core_ep_order(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    detail::require_pair(a, b, "core_ep_order");
    const Matrix x = core_ep_inverse(a, tol).value;
    OrderVerdict v;
    v.order_name = "core-ep";
    v.add("XA=XB", relative_distance(x * a, x * b), tol.eq_rtol);
    v.add("AX=BX", relative_distance(a * x, b * x), tol.eq_rtol);
    v.finish();
    return v;
}

/// Core-EP order decided through the WG inverse W of A:
/// A W == B W and A^* W == B^* W.
inline OrderVerdict core_ep_order_via_wg(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    detail::require_pair(a, b, "core_ep_order_via_wg");
    const Matrix w = wg_inverse(a, tol).value;
    OrderVerdict v;
    v.order_name = "core-ep-wg";
    v.add("AW=BW", relative_distance(a * w, b * w), tol.eq_rtol);
    v.add("A*W=B*W", relative_distance(a.adjoint() * w, b.adjoint() * w), tol.eq_rtol);
    v.finish();
    return v;
}

/// Blocks of the canonical form of a WG-comparable pair, in the basis uhat:
///
///   A = uhat [[T, S1hat, S2hat], [0, Nblock            ]] uhat^*
///   B = uhat [[T, S1hat - T^-1 S1hat T1, S2hat - T^-1 S1hat S1], [0, T1, S1], [0, 0, N2]] uhat^*
///
/// with T (r x r), T1 (r1 x r1) invertible, Nblock ((r1+m) x (r1+m)) and N2 (m x m) nilpotent.
struct WGPairSpec {
    Matrix t;
    Matrix s1hat;  ///< r x r1
    Matrix s2hat;  ///< r x m
    Matrix t1;
    Matrix s_one;  ///< r1 x m
    Matrix nblock;
    Matrix n2;
    Matrix uhat;
};

struct MatrixPair {
    Matrix a;
    Matrix b;
};

namespace detail {

inline bool is_nilpotent(const Matrix& x, const Tolerance& tol) {
    if (x.rows() == 0) {
        return true;
    }
    return power(x, static_cast<int>(x.rows()), tol).rank == 0;
}

inline void validate_wg_spec(const WGPairSpec& s, const Tolerance& tol) {
    const Index r = s.t.rows();
    const Index r1 = s.t1.rows();
    const Index m = s.n2.rows();
    const Index n = r + r1 + m;
    auto shape = [](const Matrix& x, Index rows, Index cols, const char* name) {
        if (x.rows() != rows || x.cols() != cols) {
            throw DimensionMismatch(std::string("WGPairSpec: ") + name + " should be " + std::to_string(rows) +
                                    "x" + std::to_string(cols) + ", got " + std::to_string(x.rows()) + "x" +
                                    std::to_string(x.cols()));
        }
    };
    shape(s.t, r, r, "T");
    shape(s.t1, r1, r1, "T1");
    shape(s.n2, m, m, "N2");
    shape(s.s1hat, r, r1, "S1hat");
    shape(s.s2hat, r, m, "S2hat");
    shape(s.s_one, r1, m, "S1");
    shape(s.nblock, r1 + m, r1 + m, "Nblock");
    shape(s.uhat, n, n, "Uhat");
    if (rank(s.t, tol) != r || rank(s.t1, tol) != r1) {
        throw PreconditionError("WGPairSpec: T and T1 must be invertible");
    }
    if (!is_nilpotent(s.nblock, tol) || !is_nilpotent(s.n2, tol)) {
        throw PreconditionError("WGPairSpec: Nblock and N2 must be nilpotent");
    }
    if (!approx_eq(s.uhat.adjoint() * s.uhat, identity(n), tol)) {
        throw PreconditionError("WGPairSpec: Uhat must be unitary");
    }
}

inline MatrixPair assemble_wg_pair(const WGPairSpec& s) {
    const Index r = s.t.rows();
    const Index r1 = s.t1.rows();
    const Index m = s.n2.rows();
    const Index n = r + r1 + m;
    Matrix a = Matrix::Zero(n, n);
    a.topLeftCorner(r, r) = s.t;
    a.block(0, r, r, r1) = s.s1hat;
    a.topRightCorner(r, m) = s.s2hat;
    a.bottomRightCorner(r1 + m, r1 + m) = s.nblock;

    const Matrix t_inv_s1hat = s.t.fullPivLu().solve(s.s1hat);
    Matrix b = Matrix::Zero(n, n);
    b.topLeftCorner(r, r) = s.t;
    b.block(0, r, r, r1) = s.s1hat - t_inv_s1hat * s.t1;
    b.topRightCorner(r, m) = s.s2hat - t_inv_s1hat * s.s_one;
    b.block(r, r, r1, r1) = s.t1;
    b.block(r, r + r1, r1, m) = s.s_one;
    b.bottomRightCorner(m, m) = s.n2;

    return {s.uhat * a * s.uhat.adjoint(), s.uhat * b * s.uhat.adjoint()};
}

}  // namespace detail

/// Builds a pair (A, B) with A <=WG B from the canonical block form.
inline MatrixPair make_wg_pair(const WGPairSpec& spec, const Tolerance& tol = {}) {
    detail::validate_wg_spec(spec, tol);
    return detail::assemble_wg_pair(spec);
}

/// Builds a pair (A, B) with A <=CE B. Nblock must be [[0, 0], [0, N22]] with
/// N22 <=^- N2.
inline MatrixPair make_ce_pair(const WGPairSpec& spec, const Tolerance& tol = {}) {
    detail::validate_wg_spec(spec, tol);
    const Index r1 = spec.t1.rows();
    const Index m = spec.n2.rows();
    const double scale = std::max(1.0, spec.nblock.norm());
    const double off = std::sqrt(spec.nblock.topLeftCorner(r1, r1).squaredNorm() +
                                 spec.nblock.topRightCorner(r1, m).squaredNorm() +
                                 spec.nblock.bottomLeftCorner(m, r1).squaredNorm());
    if (off > tol.eq_rtol * scale) {
        throw PreconditionError("make_ce_pair: Nblock must vanish outside its trailing N22 block");
    }
    const Matrix n22 = spec.nblock.bottomRightCorner(m, m);
    if (!minus_order(n22, spec.n2, tol).holds) {
        throw PreconditionError("make_ce_pair: N22 must lie below N2 in the minus order");
    }
    return detail::assemble_wg_pair(spec);
}

}  // namespace ginv
