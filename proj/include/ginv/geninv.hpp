#pragma once

// Generalized inverses of square complex matrices of arbitrary index:
// Moore-Penrose, group, core, Drazin, core-EP, DMP, B-T and weak group (WG).
// Every result carries the residuals of its defining equations.

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ginv/decomp.hpp"
#include "ginv/matcore.hpp"

namespace ginv {

struct Residual {
    double absolute = 0.0;  ///< ||lhs - rhs||_F
    double relative = 0.0;  ///< absolute / max(1, ||lhs||_F, ||rhs||_F)
};

inline Residual residual(const Matrix& lhs, const Matrix& rhs) {
    require_same_shape(lhs, rhs, "residual");
    return {(lhs - rhs).norm(), relative_distance(lhs, rhs)};
}

using ResidualMap = std::map<std::string, Residual>;

struct InverseResult {
    Matrix value;
    std::string route;
    ResidualMap residuals;
    int index = 1;
    std::vector<std::string> warnings;
};

/// The four independent ways of evaluating the WG inverse.
enum class WGRoute {
    BlockForm,     ///< u * [[t^-1, t^-2 s], [0, 0]] * u^*
    CoreEPSquare,  ///< (a^cep)^2 * a
    PowerCore,     ///< a^k * core(a^{k+2}) * a
    ProjectorMP,   ///< (a^2 * P_{a^k})^+ * a
};

inline constexpr std::array<WGRoute, 4> kAllWGRoutes = {WGRoute::BlockForm, WGRoute::CoreEPSquare,
                                                        WGRoute::PowerCore, WGRoute::ProjectorMP};

inline std::string_view to_string(WGRoute route) {
    switch (route) {
        case WGRoute::BlockForm: return "block-form";
        case WGRoute::CoreEPSquare: return "core-ep-square";
        case WGRoute::PowerCore: return "power-core";
        case WGRoute::ProjectorMP: return "projector-mp";
    }
    return "unknown";
}

inline WGRoute parse_wg_route(std::string_view name) {
    for (WGRoute r : kAllWGRoutes) {
        if (to_string(r) == name) {
            return r;
        }
    }
    throw PreconditionError("unknown WG route: " + std::string(name));
}

namespace detail {

// Residuals above the equality tolerance become warnings.
inline void warn_residuals(InverseResult& res, const Tolerance& tol) {
    for (const auto& [label, r] : res.residuals) {
        if (r.relative > tol.eq_rtol) {
            res.warnings.push_back(label + " residual " + format_sci(r.relative) + " exceeds the equality tolerance");
        }
    }
}

// Hard failure beyond 100x the equality tolerance; the band in between is a warning.
inline void enforce_residuals(InverseResult& res, const Tolerance& tol, const char* what) {
    for (const auto& [label, r] : res.residuals) {
        if (r.relative > 100.0 * tol.eq_rtol) {
            throw DefiningEquationViolation(std::string(what) + ": residual of " + label + " is " +
                                            format_sci(r.relative) + " (relative)");
        }
    }
    warn_residuals(res, tol);
}

inline Matrix embed_top(const Matrix& u, const Matrix& top_left, const Matrix& top_right) {
    const Index n = u.rows();
    const Index r = top_left.rows();
    Matrix inner = Matrix::Zero(n, n);
    inner.topLeftCorner(r, r) = top_left;
    inner.topRightCorner(r, n - r) = top_right;
    return u * inner * u.adjoint();
}

// Dense inverse of the r x r block of a core form; throws if singular.
inline Matrix invert_block(const Matrix& t, const char* what) {
    if (t.rows() == 0) {
        return t;
    }
    Eigen::FullPivLU<Matrix> lu(t);
    if (!lu.isInvertible()) {
        throw NumericalError(std::string(what) + ": core block is singular although the index is 1");
    }
    return lu.inverse();
}

// Truncated-SVD pseudoinverse without residual checks, for intermediate products.
inline Matrix pinv(const Matrix& a, const Tolerance& tol) {
    SvdResult f = svd(a);
    const Index r = rank_from_singular_values(f.singular_values, a.rows(), a.cols(), tol);
    return f.v.leftCols(r) * f.singular_values.head(r).cwiseInverse().asDiagonal() * f.u.leftCols(r).adjoint();
}

}  // namespace detail

/// Moore-Penrose inverse through the SVD, truncated at the shared rank cutoff.
/// Never throws: residuals above the tolerance are reported as warnings.
inline InverseResult mp_inverse(const Matrix& a, const Tolerance& tol = {}) {
    InverseResult res;
    res.route = "svd";
    res.value = detail::pinv(a, tol);
    const Matrix& x = res.value;
    const Matrix ax = a * x;
    const Matrix xa = x * a;
    res.residuals["AXA=A"] = residual(ax * a, a);
    res.residuals["XAX=X"] = residual(x * ax, x);
    res.residuals["(AX)*=AX"] = residual(ax.adjoint(), ax);
    res.residuals["(XA)*=XA"] = residual(xa.adjoint(), xa);
    detail::warn_residuals(res, tol);
    return res;
}

/// Orthogonal projector a * a^+ onto the range of a.
inline Matrix projector_onto_range(const Matrix& a, const Tolerance& tol = {}) {
    return a * mp_inverse(a, tol).value;
}

/// Group inverse from the core (Hartwig-Spindelbock) form:
/// u * [[T^-1, T^-2 S], [0, 0]] * u^* with T = sigma*k, S = sigma*l.
inline InverseResult group_inverse(const Matrix& a, const Tolerance& tol) {
    require_square(a, "group_inverse");
    const IndexResult idx = index(a, tol);
    if (idx.index > 1) {
        throw NotGroupInvertible(idx.index);
    }
    const HSParts hs = hs_decompose(a, tol);
    const Matrix t_inv = detail::invert_block(hs.sigma_k, "group_inverse");
    InverseResult res;
    res.route = "hs-block";
    res.index = idx.index;
    res.value = detail::embed_top(hs.u, t_inv, t_inv * t_inv * hs.sigma_l);
    const Matrix& x = res.value;
    res.residuals["AXA=A"] = residual(a * x * a, a);
    res.residuals["XAX=X"] = residual(x * a * x, x);
    res.residuals["AX=XA"] = residual(a * x, x * a);
    detail::enforce_residuals(res, tol, "group_inverse");
    return res;
}

/// Core inverse u * [[T^-1, 0], [0, 0]] * u^* from the core form.
inline InverseResult core_inverse(const Matrix& a, const Tolerance& tol) {
    require_square(a, "core_inverse");
    const IndexResult idx = index(a, tol);
    if (idx.index > 1) {
        throw NotGroupInvertible(idx.index);
    }
    const HSParts hs = hs_decompose(a, tol);
    const Matrix t_inv = detail::invert_block(hs.sigma_k, "core_inverse");
    InverseResult res;
    res.route = "hs-block";
    res.index = idx.index;
    res.value = detail::embed_top(hs.u, t_inv, Matrix::Zero(hs.r, a.rows() - hs.r));
    const Matrix& x = res.value;
    const Matrix p_a = projector_onto_range(a, tol);
    res.residuals["AX=AA+"] = residual(a * x, p_a);
    res.residuals["P_A*X=X"] = residual(p_a * x, x);
    detail::enforce_residuals(res, tol, "core_inverse");
    return res;
}

/// Drazin inverse a^k * (a^{k+1})^#.
inline InverseResult drazin_inverse(const Matrix& a, const Tolerance& tol) {
    require_square(a, "drazin_inverse");
    const IndexResult idx = index(a, tol);
    const int k = idx.index;
    const MatrixPower ak = power(a, k, tol);
    const MatrixPower ak1 = power(a, k + 1, tol);
    InverseResult res;
    res.route = "power-group";
    res.index = k;
    if (ak.rank == 0) {
        res.value = zeros(a.rows());
    } else {
        try {
            res.value = ak.value * group_inverse(ak1.value, tol).value;
        } catch (const NotGroupInvertible& e) {
            throw NumericalError(std::string("drazin_inverse: a^(k+1) lost group invertibility numerically: ") +
                                 e.what());
        }
    }
    const Matrix& x = res.value;
    res.residuals["XA^(k+1)=A^k"] = residual(x * ak1.value, ak.value);
    res.residuals["XAX=X"] = residual(x * a * x, x);
    res.residuals["AX=XA"] = residual(a * x, x * a);
    detail::enforce_residuals(res, tol, "drazin_inverse");
    return res;
}

/// Core-nilpotent decomposition: c = a * a^D * a, nil = a - c.
inline CNParts core_nilpotent_decompose(const Matrix& a, const Tolerance& tol) {
    const InverseResult d = drazin_inverse(a, tol);
    CNParts p;
    p.k = d.index;
    p.c = a * d.value * a;
    p.nil = a - p.c;
    return p;
}

/// Core-EP inverse u * [[T^-1, 0], [0, 0]] * u^* from the core-EP form,
/// cross-checked against a^k ((a^*)^k a^{k+1})^+ (a^*)^k.
inline InverseResult core_ep_inverse(const Matrix& a, const Tolerance& tol) {
    require_square(a, "core_ep_inverse");
    const CoreEPParts parts = core_ep_decompose(a, tol);
    const Index n = a.rows();
    InverseResult res;
    res.route = "core-ep-block";
    res.index = parts.k;
    res.warnings = parts.warnings;
    const Matrix t_inv = solve_upper_triangular(parts.t, identity(parts.r));
    res.value = detail::embed_top(parts.u, t_inv, Matrix::Zero(parts.r, n - parts.r));

    const MatrixPower ak = power(a, parts.k, tol);
    const MatrixPower ak1 = power(a, parts.k + 1, tol);
    const Matrix g = ak.value.adjoint() * ak1.value;
    const Matrix formula = ak.value * detail::pinv(g, tol) * ak.value.adjoint();
    const double disagreement = relative_distance(res.value, formula);
    if (disagreement > 100.0 * tol.eq_rtol) {
        throw IllConditioned("core_ep_inverse: block and power formulas disagree by " +
                             format_sci(disagreement) + " (relative)");
    }
    if (disagreement > tol.eq_rtol) {
        res.warnings.push_back("core-EP routes disagree by " + format_sci(disagreement));
    }

    const Matrix& x = res.value;
    const Matrix ax = a * x;
    res.residuals["XAX=X"] = residual(x * ax, x);
    res.residuals["(AX)*=AX"] = residual(ax.adjoint(), ax);
    res.residuals["XA^(k+1)=A^k"] = residual(x * ak1.value, ak.value);
    res.residuals["AX^2=X"] = residual(ax * x, x);
    detail::enforce_residuals(res, tol, "core_ep_inverse");
    return res;
}

/// DMP inverse a^D * a * a^+.
inline InverseResult dmp_inverse(const Matrix& a, const Tolerance& tol) {
    const InverseResult d = drazin_inverse(a, tol);
    const Matrix pinv = mp_inverse(a, tol).value;
    InverseResult res;
    res.route = "drazin-a-mp";
    res.index = d.index;
    res.value = d.value * a * pinv;
    const Matrix& x = res.value;
    const Matrix ak = power(a, d.index, tol).value;
    res.residuals["XAX=X"] = residual(x * a * x, x);
    res.residuals["XA=A^DA"] = residual(x * a, d.value * a);
    res.residuals["A^kX=A^kA+"] = residual(ak * x, ak * pinv);
    detail::enforce_residuals(res, tol, "dmp_inverse");
    return res;
}

/// B-T inverse (a^2 a^+)^+.
inline InverseResult bt_inverse(const Matrix& a, const Tolerance& tol) {
    require_square(a, "bt_inverse");
    const Matrix m = a * a * mp_inverse(a, tol).value;
    InverseResult inner = mp_inverse(m, tol);
    InverseResult res;
    res.route = "mp-of-a2-mp";
    res.index = index(a, tol).index;
    res.value = std::move(inner.value);
    for (auto& [label, r] : inner.residuals) {
        std::string key = label;
        for (char& c : key) {
            if (c == 'A') {
                c = 'M';
            }
        }
        res.residuals[key] = r;
    }
    res.warnings = std::move(inner.warnings);
    return res;
}

/// Residuals of the WG defining system and of the weak-Drazin equation.
/// Never throws on bad candidates; only reports.
inline ResidualMap verify_wg(const Matrix& x, const Matrix& a, const Tolerance& tol) {
    require_square(a, "verify_wg");
    require_same_shape(x, a, "verify_wg");
    const Matrix cep = core_ep_inverse(a, tol).value;
    const int k = index(a, tol).index;
    ResidualMap out;
    out["AX^2=X"] = residual(a * x * x, x);
    out["AX=A^cep*A"] = residual(a * x, cep * a);
    out["XA^(k+1)=A^k"] = residual(x * power(a, k + 1, tol).value, power(a, k, tol).value);
    return out;
}

/// The WG inverse: the unique X with A X^2 = X and A X = A^cep A.
inline InverseResult wg_inverse(const Matrix& a, const Tolerance& tol, WGRoute route = WGRoute::BlockForm) {
    require_square(a, "wg_inverse");
    const Index n = a.rows();
    InverseResult res;
    res.route = std::string(to_string(route));
    switch (route) {
        case WGRoute::BlockForm: {
            const CoreEPParts p = core_ep_decompose(a, tol);
            res.index = p.k;
            res.warnings = p.warnings;
            const Matrix t_inv = solve_upper_triangular(p.t, identity(p.r));
            const Matrix t_inv_s = solve_upper_triangular(p.t, p.s);
            res.value = detail::embed_top(p.u, t_inv, solve_upper_triangular(p.t, t_inv_s));
            break;
        }
        case WGRoute::CoreEPSquare: {
            const InverseResult cep = core_ep_inverse(a, tol);
            res.index = cep.index;
            res.warnings = cep.warnings;
            res.value = cep.value * cep.value * a;
            break;
        }
        case WGRoute::PowerCore: {
            const int k = index(a, tol).index;
            res.index = k;
            const MatrixPower ak = power(a, k, tol);
            const MatrixPower ak2 = power(a, k + 2, tol);
            if (ak2.rank == 0) {
                res.value = zeros(n);
            } else {
                // core inverse needs index(a^{k+2}) <= 1; core_inverse verifies it.
                res.value = ak.value * core_inverse(ak2.value, tol).value * a;
            }
            break;
        }
        case WGRoute::ProjectorMP: {
            const int k = index(a, tol).index;
            res.index = k;
            const MatrixPower ak = power(a, k, tol);
            const Matrix m = a * a * projector_onto_range(ak.value, tol);
            res.value = mp_inverse(m, tol).value * a;
            break;
        }
    }
    res.residuals = verify_wg(res.value, a, tol);
    detail::enforce_residuals(res, tol, "wg_inverse");
    return res;
}

}  // namespace ginv
