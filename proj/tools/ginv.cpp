// ginv: command-line front end for the generalized-inverse library.
//
//   ginv inverse <mp|group|drazin|core|core-ep|dmp|bt|wg> FILE [--route R] [--json]
//   ginv order <minus|sharp|drazin|cn|wg|ce|core-ep|core-ep-wg> FILE_A FILE_B [--json]
//   ginv decompose <core-ep|core-nilpotent|hs|index> FILE [--json]
//   ginv suite NAME [--count N] [--seed S] [--json]
//
// Exit codes: 0 success / order holds, 1 order does not hold / suite failures,
// 2 parse or usage error, 3 precondition violation, 4 numerical failure.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ginv/ginv.hpp"

namespace {

using ginv::Matrix;
using ginv::Tolerance;
using nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kDoesNotHold = 1,
    kParseError = 2,
    kPrecondition = 3,
    kNumerical = 4,
};

struct Options {
    std::optional<double> rank_rtol;
    std::optional<double> eq_rtol;
    std::optional<double> eig_rtol;
    bool json = false;
};

double env_double(const char* name, double fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0') {
        throw ginv::PreconditionError(std::string(name) + " is not a number: '" + raw + "'");
    }
    return v;
}

// Defaults, then GINV_* environment variables, then flags.
Tolerance resolve_tolerance(const Options& opt) {
    Tolerance tol;
    tol.rank_rtol = opt.rank_rtol.value_or(env_double("GINV_RANK_RTOL", tol.rank_rtol));
    tol.eq_rtol = opt.eq_rtol.value_or(env_double("GINV_EQ_RTOL", tol.eq_rtol));
    tol.eig_zero_rtol = opt.eig_rtol.value_or(env_double("GINV_EIG_RTOL", tol.eig_zero_rtol));
    tol.validate();
    return tol;
}

ordered_json tolerance_json(const Tolerance& tol) {
    return {{"rank_rtol", tol.rank_rtol}, {"eq_rtol", tol.eq_rtol}, {"eig_rtol", tol.eig_zero_rtol}};
}

ordered_json matrix_json(const Matrix& m) {
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    for (ginv::Index i = 0; i < m.rows(); ++i) {
        ordered_json rr = ordered_json::array();
        ordered_json ii = ordered_json::array();
        for (ginv::Index j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"real", std::move(re)}, {"imag", std::move(im)}};
}

void print_block(const std::string& name, const Matrix& m) {
    std::cout << "# " << name << "\n" << ginv::io::format_matrix(m);
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) {
        std::cout << "# warning: " << w << "\n";
    }
}

// ---------------------------------------------------------------------------

ginv::InverseResult compute_inverse(const std::string& kind, const Matrix& a, const Tolerance& tol,
                                    const std::string& route) {
    if (kind != "wg" && !route.empty()) {
        throw ginv::PreconditionError("--route applies only to the wg inverse");
    }
    if (kind == "mp") return ginv::mp_inverse(a, tol);
    if (kind == "group") return ginv::group_inverse(a, tol);
    if (kind == "drazin") return ginv::drazin_inverse(a, tol);
    if (kind == "core") return ginv::core_inverse(a, tol);
    if (kind == "core-ep") return ginv::core_ep_inverse(a, tol);
    if (kind == "dmp") return ginv::dmp_inverse(a, tol);
    if (kind == "bt") return ginv::bt_inverse(a, tol);
    const auto r = route.empty() ? ginv::WGRoute::BlockForm : ginv::parse_wg_route(route);
    return ginv::wg_inverse(a, tol, r);
}

int cmd_inverse(const std::string& kind, const std::string& path, const std::string& route, const Options& opt) {
    const Tolerance tol = resolve_tolerance(opt);
    const Matrix a = ginv::io::read_matrix_file(path);
    const ginv::InverseResult res = compute_inverse(kind, a, tol, route);
    if (opt.json) {
        ordered_json residuals = ordered_json::object();
        for (const auto& [label, r] : res.residuals) {
            residuals[label] = {{"absolute", r.absolute}, {"relative", r.relative}};
        }
        ordered_json out = {{"inverse", kind},       {"value", matrix_json(res.value)},
                            {"route", res.route},     {"index", res.index},
                            {"residuals", residuals}, {"warnings", res.warnings},
                            {"tolerances", tolerance_json(tol)}};
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    std::cout << "# " << kind << " inverse, route " << res.route << ", index " << res.index << "\n";
    std::cout << ginv::io::format_matrix(res.value);
    std::cout << "# residuals (absolute, relative)\n";
    for (const auto& [label, r] : res.residuals) {
        std::printf("#   %-14s %.3e  %.3e\n", label.c_str(), r.absolute, r.relative);
    }
    print_warnings(res.warnings);
    return kOk;
}

// ---------------------------------------------------------------------------

ginv::OrderVerdict decide_order(const std::string& kind, const Matrix& a, const Matrix& b, const Tolerance& tol) {
    if (kind == "minus") return ginv::minus_order(a, b, tol);
    if (kind == "sharp") return ginv::sharp_order(a, b, tol);
    if (kind == "drazin") return ginv::drazin_order(a, b, tol);
    if (kind == "cn") return ginv::cn_order(a, b, tol);
    if (kind == "wg") return ginv::wg_order(a, b, tol);
    if (kind == "ce") return ginv::ce_order(a, b, tol);
    if (kind == "core-ep") return ginv::core_ep_order(a, b, tol);
    return ginv::core_ep_order_via_wg(a, b, tol);
}

ordered_json verdict_json(const ginv::OrderVerdict& v) {
    ordered_json witnesses = ordered_json::object();
    for (const auto& [name, w] : v.witnesses) {
        witnesses[name] = {{"value", w.value}, {"threshold", w.threshold}, {"pass", w.pass}};
    }
    ordered_json details = ordered_json::object();
    for (const auto& [name, d] : v.details) {
        details[name] = d;
    }
    ordered_json parts = ordered_json::array();
    for (const auto& p : v.parts) {
        parts.push_back(verdict_json(p));
    }
    return {{"order", v.order_name}, {"holds", v.holds}, {"witnesses", witnesses}, {"details", details},
            {"parts", parts}};
}

void print_verdict(const ginv::OrderVerdict& v, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    std::cout << pad << v.order_name << ": " << (v.holds ? "holds" : "does not hold") << "\n";
    for (const auto& [name, d] : v.details) {
        std::cout << pad << "  " << name << " = " << d << "\n";
    }
    for (const auto& p : v.parts) {
        print_verdict(p, depth + 1);
    }
    for (const auto& [name, w] : v.witnesses) {
        if (v.parts.empty()) {
            std::printf("%s  %-30s %.3e <= %.3e  %s\n", pad.c_str(), name.c_str(), w.value, w.threshold,
                        w.pass ? "pass" : "FAIL");
        }
    }
}

int cmd_order(const std::string& kind, const std::string& path_a, const std::string& path_b, const Options& opt) {
    const Tolerance tol = resolve_tolerance(opt);
    const Matrix a = ginv::io::read_matrix_file(path_a);
    const Matrix b = ginv::io::read_matrix_file(path_b);
    const ginv::OrderVerdict v = decide_order(kind, a, b, tol);
    if (opt.json) {
        ordered_json out = verdict_json(v);
        out["tolerances"] = tolerance_json(tol);
        std::cout << out.dump(2) << "\n";
    } else {
        print_verdict(v, 0);
    }
    return v.holds ? kOk : kDoesNotHold;
}

// ---------------------------------------------------------------------------

int cmd_decompose(const std::string& kind, const std::string& path, const Options& opt) {
    const Tolerance tol = resolve_tolerance(opt);
    const Matrix a = ginv::io::read_matrix_file(path);
    const ginv::IndexResult idx = ginv::index(a, tol);

    std::vector<std::pair<std::string, Matrix>> blocks;
    std::map<std::string, double> scalars;
    std::vector<std::string> warnings;
    std::optional<double> reconstruction;

    if (kind == "core-ep") {
        const ginv::CoreEPParts p = ginv::core_ep_decompose(a, tol);
        scalars["r"] = static_cast<double>(p.r);
        blocks = {{"U", p.u}, {"T", p.t}, {"S", p.s}, {"N", p.n}, {"A1", p.a1}, {"A2", p.a2}};
        reconstruction = ginv::relative_distance(p.a1 + p.a2, a);
        warnings = p.warnings;
    } else if (kind == "core-nilpotent") {
        const ginv::CNParts p = ginv::core_nilpotent_decompose(a, tol);
        scalars["rank(C)"] = static_cast<double>(ginv::rank(p.c, tol));
        blocks = {{"C", p.c}, {"Nil", p.nil}};
        reconstruction = ginv::relative_distance(p.c + p.nil, a);
    } else if (kind == "hs") {
        const ginv::HSParts p = ginv::hs_decompose(a, tol);
        scalars["r"] = static_cast<double>(p.r);
        blocks = {{"U", p.u}, {"Sigma", p.sigma}, {"K", p.k}, {"L", p.l}};
        reconstruction = ginv::relative_distance(p.assemble(), a);
    }

    if (opt.json) {
        ordered_json out = {{"decomposition", kind}, {"index", idx.index}, {"rank_sequence", idx.rank_sequence}};
        for (const auto& [name, v] : scalars) {
            out[name] = v;
        }
        if (!blocks.empty()) {
            ordered_json bj = ordered_json::object();
            for (const auto& [name, m] : blocks) {
                bj[name] = matrix_json(m);
            }
            out["blocks"] = bj;
        }
        if (reconstruction) {
            out["residuals"] = {{"reconstruction", *reconstruction}};
        }
        out["warnings"] = warnings;
        out["tolerances"] = tolerance_json(tol);
        std::cout << out.dump(2) << "\n";
        return kOk;
    }

    std::cout << "index = " << idx.index << "\n";
    std::cout << "rank sequence =";
    for (auto r : idx.rank_sequence) {
        std::cout << " " << r;
    }
    std::cout << "\n";
    for (const auto& [name, v] : scalars) {
        std::cout << name << " = " << v << "\n";
    }
    for (const auto& [name, m] : blocks) {
        print_block(name, m);
    }
    if (reconstruction) {
        std::printf("# reconstruction residual (relative) %.3e\n", *reconstruction);
    }
    print_warnings(warnings);
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_suite(const std::string& name, std::size_t count, std::uint64_t seed, const Options& opt) {
    const Tolerance tol = resolve_tolerance(opt);
    const ginv::oracle::SuiteReport rep = ginv::oracle::run_suite(name, count, seed, tol);
    if (opt.json) {
        ordered_json failures = ordered_json::array();
        for (const auto& f : rep.failures) {
            failures.push_back({{"case_id", f.case_id}, {"property", f.property}, {"detail", f.detail}});
        }
        ordered_json out = {{"suite", rep.name},         {"seed", rep.seed},
                            {"cases_run", rep.cases_run}, {"cases_passed", rep.cases_passed},
                            {"failures", failures},       {"tolerances", tolerance_json(tol)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "suite " << rep.name << ": " << rep.cases_passed << "/" << rep.cases_run
                  << " cases passed (seed " << rep.seed << ")\n";
        for (const auto& f : rep.failures) {
            std::cout << "  case " << f.case_id << " [" << f.property << "] " << f.detail << "\n";
        }
    }
    return rep.ok() ? kOk : kDoesNotHold;
}

int run_guarded(const std::function<int()>& body, const Options& opt) {
    auto fail = [&](int code, const char* type, const std::string& message) {
        std::cerr << "error: " << message << "\n";
        if (opt.json) {
            ordered_json out = {{"error", {{"type", type}, {"message", message}, {"exit_code", code}}}};
            std::cout << out.dump(2) << "\n";
        }
        return code;
    };
    try {
        return body();
    } catch (const ginv::io::ParseError& e) {
        return fail(kParseError, "parse", e.what());
    } catch (const ginv::NotGroupInvertible& e) {
        return fail(kPrecondition, "precondition", e.what());
    } catch (const ginv::PreconditionError& e) {
        return fail(kPrecondition, "precondition", e.what());
    } catch (const ginv::NumericalError& e) {
        return fail(kNumerical, "numerical", e.what());
    } catch (const std::exception& e) {
        return fail(kNumerical, "internal", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized inverses, decompositions and matrix orders"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--rank-rtol", opt.rank_rtol, "relative singular-value cutoff (env GINV_RANK_RTOL)");
    app.add_option("--eq-rtol", opt.eq_rtol, "relative equality tolerance (env GINV_EQ_RTOL)");
    app.add_option("--eig-rtol", opt.eig_rtol, "relative zero-eigenvalue cutoff (env GINV_EIG_RTOL)");
    app.add_flag("--json", opt.json, "machine-readable report");

    std::string kind;
    std::string path;
    std::string path_b;
    std::string route;
    std::size_t count = 100;
    std::uint64_t seed = 0;

    auto* inverse = app.add_subcommand("inverse", "compute a generalized inverse");
    inverse->add_option("kind", kind, "inverse kind")
        ->required()
        ->check(CLI::IsMember({"mp", "group", "drazin", "core", "core-ep", "dmp", "bt", "wg"}));
    inverse->add_option("file", path, "matrix file")->required();
    inverse->add_option("--route", route, "WG route: block-form, core-ep-square, power-core, projector-mp");

    auto* order = app.add_subcommand("order", "decide whether A lies below B");
    order->add_option("kind", kind, "order kind")
        ->required()
        ->check(CLI::IsMember({"minus", "sharp", "drazin", "cn", "wg", "ce", "core-ep", "core-ep-wg"}));
    order->add_option("a", path, "matrix file for A")->required();
    order->add_option("b", path_b, "matrix file for B")->required();

    auto* decompose = app.add_subcommand("decompose", "decompose a matrix or compute its index");
    decompose->add_option("kind", kind, "decomposition kind")
        ->required()
        ->check(CLI::IsMember({"core-ep", "core-nilpotent", "hs", "index"}));
    decompose->add_option("file", path, "matrix file")->required();

    auto* suite = app.add_subcommand("suite", "run a property suite");
    suite->add_option("name", kind, "suite id")->required();
    suite->add_option("--count", count, "number of cases")->capture_default_str();
    suite->add_option("--seed", seed, "suite seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    }

    if (*inverse) {
        return run_guarded([&] { return cmd_inverse(kind, path, route, opt); }, opt);
    }
    if (*order) {
        return run_guarded([&] { return cmd_order(kind, path, path_b, opt); }, opt);
    }
    if (*decompose) {
        return run_guarded([&] { return cmd_decompose(kind, path, opt); }, opt);
    }
    return run_guarded([&] { return cmd_suite(kind, count, seed, opt); }, opt);
}
