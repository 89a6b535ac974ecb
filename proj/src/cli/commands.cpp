#include "cli/commands.hpp"

#include "cli/manifest.hpp"
#include "cli/verify.hpp"

#include "hypin/domain_enum.hpp"
#include "hypin/errors.hpp"
#include "hypin/geometry_render.hpp"
#include "hypin/incircle_solver.hpp"
#include "hypin/lagrange_opt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace hypin::cli {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
    double tol = kDefaultBetaTolerance;
    unsigned threads = 1;
};

// Thrown for conditions that map to a specific exit code.
struct ExitError : std::runtime_error {
    int code;
    ExitError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

std::string join_args(const std::vector<std::string>& args) {
    std::string line = "hypin";
    for (const auto& a : args) {
        line += ' ';
        line += a;
    }
    return line;
}

Json tolerance_block(const GlobalOptions& g) {
    return Json{{"beta_tol", g.tol}, {"threads", g.threads}};
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

std::string finish(RunManifest& manifest, const std::string& path, const std::string& contents) {
    manifest.write_output(path, contents);
    return manifest.save_next_to(path).string();
}

// enumerate ---------------------------------------------------------------

struct EnumerateArgs {
    int l = 4;
    std::string format = "csv";
    std::string out;
};

std::string enumerate_csv(int l, const std::vector<TreeTypeSolution>& censuses) {
    std::ostringstream s;
    s << "type,w,n";
    for (int i = 1; i <= l - 1; ++i) {
        s << ",A" << i;
    }
    for (int j = 3; j <= l; ++j) {
        s << ",B" << j;
    }
    s << '\n';
    for (std::size_t k = 0; k < censuses.size(); ++k) {
        const auto& c = censuses[k];
        s << k + 1 << ',' << c.w << ',' << c.n;
        for (int v : c.A) {
            s << ',' << v;
        }
        for (int v : c.B) {
            s << ',' << v;
        }
        s << '\n';
    }
    return s.str();
}

std::string enumerate_json(int l, const std::vector<TreeTypeSolution>& censuses) {
    Json rows = Json::array();
    for (std::size_t k = 0; k < censuses.size(); ++k) {
        const auto& c = censuses[k];
        rows.push_back(Json{{"type", k + 1},
                            {"descriptor", c.descriptor()},
                            {"w", c.w},
                            {"n", c.n},
                            {"A", c.A},
                            {"B", c.B}});
    }
    Json doc{{"l", l}, {"count", censuses.size()}, {"censuses", rows}};
    return doc.dump(2) + '\n';
}

int cmd_enumerate(const EnumerateArgs& a, const GlobalOptions& g, const std::string& line, std::ostream& out) {
    const GroupSpec group(a.l);
    const auto censuses = enumerate_tree_types(group);
    const std::string path = a.out.empty() ? "enumerate_l" + std::to_string(a.l) + "." + a.format : a.out;
    RunManifest manifest(line, a.l, tolerance_block(g));
    manifest.set_summary(Json{{"censuses", censuses.size()}});
    const auto contents = a.format == "csv" ? enumerate_csv(a.l, censuses) : enumerate_json(a.l, censuses);
    finish(manifest, path, contents);
    out << "enumerate l=" << a.l << ": " << censuses.size() << " censuses -> " << path << '\n';
    return kExitOk;
}

// solve -------------------------------------------------------------------

struct SolveArgs {
    int l = 4;
    std::string format = "json";
    std::string out;
};

Json best_block(const GroupSpec& group, const std::vector<TreeTypeSolution>& censuses,
                const std::vector<IncircleResult>& results) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < results.size(); ++k) {
        if (results[k].x() > results[best].x()) {
            best = k;
        }
    }
    const double closed = optimal_radius_closed_form(group).x();
    return Json{{"type", best + 1},
                {"descriptor", censuses[best].descriptor()},
                {"x", round12(results[best].x())},
                {"closed_form_x", round12(closed)},
                {"abs_difference", round12(std::abs(results[best].x() - closed))}};
}

std::string solve_csv(const std::vector<TreeTypeSolution>& censuses, const std::vector<IncircleResult>& results) {
    std::ostringstream s;
    s << "type,descriptor,w,n,beta,x,cosh_x,polygon_area,circle_area,density\n";
    for (std::size_t k = 0; k < censuses.size(); ++k) {
        const auto& c = censuses[k];
        const auto& r = results[k];
        s << k + 1 << ',' << csv_quote(c.descriptor()) << ',' << c.w << ',' << c.n << ','
          << format12(r.beta1.radians()) << ',' << format12(r.x()) << ',' << format12(r.cosh_x.cosh_x()) << ','
          << format12(r.polygon_area) << ',' << format12(r.circle_area) << ',' << format12(r.density) << '\n';
    }
    return s.str();
}

std::string solve_json(const GroupSpec& group, const std::vector<TreeTypeSolution>& censuses,
                       const std::vector<IncircleResult>& results) {
    Json rows = Json::array();
    for (std::size_t k = 0; k < censuses.size(); ++k) {
        const auto& c = censuses[k];
        const auto& r = results[k];
        rows.push_back(Json{{"type", k + 1},
                            {"descriptor", c.descriptor()},
                            {"w", c.w},
                            {"n", c.n},
                            {"beta", round12(r.beta1.radians())},
                            {"x", round12(r.x())},
                            {"cosh_x", round12(r.cosh_x.cosh_x())},
                            {"polygon_area", round12(r.polygon_area)},
                            {"circle_area", round12(r.circle_area)},
                            {"density", round12(r.density)}});
    }
    Json doc{{"l", group.l()}, {"rows", rows}, {"best", best_block(group, censuses, results)}};
    return doc.dump(2) + '\n';
}

int cmd_solve(const SolveArgs& a, const GlobalOptions& g, const std::string& line, std::ostream& out) {
    const GroupSpec group(a.l);
    const auto censuses = enumerate_tree_types(group);
    std::vector<IncircleResult> results;
    try {
        results = solve_all(group, g.tol, g.threads);
    } catch (const NoRootError& e) {
        throw ExitError(kExitSolver, std::string("solve failed: ") + e.what());
    } catch (const DomainError& e) {
        throw ExitError(kExitSolver, std::string("solve failed: ") + e.what());
    }
    const auto best = best_block(group, censuses, results);
    const std::string path = a.out.empty() ? "solve_l" + std::to_string(a.l) + "." + a.format : a.out;
    RunManifest manifest(line, a.l, tolerance_block(g));
    manifest.set_summary(Json{{"rows", censuses.size()}, {"best", best}});
    finish(manifest, path, a.format == "csv" ? solve_csv(censuses, results) : solve_json(group, censuses, results));
    out << "solve l=" << a.l << ": " << censuses.size() << " censuses -> " << path << '\n';
    out << "best: type " << best["type"].get<std::size_t>() << " (" << best["descriptor"].get<std::string>()
        << ") x=" << format12(best["x"].get<double>()) << " closed form x="
        << format12(best["closed_form_x"].get<double>()) << '\n';
    return kExitOk;
}

// verify ------------------------------------------------------------------

struct VerifyArgs {
    int l_max = 8;
    std::string out;
    std::string inject_fault;
};

int cmd_verify(const VerifyArgs& a, const GlobalOptions& g, const std::string& line, std::ostream& out,
               std::ostream& err) {
    if (a.l_max < 4 || a.l_max > 12) {
        throw ExitError(kExitUsage, "--l-max must lie in [4, 12]");
    }
    VerifyOptions options;
    options.l_max = a.l_max;
    options.threads = g.threads;
    options.tol = g.tol;
    options.inject_fault = a.inject_fault;
    if (!a.inject_fault.empty()) {
        const auto names = verification_check_names();
        if (std::find(names.begin(), names.end(), a.inject_fault) == names.end()) {
            throw ExitError(kExitUsage, "unknown check for --inject-fault: " + a.inject_fault);
        }
    }
    const auto report = run_verification(options);

    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(Json{{"name", c.name},
                              {"passed", c.passed},
                              {"samples", c.samples},
                              {"worst_margin", std::isfinite(c.worst_margin) ? Json(round12(c.worst_margin)) : Json()},
                              {"detail", c.detail}});
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", c.worst_margin);
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  samples=" << c.samples << "  worst_margin=" << buf
            << '\n';
    }
    Json doc{{"l_max", a.l_max}, {"all_passed", report.all_passed()}, {"checks", checks}};
    const std::string path = a.out.empty() ? "verify_l" + std::to_string(a.l_max) + ".json" : a.out;
    RunManifest manifest(line, a.l_max, tolerance_block(g));
    manifest.set_summary(Json{{"all_passed", report.all_passed()}, {"checks", report.checks.size()}});
    finish(manifest, path, doc.dump(2) + '\n');
    if (const auto* failed = report.first_failure()) {
        err << "verification failed: " << failed->name << '\n';
        return kExitVerify;
    }
    out << "all " << report.checks.size() << " checks passed -> " << path << '\n';
    return kExitOk;
}

// render ------------------------------------------------------------------

struct RenderArgs {
    int l = 4;
    int type = 5;
    std::string out;
    bool no_labels = false;
};

int cmd_render(const RenderArgs& a, const GlobalOptions& g, const std::string& line, std::ostream& out) {
    const GroupSpec group(a.l);
    const auto censuses = enumerate_tree_types(group);
    if (a.type < 1 || static_cast<std::size_t>(a.type) > censuses.size()) {
        throw ExitError(kExitUsage, "--type must lie in [1, " + std::to_string(censuses.size()) + "] for l=" +
                                        std::to_string(a.l));
    }
    const auto& census = censuses[static_cast<std::size_t>(a.type - 1)];
    IncircleResult result = [&] {
        try {
            return solve_incircle(census, group, g.tol);
        } catch (const NoRootError& e) {
            throw ExitError(kExitSolver, std::string("solve failed: ") + e.what());
        }
    }();
    const auto layout = layout_polygon(census, result);

    double side_error = 0.0;
    for (double d : side_distances(layout)) {
        side_error = std::max(side_error, std::abs(d - result.x()));
    }
    double angle_error = 0.0;
    const auto angles = measured_vertex_angles(layout);
    for (std::size_t k = 0; k < angles.size(); ++k) {
        angle_error = std::max(angle_error, std::abs(angles[k] - layout.angle_sequence[k].first.radians()));
    }

    RenderOptions options;
    options.labels = !a.no_labels;
    const std::string path =
        a.out.empty() ? "render_l" + std::to_string(a.l) + "_t" + std::to_string(a.type) + ".svg" : a.out;
    RunManifest manifest(line, a.l, tolerance_block(g));
    manifest.set_summary(Json{{"type", a.type},
                              {"descriptor", census.descriptor()},
                              {"sides", layout.vertices.size()},
                              {"x", round12(result.x())},
                              {"max_side_distance_error", round12(side_error)},
                              {"max_vertex_angle_error", round12(angle_error)}});
    finish(manifest, path, render_svg(layout, options));
    out << "render l=" << a.l << " type " << a.type << " (" << census.descriptor() << "): " << layout.vertices.size()
        << "-gon -> " << path << '\n';
    return kExitOk;
}

// optimize ----------------------------------------------------------------

struct OptimizeArgs {
    int type = 5;
    std::uint64_t seed = 1;
    int starts = 8;
    std::string out;
};

Json report_json(const StationaryReport& r) {
    Json minors = Json::array();
    for (double m : r.bordered_minors) {
        minors.push_back(round12(m));
    }
    Json multipliers = Json::array();
    for (double m : r.multipliers) {
        multipliers.push_back(round12(m));
    }
    auto rounded = [](const std::vector<double>& v) {
        Json arr = Json::array();
        for (double e : v) {
            arr.push_back(round12(e));
        }
        return arr;
    };
    return Json{{"objective", round12(r.objective)},
                {"x", round12(std::acosh(r.objective))},
                {"verdict", to_string(r.bordered_hessian_verdict)},
                {"alphas", rounded(r.point.alphas)},
                {"betas", rounded(r.point.betas)},
                {"theta", round12(r.point.theta)},
                {"multipliers", multipliers},
                {"lagrangian_gradient_norm", round12(r.lagrangian_gradient_norm)},
                {"projected_gradient_norm", round12(r.projected_gradient_norm)},
                {"constraint_residual_norm", round12(r.constraint_residual_norm)},
                {"iterations", r.iterations},
                {"box_active", r.box_active},
                {"bordered_minors", minors}};
}

int cmd_optimize(const OptimizeArgs& a, const GlobalOptions& g, const std::string& line, std::ostream& out) {
    if (a.type < 3 || a.type > 5) {
        throw ExitError(kExitUsage, "--type must be 3, 4 or 5");
    }
    if (a.starts < 1) {
        throw ExitError(kExitUsage, "--starts must be positive");
    }
    MultiStartResult result;
    try {
        result = multi_start(a.type, a.seed, a.starts, g.threads);
    } catch (const NonConvergence& e) {
        throw ExitError(kExitOptimizer, std::string("optimizer failed: ") + e.what());
    }
    Json reports = Json::array();
    for (const auto& r : result.reports) {
        reports.push_back(report_json(r));
    }
    const auto& best = result.reports.front();
    Json doc{{"type", a.type},
             {"seed", a.seed},
             {"starts", a.starts},
             {"failures", result.failures},
             {"best_objective", round12(best.objective)},
             {"best_verdict", to_string(best.bordered_hessian_verdict)},
             {"reports", reports}};
    const std::string path = a.out.empty() ? "optimize_t" + std::to_string(a.type) + ".json" : a.out;
    RunManifest manifest(line, 4, Json{{"newton_tolerance", StationaryOptions{}.tolerance},
                                       {"gradient_step", StationaryOptions{}.gradient_step},
                                       {"hessian_step", StationaryOptions{}.hessian_step},
                                       {"threads", g.threads}});
    manifest.set_summary(Json{{"best_objective", round12(best.objective)},
                              {"best_verdict", to_string(best.bordered_hessian_verdict)},
                              {"converged", result.reports.size()},
                              {"failures", result.failures}});
    finish(manifest, path, doc.dump(2) + '\n');
    out << "optimize type " << a.type << ": f=" << format12(best.objective) << " ("
        << to_string(best.bordered_hessian_verdict) << "), " << result.reports.size() << " converged, "
        << result.failures << " failed -> " << path << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Largest inscribed circles in fundamental domains of [3,3,...,3] groups", "hypin"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    GlobalOptions global;
    // Ranges are checked after parsing so that values from the environment
    // are held to the same limits as flags.
    app.add_option("--tol", global.tol, "bisection tolerance on the central angle, in [1e-14, 1e-6]")
        ->envname("HYPIN_TOL");
    app.add_option("--threads", global.threads, "worker threads for census solves, in [1, 256]")
        ->envname("HYPIN_THREADS");

    EnumerateArgs enumerate;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "list every census for l");
    enumerate_cmd->add_option("--l", enumerate.l, "number of rotation centers")->required();
    enumerate_cmd->add_option("--format", enumerate.format)->check(CLI::IsMember({"json", "csv"}));
    enumerate_cmd->add_option("--out", enumerate.out, "output path");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve the incircle radius of every census");
    solve_cmd->add_option("--l", solve.l, "number of rotation centers")->required();
    solve_cmd->add_option("--format", solve.format)->check(CLI::IsMember({"json", "csv"}));
    solve_cmd->add_option("--out", solve.out, "output path");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "run the property suite");
    verify_cmd->add_option("--l-max", verify.l_max, "largest l to check (4..12)");
    verify_cmd->add_option("--out", verify.out, "report path");
    verify_cmd->add_option("--inject-fault", verify.inject_fault, "invert the named check (harness self-test)");

    RenderArgs render;
    auto* render_cmd = app.add_subcommand("render", "draw a census polygon in the Poincare disk");
    render_cmd->add_option("--l", render.l, "number of rotation centers")->required();
    render_cmd->add_option("--type", render.type, "1-based census index in canonical order")->required();
    render_cmd->add_option("--out", render.out, "SVG path");
    render_cmd->add_flag("--no-labels", render.no_labels, "omit vertex labels");

    OptimizeArgs optimize;
    auto* optimize_cmd = app.add_subcommand("optimize", "multi-start Lagrange search for l=4 types 3, 4, 5");
    optimize_cmd->add_option("--type", optimize.type)->required();
    optimize_cmd->add_option("--seed", optimize.seed);
    optimize_cmd->add_option("--starts", optimize.starts);
    optimize_cmd->add_option("--out", optimize.out, "report path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (!(global.tol >= 1e-14 && global.tol <= 1e-6)) {
        err << "hypin: --tol / HYPIN_TOL must lie in [1e-14, 1e-6]\n";
        return kExitUsage;
    }
    if (global.threads < 1 || global.threads > 256) {
        err << "hypin: --threads / HYPIN_THREADS must lie in [1, 256]\n";
        return kExitUsage;
    }

    const std::string line = join_args(args);
    try {
        if (*enumerate_cmd) {
            return cmd_enumerate(enumerate, global, line, out);
        }
        if (*solve_cmd) {
            return cmd_solve(solve, global, line, out);
        }
        if (*verify_cmd) {
            return cmd_verify(verify, global, line, out, err);
        }
        if (*render_cmd) {
            return cmd_render(render, global, line, out);
        }
        return cmd_optimize(optimize, global, line, out);
    } catch (const ExitError& e) {
        err << "hypin: " << e.what() << '\n';
        return e.code;
    } catch (const InvalidL& e) {
        err << "hypin: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "hypin: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "hypin: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace hypin::cli
