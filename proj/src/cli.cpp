#include "fslgeom/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#include "fslgeom/batch.hpp"
#include "fslgeom/io.hpp"
#include "fslgeom/solver.hpp"
#include "fslgeom/verify.hpp"

namespace fslgeom {

namespace {

using nlohmann::json;

FslComplex load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    return fsl_from_json(doc);
}

json modulus_report(const char* key, cplx v) {
    return {{key, cplx_to_json(v)}, {"modulus", std::abs(v)}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Volumes, 1-loop invariants and torsion of fundamental shadow link complements"};
    app.require_subcommand(1);

    std::string file, out_path, suite = "all";
    std::vector<double> angles;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    int component = 1, steps = 0;
    double theta_min = 0.0, theta_max = 0.0;
    bool compare = false;

    auto add_file = [&](CLI::App* s) { s->add_option("--file", file, "FSL document (JSON)")->required(); };
    auto add_out = [&](CLI::App* s) { s->add_option("--out", out_path, "write the report to this path"); };

    CLI::App* volume = app.add_subcommand("volume", "total hyperbolic volume");
    add_file(volume);
    add_out(volume);
    CLI::App* hyper = app.add_subcommand("hyperideal", "volume of a hyperideal tetrahedron");
    hyper->add_option("--angles", angles, "six dihedral angles in [0, pi)")->required()->expected(6);
    add_out(hyper);
    CLI::App* oneloop = app.add_subcommand("one-loop", "1-loop invariant of an FSL complement");
    add_file(oneloop);
    add_out(oneloop);
    oneloop->add_flag("--compare", compare, "also report the torsion and the unit-class comparison");
    CLI::App* torsion = app.add_subcommand("torsion", "adjoint twisted Reidemeister torsion");
    add_file(torsion);
    add_out(torsion);
    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite, "all, dilog, block, fsl, nz or moves");
    verify->add_option("--tol", tol, "override every default tolerance");
    verify->add_option("--seed", seed, "RNG seed (default: FSLGEOM_SEED or built-in)");
    add_out(verify);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "volume, |tau| and |torsion| against one cone angle");
    add_file(sweep_cmd);
    add_out(sweep_cmd);
    sweep_cmd->add_option("--component", component, "1-based component index")->required();
    sweep_cmd->add_option("--theta-min", theta_min)->required();
    sweep_cmd->add_option("--theta-max", theta_max)->required();
    sweep_cmd->add_option("--steps", steps)->required();
    CLI::App* solve = app.add_subcommand("solve", "compare the Newton and explicit block solutions");
    add_file(solve);
    add_out(solve);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return exit_input;
    }

    std::ostringstream report;
    int code = exit_ok;
    try {
        if (*volume) {
            const FslComplex x = load(file);
            const FslSolution sol = assemble_solution(x);
            json per = json::array();
            double total = 0.0;
            for (const auto& b : sol.blocks) {
                per.push_back(block_volume(b));
                total += per.back().get<double>();
            }
            report << json{{"volume", total}, {"per_block", per}}.dump(2) << "\n";
        } else if (*hyper) {
            std::array<double, 6> th;
            for (int i = 0; i < 6; ++i) {
                if (!(angles[i] >= 0.0 && angles[i] < std::numbers::pi))
                    throw Error(ErrorKind::InvalidInput, "angles must lie in [0, pi)");
                th[i] = angles[i];
            }
            report << json{{"volume", hyperideal_volume(th)}}.dump(2) << "\n";
        } else if (*oneloop) {
            const FslComplex x = load(file);
            json j = modulus_report("tau", fsl_oneloop(x));
            if (compare) {
                const cplx t = fsl_torsion(x);
                j["torsion"] = cplx_to_json(t);
                j["unit_rel_error"] = unit_rel_error(fsl_oneloop(x), t);
            }
            report << j.dump(2) << "\n";
        } else if (*torsion) {
            report << modulus_report("torsion", fsl_torsion(load(file))).dump(2) << "\n";
        } else if (*verify) {
            const auto results = run_suite(suite, seed.value_or(env_seed()), tol);
            json arr = json::array();
            for (const auto& r : results) {
                out << format_check(r) << "\n";
                if (!r.passed) code = exit_verify_failed;
                arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.passed}, {"measured", r.measured},
                               {"tol", r.tol}, {"detail", r.detail}});
            }
            if (!out_path.empty()) report << json{{"suite", suite}, {"checks", arr}}.dump(2) << "\n";
        } else if (*sweep_cmd) {
            const FslComplex x = load(file);
            if (steps < 1) throw Error(ErrorKind::InvalidInput, "steps must be at least 1");
            if (component < 1 || component > x.components().count())
                throw Error(ErrorKind::InvalidInput, "component out of range");
            const auto rows = sweep(x, component - 1, theta_min, theta_max, steps, Exec::Parallel);
            report << "theta,volume,tau_abs,torsion_abs\n" << std::setprecision(15);
            for (const auto& r : rows)
                report << r.theta << "," << r.volume << "," << r.tau_abs << "," << r.torsion_abs << "\n";
        } else if (*solve) {
            const FslComplex x = load(file);
            json blocks = json::array();
            double worst = 0.0;
            Shapes8 start;
            start.fill(cplx(0.0, 1.0));
            for (int b = 0; b < x.blocks(); ++b) {
                const Holonomy6 h = x.pullback(b);
                NewtonStats stats;
                const Shapes8 ze = solve_block_explicit(h).z();
                const Shapes8 zn = newton_block(h, start, {}, &stats).z();
                double diff = 0.0;
                json je = json::array(), jn = json::array();
                for (int i = 0; i < 8; ++i) {
                    diff = std::max(diff, std::abs(ze[i] - zn[i]));
                    je.push_back(cplx_to_json(ze[i]));
                    jn.push_back(cplx_to_json(zn[i]));
                }
                worst = std::max(worst, diff);
                blocks.push_back({{"explicit", je}, {"newton", jn}, {"max_diff", diff},
                                  {"newton_iterations", stats.iterations}, {"newton_residual", stats.residual}});
            }
            report << json{{"blocks", blocks}, {"max_diff", worst}}.dump(2) << "\n";
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_input_error(e.kind()) ? exit_input : exit_degenerate;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }

    if (out_path.empty()) {
        out << report.str();
    } else {
        std::ofstream f(out_path);
        if (!f) {
            err << "error: cannot write '" << out_path << "'\n";
            return exit_input;
        }
        f << report.str();
    }
    return code;
}

}  // namespace fslgeom
