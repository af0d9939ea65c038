// Command-line front end: scenario solves, truncation sweeps, estimate
// verification, manufactured-solution studies and report printing.
// Exit codes: 0 all checks passed, 1 a solve failed or a check missed its
// threshold, 2 bad usage, unparsable config or violated data assumption.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dgel/assemble.hpp"
#include "dgel/config.hpp"
#include "dgel/errors.hpp"
#include "dgel/scenario.hpp"
#include "dgel/system.hpp"

namespace fs = std::filesystem;
using namespace dgel;

namespace {

std::vector<double> parse_list(const std::string& s, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigParseError(std::string(flag) + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigParseError(std::string(flag) + ": empty list");
    return out;
}

std::pair<int, int> parse_grid_flag(const std::string& s) {
    int nx = 0, ny = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%dx%d%c", &nx, &ny, &tail) != 2 || nx < 1 || ny < 1)
        throw ConfigParseError("--grid expects NXxNY with positive integers, got '" + s + "'");
    return {nx, ny};
}

int print_summary(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "summary.txt");
    if (!in) {
        std::cerr << "no summary.txt under " << dir << "\n";
        return 2;
    }
    std::string line;
    bool pass = false;
    while (std::getline(in, line)) {
        std::cout << line << "\n";
        if (line == "result: PASS") pass = true;
    }
    return pass ? 0 : 1;
}

// Re-assembles the system at the converged state and dumps it next to the
// other artifacts for external cross-checking.
void dump_final_system(const Scenario& sc, const RunArtifacts& arts, const std::string& out_dir) {
    for (const auto& lvl : arts.levels) {
        const FrozenState frozen{lvl.solve.u, lvl.solve.f_inf + 1.0};
        const GridFunction f = GridFunction::sample(lvl.grid, sc.spec.f_data);
        const SparseSystem sys = assemble(sc.spec, lvl.grid, frozen, f, sc.scheme);
        char base[96];
        std::snprintf(base, sizeof base, "%s_%dx%d", arts.name.c_str(), lvl.grid.nx, lvl.grid.ny);
        const fs::path dir(out_dir);
        write_matrix_market(sys, (dir / (std::string(base) + "_system.mtx")).string(),
                            (dir / (std::string(base) + "_rhs.mtx")).string());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver and estimate verifier for degenerate noncoercive elliptic problems"};
    app.require_subcommand(1);

    std::string config_path, out_dir, format = "csv";
    std::string grid_flag, mode_flag, u_exact_src, n_list_s, k_list_s, report_dir;
    bool dump_system = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "scenario config file")->required();
        cmd->add_option("--grid", grid_flag, "override the grid list with one NXxNY grid");
        cmd->add_option("--mode", mode_flag, "flux scheme override")
            ->check(CLI::IsMember({"upwind", "central"}));
        cmd->add_option("--out", out_dir, "artifact directory (default out/<name>)");
        cmd->add_option("--format", format, "report file format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* cmd_solve = app.add_subcommand("solve", "solve each level and run every check");
    add_common(cmd_solve);
    cmd_solve->add_flag("--dump-system", dump_system,
                        "write matrix and rhs at the converged state in Matrix Market form");

    CLI::App* cmd_sequence = app.add_subcommand("sequence", "data truncation sweep");
    add_common(cmd_sequence);
    cmd_sequence->add_option("--n-list", n_list_s, "comma-separated truncation heights");

    CLI::App* cmd_verify = app.add_subcommand("verify", "solve and verify custom levels");
    add_common(cmd_verify);
    cmd_verify->add_option("--k-list", k_list_s, "comma-separated truncation levels");

    CLI::App* cmd_mms = app.add_subcommand("mms", "manufactured-solution order study");
    add_common(cmd_mms);
    cmd_mms->add_option("--u-exact", u_exact_src, "manufactured solution, expression in x,y");

    CLI::App* cmd_report = app.add_subcommand("report", "print the summary of a finished run");
    cmd_report->add_option("dir", report_dir, "artifact directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_report->parsed()) return print_summary(report_dir);

        Scenario sc = load_scenario_file(config_path);
        if (!grid_flag.empty()) {
            sc.grids = {parse_grid_flag(grid_flag)};
            sc.echo.erase("grid_ladder");
            sc.echo["grid"] = {{"nx", sc.grids[0].first}, {"ny", sc.grids[0].second}};
        }
        if (!mode_flag.empty()) {
            sc.scheme = mode_flag == "central" ? FluxScheme::central : FluxScheme::upwind;
            sc.solver.scheme = sc.scheme;
            sc.echo["scheme"] = mode_flag;
        }
        if (out_dir.empty()) out_dir = "out/" + sc.name;

        if (cmd_mms->parsed()) {
            if (!u_exact_src.empty()) {
                Expr ue = Expr::parse(u_exact_src);
                for (const auto& v : ue.variables())
                    if (v != "x" && v != "y")
                        throw ConfigParseError("--u-exact must not depend on '" + v + "'");
                sc.u_exact = ue;
                sc.echo["u_exact"] = u_exact_src;
            }
            const ConvergenceStudy study = mms_study(sc);

            std::string csv = "instance,h,error_l2,pair_order,lsq_order\n";
            for (std::size_t i = 0; i < study.h.size(); ++i) {
                char row[160];
                if (i == 0)
                    std::snprintf(row, sizeof row, "%s,%.17g,%.17g,,%.17g\n", sc.name.c_str(),
                                  study.h[i], study.error[i], study.lsq_order);
                else
                    std::snprintf(row, sizeof row, "%s,%.17g,%.17g,%.17g,%.17g\n", sc.name.c_str(),
                                  study.h[i], study.error[i], study.pair_orders[i - 1],
                                  study.lsq_order);
                csv += row;
            }
            fs::create_directories(out_dir);
            std::ofstream(fs::path(out_dir) / (sc.name + "_mms.csv")) << csv;

            std::printf("%-12s %-14s %s\n", "h", "error_l2", "pair_order");
            for (std::size_t i = 0; i < study.h.size(); ++i) {
                if (i == 0)
                    std::printf("%-12.6g %-14.6g %s\n", study.h[i], study.error[i], "-");
                else
                    std::printf("%-12.6g %-14.6g %.3f\n", study.h[i], study.error[i],
                                study.pair_orders[i - 1]);
            }
            std::printf("least-squares order: %.3f\n", study.lsq_order);
            return 0;
        }

        if (cmd_sequence->parsed()) {
            if (!n_list_s.empty()) {
                sc.n_list.clear();
                for (double n : parse_list(n_list_s, "--n-list")) {
                    if (n < 1.0 || n != double(int(n)))
                        throw ConfigParseError("--n-list entries must be integers >= 1");
                    sc.n_list.push_back(int(n));
                }
                sc.echo["n_list"] = sc.n_list;
            }
            if (sc.n_list.empty())
                throw ConfigParseError("sequence needs --n-list or n_list in the config");
            sc.grids = {sc.grids.back()};
            sc.echo.erase("grid_ladder");
            sc.echo["grid"] = {{"nx", sc.grids[0].first}, {"ny", sc.grids[0].second}};
        }
        if (cmd_verify->parsed() && !k_list_s.empty()) {
            sc.k_list = parse_list(k_list_s, "--k-list");
            for (double k : sc.k_list)
                if (k < 0.0) throw ConfigParseError("--k-list entries must be >= 0");
            sc.echo["k_list"] = sc.k_list;
        }

        const RunArtifacts arts = run_scenario(sc);
        write_artifacts(arts, sc.echo, out_dir, format);
        if (dump_system) dump_final_system(sc, arts, out_dir);
        const int rc = print_summary(out_dir);
        std::cout << "artifacts: " << out_dir << "\n";
        return rc;
    } catch (const ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const AssumptionViolation& e) {
        std::cerr << "assumption violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
