#include "dgel/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dgel/errors.hpp"
#include "dgel/quadrature.hpp"

namespace fs = std::filesystem;

namespace dgel {

Expr manufactured_rhs(const ProblemSpec& spec, const Expr& u_exact) {
    if (!spec.a_expr || !spec.b_expr)
        throw ManufacturedUnsupported("manufactured rhs needs expression-backed coefficients");
    if (spec.has_flux() && (!spec.phi_x_expr || !spec.phi_y_expr))
        throw ManufacturedUnsupported("manufactured rhs needs expression-backed flux components");

    const Expr one = Expr::constant(1.0);
    const Expr denom = (one + *spec.b_expr * Expr::abs(u_exact)).pow(Expr::constant(spec.theta));
    const Expr c = *spec.a_expr / denom;
    const Expr qx = c * u_exact.derivative("x");
    const Expr qy = c * u_exact.derivative("y");
    Expr f = u_exact - qx.derivative("x") - qy.derivative("y");
    if (spec.has_flux()) {
        f = f + spec.phi_x_expr->substitute("t", u_exact).derivative("x");
        f = f + spec.phi_y_expr->substitute("t", u_exact).derivative("y");
    }
    return f;
}

RunArtifacts run_scenario(const Scenario& scenario) {
    RunArtifacts arts;
    arts.name = scenario.name;
    bool ok = true;

    GridFunction prev;
    for (const auto& [nx, ny] : scenario.grids) {
        const Grid g(nx, ny, scenario.spec.lx, scenario.spec.ly);
        const GridFunction f = GridFunction::sample(g, scenario.spec.f_data);

        // Coarser levels seed finer ones; the solve is a contraction to the
        // same fixed point either way, this only cuts iterations.
        std::optional<GridFunction> guess;
        if (prev.size() > 0) guess = prolongate(prev, g);
        SolveResult res =
            picard_solve(scenario.spec, g, f, scenario.solver, guess ? &*guess : nullptr);

        char inst[96];
        std::snprintf(inst, sizeof inst, "%s@%dx%d", scenario.name.c_str(), nx, ny);

        LevelArtifacts lvl;
        lvl.grid = g;
        lvl.estimates = verify_apriori(inst, res.u, f, scenario.spec, scenario.k_list);
        lvl.residuals = residual_report(inst, res.u, f, scenario.spec, scenario.scheme,
                                        scenario.mode, scenario.k_list);
        if (scenario.u_exact) {
            const Expr& ue = *scenario.u_exact;
            GridFunction diff =
                GridFunction::sample(g, [&](double x, double y) { return ue.eval(x, y); });
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = res.u[i] - diff[i];
            lvl.error_l2 = norm_l2(diff);
        }

        ok = ok && res.converged && lvl.estimates.all_pass() && lvl.residuals.all_pass();
        prev = res.u;
        lvl.solve = std::move(res);
        arts.levels.push_back(std::move(lvl));
    }

    if (!scenario.n_list.empty()) {
        const auto& [nx, ny] = scenario.grids.back();
        const Grid g(nx, ny, scenario.spec.lx, scenario.spec.ly);
        const std::vector<double> ns(scenario.n_list.begin(), scenario.n_list.end());
        arts.sequence = approximation_sequence(scenario.spec, g, ns, scenario.solver);
        for (const auto& e : arts.sequence.entries) ok = ok && e.solve.converged;
    }
    arts.ok = ok;
    return arts;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << content;
        if (!out) throw std::runtime_error("cannot write " + path.string());
    }
    fs::rename(tmp, path);
}

nlohmann::json solve_json(const LevelArtifacts& lvl) {
    nlohmann::json j = {{"grid", {{"nx", lvl.grid.nx}, {"ny", lvl.grid.ny}}},
                        {"converged", lvl.solve.converged},
                        {"iterations", lvl.solve.iterations},
                        {"final_residual", lvl.solve.final_residual},
                        {"effective_tol", lvl.solve.effective_tol},
                        {"f_inf", lvl.solve.f_inf},
                        {"u_inf", lvl.solve.u_inf},
                        {"linf_bound", lvl.solve.linf_bound_check},
                        {"final_damping", lvl.solve.final_damping}};
    if (!lvl.solve.failure_reason.empty()) j["failure_reason"] = lvl.solve.failure_reason;
    if (std::isfinite(lvl.error_l2)) j["error_l2"] = lvl.error_l2;
    return j;
}

std::string sequence_csv(const std::string& name, const SequenceResult& seq) {
    std::string out = "instance,n,converged,iterations,u_inf,f_delta_l2,u_delta_l2,grad_delta_l1\n";
    for (const auto& e : seq.entries) {
        out += name + "," + fmt(e.n) + "," + (e.solve.converged ? "1" : "0") + "," +
               std::to_string(e.solve.iterations) + "," + fmt(e.solve.u_inf) + "," +
               fmt(e.f_delta_l2) + "," + fmt(e.u_delta_l2) + "," + fmt(e.grad_delta_l1) + "\n";
    }
    return out;
}

nlohmann::json sequence_json(const std::string& name, const SequenceResult& seq) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : seq.entries) {
        rows.push_back({{"n", e.n},
                        {"converged", e.solve.converged},
                        {"iterations", e.solve.iterations},
                        {"u_inf", e.solve.u_inf},
                        {"f_delta_l2", e.f_delta_l2},
                        {"u_delta_l2", e.u_delta_l2},
                        {"grad_delta_l1", e.grad_delta_l1}});
    }
    return {{"instance", name}, {"entries", rows}};
}

} // namespace

void write_artifacts(const RunArtifacts& artifacts, const nlohmann::json& echo,
                     const std::string& out_dir, const std::string& format) {
    if (format != "csv" && format != "json")
        throw std::invalid_argument("write_artifacts: format must be \"csv\" or \"json\"");
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    if (!echo.is_null()) atomic_write(dir / "config.json", echo.dump(2) + "\n");

    std::string summary = "scenario " + artifacts.name + "\n";
    for (const auto& lvl : artifacts.levels) {
        char base[96];
        std::snprintf(base, sizeof base, "%s_%dx%d", artifacts.name.c_str(), lvl.grid.nx,
                      lvl.grid.ny);
        if (format == "csv") {
            atomic_write(dir / (std::string(base) + "_estimates.csv"), to_csv(lvl.estimates));
            atomic_write(dir / (std::string(base) + "_residuals.csv"), to_csv(lvl.residuals));
        } else {
            atomic_write(dir / (std::string(base) + "_estimates.json"),
                         to_json(lvl.estimates).dump(2) + "\n");
            atomic_write(dir / (std::string(base) + "_residuals.json"),
                         to_json(lvl.residuals).dump(2) + "\n");
        }
        atomic_write(dir / (std::string(base) + "_solve.json"), solve_json(lvl).dump(2) + "\n");

        char line[256];
        std::snprintf(line, sizeof line,
                      "level %dx%d: converged=%d iterations=%d residual=%.3e u_inf=%.6g "
                      "bound=%s estimates=%s residuals=%s",
                      lvl.grid.nx, lvl.grid.ny, lvl.solve.converged ? 1 : 0, lvl.solve.iterations,
                      lvl.solve.final_residual, lvl.solve.u_inf,
                      lvl.solve.linf_bound_check ? "ok" : "VIOLATED",
                      lvl.estimates.all_pass() ? "pass" : "FAIL",
                      lvl.residuals.all_pass() ? "pass" : "FAIL");
        summary += line;
        if (std::isfinite(lvl.error_l2)) {
            std::snprintf(line, sizeof line, " error_l2=%.6g", lvl.error_l2);
            summary += line;
        }
        summary += "\n";
    }

    if (!artifacts.sequence.entries.empty()) {
        if (format == "csv")
            atomic_write(dir / (artifacts.name + "_sequence.csv"),
                         sequence_csv(artifacts.name, artifacts.sequence));
        else
            atomic_write(dir / (artifacts.name + "_sequence.json"),
                         sequence_json(artifacts.name, artifacts.sequence).dump(2) + "\n");
        for (const auto& e : artifacts.sequence.entries) {
            char line[256];
            std::snprintf(line, sizeof line,
                          "sequence n=%g: converged=%d iterations=%d f_delta=%.6g u_delta=%.6g",
                          e.n, e.solve.converged ? 1 : 0, e.solve.iterations, e.f_delta_l2,
                          e.u_delta_l2);
            summary += line;
            summary += "\n";
        }
    }

    summary += artifacts.ok ? "result: PASS\n" : "result: FAIL\n";
    atomic_write(dir / "summary.txt", summary);
}

ConvergenceStudy convergence_study(const std::vector<double>& h,
                                   const std::vector<double>& errors) {
    if (h.size() != errors.size())
        throw DimensionMismatch("convergence study: h and error lists differ in length");
    if (h.size() < 3)
        throw InsufficientLevels("convergence study needs at least three levels");
    for (std::size_t i = 0; i < h.size(); ++i)
        if (!(h[i] > 0.0) || !(errors[i] > 0.0))
            throw std::invalid_argument("convergence study needs positive widths and errors");

    ConvergenceStudy study;
    study.h = h;
    study.error = errors;
    for (std::size_t i = 0; i + 1 < h.size(); ++i)
        study.pair_orders.push_back(std::log(errors[i] / errors[i + 1]) /
                                    std::log(h[i] / h[i + 1]));

    // Least-squares slope of log(error) against log(h).
    const std::size_t n = h.size();
    double mh = 0.0, me = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mh += std::log(h[i]);
        me += std::log(errors[i]);
    }
    mh /= double(n);
    me /= double(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (std::log(h[i]) - mh) * (std::log(errors[i]) - me);
        den += (std::log(h[i]) - mh) * (std::log(h[i]) - mh);
    }
    study.lsq_order = num / den;
    return study;
}

ConvergenceStudy mms_study(const Scenario& scenario) {
    if (!scenario.u_exact)
        throw std::invalid_argument("manufactured study needs 'u_exact' in the scenario");
    if (scenario.grids.size() < 3)
        throw InsufficientLevels("manufactured study needs a grid ladder of at least three levels");

    const Expr& ue = *scenario.u_exact;
    const Expr f_expr = manufactured_rhs(scenario.spec, ue);
    ProblemSpec spec = scenario.spec;
    spec.f_expr = f_expr;
    spec.f_data = [f_expr](double x, double y) { return f_expr.eval(x, y); };

    std::vector<double> hs, errs;
    GridFunction prev;
    for (const auto& [nx, ny] : scenario.grids) {
        const Grid g(nx, ny, spec.lx, spec.ly);
        const GridFunction f = GridFunction::sample(g, spec.f_data);
        std::optional<GridFunction> guess;
        if (prev.size() > 0) guess = prolongate(prev, g);
        SolveResult res = picard_solve(spec, g, f, scenario.solver, guess ? &*guess : nullptr);
        if (!res.converged) {
            char msg[128];
            std::snprintf(msg, sizeof msg, "manufactured ladder solve diverged at %dx%d: ", nx,
                          ny);
            throw std::runtime_error(msg + res.failure_reason);
        }
        GridFunction diff = GridFunction::sample(g, [&](double x, double y) { return ue.eval(x, y); });
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = res.u[i] - diff[i];
        hs.push_back(g.h());
        errs.push_back(norm_l2(diff));
        prev = std::move(res.u);
    }
    return convergence_study(hs, errs);
}

} // namespace dgel
