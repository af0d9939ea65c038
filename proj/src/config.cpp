#include "dgel/config.hpp"

#include <fstream>
#include <set>

#include "dgel/errors.hpp"

namespace dgel {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigParseError("unknown key '" + it.key() + "' in " + where);
}

double get_number(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigParseError("missing required field '" + key + "'");
    if (!j.at(key).is_number()) throw ConfigParseError("'" + key + "' must be a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw ConfigParseError("'" + key + "' must be an integer");
    return j.at(key).get<int>();
}

// Parses an expression field and restricts its free variables.
Expr get_expr(const json& j, const std::string& key, const std::set<std::string>& vars) {
    if (!j.contains(key)) throw ConfigParseError("missing required field '" + key + "'");
    if (!j.at(key).is_string())
        throw ConfigParseError("'" + key + "' must be an expression string");
    Expr e = Expr::parse(j.at(key).get<std::string>());
    for (const auto& v : e.variables())
        if (!vars.count(v))
            throw ConfigParseError("expression '" + key + "' must not depend on '" + v + "'");
    return e;
}

std::pair<int, int> parse_grid(const json& g, const std::string& where) {
    check_keys(g, {"nx", "ny"}, where);
    const int nx = get_int(g, "nx"), ny = get_int(g, "ny");
    if (nx < 1 || ny < 1) throw ConfigParseError(where + ": nx and ny must be >= 1");
    return {nx, ny};
}

} // namespace

Scenario load_scenario(const nlohmann::json& config) {
    if (!config.is_object()) throw ConfigParseError("config root must be a JSON object");
    check_keys(config,
               {"name", "domain", "grid", "grid_ladder", "alpha", "beta", "B", "theta", "a", "b",
                "f", "phi", "phi_growth_C", "mode", "scheme", "k_list", "n_list", "u_exact",
                "solver"},
               "config");

    Scenario sc;
    if (!config.contains("name") || !config.at("name").is_string())
        throw ConfigParseError("missing required field 'name'");
    sc.name = config.at("name").get<std::string>();

    ProblemSpec raw;
    if (config.contains("domain")) {
        const json& d = config.at("domain");
        check_keys(d, {"lx", "ly"}, "domain");
        raw.lx = get_number(d, "lx");
        raw.ly = get_number(d, "ly");
        if (!(raw.lx > 0.0) || !(raw.ly > 0.0))
            throw ConfigParseError("domain: lx and ly must be > 0");
    }

    if (config.contains("grid") == config.contains("grid_ladder"))
        throw ConfigParseError("config needs exactly one of 'grid' or 'grid_ladder'");
    if (config.contains("grid")) {
        sc.grids.push_back(parse_grid(config.at("grid"), "grid"));
    } else {
        const json& ladder = config.at("grid_ladder");
        if (!ladder.is_array() || ladder.empty())
            throw ConfigParseError("'grid_ladder' must be a nonempty array");
        for (const auto& g : ladder) sc.grids.push_back(parse_grid(g, "grid_ladder entry"));
    }

    raw.alpha = get_number(config, "alpha");
    raw.beta = get_number(config, "beta");
    raw.B_bound = get_number(config, "B");
    raw.theta = config.contains("theta") ? get_number(config, "theta") : 2.0;

    raw.a_expr = get_expr(config, "a", {"x", "y"});
    raw.b_expr = get_expr(config, "b", {"x", "y"});
    raw.f_expr = get_expr(config, "f", {"x", "y"});
    raw.a_field = [e = *raw.a_expr](double x, double y) { return e.eval(x, y); };
    raw.b_field = [e = *raw.b_expr](double x, double y) { return e.eval(x, y); };
    raw.f_data = [e = *raw.f_expr](double x, double y) { return e.eval(x, y); };

    if (config.contains("phi")) {
        const json& p = config.at("phi");
        if (!p.is_array() || p.size() != 2)
            throw ConfigParseError("'phi' must be an array of two expression strings");
        json comps = {{"phi_x", p.at(0)}, {"phi_y", p.at(1)}};
        raw.phi_x_expr = get_expr(comps, "phi_x", {"t"});
        raw.phi_y_expr = get_expr(comps, "phi_y", {"t"});
        raw.phi = [px = *raw.phi_x_expr, py = *raw.phi_y_expr](double t) {
            return std::array<double, 2>{px.eval(0.0, 0.0, t), py.eval(0.0, 0.0, t)};
        };
    }
    if (config.contains("phi_growth_C")) {
        if (!raw.phi) throw ConfigParseError("'phi_growth_C' given without 'phi'");
        raw.phi_growth_C = get_number(config, "phi_growth_C");
        if (!(*raw.phi_growth_C > 0.0)) throw ConfigParseError("'phi_growth_C' must be > 0");
    }

    if (config.contains("mode")) {
        if (!config.at("mode").is_string())
            throw ConfigParseError("'mode' must be \"distributional\" or \"entropy\"");
        const std::string m = config.at("mode").get<std::string>();
        if (m == "distributional")
            sc.mode = FormulationMode::distributional;
        else if (m == "entropy")
            sc.mode = FormulationMode::entropy;
        else
            throw ConfigParseError("'mode' must be \"distributional\" or \"entropy\"");
    }
    if (sc.mode == FormulationMode::distributional && raw.phi && !raw.phi_growth_C)
        throw ConfigParseError("distributional mode with a flux requires 'phi_growth_C'");

    if (config.contains("scheme")) {
        if (!config.at("scheme").is_string())
            throw ConfigParseError("'scheme' must be \"upwind\" or \"central\"");
        const std::string s = config.at("scheme").get<std::string>();
        if (s == "upwind")
            sc.scheme = FluxScheme::upwind;
        else if (s == "central")
            sc.scheme = FluxScheme::central;
        else
            throw ConfigParseError("'scheme' must be \"upwind\" or \"central\"");
    }

    sc.k_list = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
    if (config.contains("k_list")) {
        if (!config.at("k_list").is_array())
            throw ConfigParseError("'k_list' must be an array of numbers");
        sc.k_list.clear();
        for (const auto& k : config.at("k_list")) {
            if (!k.is_number() || k.get<double>() < 0.0)
                throw ConfigParseError("'k_list' entries must be numbers >= 0");
            sc.k_list.push_back(k.get<double>());
        }
    }
    if (config.contains("n_list")) {
        if (!config.at("n_list").is_array())
            throw ConfigParseError("'n_list' must be an array of integers");
        for (const auto& n : config.at("n_list")) {
            if (!n.is_number_integer() || n.get<int>() < 1)
                throw ConfigParseError("'n_list' entries must be integers >= 1");
            sc.n_list.push_back(n.get<int>());
        }
    }

    if (config.contains("u_exact")) sc.u_exact = get_expr(config, "u_exact", {"x", "y"});

    if (config.contains("solver")) {
        const json& s = config.at("solver");
        check_keys(s, {"picard_tol", "linear_tol", "picard_max_iter", "linear_max_iter", "damping"},
                   "solver");
        if (s.contains("picard_tol")) sc.solver.picard_tol = get_number(s, "picard_tol");
        if (s.contains("linear_tol")) sc.solver.linear_tol = get_number(s, "linear_tol");
        if (s.contains("picard_max_iter")) sc.solver.picard_max_iter = get_int(s, "picard_max_iter");
        if (s.contains("linear_max_iter")) sc.solver.linear_max_iter = get_int(s, "linear_max_iter");
        if (s.contains("damping")) sc.solver.damping = get_number(s, "damping");
        if (!(sc.solver.picard_tol > 0.0) || !(sc.solver.linear_tol > 0.0))
            throw ConfigParseError("solver tolerances must be > 0");
        if (sc.solver.picard_max_iter < 1)
            throw ConfigParseError("solver: picard_max_iter must be >= 1");
        if (!(sc.solver.damping > 0.0) || sc.solver.damping > 1.0)
            throw ConfigParseError("solver: damping must lie in (0, 1]");
    }
    sc.solver.scheme = sc.scheme;

    sc.spec = ProblemSpec::create(std::move(raw));

    // Normalized echo: the input with every default made explicit, so a rerun
    // from the echo reproduces this scenario byte for byte.
    json echo = config;
    echo["domain"] = {{"lx", sc.spec.lx}, {"ly", sc.spec.ly}};
    echo["theta"] = sc.spec.theta;
    echo["mode"] = sc.mode == FormulationMode::distributional ? "distributional" : "entropy";
    echo["scheme"] = sc.scheme == FluxScheme::upwind ? "upwind" : "central";
    echo["k_list"] = sc.k_list;
    echo["solver"] = {{"picard_tol", sc.solver.picard_tol},
                      {"linear_tol", sc.solver.linear_tol},
                      {"picard_max_iter", sc.solver.picard_max_iter},
                      {"linear_max_iter", sc.solver.linear_max_iter},
                      {"damping", sc.solver.damping}};
    sc.echo = std::move(echo);
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigParseError(path + ": " + e.what());
    }
    return load_scenario(j);
}

} // namespace dgel
