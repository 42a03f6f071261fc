// ulbkit command-line front end. Reports are JSON (schema_version 1) unless
// a sweep asks for CSV; every report echoes its parameters and the version.

#include "ulbkit/ulbkit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;
using namespace ulbkit;

constexpr int kSchemaVersion = 1;

struct Args {
    // space
    std::string space = "sphere";
    int n = 3;
    int q = 2;
    int w = 1;
    int m = 2;
    // potential
    std::string potential = "riesz";
    double p = 1.0;
    double c = 1.0;
    int pj = 1;
    std::string coeffs;
    // common
    std::string format = "json";
    std::string output;
    std::string convention = "sum";
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    std::uint64_t seed = 1;
    // command specific
    double M = 0.0;
    std::string M_range;
    int tau = 1;
    double s = 0.0;
    int j = 0;
    int jmin = 0;
    int jmax = 10;
    bool odd_branch = false;
    std::string poly;
    std::string direction = "lower";
    std::string interval;
    std::string ip_list;
    bool hi_open = false;
    std::string code_path;
    std::string named;
    int tau_max = 20;
    int restarts = 20;
    int max_iter = 20000;
    bool no_reduce = false;
    std::string family = "sphere";
    double delta = 0.0;
    std::optional<double> rho;
    std::string n_range = "8:64:8";
    std::string mode = "real";
};

// ---------------------------------------------------------------- parsing

std::vector<double> parse_doubles(const std::string& s, const char* what) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParameterError(std::string(what) + ": cannot parse '" + item + "' as a number");
        }
    }
    return v;
}

/// "a:b[:step]" or "a,b,c".
std::vector<double> parse_range(const std::string& s, const char* what) {
    if (s.find(':') == std::string::npos) return parse_doubles(s, what);
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_doubles(item, what).at(0));
    if (parts.size() < 2 || parts.size() > 3) throw ParameterError(std::string(what) + ": expected a:b or a:b:step");
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    if (!(step > 0.0) || parts[1] < parts[0]) throw ParameterError(std::string(what) + ": empty range");
    std::vector<double> v;
    for (double x = parts[0]; x <= parts[1] + 1e-9 * step; x += step) v.push_back(x);
    return v;
}

SpaceDescriptor make_space_from(const Args& a) {
    if (a.space == "sphere") return sphere(a.n);
    if (a.space == "hamming") return hamming(a.n, a.q);
    if (a.space == "johnson") return johnson(a.n, a.w);
    if (a.space == "projective") return projective(a.n, a.m);
    throw ParameterError("unknown space '" + a.space + "'");
}

Potential make_potential(const Args& a) {
    PotentialParams pp;
    pp.p = a.p;
    pp.c = a.c;
    pp.j = a.pj;
    pp.coeffs = parse_doubles(a.coeffs, "--coeffs");
    return builtin(a.potential, pp);
}

// --------------------------------------------------------------- reporting

Json space_json(const SpaceDescriptor& s) {
    Json j;
    j["family"] = family_name(s.family());
    j["n"] = s.n();
    switch (s.family()) {
        case Family::Hamming: j["q"] = s.params().q; break;
        case Family::Johnson: j["w"] = s.params().w; break;
        case Family::Projective: j["m"] = s.params().m; break;
        case Family::Sphere: break;
    }
    j["name"] = s.name();
    return j;
}

Json potential_json(const Args& a) {
    Json j;
    j["name"] = a.potential;
    if (a.potential == "riesz") j["p"] = a.p;
    if (a.potential == "gaussian") j["c"] = a.c;
    if (a.potential == "monomial") j["j"] = a.pj;
    if (a.potential == "series" || a.potential == "custom-series") j["coeffs"] = parse_doubles(a.coeffs, "--coeffs");
    return j;
}

Json tolerances_json(const Args& a) { return Json{{"abs_tol", a.abs_tol}, {"rel_tol", a.rel_tol}}; }

Json poly_json(const Polynomial& f) {
    return Json(std::vector<double>(f.coefficients().begin(), f.coefficients().end()));
}

Json rule_json(const QuadratureRule& r) {
    Json j;
    j["M"] = r.M;
    j["tau"] = r.tau();
    j["k"] = r.k();
    j["epsilon"] = r.epsilon();
    j["s"] = r.s;
    j["nodes"] = r.nodes;
    j["weights"] = r.weights;
    j["odd_branch"] = r.odd_branch;
    j["power_sum_residuals"] = r.power_sum_residuals;
    return j;
}

Json checks_json(const CertificateChecks& c) {
    Json j;
    j["below_h"] = c.below_h;
    j["f_geq"] = c.f_geq;
    j["min_q_coefficient"] = c.min_q_coefficient;
    j["f0"] = c.f0;
    j["max_excess"] = c.max_excess;
    j["worst_point"] = c.worst_point ? Json(*c.worst_point) : Json(nullptr);
    j["grid_size"] = c.grid_size;
    return j;
}

bool close(const Args& a, double x, double y) {
    return std::abs(x - y) <= a.abs_tol + a.rel_tol * std::max(std::abs(x), std::abs(y));
}

Json ulb_json(const Args& a, const SpaceDescriptor& space, const UlbReport& r) {
    Json j;
    j["M"] = r.M;
    j["convention"] = convention_name(r.convention);
    j["value"] = r.value();
    j["value_sum"] = r.value_sum;
    j["value_mean"] = r.value_mean;
    j["certificate_value_sum"] = r.certificate_value_sum;
    j["certificate_agrees"] = close(a, r.certificate_value_sum, r.value_sum);
    j["rule"] = rule_json(r.rule);
    j["certificate"] = Json{{"monomial", poly_json(r.certificate)}, {"q_basis", expand_in_q(space, r.certificate).coeffs}};
    j["checks"] = checks_json(r.checks);
    if (r.improvement) {
        const Improvement& imp = *r.improvement;
        j["improvement"] = Json{{"j", imp.j},
                                {"eta", imp.eta},
                                {"p_j", imp.p_j},
                                {"base_value_sum", imp.base_value_sum},
                                {"predicted_gain", imp.predicted_gain},
                                {"gain", r.value_sum - imp.base_value_sum}};
    }
    return j;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << " = " << j.dump() << "\n";
    }
}

class Sink {
public:
    explicit Sink(const Args& a) : args_(a) {}

    void emit(const std::string& command, Json params, Json result, const std::vector<std::string>& csv_header = {},
              const std::vector<std::vector<std::string>>& csv_rows = {}) {
        std::ostringstream os;
        if (args_.format == "csv") {
            if (csv_header.empty()) throw ParameterError("--format csv is only available for sweep outputs");
            for (std::size_t i = 0; i < csv_header.size(); ++i) os << (i ? "," : "") << csv_header[i];
            os << "\n";
            for (const auto& row : csv_rows) {
                for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
                os << "\n";
            }
        } else {
            Json j;
            j["schema_version"] = kSchemaVersion;
            j["version"] = version();
            j["command"] = command;
            j["parameters"] = std::move(params);
            j["result"] = std::move(result);
            if (args_.format == "human")
                flatten(j, "", os);
            else
                os << j.dump(2) << "\n";
        }
        write(os.str());
    }

private:
    void write(const std::string& text) {
        if (args_.output.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(args_.output);
        if (!f) throw ParameterError("cannot open output file '" + args_.output + "'");
        f << text;
    }
    const Args& args_;
};

Json base_params(const Args& a, bool with_space = true) {
    Json p;
    if (with_space) p["space"] = space_json(make_space_from(a));
    p["tolerances"] = tolerances_json(a);
    return p;
}

// ----------------------------------------------------------------- commands

void cmd_ulb(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Potential h = make_potential(a);
    EnergyConvention conv = parse_convention(a.convention);
    Json params = base_params(a);
    params["potential"] = potential_json(a);
    params["convention"] = a.convention;
    params["odd_branch"] = a.odd_branch;
    auto one = [&](double M) { return a.odd_branch ? ulb_odd_branch(space, M, h, conv) : ulb(space, M, h, conv); };
    Sink sink(a);
    if (a.M_range.empty()) {
        if (a.format == "csv") throw ParameterError("--format csv needs --M-range");
        params["M"] = a.M;
        sink.emit("ulb", params, ulb_json(a, space, one(a.M)));
        return;
    }
    std::vector<double> Ms = parse_range(a.M_range, "--M-range");
    params["M_range"] = Ms;
    std::vector<UlbReport> reports = parallel_map(Ms, one);
    Json rows = Json::array();
    std::vector<std::vector<std::string>> csv;
    for (const UlbReport& r : reports) {
        rows.push_back(ulb_json(a, space, r));
        csv.push_back({fmt(r.M), std::to_string(r.rule.tau()), fmt(r.rule.s), fmt(r.value_sum), fmt(r.value_mean),
                       fmt(r.certificate_value_sum), r.checks.below_h ? "true" : "false", r.checks.f_geq ? "true" : "false"});
    }
    sink.emit("ulb", params, Json{{"sweep", rows}},
              {"M", "tau", "s", "value_sum", "value_mean", "certificate_value_sum", "below_h", "f_geq"}, csv);
}

void cmd_quadrature(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Json params = base_params(a);
    params["M"] = a.M;
    params["odd_branch"] = a.odd_branch;
    QuadratureRule r = a.odd_branch ? odd_branch_rule(space, a.M) : quadrature_rule(space, a.M);
    Json res = rule_json(r);
    res["lev_polynomial"] = poly_json(lev_polynomial(space, r));
    Sink(a).emit("quadrature", params, res);
}

void cmd_lev_bound(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Json params = base_params(a);
    params["tau"] = a.tau;
    params["s"] = a.s;
    auto [lo, hi] = lev_interval(space, a.tau);
    Json res;
    res["value"] = lev_bound(space, a.tau, a.s);
    res["interval"] = {lo, hi};
    res["design_bounds"] = {design_bound(space, a.tau), design_bound(space, a.tau + 1)};
    Sink(a).emit("lev-bound", params, res);
}

void cmd_design_bound(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Json params = base_params(a);
    params["tau"] = a.tau;
    Sink(a).emit("design-bound", params, Json{{"value", design_bound(space, a.tau)}});
}

void cmd_testfns(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Json params = base_params(a);
    params["M"] = a.M;
    params["jmin"] = a.jmin;
    params["jmax"] = a.jmax;
    TestFunctionReport r = test_functions(space, a.M, a.jmin, a.jmax);
    Json values = Json::array();
    std::vector<std::vector<std::string>> csv;
    bool vanish = true;
    for (auto [j, p] : r.values) {
        values.push_back(Json{{"j", j}, {"P_j", p}});
        csv.push_back({std::to_string(j), fmt(p)});
        if (j >= 1 && j <= r.level.tau && std::abs(p) > a.abs_tol + a.rel_tol) vanish = false;
    }
    Json res;
    res["M"] = r.M;
    res["tau"] = r.level.tau;
    res["s"] = r.s;
    res["values"] = values;
    res["vanish_up_to_tau"] = vanish;
    res["first_negative_j"] = r.first_negative_j ? Json(*r.first_negative_j) : Json(nullptr);
    Sink(a).emit("testfns", params, res, {"j", "P_j"}, csv);
}

void cmd_improve(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Potential h = make_potential(a);
    EnergyConvention conv = parse_convention(a.convention);
    Json params = base_params(a);
    params["potential"] = potential_json(a);
    params["convention"] = a.convention;
    params["M"] = a.M;
    params["j"] = a.j;
    UlbReport r = improve_with_qj(space, a.M, h, a.j, conv);
    Json res = ulb_json(a, space, r);
    res["improvement"]["gain_matches_prediction"] =
        close(a, res["improvement"]["gain"].get<double>(), r.improvement->predicted_gain);
    Sink(a).emit("improve", params, res);
}

Json design_result_json(const DesignBoundResult& b) {
    return Json{{"value", b.value}, {"f0", b.f0}, {"q_coefficients", b.q_coefficients}, {"points_checked", b.points_checked}};
}

void cmd_design_energy(const Args& a, bool separated) {
    SpaceDescriptor space = make_space_from(a);
    Potential h = make_potential(a);
    std::vector<double> coeffs = parse_doubles(a.poly, "--poly");
    if (coeffs.empty()) throw ParameterError("--poly must list at least one coefficient");
    Direction d = Direction::SeparatedUpper;
    if (!separated) {
        if (a.direction == "lower")
            d = Direction::Lower;
        else if (a.direction == "upper")
            d = Direction::Upper;
        else
            throw ParameterError("--direction must be 'lower' or 'upper'");
    }
    DesignEnergyQuery q{space, a.tau, a.M, std::nullopt, Polynomial(coeffs), h, d, a.s};
    Json params = base_params(a);
    params["potential"] = potential_json(a);
    params["M"] = a.M;
    params["poly"] = coeffs;
    if (separated) {
        params["s"] = a.s;
    } else {
        params["tau"] = a.tau;
        params["direction"] = a.direction;
        if (!a.interval.empty() && !a.ip_list.empty()) throw ParameterError("give either --I or --I-list");
        if (!a.interval.empty()) {
            std::vector<double> v = parse_range(a.interval, "--I");
            if (a.interval.find(':') == std::string::npos || v.size() < 2) throw ParameterError("--I expects lo:hi");
            q.I = InnerProductSet::interval(v.front(), v.back(), a.hi_open);
            params["I"] = Json{{"lo", v.front()}, {"hi", v.back()}, {"hi_open", a.hi_open}};
        } else if (!a.ip_list.empty()) {
            q.I = InnerProductSet::list(parse_doubles(a.ip_list, "--I-list"));
            params["I"] = Json{{"values", q.I->values}};
        }
    }
    Sink(a).emit(separated ? "separated-energy" : "design-energy", params, design_result_json(evaluate_query(q)));
}

Code load_code(const Args& a, const SpaceDescriptor& space) {
    if (!a.named.empty()) return named_config(space, a.named);
    if (a.code_path.empty()) throw ParameterError("give --code FILE or --named NAME");
    std::ifstream f(a.code_path);
    if (!f) throw ParameterError("cannot open code file '" + a.code_path + "'");
    Json j;
    try {
        j = Json::parse(f);
    } catch (const Json::exception& e) {
        throw ParameterError(std::string("code file is not valid JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw ParameterError("code file must hold a nonempty JSON array");
    Code c;
    try {
        if (space.finite())
            c.words = j.get<std::vector<std::vector<int>>>();
        else
            c.vectors = j.get<std::vector<std::vector<double>>>();
    } catch (const Json::exception&) {
        throw ParameterError(space.finite() ? "code words must be integer arrays" : "code points must be float arrays");
    }
    return c;
}

Json code_json(const Code& c) { return c.is_vector_code() ? Json(c.vectors) : Json(c.words); }

Json code_params(const Args& a) {
    Json p = base_params(a);
    if (!a.named.empty())
        p["named"] = a.named;
    else
        p["code"] = a.code_path;
    return p;
}

void cmd_oracle_energy(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Code c = load_code(a, space);
    Potential h = make_potential(a);
    Json params = code_params(a);
    params["potential"] = potential_json(a);
    params["convention"] = a.convention;
    Separation sep = separation(space, c);
    Json res{{"size", c.size()},
             {"energy", energy(space, c, h, parse_convention(a.convention))},
             {"separation", Json{{"s", sep.s}, {"ell", sep.ell}}}};
    Sink(a).emit("oracle energy", params, res);
}

void cmd_oracle_strength(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Code c = load_code(a, space);
    Json params = code_params(a);
    params["tau_max"] = a.tau_max;
    Sink(a).emit("oracle strength", params, Json{{"size", c.size()}, {"strength", design_strength(space, c, a.tau_max)}});
}

void cmd_oracle_minimize(const Args& a) {
    Potential h = make_potential(a);
    const int M = static_cast<int>(a.M);
    if (static_cast<double>(M) != a.M) throw ParameterError("--M must be an integer for minimize");
    Json params = base_params(a, false);
    params["n"] = a.n;
    params["M"] = M;
    params["potential"] = potential_json(a);
    params["restarts"] = a.restarts;
    params["seed"] = a.seed;
    params["max_iter"] = a.max_iter;
    MinimizeResult r = minimize_sphere(a.n, M, h, a.restarts, a.seed, a.max_iter);
    Json res{{"energy", r.energy},
             {"converged", r.converged},
             {"best_restart", r.best_restart},
             {"restart_energies", r.restart_energies},
             {"code", code_json(r.code)}};
    Sink(a).emit("oracle minimize", params, res);
}

void cmd_oracle_exhaustive(const Args& a) {
    Potential h = make_potential(a);
    const int M = static_cast<int>(a.M);
    if (static_cast<double>(M) != a.M) throw ParameterError("--M must be an integer for exhaustive");
    Json params = base_params(a, false);
    params["n"] = a.n;
    params["M"] = M;
    params["potential"] = potential_json(a);
    params["reduce"] = !a.no_reduce;
    ExhaustiveResult r = exhaustive_hamming(a.n, M, h, !a.no_reduce);
    Sink(a).emit("oracle exhaustive", params,
                 Json{{"energy", r.energy}, {"subsets", r.subsets}, {"code", code_json(r.code)}});
}

void cmd_oracle_named(const Args& a) {
    SpaceDescriptor space = make_space_from(a);
    Json params = base_params(a);
    if (a.named.empty()) {
        Sink(a).emit("oracle named", params, Json{{"available", named_config_names(space)}});
        return;
    }
    params["named"] = a.named;
    Code c = named_config(space, a.named);
    Sink(a).emit("oracle named", params, Json{{"size", c.size()}, {"code", code_json(c)}});
}

void cmd_asymptotics(const Args& a) {
    AsymptoticQuery q{Family::Sphere, a.tau, a.delta, a.rho, make_potential(a), {}, CardinalityMode::Real};
    if (a.family == "hamming")
        q.family = Family::Hamming;
    else if (a.family != "sphere")
        throw ParameterError("--family must be 'sphere' or 'hamming'");
    if (a.mode == "integer")
        q.mode = CardinalityMode::Integer;
    else if (a.mode != "real")
        throw ParameterError("--mode must be 'integer' or 'real'");
    for (double x : parse_range(a.n_range, "--n-range")) {
        if (x != std::floor(x) || x < 2) throw ParameterError("--n-range entries must be integers >= 2");
        q.n_range.push_back(static_cast<int>(x));
    }
    validate_query(q);
    Json params = base_params(a, false);
    params["family"] = a.family;
    params["tau"] = a.tau;
    params["delta"] = a.delta;
    params["rho"] = a.rho ? Json(*a.rho) : Json(nullptr);
    params["potential"] = potential_json(a);
    params["n_range"] = q.n_range;
    params["mode"] = a.mode;
    std::optional<double> limit;
    try {
        limit = limit_expression(q);
    } catch (const ParameterError&) {
        // eps = 1 without rho: the rows are still reported.
    }
    Json rows = Json::array();
    std::vector<std::vector<std::string>> csv;
    for (const AsymptoticRow& r : remainder_sequence(q)) {
        rows.push_back(Json{{"n", r.n},
                            {"M", r.M},
                            {"clamped", r.clamped},
                            {"s", r.s},
                            {"alpha0", r.alpha0},
                            {"alpha1", r.alpha1},
                            {"rho0_M", r.rho0_M},
                            {"remainder", r.remainder},
                            {"ratio1", r.ratio1},
                            {"ratio2", r.ratio2},
                            {"ok", r.ok},
                            {"note", r.note}});
        csv.push_back({std::to_string(r.n), fmt(r.M), r.clamped ? "true" : "false", fmt(r.s), fmt(r.alpha0), fmt(r.alpha1),
                       fmt(r.rho0_M), fmt(r.remainder), limit ? fmt(*limit) : "", fmt(r.ratio1), fmt(r.ratio2),
                       r.ok ? "true" : "false", "\"" + r.note + "\""});
    }
    Json res{{"limit", limit ? Json(*limit) : Json(nullptr)}, {"delta_k", q.delta_k()}, {"rows", rows}};
    Sink(a).emit("asymptotics", params, res,
                 {"n", "M", "clamped", "s", "alpha0", "alpha1", "rho0_M", "remainder", "limit", "ratio1", "ratio2", "ok",
                  "note"},
                 csv);
}

// Invariant suites in miniature; the full versions live in the test suite.
void cmd_selfcheck(const Args& a, int& exit_code) {
    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok, double worst) {
        checks.push_back(Json{{"name", name}, {"passed", ok}, {"worst", worst}});
        all = all && ok;
    };
    const std::vector<SpaceDescriptor> spaces{sphere(3), sphere(5), hamming(8), johnson(12, 4), projective(4, 2)};

    double worst = 0.0;
    for (const SpaceDescriptor& s : spaces)
        for (int tau = 1; tau <= 4; ++tau) {
            const double M = std::floor(0.5 * (design_bound(s, tau) + design_bound(s, tau + 1)));
            QuadratureRule r = quadrature_rule(s, M);
            for (int deg = 0; deg <= tau; ++deg) {
                std::vector<double> c(static_cast<std::size_t>(deg) + 1, 0.0);
                c.back() = 1.0;
                Polynomial f(c);
                double rhs = f(1.0) / M;
                for (std::size_t i = 0; i < r.nodes.size(); ++i) rhs += r.weights[i] * f(r.nodes[i]);
                worst = std::max(worst, std::abs(expand_in_q(s, f).coefficient(0) - rhs));
            }
        }
    record("quadrature_exactness", worst <= a.abs_tol, worst);

    worst = 0.0;
    for (const SpaceDescriptor& s : spaces)
        for (int tau = 1; tau <= 5; ++tau) {
            auto [lo, hi] = lev_interval(s, tau);
            worst = std::max(worst, std::abs(lev_bound(s, tau, lo) - design_bound(s, tau)));
            worst = std::max(worst, std::abs(lev_bound(s, tau, hi) - design_bound(s, tau + 1)));
        }
    record("endpoint_equalities", worst <= 1e-7, worst);

    worst = 0.0;
    for (const SpaceDescriptor& s : spaces)
        for (int tau = 1; tau <= 4; ++tau) {
            const double M = 0.5 * (design_bound(s, tau) + design_bound(s, tau + 1));
            for (auto [j, p] : test_functions(s, M, 1, tau).values) worst = std::max(worst, std::abs(p));
        }
    record("test_functions_vanish", worst <= 1e-8, worst);

    worst = 0.0;
    bool certs = true;
    for (int n = 3; n <= 6; ++n) {
        SpaceDescriptor s = sphere(n);
        for (const char* name : {"simplex", "cross_polytope"}) {
            Code c = named_config(s, name);
            UlbReport r = ulb(s, static_cast<double>(c.size()), riesz(1.0));
            const double e = energy(s, c, riesz(1.0));
            worst = std::max(worst, std::abs(r.value_sum - e) / e);
            certs = certs && r.checks.ok();
        }
    }
    record("sharp_configurations", worst <= 1e-8 && certs, worst);

    worst = 0.0;
    for (const SpaceDescriptor& s : spaces) {
        const int top = std::min(4, s.max_degree());
        for (int i = 1; i <= top; ++i)
            for (int j = i; j <= top; ++j)
                worst = std::max(worst, -expand_in_q(s, q_polynomial(s, i) * q_polynomial(s, j)).min_coefficient());
    }
    record("krein_spot_check", worst <= 1e-9, worst);

    worst = 0.0;
    for (const SpaceDescriptor& s : spaces) {
        const double M = std::floor(0.5 * (design_bound(s, 3) + design_bound(s, 4)));
        UlbReport r = ulb(s, M, gaussian(1.0));
        DesignEnergyQuery q{s, r.rule.tau(), M, std::nullopt, r.certificate, gaussian(1.0), Direction::Lower, 0.0};
        worst = std::max(worst, std::abs(design_lower_bound(q).value - r.value_sum) / r.value_sum);
    }
    record("design_lower_reproduces_ulb", worst <= 1e-9, worst);

    Json params = base_params(a, false);
    Sink(a).emit("selfcheck", params, Json{{"passed", all}, {"checks", checks}});
    exit_code = all ? 0 : 1;
}

// ------------------------------------------------------------------- errors

void emit_error(const std::string& kind, const std::string& message, Json extra = Json::object()) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["version"] = version();
    Json e{{"kind", kind}, {"message", message}};
    for (auto it = extra.begin(); it != extra.end(); ++it) e[it.key()] = it.value();
    j["error"] = e;
    std::cout << j.dump(2) << "\n";
    std::cerr << "ulbkit: " << message << "\n";
}

// ---------------------------------------------------------------- wiring

void add_space(CLI::App* c, Args& a) {
    c->add_option("--space", a.space, "sphere | hamming | johnson | projective")->capture_default_str();
    c->add_option("--n", a.n, "dimension / length / lines in FP^{n-1}")->capture_default_str();
    c->add_option("--q", a.q, "Hamming alphabet size")->capture_default_str();
    c->add_option("--w", a.w, "Johnson weight")->capture_default_str();
    c->add_option("--m", a.m, "projective field dimension (1, 2, 4, 8)")->capture_default_str();
}

void add_potential(CLI::App* c, Args& a) {
    c->add_option("--potential", a.potential, "riesz | gaussian | log | monomial | series | custom-series")
        ->capture_default_str();
    c->add_option("--p", a.p, "Riesz power")->capture_default_str();
    c->add_option("--c", a.c, "Gaussian rate")->capture_default_str();
    c->add_option("--degree", a.pj, "monomial degree")->capture_default_str();
    c->add_option("--coeffs", a.coeffs, "series coefficients a_0,a_1,... of sum a_j (1+t)^j");
}

void add_common(CLI::App* c, Args& a, bool sweep = false) {
    c->add_option("--format", a.format, sweep ? "json | csv | human" : "json | human")
        ->check(CLI::IsMember(sweep ? std::vector<std::string>{"json", "csv", "human"} : std::vector<std::string>{"json", "human"}))
        ->capture_default_str();
    c->add_option("--output", a.output, "write the report to this file");
    c->add_option("--abs-tol", a.abs_tol, "absolute tolerance of reported agreements")->capture_default_str();
    c->add_option("--rel-tol", a.rel_tol, "relative tolerance of reported agreements")->capture_default_str();
}

void add_convention(CLI::App* c, Args& a) {
    c->add_option("--convention", a.convention, "sum | mean")->check(CLI::IsMember({"sum", "mean"}))->capture_default_str();
}

int run(int argc, char** argv) {
    Args a;
    CLI::App app{"ulbkit: universal lower bounds for energy in polynomial metric spaces"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    auto* c_ulb = app.add_subcommand("ulb", "universal lower bound with its certificate");
    add_space(c_ulb, a);
    add_potential(c_ulb, a);
    add_common(c_ulb, a, true);
    add_convention(c_ulb, a);
    auto* m_opt = c_ulb->add_option("--M", a.M, "cardinality");
    c_ulb->add_option("--M-range", a.M_range, "sweep a:b[:step] or a,b,c")->excludes(m_opt);
    c_ulb->add_flag("--odd-branch", a.odd_branch, "use the odd level continued over the even interval");

    auto* c_quad = app.add_subcommand("quadrature", "1/M-quadrature rule");
    add_space(c_quad, a);
    add_common(c_quad, a);
    c_quad->add_option("--M", a.M, "cardinality")->required();
    c_quad->add_flag("--odd-branch", a.odd_branch, "odd-level continuation");

    auto* c_lev = app.add_subcommand("lev-bound", "Levenshtein bound L_tau(s)");
    add_space(c_lev, a);
    add_common(c_lev, a);
    c_lev->add_option("--tau", a.tau, "level")->required();
    c_lev->add_option("--s", a.s, "separation")->required();

    auto* c_des = app.add_subcommand("design-bound", "lower bound D(tau) on tau-designs");
    add_space(c_des, a);
    add_common(c_des, a);
    c_des->add_option("--tau", a.tau, "strength")->required();

    auto* c_tf = app.add_subcommand("testfns", "test functions P_j");
    add_space(c_tf, a);
    add_common(c_tf, a, true);
    c_tf->add_option("--M", a.M, "cardinality")->required();
    c_tf->add_option("--jmin", a.jmin, "first j")->capture_default_str();
    c_tf->add_option("--jmax", a.jmax, "last j")->capture_default_str();

    auto* c_imp = app.add_subcommand("improve", "ULB improved by a negative test function");
    add_space(c_imp, a);
    add_potential(c_imp, a);
    add_common(c_imp, a);
    add_convention(c_imp, a);
    c_imp->add_option("--M", a.M, "cardinality")->required();
    c_imp->add_option("--j", a.j, "index of the test function")->required();

    auto* c_de = app.add_subcommand("design-energy", "energy bounds for designs from a candidate polynomial");
    add_space(c_de, a);
    add_potential(c_de, a);
    add_common(c_de, a);
    c_de->add_option("--tau", a.tau, "design strength")->required();
    c_de->add_option("--M", a.M, "cardinality")->required();
    c_de->add_option("--poly", a.poly, "monomial coefficients c0,c1,...")->required();
    c_de->add_option("--direction", a.direction, "lower | upper")->capture_default_str();
    c_de->add_option("--I", a.interval, "admissible inner products lo:hi");
    c_de->add_option("--I-list", a.ip_list, "admissible inner products a,b,...");
    c_de->add_flag("--hi-open", a.hi_open, "exclude hi from --I");

    auto* c_se = app.add_subcommand("separated-energy", "upper bound for codes with inner products <= s");
    add_space(c_se, a);
    add_potential(c_se, a);
    add_common(c_se, a);
    c_se->add_option("--M", a.M, "cardinality")->required();
    c_se->add_option("--s", a.s, "largest inner product")->required();
    c_se->add_option("--poly", a.poly, "monomial coefficients c0,c1,...")->required();

    auto* c_or = app.add_subcommand("oracle", "independent energies, strengths and searches");
    c_or->require_subcommand(1);
    auto* o_en = c_or->add_subcommand("energy", "energy of a code");
    add_space(o_en, a);
    add_potential(o_en, a);
    add_common(o_en, a);
    add_convention(o_en, a);
    auto* o_st = c_or->add_subcommand("strength", "design strength of a code");
    add_space(o_st, a);
    add_common(o_st, a);
    o_st->add_option("--tau-max", a.tau_max, "largest strength tested")->capture_default_str();
    for (auto* o : {o_en, o_st}) {
        o->add_option("--code", a.code_path, "JSON file with the code");
        o->add_option("--named", a.named, "built-in configuration");
    }
    auto* o_min = c_or->add_subcommand("minimize", "best-of-restarts energy descent on S^{n-1}");
    add_potential(o_min, a);
    add_common(o_min, a);
    o_min->add_option("--n", a.n, "ambient dimension")->required();
    o_min->add_option("--M", a.M, "number of points")->required();
    o_min->add_option("--restarts", a.restarts, "random starts")->capture_default_str();
    o_min->add_option("--seed", a.seed, "seed of the first start")->capture_default_str();
    o_min->add_option("--max-iter", a.max_iter, "iterations per start")->capture_default_str();
    auto* o_ex = c_or->add_subcommand("exhaustive", "exact minimum over binary codes");
    add_potential(o_ex, a);
    add_common(o_ex, a);
    o_ex->add_option("--n", a.n, "word length")->required();
    o_ex->add_option("--M", a.M, "number of words")->required();
    o_ex->add_flag("--no-reduce", a.no_reduce, "disable symmetry reduction");
    auto* o_nm = c_or->add_subcommand("named", "built-in configurations");
    add_space(o_nm, a);
    add_common(o_nm, a);
    o_nm->add_option("--name", a.named, "configuration name; omit to list");

    auto* c_as = app.add_subcommand("asymptotics", "remainder sequence and ratios along n");
    add_potential(c_as, a);
    add_common(c_as, a, true);
    c_as->add_option("--family", a.family, "sphere | hamming")->capture_default_str();
    c_as->add_option("--tau", a.tau, "level")->required();
    c_as->add_option("--delta", a.delta, "delta >= 0")->capture_default_str();
    c_as->add_option("--rho", a.rho, "limit of rho_0 M_n (even tau)");
    c_as->add_option("--n-range", a.n_range, "a:b[:step] or list")->capture_default_str();
    c_as->add_option("--mode", a.mode, "integer | real cardinalities")->capture_default_str();

    auto* c_sc = app.add_subcommand("selfcheck", "run the invariant checks");
    add_common(c_sc, a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage_error", e.what());
        return 2;
    }

    int code = 0;
    try {
        if (c_ulb->parsed()) {
            if (a.M_range.empty() && c_ulb->count("--M") == 0) throw ParameterError("ulb needs --M or --M-range");
            cmd_ulb(a);
        } else if (c_quad->parsed()) cmd_quadrature(a);
        else if (c_lev->parsed()) cmd_lev_bound(a);
        else if (c_des->parsed()) cmd_design_bound(a);
        else if (c_tf->parsed()) cmd_testfns(a);
        else if (c_imp->parsed()) cmd_improve(a);
        else if (c_de->parsed()) cmd_design_energy(a, false);
        else if (c_se->parsed()) cmd_design_energy(a, true);
        else if (o_en->parsed()) cmd_oracle_energy(a);
        else if (o_st->parsed()) cmd_oracle_strength(a);
        else if (o_min->parsed()) cmd_oracle_minimize(a);
        else if (o_ex->parsed()) cmd_oracle_exhaustive(a);
        else if (o_nm->parsed()) cmd_oracle_named(a);
        else if (c_as->parsed()) cmd_asymptotics(a);
        else if (c_sc->parsed()) cmd_selfcheck(a, code);
    } catch (const ConditionViolation& e) {
        Json extra{{"condition", e.condition()}};
        if (e.index()) extra["index"] = *e.index();
        if (e.point()) extra["point"] = *e.point();
        emit_error(e.kind(), e.what(), extra);
        return 2;
    } catch (const Error& e) {
        emit_error(e.kind(), e.what());
        return e.is_validation_error() ? 2 : 1;
    } catch (const std::exception& e) {
        emit_error("internal_error", e.what());
        return 1;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
