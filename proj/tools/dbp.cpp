// Command-line front end: every run is fully determined by its flags, and
// reports echo the configuration for provenance.
//
// Exit codes: 0 success, 1 identity/tolerance failure, 2 usage error.

#include "dbp/analysis.hpp"
#include "dbp/continuum.hpp"
#include "dbp/dbp_enumerate.hpp"
#include "dbp/forest.hpp"
#include "dbp/gas.hpp"
#include "dbp/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json series_json(const dbp::Series& s, int from = 0) {
    json arr = json::array();
    for (int n = from; n <= s.order(); ++n)
        arr.push_back({{"n", n}, {"value", dbp::to_fraction_string(s[n])}});
    return arr;
}

struct Output {
    std::string format = "json"; // json | csv
    std::string path;            // empty = stdout

    void write(const json& report, const std::string& csv) const {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw CLI::ValidationError("--output", "cannot open " + path);
            os = &file;
        }
        if (format == "csv")
            *os << csv;
        else
            *os << report.dump(2) << "\n";
    }
};

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--output", out.path, "Write the report to a file instead of stdout");
}

dbp::LatticeModel resolve_lattice(const std::string& model, const std::string& neighbors_json,
                                  int dimension) {
    if (neighbors_json.empty()) return dbp::LatticeModel::preset(model);
    auto spec = json::parse(neighbors_json);
    std::vector<dbp::Offset> offs;
    for (const auto& v : spec) {
        if (!v.is_array() || v.size() != static_cast<size_t>(dimension))
            throw CLI::ValidationError("--neighbors", "each offset needs " +
                                                          std::to_string(dimension) +
                                                          " integer coordinates");
        offs.push_back({v[0].get<int>(), dimension == 2 ? v[1].get<int>() : 0});
    }
    return dbp::LatticeModel::custom(dimension, std::move(offs), model.empty() ? "custom" : model);
}

int run_enumerate(const std::string& model_name, const std::string& neighbors, int dimension,
                  int order, bool force, bool unweighted, const Output& out) {
    dbp::LatticeModel model = resolve_lattice(model_name, neighbors, dimension);
    if (force && order > model.default_budget())
        std::cerr << "warning: order " << order << " exceeds the default budget of "
                  << model.default_budget() << " for " << model.name
                  << "; this may take a very long time\n";
    dbp::DbpCounts counts = dbp::enumerate_dbp(model, order, force);

    json rep;
    rep["config"] = {{"subcommand", "enumerate"}, {"model", model.name},
                     {"order", order},           {"force", force},
                     {"unweighted", unweighted}, {"format", out.format}};
    rep["model"] = model.name;
    rep["order"] = order;
    json d = json::array();
    for (int n = 1; n <= order; ++n)
        d.push_back({{"n", n}, {"value", dbp::to_fraction_string(counts.weighted[static_cast<size_t>(n - 1)])}});
    rep["d"] = d;
    std::string csv = "n,value\n";
    for (int n = 1; n <= order; ++n)
        csv += std::to_string(n) + "," +
               dbp::to_fraction_string(counts.weighted[static_cast<size_t>(n - 1)]) + "\n";
    if (unweighted) {
        json u = json::array();
        for (int n = 1; n <= order; ++n)
            u.push_back({{"n", n}, {"value", counts.unweighted[static_cast<size_t>(n - 1)].str()}});
        rep["unweighted"] = u;
    }
    out.write(rep, csv);
    return 0;
}

int run_gas(const std::string& model_name, int order, const std::string& method, int width,
            int width_budget, const Output& out) {
    dbp::GasModel model = dbp::GasModel::preset(model_name);
    dbp::TorusOptions opt;
    opt.width_budget = width_budget;

    std::optional<dbp::Series> pressure;
    dbp::Series density(order);
    std::string used = method;
    if (method == "closed-form") {
        if (model.name == "dimer") {
            pressure = dbp::dimer_pressure_series(order);
            density = dbp::zddz(*pressure);
        } else if (model.name == "hard-rod") {
            pressure = dbp::hard_rod_pressure_series(order);
            density = dbp::hard_rod_density_series(order);
        } else {
            throw CLI::ValidationError("--method", "no closed form for " + model.name);
        }
    } else if (method == "tm") {
        int W = order + 2;
        dbp::Series Z = dbp::torus_partition_polynomial(model, W, order, opt);
        dbp::Series p = dbp::log(Z);
        dbp::Rational vol(dbp::torus_site_count(model, W));
        dbp::Series scaled(order);
        for (int n = 0; n <= order; ++n) scaled.set(n, p[n] / vol);
        pressure = scaled;
        density = dbp::zddz(scaled);
        used = "transfer-matrix(" + std::to_string(W) + ")";
    } else { // occupancy
        int W = width > 0 ? width : order + 2;
        density = dbp::density_via_occupancy(model, W, order, opt);
        used = "occupancy(" + std::to_string(W) + ")";
    }

    json rep;
    rep["config"] = {{"subcommand", "gas"},   {"model", model.name}, {"order", order},
                     {"method", method},      {"width", width},      {"width_budget", width_budget},
                     {"format", out.format}};
    rep["model"] = model.name;
    rep["method"] = used;
    if (pressure) rep["pressure"] = series_json(*pressure, 1);
    rep["density"] = series_json(density, 1);

    std::string csv = pressure ? "n,pressure,density\n" : "n,density\n";
    for (int n = 1; n <= order; ++n) {
        csv += std::to_string(n) + ",";
        if (pressure) csv += dbp::to_fraction_string((*pressure)[n]) + ",";
        csv += dbp::to_fraction_string(density[n]) + "\n";
    }
    out.write(rep, csv);
    return 0;
}

int run_continuum(const std::string& shape_name, int N, const std::string& method,
                  std::uint64_t samples, std::uint64_t seed, double tol, const Output& out) {
    dbp::Shape shape = dbp::shape_from_name(shape_name);
    dbp::Rational target(boost::multiprecision::pow(dbp::BigInt(N), static_cast<unsigned>(N)),
                         dbp::factorial(static_cast<unsigned>(N)));
    double estimate, spread;
    if (method == "quadrature") {
        auto q = dbp::coefficient_quadrature(shape, N, tol);
        estimate = q.value;
        spread = q.error_bound;
    } else {
        auto mc = dbp::coefficient_mc(shape, N, samples, seed);
        estimate = mc.estimate;
        spread = mc.stderror;
    }
    double gap = std::fabs(estimate - target.convert_to<double>());
    double sigmas = spread > 0 ? gap / spread : 0.0;

    json rep;
    rep["config"] = {{"subcommand", "continuum"}, {"shape", shape_name}, {"n", N},
                     {"method", method},          {"samples", samples},  {"seed", seed},
                     {"tol", tol},                {"format", out.format}};
    rep["shape"] = shape_name;
    rep["N"] = N;
    rep["estimate"] = estimate;
    rep["stderr"] = spread;
    rep["target"] = dbp::to_fraction_string(target);
    rep["sigmas"] = sigmas;

    std::string csv = "key,value\nshape," + shape_name + "\nN," + std::to_string(N) +
                      "\nestimate," + fmt17(estimate) + "\nstderr," + fmt17(spread) + "\ntarget," +
                      dbp::to_fraction_string(target) + "\nsigmas," + fmt17(sigmas) + "\n";
    out.write(rep, csv);
    // Quadrature must meet its tolerance against the known target.
    if (method == "quadrature" && gap > tol + spread) return 1;
    return 0;
}

int run_forest(int n, const std::string& family, std::uint64_t seed, double tol, bool force,
               const Output& out) {
    if (n > 3 && !force)
        throw CLI::ValidationError("--n", "n > 3 needs --force (slow: 125+ terms)");
    auto fam = family == "quadratic" ? dbp::TestFunction::Family::quadratic_exponential
                                     : dbp::TestFunction::Family::pure_exponential;
    dbp::TestFunction f = dbp::TestFunction::random(fam, n, seed);
    dbp::ForestCheckReport rep = dbp::check_formula(f, n, tol);
    auto forests = dbp::enumerate_forests(n);

    json j;
    j["config"] = {{"subcommand", "forest-check"}, {"n", n},     {"family", family},
                   {"seed", seed},                 {"tol", tol}, {"format", out.format}};
    j["n"] = n;
    j["family"] = family;
    json terms = json::array();
    for (size_t i = 0; i < forests.size(); ++i) {
        json roots = json::array();
        for (int r : forests[i].roots) roots.push_back(r + 1);
        json edges = json::array();
        for (auto [c, p] : forests[i].edges) edges.push_back({c + 1, p + 1});
        terms.push_back({{"roots", roots}, {"forest", edges}, {"value", rep.terms[i]}});
    }
    j["terms"] = terms;
    j["sum"] = rep.sum;
    j["residual"] = rep.residual;
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;

    std::string csv = "key,value\nn," + std::to_string(n) + "\nsum," + fmt17(rep.sum) +
                      "\nresidual," + fmt17(rep.residual) + "\npass," + (rep.pass ? "1" : "0") +
                      "\n";
    out.write(j, csv);
    return rep.pass ? 0 : 1;
}

int run_verify(const std::string& pair, int order, double tol, bool force, const Output& out) {
    dbp::IdentityReport rep = dbp::verify_identity(pair, order, tol, force);
    json j;
    j["config"] = {{"subcommand", "verify"}, {"pair", pair},       {"order", order},
                   {"tol", tol},             {"force", force},     {"format", out.format}};
    j["pair"] = rep.pair;
    j["order"] = rep.order;
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json row;
        row["n"] = r.n;
        if (r.exact) row["d"] = dbp::to_fraction_string(r.d);
        row["gas"] = dbp::to_fraction_string(r.gas);
        row["exact"] = r.exact;
        if (!r.exact) row["gap"] = r.gap;
        row["equal"] = r.equal;
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["pass"] = rep.pass;
    std::string csv = "n,d,gas,equal\n";
    for (const auto& r : rep.rows)
        csv += std::to_string(r.n) + "," + (r.exact ? dbp::to_fraction_string(r.d) : "") + "," +
               dbp::to_fraction_string(r.gas) + "," + (r.equal ? "1" : "0") + "\n";
    out.write(j, csv);
    return rep.pass ? 0 : 1;
}

int run_exponents(const std::string& source, int order, double mu_flag, bool force,
                  const Output& out) {
    std::vector<dbp::Rational> d;
    int dims;
    if (source == "line3") {
        dims = 2;
        for (int N = 1; N <= order; ++N) d.push_back(dbp::closed_form_line3(N));
    } else if (source == "dimer") {
        dims = 2;
        dbp::Series rho = dbp::zddz(dbp::dimer_pressure_series(order));
        for (int n = 1; n <= order; ++n) d.push_back(abs(rho[n]));
    } else if (source == "hard-hexagon") {
        dims = 3;
        dbp::TorusOptions opt;
        opt.width_budget = std::max(16, order + 2);
        if (order + 2 > 16 && !force)
            throw CLI::ValidationError("--order", "width " + std::to_string(order + 2) +
                                                      " beyond default budget; use --force");
        dbp::Series rho = dbp::density_series_tm(dbp::GasModel::preset("hard-hexagon"), order, opt);
        for (int n = 1; n <= order; ++n) d.push_back(abs(rho[n]));
    } else {
        throw CLI::ValidationError("--source", "expected line3, dimer or hard-hexagon");
    }

    dbp::GrowthEstimate growth = dbp::estimate_growth(d);
    std::optional<double> mu;
    if (mu_flag > 0) mu = mu_flag;
    dbp::ThetaEstimate theta = dbp::estimate_theta(d, mu);
    dbp::ExponentReport table = dbp::exponent_table(theta.theta_hat, dims);

    json j;
    j["config"] = {{"subcommand", "exponents"}, {"source", source}, {"order", order},
                   {"mu", mu_flag},             {"force", force},   {"format", out.format}};
    j["source"] = source;
    j["dims"] = dims;
    j["mu_hat"] = growth.mu_hat;
    j["mu_err"] = growth.err;
    j["theta_hat"] = theta.theta_hat;
    j["theta_method"] = theta.method;
    j["gamma"] = table.gamma;
    j["alpha"] = table.alpha;
    j["sigma"] = table.sigma;
    json tbl = json::array();
    for (size_t i = 0; i < d.size(); ++i) {
        json row;
        row["N"] = i + 1;
        row["d"] = dbp::to_fraction_string(d[i]);
        if (i >= 1) row["ratio"] = growth.ratios[i - 1];
        if (i >= 1 && i - 1 < theta.theta_seq.size()) row["theta_N"] = theta.theta_seq[i - 1];
        tbl.push_back(row);
    }
    j["table"] = tbl;

    std::string csv = "N,d_N,ratio,theta_N\n";
    for (size_t i = 0; i < d.size(); ++i) {
        csv += std::to_string(i + 1) + "," + dbp::to_fraction_string(d[i]) + ",";
        if (i >= 1) csv += fmt17(growth.ratios[i - 1]);
        csv += ",";
        if (i >= 1 && i - 1 < theta.theta_seq.size()) csv += fmt17(theta.theta_seq[i - 1]);
        csv += "\n";
    }
    out.write(j, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directed branched polymers, repulsive gases and dimensional reduction"};
    app.require_subcommand(1);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate weighted DBP on a lattice");
    std::string model = "line3", neighbors;
    int dimension = 2, order = 6;
    bool force = false, unweighted = false;
    Output out;
    enumerate->add_option("--model", model, "Lattice preset (line3, square5, tri7)");
    enumerate->add_option("--neighbors", neighbors, "Custom neighbor set as a JSON list of offsets");
    enumerate->add_option("--dimension", dimension, "Spatial dimension for --neighbors");
    enumerate->add_option("--order", order, "Maximum polymer size K")->required();
    enumerate->add_flag("--force", force, "Bypass the enumeration budget");
    enumerate->add_flag("--unweighted", unweighted, "Also report raw embedded-tree counts");
    add_output_flags(enumerate, out);

    // gas
    auto* gas = app.add_subcommand("gas", "Activity series of a repulsive gas");
    std::string gas_model = "dimer", gas_method = "tm";
    int gas_order = 6, gas_width = 0, width_budget = 16;
    Output gas_out;
    gas->add_option("--model", gas_model, "Gas preset (dimer, hard-square, hard-hexagon, hard-rod)");
    gas->add_option("--order", gas_order, "Series order K")->required();
    gas->add_option("--method", gas_method, "closed-form, tm or occupancy")
        ->check(CLI::IsMember({"closed-form", "tm", "occupancy"}));
    gas->add_option("--width", gas_width, "Torus width for the occupancy method");
    gas->add_option("--width-budget", width_budget, "Maximum torus width");
    add_output_flags(gas, gas_out);

    // continuum
    auto* cont = app.add_subcommand("continuum", "Continuum DBP coefficients d_N");
    std::string shape = "diamond", cont_method = "mc";
    int cont_n = 2;
    std::uint64_t samples = 1000000, seed = 1;
    double cont_tol = 1e-3;
    Output cont_out;
    cont->add_option("--shape", shape, "diamond or ball");
    cont->add_option("--n", cont_n, "Polymer size N")->required();
    cont->add_option("--method", cont_method, "quadrature or mc")
        ->check(CLI::IsMember({"quadrature", "mc"}));
    cont->add_option("--samples", samples, "Monte Carlo samples per tree");
    cont->add_option("--seed", seed, "Random seed");
    cont->add_option("--tol", cont_tol, "Quadrature tolerance");
    add_output_flags(cont, cont_out);

    // forest-check
    auto* forest = app.add_subcommand("forest-check", "Verify the forest-root formula");
    int forest_n = 2;
    std::string family = "pure";
    std::uint64_t forest_seed = 1;
    double forest_tol = 1e-6;
    bool forest_force = false;
    Output forest_out;
    forest->add_option("--n", forest_n, "Number of vertices")->required();
    forest->add_option("--family", family, "pure or quadratic")
        ->check(CLI::IsMember({"pure", "quadratic"}));
    forest->add_option("--seed", forest_seed, "Seed for the random rate vector");
    forest->add_option("--tol", forest_tol, "Relative tolerance");
    forest->add_flag("--force", forest_force, "Allow n = 4");
    add_output_flags(forest, forest_out);

    // verify
    auto* verify = app.add_subcommand("verify", "Check rho_HC(z) = -Z_DBP(-z) for a partner pair");
    std::string pair = "line3:dimer";
    int verify_order = 6;
    double verify_tol = 1e-3;
    bool verify_force = false;
    Output verify_out;
    verify->add_option("--pair", pair, "Partner pair, e.g. line3:dimer")->required();
    verify->add_option("--order", verify_order, "Common order K")->required();
    verify->add_option("--tol", verify_tol, "Tolerance for continuum pairs");
    verify->add_flag("--force", verify_force, "Bypass enumeration budgets");
    add_output_flags(verify, verify_out);

    // exponents
    auto* expo = app.add_subcommand("exponents", "Growth constant and exponent estimates");
    std::string source = "line3";
    int expo_order = 40;
    double mu_flag = 0;
    bool expo_force = false;
    Output expo_out;
    expo->add_option("--source", source, "Series source: line3, dimer or hard-hexagon");
    expo->add_option("--order", expo_order, "Number of terms");
    expo->add_option("--mu", mu_flag, "Known growth constant (enables the slope fit)");
    expo->add_flag("--force", expo_force, "Allow torus widths beyond the default budget");
    add_output_flags(expo, expo_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // --help is a success; anything else is a usage error
    }

    try {
        if (enumerate->parsed())
            return run_enumerate(model, neighbors, dimension, order, force, unweighted, out);
        if (gas->parsed())
            return run_gas(gas_model, gas_order, gas_method, gas_width, width_budget, gas_out);
        if (cont->parsed())
            return run_continuum(shape, cont_n, cont_method, samples, seed, cont_tol, cont_out);
        if (forest->parsed())
            return run_forest(forest_n, family, forest_seed, forest_tol, forest_force, forest_out);
        if (verify->parsed())
            return run_verify(pair, verify_order, verify_tol, verify_force, verify_out);
        if (expo->parsed())
            return run_exponents(source, expo_order, mu_flag, expo_force, expo_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
