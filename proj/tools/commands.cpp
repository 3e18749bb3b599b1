#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "twobath/bath.hpp"
#include "twobath/covariance.hpp"
#include "twobath/dynamics_exact.hpp"
#include "twobath/dynamics_ww.hpp"
#include "twobath/oracle.hpp"
#include "twobath/wigner.hpp"

namespace twobath::cli {

using json = nlohmann::ordered_json;

std::vector<double> GridAxis::values() const
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
    v[n - 1] = max;
    return v;
}

namespace {

double parse_double(const std::string& what, const std::string& s)
{
    double x = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (ec != std::errc{} || ptr != end || !std::isfinite(x))
        throw ConfigError(what + ": not a finite number: '" + s + "'");
    return x;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

}  // namespace

GridAxis parse_grid(const std::string& spec)
{
    const auto parts = split(spec, ':');
    if (parts.size() != 4) throw ConfigError("grid '" + spec + "': expected coord:min:max:n");
    GridAxis g;
    g.coord = parts[0];
    g.min = parse_double("grid min", parts[1]);
    g.max = parse_double("grid max", parts[2]);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), n);
    if (ec != std::errc{} || ptr != parts[3].data() + parts[3].size())
        throw ConfigError("grid '" + spec + "': n must be an integer");
    g.n = n;
    if (g.n < 2) throw ConfigError("grid '" + spec + "': need n >= 2");
    if (!(g.min < g.max)) throw ConfigError("grid '" + spec + "': need min < max");
    return g;
}

std::pair<std::string, double> parse_fix(const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("fix '" + spec + "': expected coord=value");
    return {spec.substr(0, eq), parse_double("fix value", spec.substr(eq + 1))};
}

Scenario prepare(const ScenarioConfig& config)
{
    Scenario s;
    s.config = config;
    const auto v = validate_scenario(config.system, config.bath1, config.bath2);
    std::vector<std::string> errors = v.errors;
    if (!config.bath1.same_spectrum(config.bath2))
        errors.push_back("bath1 and bath2 must share J0 and support (one discretization grid)");
    if (!errors.empty()) {
        std::string msg = "precondition violated:";
        for (const auto& e : errors) msg += " [" + e + "]";
        throw PreconditionError(msg);
    }
    s.warnings = v.warnings;
    s.bath1 = discretize_bath(config.bath1, config.K);
    s.bath2 = discretize_bath(config.bath2, config.K);
    return s;
}

std::string format_number(double x)
{
    if (!std::isfinite(x)) throw NumericalError("non-finite value in output");
    if (x == 0.0) x = 0.0;  // no "-0"
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

namespace {

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& cols)
    {
        for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
        out_ << '\n';
    }
    void row(const std::vector<double>& vals)
    {
        std::string line;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) line += ',';
            line += format_number(vals[i]);
        }
        out_ << line << '\n';
    }

private:
    std::ostream& out_;
};

double checked(double x)
{
    if (!std::isfinite(x)) throw NumericalError("non-finite value in output");
    return x;
}

PropagatorSet propagators_at(const Scenario& s, const ExactDynamics* exact, Engine engine, double t)
{
    if (engine == Engine::exact) return exact->at(t);
    return ww_propagator_set(s.config.system, s.config.bath1, s.bath1, t);
}

json matrix_json(const Eigen::Matrix4d& m)
{
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json r = json::array();
        for (int j = 0; j < 4; ++j) r.push_back(checked(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

// Phase of a relative to b, in (-pi, pi].
double phase_between(cplx a, cplx b) { return std::arg(a * std::conj(b)); }

}  // namespace

void cmd_evolve(const Scenario& s, Engine engine, std::ostream& out)
{
    const auto& c = s.config;
    std::unique_ptr<ExactDynamics> exact;
    if (engine == Engine::exact) exact = std::make_unique<ExactDynamics>(c.system, s.bath1, s.bath2);
    const Eigen::VectorXd occ1 = occupations(s.bath1), occ2 = occupations(s.bath2);

    CsvWriter csv(out);
    csv.header({"t", "Q_x1x1", "Q_p1p1", "Q_x2x2", "Q_p2p2", "Q_x1x2", "Q_p1p2", "Q_x1p2", "Q_x2p1",
                "simon_det", "purity", "abs_u1", "abs_u2", "unitarity_defect_1", "unitarity_defect_2"});
    for (double t : c.time.points()) {
        const PropagatorSet p = propagators_at(s, exact.get(), engine, t);
        const CovarianceMatrix q = covariance_from_modes(p, occ1, occ2, c.system.omega);
        const Eigen::Matrix4d& m = q.matrix();
        csv.row({t, m(X1, X1), m(P1, P1), m(X2, X2), m(P2, P2), m(X1, X2), m(P1, P2), m(X1, P2),
                 m(X2, P1), simon_determinant(m), purity(m), std::abs(p.u[0]), std::abs(p.u[1]),
                 p.unitarity_defect(0), p.unitarity_defect(1)});
    }
}

json cmd_equilibrium(const Scenario& s, bool sweep, Engine engine)
{
    const auto& c = s.config;
    const auto eq = equilibrium_covariance(c.system, c.bath1.temperature, c.bath2.temperature);
    const Eigen::Matrix4d& qinf = eq.cov.matrix();

    json r;
    r["omega"] = c.system.omega;
    r["lambda"] = c.system.lambda;
    r["T1"] = c.bath1.temperature;
    r["T2"] = c.bath2.temperature;
    r["A"] = checked(eq.constants.a_const);
    r["B"] = checked(eq.constants.b_const);
    r["occupations"] = {{"n_Omega1_T1", checked(eq.constants.occupation[0][0])},
                        {"n_Omega1_T2", checked(eq.constants.occupation[0][1])},
                        {"n_Omega2_T1", checked(eq.constants.occupation[1][0])},
                        {"n_Omega2_T2", checked(eq.constants.occupation[1][1])}};
    r["Q_inf"] = matrix_json(qinf);
    r["purity"] = checked(purity(qinf));
    r["simon_det"] = checked(simon_determinant(qinf));

    const auto cmp = compare_equilibrium_wigner_routes(c.system, c.bath1.temperature, c.bath2.temperature);
    r["wigner_route_comparison"] = {{"max_abs_diff", checked(cmp.max_abs_diff)},
                                    {"max_rel_diff", checked(cmp.max_rel_diff)},
                                    {"peak", checked(cmp.peak)},
                                    {"points", cmp.points}};

    if (sweep) {
        const double t = c.time.t_end;
        std::unique_ptr<ExactDynamics> exact;
        if (engine == Engine::exact) exact = std::make_unique<ExactDynamics>(c.system, s.bath1, s.bath2);
        const PropagatorSet p = propagators_at(s, exact.get(), engine, t);
        const Eigen::Matrix4d qt =
            covariance_from_modes(p, occupations(s.bath1), occupations(s.bath2), c.system.omega).matrix();
        json rel = json::array();
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int j = 0; j < 4; ++j) {
                if (qinf(i, j) == 0.0) {
                    row.push_back(nullptr);  // undefined for exactly-zero entries
                    continue;
                }
                const double d = std::abs(qt(i, j) - qinf(i, j)) / std::abs(qinf(i, j));
                worst = std::max(worst, d);
                row.push_back(checked(d));
            }
            rel.push_back(row);
        }
        r["sweep"] = {{"engine", engine == Engine::exact ? "exact" : "ww"},
                      {"t_end", t},
                      {"Q_t_end", matrix_json(qt)},
                      {"absolute_deviation", matrix_json((qt - qinf).cwiseAbs())},
                      {"relative_deviation", rel},
                      {"max_relative_deviation", checked(worst)}};
    }
    return r;
}

namespace {

const std::vector<std::string> phase_coords{"x1", "p1", "x2", "p2"};
const std::vector<std::string> kernel_coords{"x1p", "x2p", "x1", "x2"};

std::size_t coord_index(const std::vector<std::string>& names, const std::string& c, const char* what)
{
    const auto it = std::find(names.begin(), names.end(), c);
    if (it == names.end()) {
        std::string all;
        for (const auto& n : names) all += (all.empty() ? "" : ",") + n;
        throw ConfigError(std::string(what) + ": unknown coordinate '" + c + "' (expected one of " + all + ")");
    }
    return static_cast<std::size_t>(it - names.begin());
}

// Base point from --fix values; swept coordinates may not be fixed.
std::array<double, 4> base_point(const std::vector<std::string>& names,
                                 const std::map<std::string, double>& fixed,
                                 const std::set<std::size_t>& swept, const char* what)
{
    std::array<double, 4> base{0.0, 0.0, 0.0, 0.0};
    for (const auto& [name, value] : fixed) {
        const std::size_t i = coord_index(names, name, what);
        if (swept.count(i)) throw ConfigError(std::string(what) + ": coordinate '" + name + "' is both swept and fixed");
        base[i] = value;
    }
    return base;
}

}  // namespace

void cmd_wigner(const Scenario& s, const GridAxis& a, const GridAxis& b,
                const std::map<std::string, double>& fixed, std::ostream& out)
{
    const std::size_t ia = coord_index(phase_coords, a.coord, "wigner"),
                      ib = coord_index(phase_coords, b.coord, "wigner");
    if (ia == ib) throw ConfigError("wigner: plane needs two distinct coordinates");
    auto base = base_point(phase_coords, fixed, {ia, ib}, "wigner");

    const auto& c = s.config;
    const GaussianWigner W(equilibrium_state(c.system, c.bath1.temperature, c.bath2.temperature));
    CsvWriter csv(out);
    csv.header({"coord_a", "coord_b", "W_covariance_route", "W_paper_formula", "abs_diff"});
    for (double va : a.values())
        for (double vb : b.values()) {
            base[ia] = va;
            base[ib] = vb;
            const PhasePoint pt{base[0], base[1], base[2], base[3]};
            const double wc = W(pt);
            const double wp = equilibrium_wigner_closed_form(c.system, c.bath1.temperature, c.bath2.temperature, pt);
            csv.row({va, vb, wc, wp, std::abs(wc - wp)});
        }
}

void cmd_kernel(const Scenario& s, const std::vector<GridAxis>& axes,
                const std::map<std::string, double>& fixed, const KernelOptions& opt,
                std::ostream& out)
{
    if (axes.empty() || axes.size() > 4) throw ConfigError("kernel: need 1 to 4 --grid axes");
    std::set<std::size_t> swept;
    std::vector<std::size_t> idx;
    for (const auto& g : axes) {
        const std::size_t i = coord_index(kernel_coords, g.coord, "kernel");
        if (!swept.insert(i).second) throw ConfigError("kernel: coordinate '" + g.coord + "' swept twice");
        idx.push_back(i);
    }
    auto base = base_point(kernel_coords, fixed, swept, "kernel");

    const auto& c = s.config;
    const double T1 = c.bath1.temperature, T2 = c.bath2.temperature;
    if (!(T1 > 0.0) || !(T2 > 0.0))
        throw PreconditionError("kernel: closed-form kernel requires T1 > 0 and T2 > 0");
    if (opt.gibbs && T1 != T2) throw PreconditionError("kernel: Gibbs comparison requires T1 == T2");

    const GaussianState state = equilibrium_state(c.system, T1, T2);
    std::vector<std::string> cols{"x1p", "x2p", "x1", "x2", "rho_closed_form"};
    if (opt.numeric)
        for (const char* col : {"rho_numeric_re", "rho_numeric_im", "numeric_abs_diff"}) cols.emplace_back(col);
    if (opt.gibbs)
        for (const char* col : {"rho_gibbs", "gibbs_abs_diff"}) cols.emplace_back(col);
    CsvWriter csv(out);
    csv.header(cols);

    std::vector<std::vector<double>> values;
    for (const auto& g : axes) values.push_back(g.values());
    std::vector<std::size_t> counter(axes.size(), 0);
    while (true) {
        for (std::size_t d = 0; d < axes.size(); ++d) base[idx[d]] = values[d][counter[d]];
        const KernelPoint kp{base[0], base[1], base[2], base[3]};
        const double closed = equilibrium_kernel(c.system, T1, T2, kp);
        std::vector<double> row{kp.x1p, kp.x2p, kp.x1, kp.x2, closed};
        if (opt.numeric) {
            const cplx num = wigner_to_kernel(state, kp);
            row.insert(row.end(), {num.real(), num.imag(), std::abs(num - closed)});
        }
        if (opt.gibbs) {
            const double g = oracle::gibbs_kernel(c.system, T1, kp);
            row.insert(row.end(), {g, std::abs(g - closed)});
        }
        csv.row(row);

        // Row-major: last axis fastest.
        std::size_t d = axes.size();
        while (d > 0 && ++counter[d - 1] == values[d - 1].size()) counter[--d] = 0;
        if (d == 0) break;
    }
}

void cmd_compare_ww(const Scenario& s, std::ostream& out)
{
    const auto& c = s.config;
    const ExactDynamics exact(c.system, s.bath1, s.bath2);
    CsvWriter csv(out);
    csv.header({"t", "abs_u1_exact", "abs_u1_ww", "abs_u2_exact", "abs_u2_ww", "phase_dev_1", "phase_dev_2"});
    for (double t : c.time.points()) {
        const PropagatorSet pe = exact.at(t);
        const PropagatorSet pw = ww_propagator_set(c.system, c.bath1, s.bath1, t);
        csv.row({t, std::abs(pe.u[0]), std::abs(pw.u[0]), std::abs(pe.u[1]), std::abs(pw.u[1]),
                 phase_between(pe.u[0], pw.u[0]), phase_between(pe.u[1], pw.u[1])});
    }
}

namespace {

void report_error(std::ostream& err, const char* kind, int code, const std::string& msg)
{
    err << json{{"error", kind}, {"exit_code", code}, {"message", msg}}.dump() << '\n';
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << text;
    if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Two coupled oscillators in two heat baths: covariance dynamics, equilibrium, Wigner and kernel grids"};
    app.name("twobath");
    app.require_subcommand(1);

    std::string config_path, out_path, engine_name = "exact";
    std::vector<std::string> grids, fixes;
    bool sweep = false;
    KernelOptions kopt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario file")->required();
        sub->add_option("--out", out_path, "output file (default: output.path from the config, else stdout)");
    };
    const std::map<std::string, Engine> engines{{"exact", Engine::exact}, {"ww", Engine::ww}};

    auto* evolve = app.add_subcommand("evolve", "covariance time series (CSV)");
    add_common(evolve);
    evolve->add_option("--engine", engine_name, "exact | ww")->check(CLI::IsMember({"exact", "ww"}));

    auto* equilibrium = app.add_subcommand("equilibrium", "long-time state report (JSON)");
    add_common(equilibrium);
    equilibrium->add_flag("--sweep", sweep, "also evolve to time.t_end and report the deviation");
    equilibrium->add_option("--engine", engine_name, "engine for --sweep: exact | ww")
        ->check(CLI::IsMember({"exact", "ww"}));

    auto* wigner = app.add_subcommand("wigner", "equilibrium Wigner function on a plane (CSV)");
    add_common(wigner);
    wigner->add_option("--grid", grids, "coord:min:max:n, twice; coord in x1,p1,x2,p2")->required();
    wigner->add_option("--fix", fixes, "coord=value for an unswept coordinate (default 0)");

    auto* kernel = app.add_subcommand("kernel", "equilibrium position kernel on a lattice (CSV)");
    add_common(kernel);
    kernel->add_option("--grid", grids, "coord:min:max:n, 1-4 times; coord in x1p,x2p,x1,x2")->required();
    kernel->add_option("--fix", fixes, "coord=value for an unswept coordinate (default 0)");
    kernel->add_flag("--numeric", kopt.numeric, "add the numeric inverse Weyl transform");
    kernel->add_flag("--gibbs", kopt.gibbs, "add the Gibbs-state comparison (T1 == T2 only)");

    auto* compare = app.add_subcommand("compare-ww", "exact vs pole-approximation return amplitudes (CSV)");
    add_common(compare);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    }
    catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    }
    catch (const CLI::ParseError& e) {
        report_error(err, "usage", 2, e.what());
        return 2;
    }

    try {
        const ScenarioConfig cfg = load_config(config_path);
        const Scenario s = prepare(cfg);
        for (const auto& w : s.warnings) err << json{{"warning", w}}.dump() << '\n';
        const Engine engine = engines.at(engine_name);
        std::map<std::string, double> fixed;
        for (const auto& f : fixes) {
            const auto [name, value] = parse_fix(f);
            if (!fixed.emplace(name, value).second) throw ConfigError("coordinate '" + name + "' fixed twice");
        }
        std::vector<GridAxis> axes;
        for (const auto& g : grids) axes.push_back(parse_grid(g));

        std::ostringstream buf;
        if (evolve->parsed())
            cmd_evolve(s, engine, buf);
        else if (equilibrium->parsed())
            buf << cmd_equilibrium(s, sweep, engine).dump(2) << '\n';
        else if (wigner->parsed()) {
            if (axes.size() != 2) throw ConfigError("wigner: exactly two --grid axes required");
            cmd_wigner(s, axes[0], axes[1], fixed, buf);
        }
        else if (kernel->parsed())
            cmd_kernel(s, axes, fixed, kopt, buf);
        else
            cmd_compare_ww(s, buf);

        emit(buf.str(), out_path.empty() ? cfg.output_path.value_or("") : out_path, out);
        return 0;
    }
    catch (const ConfigError& e) {
        report_error(err, "config", 2, e.what());
        return 2;
    }
    catch (const std::invalid_argument& e) {
        report_error(err, "precondition", 4, e.what());
        return 4;
    }
    catch (const std::exception& e) {
        report_error(err, "numerical", 3, e.what());
        return 3;
    }
}

}  // namespace twobath::cli
