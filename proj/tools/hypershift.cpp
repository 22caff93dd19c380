#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "csv_io.hpp"
#include "hypershift/acceptance.hpp"
#include "hypershift/inversion.hpp"
#include "hypershift/radial_scattering.hpp"
#include "hypershift/specfun.hpp"
#include "hypershift/trace_formula.hpp"
#include "hypershift/xray.hpp"

using namespace hypershift;
using hypershift::cli::RunConfig;
using nlohmann::json;

namespace {

enum Exit { ok = 0, validation = 2, numerical = 3 };

std::string path_in(const RunConfig& cfg, const std::string& name) { return cfg.out + "/" + name; }

ProfileNormalization normalization_of(const RunConfig& cfg)
{
    return cfg.normalization == "literal" ? ProfileNormalization::literal : ProfileNormalization::arclength;
}

MultiplicityRule multiplicity_of(const RunConfig& cfg)
{
    return cfg.multiplicity == "binomial" ? MultiplicityRule::binomial : MultiplicityRule::harmonic;
}

json sidecar(const RunConfig& cfg)
{
    json j;
    j["generated_by"] = "hypershift " + cfg.subcommand + " config " + cli::config_hash(cfg);
    return j;
}

int run_xray(const RunConfig& cfg)
{
    RadialPotential pot = parse_potential(cfg.potential);
    std::vector<double> r;
    for (int i = 0; i * cfg.du <= cfg.u_max * (1.0 + 1e-12); ++i)
        r.push_back(std::sinh(i * cfg.du));
    ClassicalProfile prof = xray_radial_profile(pot, r, cfg.tol, normalization_of(cfg), cfg.n);
    io::CsvTable t({"r", "G"});
    for (std::size_t i = 0; i < r.size(); ++i)
        t.add_row({io::fmt(prof.r_grid[i]), io::fmt(prof.g_values[i])});
    io::write_csv(path_in(cfg, "profile.csv"), t);
    json j = sidecar(cfg);
    j["potential"] = cfg.potential;
    j["n"] = cfg.n;
    j["normalization"] = cfg.normalization;
    j["tol"] = cfg.tol;
    j["points"] = r.size();
    j["monotone_decreasing"] = prof.monotone_decreasing;
    io::write_json(path_in(cfg, "profile.json"), j);
    return ok;
}

int run_shifts(const RunConfig& cfg)
{
    RadialPotential pot = parse_potential(cfg.potential);
    int kmax = cfg.kmax > 0 ? cfg.kmax : kmax_policy(pot, cfg.lambda, cfg.tol);
    PhaseShiftSpectrum sp = phase_spectrum(cfg.lambda, kmax, pot, cfg.n, cfg.tol, multiplicity_of(cfg));
    io::CsvTable t({"k", "delta", "multiplicity"});
    for (const auto& e : sp.entries)
        t.add_row({std::to_string(e.k), io::fmt(e.delta), std::to_string(e.multiplicity)});
    io::write_csv(path_in(cfg, "shifts.csv"), t);
    json j = sidecar(cfg);
    j["lambda"] = sp.lambda;
    j["n"] = sp.n;
    j["kmax"] = sp.kmax;
    j["tol"] = sp.tol;
    j["tail_bound"] = sp.tail_bound;
    j["warnings"] = sp.warnings;
    io::write_json(path_in(cfg, "shifts.json"), j);
    for (const auto& w : sp.warnings)
        std::cerr << "warning: " << w << "\n";
    return ok;
}

int run_trace(const RunConfig& cfg)
{
    RadialPotential pot = parse_potential(cfg.potential);
    TraceOptions o;
    o.tol = cfg.tol;
    o.kmax = cfg.kmax;
    o.multiplicity = multiplicity_of(cfg);
    o.normalization = normalization_of(cfg);
    TraceReport rep;
    if (cfg.lambda_list.size() >= 3) {
        rep = convergence_study(pot, cfg.n, cfg.lambda_list, cfg.p_list, o);
    } else {
        std::vector<double> lambdas = cfg.lambda_list.empty() ? std::vector<double>{cfg.lambda} : cfg.lambda_list;
        rep.lambda_list = lambdas;
        for (double l : lambdas) {
            auto rows = moment_compare(pot, cfg.n, l, cfg.p_list, o);
            rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
        }
        for (int p : cfg.p_list)
            rep.fits.push_back(fit_convergence(rep.rows, p));
    }
    io::CsvTable t({"lambda", "h", "p", "quantum", "classical", "abs_err", "rel_err"});
    for (const auto& r : rep.rows)
        t.add_row({io::fmt(r.lambda), io::fmt(r.h), std::to_string(r.p), io::fmt(r.quantum), io::fmt(r.classical),
                   io::fmt(r.abs_err), io::fmt(r.rel_err)});
    io::write_csv(path_in(cfg, "trace.csv"), t);
    json j = sidecar(cfg);
    j["lambda_list"] = rep.lambda_list;
    j["n"] = cfg.n;
    json fits = json::array();
    for (const auto& f : rep.fits) {
        json e;
        e["p"] = f.p;
        e["fit_slope"] = f.slope ? json(*f.slope) : json(nullptr);
        e["residuals"] = f.residuals;
        fits.push_back(e);
    }
    j["fits"] = fits;
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"lambda", r.lambda}, {"p", r.p}, {"kmax", r.kmax}, {"sin_defect", r.sin_defect}});
    j["rows"] = rows;
    j["warnings"] = rep.warnings;
    io::write_json(path_in(cfg, "trace.json"), j);
    return ok;
}

int run_invert(const RunConfig& cfg)
{
    if (cfg.profile.empty())
        throw domain_error("invert needs --profile (CSV with columns r,G)");
    auto cols = io::read_columns(cfg.profile, {"r", "G"});
    MonotoneProfile prof;
    prof.r_grid = cols[0];
    prof.g_values = cols[1];
    if (prof.r_grid.size() < 4)
        throw domain_error("invert: profile needs at least 4 samples");
    for (std::size_t i = 1; i < prof.r_grid.size(); ++i)
        if (!(prof.r_grid[i] > prof.r_grid[i - 1]))
            throw domain_error("invert: profile radii must increase");
    prof.g0 = prof.g_values.front();
    prof.support_radius = prof.r_grid.back();
    double m = cfg.tail_exponent > 0.0 ? cfg.tail_exponent : std::numeric_limits<double>::infinity();
    InversionResult inv = potential_from_profile(prof, cfg.n, default_rho_grid(prof, cfg.knot_spacing), cfg.reg, m);

    io::CsvTable t({"rho", "value"});
    double rho_end = inv.knots.back();
    int count = static_cast<int>(std::round(rho_end / 0.01));
    for (int i = 0; i <= count; ++i) {
        double rho = 0.01 * i;
        t.add_row({io::fmt(rho), io::fmt(inv.potential(rho))});
    }
    io::write_csv(path_in(cfg, "potential.csv"), t);

    json j = sidecar(cfg);
    j["condition"] = inv.condition;
    j["reg"] = inv.reg;
    j["max_residual"] = inv.max_residual;
    j["knots"] = inv.knots.size();
    json lc = json::array();
    for (const auto& p : inv.lcurve)
        lc.push_back({{"reg", p.reg}, {"residual_norm", p.residual_norm}, {"solution_norm", p.solution_norm}});
    j["lcurve"] = lc;
    if (!cfg.reference.empty()) {
        RadialPotential ref = parse_potential(cfg.reference);
        double worst = 0.0;
        for (int i = 0; i <= 3000; ++i)
            worst = std::max(worst, std::abs(inv.potential(0.001 * i) - ref(0.001 * i)));
        j["max_abs_error"] = worst;
        j["error_range"] = {0.0, 3.0};
        std::cout << "max abs error on [0,3]: " << io::fmt(worst) << "\n";
    }
    io::write_json(path_in(cfg, "invert.json"), j);
    return ok;
}

int run_freespec(const RunConfig& cfg)
{
    int kmax = cfg.kmax > 0 ? cfg.kmax : static_cast<int>(std::ceil(2.0 * cfg.lambda));
    io::CsvTable t({"k", "re", "im", "abs", "arg", "multiplicity", "conventional"});
    for (int k = 0; k <= kmax; ++k) {
        FreeEigenvalue mu = free_eigenvalue_mu_k(k, cfg.lambda, cfg.n);
        t.add_row({std::to_string(k), io::fmt(mu.value.real()), io::fmt(mu.value.imag()), io::fmt(std::abs(mu.value)),
                   io::fmt(std::arg(mu.value)), std::to_string(mu.multiplicity), mu.conventional ? "1" : "0"});
    }
    io::write_csv(path_in(cfg, "freespec.csv"), t);
    json j = sidecar(cfg);
    j["lambda"] = cfg.lambda;
    j["n"] = cfg.n;
    j["kmax"] = kmax;
    io::write_json(path_in(cfg, "freespec.json"), j);
    return ok;
}

int run_selftest(const RunConfig& cfg)
{
    AcceptanceOptions o;
    o.only = cfg.only;
    bool failed = false;
    run_acceptance(o, [&](const CriterionResult& r) {
        failed = failed || (!r.note && !r.passed);
        std::cout << format_result(r) << std::endl;
    });
    return failed ? numerical : ok;
}

void error_exit_json(const char* kind, const std::string& msg)
{
    json j;
    j["error"] = kind;
    j["message"] = msg;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Radial scattering on hyperbolic space: X-ray profiles, phase shifts, trace formula, inversion"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI file; keys in a [subcommand] section set that subcommand's options");

    RunConfig cfg;
    std::string lambda_list, p_list, only;

    auto common = [&](CLI::App* s) {
        s->add_option("--dim", cfg.n, "boundary dimension n (H^{n+1}); 1, 2 or 3")->capture_default_str();
        s->add_option("--tol", cfg.tol, "tolerance")->capture_default_str();
        s->add_option("--out", cfg.out, "output directory")->capture_default_str();
    };
    auto potential = [&](CLI::App* s) {
        s->add_option("--potential", cfg.potential,
                      "family:key=value,... (gaussian_rho:A,sigma | bump_ball:A,delta | exp_decay:A,m | "
                      "tabulated:path,m | zero)")
            ->capture_default_str();
    };

    auto* xray = app.add_subcommand("xray", "radial profile G_V(r) on r = sinh(u), u = 0..u_max");
    common(xray);
    potential(xray);
    xray->add_option("--u-max", cfg.u_max, "grid end in u")->capture_default_str();
    xray->add_option("--du", cfg.du, "grid step in u")->capture_default_str();
    xray->add_option("--normalization", cfg.normalization, "arclength or literal")->capture_default_str();

    auto* shifts = app.add_subcommand("shifts", "relative phase shifts delta_k");
    common(shifts);
    potential(shifts);
    shifts->add_option("--lambda", cfg.lambda, "spectral parameter")->capture_default_str();
    shifts->add_option("--kmax", cfg.kmax, "largest degree; 0 uses the policy ceil(2 lambda R)")->capture_default_str();
    shifts->add_option("--multiplicity", cfg.multiplicity, "harmonic or binomial")->capture_default_str();

    auto* trace = app.add_subcommand("trace", "moments of the phase-shift measure against the classical side");
    common(trace);
    potential(trace);
    trace->add_option("--lambda", cfg.lambda, "spectral parameter when no list is given")->capture_default_str();
    trace->add_option("--lambda-list", lambda_list, "comma separated; 3 or more values fit a convergence slope");
    trace->add_option("--p-list", p_list, "comma separated moments")->default_str("1,2");
    trace->add_option("--kmax", cfg.kmax, "largest degree; 0 uses the policy")->capture_default_str();
    trace->add_option("--multiplicity", cfg.multiplicity, "harmonic or binomial")->capture_default_str();
    trace->add_option("--normalization", cfg.normalization, "arclength or literal")->capture_default_str();

    auto* invert = app.add_subcommand("invert", "potential from a monotone radial profile");
    common(invert);
    invert->add_option("--profile", cfg.profile, "CSV with columns r,G (as written by xray)");
    invert->add_option("--reg", cfg.reg, "Tikhonov parameter; negative selects by L-curve")->capture_default_str();
    invert->add_option("--knot-spacing", cfg.knot_spacing, "spline knot spacing in rho")->capture_default_str();
    invert->add_option("--tail-exponent", cfg.tail_exponent, "exponential tail element; 0 for none")
        ->capture_default_str();
    invert->add_option("--reference", cfg.reference, "potential spec to report the reconstruction error against");

    auto* freespec = app.add_subcommand("freespec", "free eigenvalues mu_k(lambda)");
    common(freespec);
    freespec->add_option("--lambda", cfg.lambda, "spectral parameter")->capture_default_str();
    freespec->add_option("--kmax", cfg.kmax, "largest degree; 0 uses ceil(2 lambda)")->capture_default_str();

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--only", only, "comma separated ids, e.g. A1,A8");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_exit_json("validation", e.what());
        return validation;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (!lambda_list.empty())
            cfg.lambda_list = cli::parse_double_list(lambda_list);
        if (!p_list.empty())
            cfg.p_list = cli::parse_int_list(p_list);
        if (!only.empty()) {
            for (const auto& s : CLI::detail::split(only, ','))
                cfg.only.push_back(s);
        }
        cli::validate(cfg);
        if (cfg.subcommand == "xray")
            return run_xray(cfg);
        if (cfg.subcommand == "shifts")
            return run_shifts(cfg);
        if (cfg.subcommand == "trace")
            return run_trace(cfg);
        if (cfg.subcommand == "invert")
            return run_invert(cfg);
        if (cfg.subcommand == "freespec")
            return run_freespec(cfg);
        return run_selftest(cfg);
    } catch (const tolerance_error& e) {
        error_exit_json("tolerance", e.what());
        return numerical;
    } catch (const std::invalid_argument& e) {
        error_exit_json("validation", e.what());
        return validation;
    } catch (const std::domain_error& e) {
        error_exit_json("validation", e.what());
        return validation;
    } catch (const std::exception& e) {
        error_exit_json("numerical", e.what());
        return numerical;
    }
}
