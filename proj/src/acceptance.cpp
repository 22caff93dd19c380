#include "hypershift/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "hypershift/inversion.hpp"
#include "hypershift/parallel.hpp"
#include "hypershift/radial_scattering.hpp"
#include "hypershift/specfun.hpp"
#include "hypershift/trace_formula.hpp"
#include "hypershift/xray.hpp"

namespace hypershift {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Vec random_unit(std::mt19937_64& rng, int dim)
{
    std::normal_distribution<double> g;
    Vec v(dim);
    for (int i = 0; i < dim; ++i)
        v(i) = g(rng);
    return v / v.norm();
}

GeodesicChart random_chart(std::mt19937_64& rng, int dim, double amin, double amax)
{
    Vec theta = random_unit(rng, dim);
    Vec xi;
    do {
        xi = random_unit(rng, dim);
        xi -= xi.dot(theta) * theta;
    } while (xi.norm() < 1e-3);
    std::uniform_real_distribution<double> u(amin, amax);
    return GeodesicChart(theta, xi / xi.norm() * u(rng));
}

class Runner {
public:
    Runner(const AcceptanceOptions& o, const std::function<void(const CriterionResult&)>& r) : opts_(o), report_(r) {}

    bool wanted(const std::string& id) const
    {
        return opts_.only.empty() || std::find(opts_.only.begin(), opts_.only.end(), id) != opts_.only.end();
    }

    void add(CriterionResult r)
    {
        if (report_)
            report_(r);
        results_.push_back(std::move(r));
    }

    void pass_fail(const std::string& id, bool ok, const std::string& detail) { add({id, ok, detail}); }
    void control(const std::string& id, bool underlying_ok, const std::string& detail)
    {
        add({id, !underlying_ok, detail, true});
    }
    void note(const std::string& id, const std::string& detail) { add({id, true, detail, false, true}); }

    std::vector<CriterionResult> take() { return std::move(results_); }
    std::mt19937_64 rng() const { return std::mt19937_64(opts_.seed); }

private:
    const AcceptanceOptions& opts_;
    const std::function<void(const CriterionResult&)>& report_;
    std::vector<CriterionResult> results_;
};

void a1(Runner& run)
{
    auto rng = run.rng();
    AmbientPotential pot = to_ambient(bump_ball(1.0, 0.5));
    // use the generic tail-bounded path rather than the declared support
    pot.support_delta.reset();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        int dim = 2 + i % 2;
        worst = std::max(worst, std::abs(xray_general(pot, random_chart(rng, dim, 2.0, 10.0), 1e-13)));
    }
    run.pass_fail("A1", worst < 1e-12, fmt("X-ray support: max |X(V)| = %.3e over 100 charts with |xi| >= 2 (limit 1e-12)", worst));
}

void a2(Runner& run)
{
    auto rng = run.rng();
    RadialPotential V = gaussian_rho(1.0, 1.0);
    AmbientPotential amb = to_ambient(V);
    double worst = 0.0;
    for (int n = 1; n <= 2; ++n) {
        for (int i = 0; i < 50; ++i) {
            GeodesicChart chart = random_chart(rng, n + 1, 0.01, 3.0);
            double general = -0.5 * xray_general(amb, chart, 1e-13);
            double radial = classical_profile_value(V, 2.0 * chart.xi_norm(), 1e-13);
            worst = std::max(worst, std::abs(general - radial) / std::abs(radial));
        }
    }
    run.pass_fail("A2", worst < 1e-8, fmt("general vs radial X-ray: max relative difference %.3e over 2x50 arguments (limit 1e-8)", worst));
}

void a3(Runner& run)
{
    double worst = 0.0;
    int count = 0;
    for (int n = 1; n <= 2; ++n)
        for (double lambda : {50.0, 100.0})
            for (int k = 0; k <= 2 * lambda; ++k, ++count)
                worst = std::max(worst, std::abs(free_phase_defect(k, lambda, n)));
    run.pass_fail("A3", worst < 1e-6, fmt("free phase shifts: max |delta_k| = %.3e over %d modes, n in {1,2}, lambda in {50,100} (limit 1e-6)", worst, count));
}

void a4(Runner& run)
{
    RadialPotential V = gaussian_rho(1.0, 1.0);
    std::vector<double> dev(201);
    parallel_for(dev.size(), [&](std::size_t k) {
        auto cc = connection_coefficients(static_cast<int>(k), 100.0, V, 1, 0.0);
        dev[k] = std::abs(std::abs(cc.ratio()) - 1.0);
    });
    double worst = *std::max_element(dev.begin(), dev.end());
    run.pass_fail("A4", worst < 1e-6, fmt("unitarity: max ||a+/a-| - 1| = %.3e for k <= 200, lambda = 100 (limit 1e-6)", worst));
}

double symbol_error(const RadialPotential& V, double lambda)
{
    int kmax = static_cast<int>(lambda);
    std::vector<double> err(kmax + 1);
    parallel_for(err.size(), [&](std::size_t k) {
        double d = relative_phase_shift(static_cast<int>(k), lambda, V, 1);
        err[k] = std::abs(lambda * d - classical_profile_value(V, k / lambda, 1e-13));
    });
    return *std::max_element(err.begin(), err.end());
}

void a5(Runner& run)
{
    RadialPotential V = gaussian_rho(0.5, 1.0);
    double e50 = symbol_error(V, 50.0), e100 = symbol_error(V, 100.0), e200 = symbol_error(V, 200.0);
    bool ok = e100 <= 0.6 * e50 && e200 <= 0.6 * e100;
    run.pass_fail("A5", ok, fmt("symbol law: max_k |lambda delta_k - G(k/lambda)| = %.3e, %.3e, %.3e at lambda = 50, 100, 200; ratios %.3f, %.3f (limit 0.6)",
                                e50, e100, e200, e100 / e50, e200 / e100));
}

struct TraceCheck {
    bool ok = true;
    std::string detail;
};

TraceCheck check_trace(const std::vector<TraceRow>& rows, const std::vector<int>& p_list, double lambda_final)
{
    TraceCheck out;
    for (int p : p_list) {
        double rel = NAN;
        for (const auto& r : rows)
            if (r.p == p && r.lambda == lambda_final)
                rel = r.rel_err;
        SlopeFit fit = fit_convergence(rows, p);
        bool ok_rel = rel <= 0.05;
        bool ok_slope = fit.slope && *fit.slope >= 0.7;
        out.ok = out.ok && ok_rel && ok_slope;
        out.detail += fmt("%sp=%d: rel_err(%g) = %.3e [%s], slope = %s [%s]", out.detail.empty() ? "" : "; ", p, lambda_final,
                          rel, ok_rel ? "ok" : "FAIL",
                          fit.slope ? fmt("%.3f", *fit.slope).c_str() : "undefined", ok_slope ? "ok" : "FAIL");
    }
    return out;
}

void a6(Runner& run)
{
    RadialPotential V = gaussian_rho(0.5, 1.0);
    const std::vector<double> lambdas = {50.0, 100.0, 200.0};
    const std::vector<int> p_list = {1, 2};
    double tol = 1e-8;
    ClassicalProfile arclength, literal;
    arclength.evaluator = [V, tol](double r) { return classical_profile_value(V, r, 0.01 * tol); };
    literal.evaluator = [V, tol](double r) {
        return classical_profile_value(V, r, 0.01 * tol, ProfileNormalization::literal, 1);
    };
    literal.normalization = ProfileNormalization::literal;
    std::vector<TraceRow> harmonic_rows, binomial_rows, literal_rows;
    std::string abs_errs;
    for (double lambda : lambdas) {
        int kmax = kmax_policy(V, lambda, tol);
        PhaseShiftSpectrum sp = phase_spectrum(lambda, kmax, V, 1, tol);
        auto rows = moment_rows(sp, arclength, p_list, tol);
        for (const auto& r : rows)
            abs_errs += fmt(" (lambda=%g,p=%d,kmax=%d: quantum %.12f classical %.12f)", lambda, r.p, kmax, r.quantum, r.classical);
        harmonic_rows.insert(harmonic_rows.end(), rows.begin(), rows.end());
        auto b = moment_rows(with_multiplicity(sp, MultiplicityRule::binomial), arclength, p_list, tol);
        binomial_rows.insert(binomial_rows.end(), b.begin(), b.end());
        auto l = moment_rows(sp, literal, p_list, tol);
        literal_rows.insert(literal_rows.end(), l.begin(), l.end());
    }
    TraceCheck h = check_trace(harmonic_rows, p_list, 200.0);
    run.pass_fail("A6", h.ok, "trace formula, harmonic multiplicities: " + h.detail);
    run.note("A6", "values:" + abs_errs);

    // p = 1 at small lambda: how fast the first-moment error decays before it reaches rounding level
    std::string small;
    for (double lambda : {2.0, 3.0, 4.0, 6.0}) {
        TraceOptions o;
        o.tol = 1e-11;
        auto rows = moment_compare(V, 1, lambda, {1}, o);
        small += fmt(" lambda=%g: %.3e", lambda, rows.front().abs_err);
    }
    run.note("A6", "p=1 absolute error at small lambda:" + small);

    TraceCheck b = check_trace(binomial_rows, p_list, 200.0);
    run.control("A6-control-binomial", b.ok, "binomial multiplicities must fail: " + b.detail);
    TraceCheck l = check_trace(literal_rows, p_list, 200.0);
    run.control("A6-control-literal", l.ok, "literal profile scale must fail: " + l.detail);
}

void a7(Runner& run)
{
    RadialPotential V = gaussian_rho(1.0, 1.0);
    std::vector<double> r;
    for (int i = 0; i <= 200; ++i)
        r.push_back(std::sinh(0.025 * i));
    MonotoneProfile prof = monotone_from_classical(xray_radial_profile(V, r, 1e-12));
    InversionResult inv = potential_from_profile(prof, 1, default_rho_grid(prof), 1e-10);
    double worst = 0.0;
    for (int i = 0; i <= 3000; ++i) {
        double rho = 0.001 * i;
        worst = std::max(worst, std::abs(inv.potential(rho) - V(rho)));
    }

    // G(r) = e^{-r}, n = 1: nu(alpha, inf) = vol(S^1) vol(S^0) (-log alpha) for alpha < 1
    NuDistribution nu = [](double a, double b) {
        auto tail = [](double x) { return x < 1.0 ? -std::log(x) : 0.0; };
        return 4.0 * pi * (tail(a) - (std::isfinite(b) ? tail(b) : 0.0));
    };
    std::vector<double> levels;
    for (int i = 1; i <= 400; ++i)
        levels.push_back(std::exp(-0.05 * i));
    std::reverse(levels.begin(), levels.end());
    MonotoneProfile rec = profile_from_measure(nu, 1, levels);
    double pw = 0.0;
    for (std::size_t i = 0; i < rec.r_grid.size(); ++i)
        pw = std::max(pw, std::abs(rec.g_values[i] - std::exp(-rec.r_grid[i])));
    bool ok = worst <= 1e-3 && pw <= 1e-10;
    run.pass_fail("A7", ok, fmt("inverse roundtrip: max |V_rec - V| on [0,3] = %.3e (limit 1e-3, reg 1e-10, cond %.2e); e^{-r} pushforward max error %.3e (limit 1e-10)",
                                worst, inv.condition, pw));
}

void a8(Runner& run)
{
    double worst_gamma = 0.0;
    for (double l : {1.0, 5.0, 20.0}) {
        double lhs = std::norm(complex_gamma(cplx(0.0, l)));
        double rhs = pi / (l * std::sinh(pi * l));
        worst_gamma = std::max(worst_gamma, std::abs(lhs - rhs) / rhs);
    }
    auto rng = run.rng();
    std::uniform_int_distribution<int> kd(1, 500), nd(1, 3);
    std::uniform_real_distribution<double> ld(0.5, 300.0);
    double worst_mu = 0.0;
    for (int i = 0; i < 100; ++i) {
        auto mu = free_eigenvalue_mu_k(kd(rng), ld(rng), nd(rng));
        worst_mu = std::max(worst_mu, std::abs(std::abs(mu.value) - 1.0));
    }
    bool ok = worst_gamma < 1e-12 && worst_mu < 1e-12;
    run.pass_fail("A8", ok, fmt("special functions: |Gamma(i l)|^2 relative error %.3e at l in {1,5,20}; max ||mu_k| - 1| = %.3e over 100 draws (limit 1e-12)",
                                worst_gamma, worst_mu));
}

void a9(Runner& run)
{
    const double eps = 1e-3, lambda = 100.0;
    RadialPotential V = gaussian_rho(1.0, 1.0);
    RadialPotential weak = gaussian_rho(eps, 1.0);
    std::vector<double> born = born_spectrum_h2(50, lambda, V);
    std::vector<double> rel(51);
    parallel_for(rel.size(), [&](std::size_t k) {
        double d = lambda * relative_phase_shift(static_cast<int>(k), lambda, weak, 1) / eps;
        rel[k] = std::abs(born[k] - d) / std::abs(d);
    });
    double worst = *std::max_element(rel.begin(), rel.end());
    run.pass_fail("A9", worst <= 0.02, fmt("Born oracle: max relative difference %.3e between the Born eigenvalue and lambda delta_k(eps V)/eps, k <= 50, lambda = 100 (limit 0.02)", worst));
}

}  // namespace

std::string format_result(const CriterionResult& r)
{
    const char* tag = r.note ? "NOTE" : (r.passed ? "PASS" : "FAIL");
    return std::string(tag) + " " + r.id + " " + r.detail;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& report)
{
    Runner run(opts, report);
    const std::vector<std::pair<std::string, void (*)(Runner&)>> all = {
        {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5}, {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}};
    for (const auto& [id, fn] : all) {
        if (!run.wanted(id))
            continue;
        try {
            fn(run);
        } catch (const std::exception& e) {
            run.pass_fail(id, false, std::string("exception: ") + e.what());
        }
    }
    return run.take();
}

}  // namespace hypershift
