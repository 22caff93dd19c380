#include "hypershift/radial_scattering.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "hypershift/parallel.hpp"
#include "hypershift/specfun.hpp"

namespace hypershift {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double pi = std::numbers::pi;

// psi0 = phi0 - lambda rho, theta = phiV - phi0, log R0, log RV
using State = std::array<double, 4>;

struct PairSystem {
    const RadialPotential* pot;
    double C;
    double lambda;
    bool with_potential;

    void operator()(const State& y, State& dy, double rho) const
    {
        double sh = std::sinh(rho);
        double qc = C / (sh * sh);
        double v = with_potential ? (*pot)(rho) : 0.0;
        double il = 1.0 / lambda;
        double phi0 = lambda * rho + y[0];
        double phiV = phi0 + y[1];
        double s0 = std::sin(phi0), c0 = std::cos(phi0);
        double sV = std::sin(phiV), cV = std::cos(phiV);
        dy[0] = -qc * il * s0 * s0;
        // sin^2 phiV - sin^2 phi0 = sin(theta) sin(phiV + phi0)
        dy[1] = -qc * il * std::sin(y[1]) * std::sin(phiV + phi0) - v * il * sV * sV;
        dy[2] = qc * il * s0 * c0;
        dy[3] = (qc + v) * il * sV * cV;
    }
};

struct Seed {
    double rho0;
    // Pruefer angle and log amplitude of the free and perturbed seeds
    double phi0, phiV;
    double logR0, logRV;
};

double frobenius_rho0(double a, double lambda) { return std::min(0.05, 1e-3 * (a + 1.0) / lambda); }

// Two-term Frobenius seed v = rho^a (1 + c rho^2).
void frobenius_angle(double a, double lambda, double v0, double rho, double& phi, double& logR)
{
    double c = (v0 - lambda * lambda - a * (a - 1.0) / 3.0) / (4.0 * a + 2.0);
    double v = 1.0 + c * rho * rho;
    double dv = a / rho * v + 2.0 * c * rho;
    phi = std::atan2(lambda * v, dv);
    logR = a * std::log(rho) + 0.5 * std::log(v * v + dv * dv / (lambda * lambda));
}

// Starting radius inside the forbidden region with int_{rho0}^{rho_t} kappa >= 25,
// kappa = sqrt(Q - lambda^2), so that any admixture of the decaying solution is
// suppressed by e^{-50} at the turning point.
double wkb_rho0(const LiouvilleQ& Q, double lambda, double& kappa0)
{
    double l2 = lambda * lambda;
    double rho = 1e-8;
    std::vector<double> grid{rho};
    while (Q(rho) - l2 > 0.0) {
        rho *= 1.01;
        grid.push_back(rho);
        if (rho > 50.0)
            throw domain_error("wkb seed: no turning point found");
    }
    double acc = 0.0;
    for (std::size_t i = grid.size() - 1; i > 0; --i) {
        double k1 = std::sqrt(std::max(0.0, Q(grid[i]) - l2));
        double k0 = std::sqrt(std::max(0.0, Q(grid[i - 1]) - l2));
        acc += 0.5 * (k0 + k1) * (grid[i] - grid[i - 1]);
        if (acc >= 25.0) {
            kappa0 = k0;
            return grid[i - 1];
        }
    }
    kappa0 = std::sqrt(std::max(0.0, Q(grid.front()) - l2));
    return grid.front();
}

Seed make_seed(int k, double lambda, const RadialPotential& pot, int n, double rho0_override)
{
    double a = k + 0.5 * n;
    Seed s{};
    if (a <= 30.0 || rho0_override > 0.0) {
        s.rho0 = rho0_override > 0.0 ? rho0_override : frobenius_rho0(a, lambda);
        if (!(s.rho0 > 0.0 && s.rho0 < 0.1))
            throw domain_error("regular_solution: Frobenius start must lie in (0, 0.1)");
        frobenius_angle(a, lambda, 0.0, s.rho0, s.phi0, s.logR0);
        frobenius_angle(a, lambda, pot(0.0), s.rho0, s.phiV, s.logRV);
        return s;
    }
    LiouvilleQ Q = liouville_Q(k, pot, n);
    LiouvilleQ Q0 = liouville_Q(k, zero_potential(), n);
    double kappa0 = 0.0;
    s.rho0 = std::min(wkb_rho0(Q, lambda, kappa0), wkb_rho0(Q0, lambda, kappa0));
    double kV = std::sqrt(std::max(Q(s.rho0) - lambda * lambda, 0.0));
    double k0 = std::sqrt(std::max(Q0(s.rho0) - lambda * lambda, 0.0));
    s.phi0 = std::atan2(lambda, k0);
    s.phiV = std::atan2(lambda, kV);
    s.logR0 = 0.5 * std::log1p(k0 * k0 / (lambda * lambda));
    s.logRV = 0.5 * std::log1p(kV * kV / (lambda * lambda));
    return s;
}

struct PairRun {
    Seed seed;
    std::vector<State> states;  // at each target radius
    long steps = 0;
};

PairRun integrate_pair(int k, double lambda, const RadialPotential& pot, int n, const std::vector<double>& targets,
                       const SolverOptions& opts, bool with_potential)
{
    if (!(lambda > 0.0))
        throw domain_error("lambda must be positive");
    if (k < 0)
        throw domain_error("k must be nonnegative");
    PairRun run;
    run.seed = make_seed(k, lambda, pot, n, opts.rho0);
    double rho = run.seed.rho0;
    State y = {run.seed.phi0 - lambda * rho, run.seed.phiV - run.seed.phi0, run.seed.logR0, run.seed.logRV};
    if (!with_potential) {
        y[1] = 0.0;
        y[3] = y[2];
    }
    PairSystem sys{&pot, centrifugal_constant(k, n), lambda, with_potential};
    auto stepper = odeint::make_controlled(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_fehlberg78<State>());
    double dt = std::min(0.1 / lambda, 0.1 * rho);
    double cap = opts.max_phase_step / lambda;
    for (double target : targets) {
        if (target < rho)
            throw domain_error("integration target lies below the start radius");
        while (rho < target) {
            double step = std::min({dt, target - rho, cap});
            bool last = step == target - rho;
            double trial = step;
            auto res = stepper.try_step(sys, y, rho, trial);
            if (res == odeint::success) {
                if (last)
                    rho = target;
                dt = last ? std::max(dt, trial) : trial;
                if (++run.steps > opts.max_steps)
                    throw tolerance_error("radial integration exceeded the step limit");
            } else {
                dt = trial;
                if (dt < 1e-12)
                    throw tolerance_error("radial integration step collapsed below 1e-12 (stiffness)");
            }
        }
        run.states.push_back(y);
    }
    return run;
}

// Tail phase: for large rho, S(rho) = lambda rho + C (coth rho - 1)/(2 lambda)
// solves S'^2 = lambda^2 - C/sinh^2 to first order.
std::complex<double> plane_wave_ratio(double lambda, double C, double rho, double phi, double& a_minus_mod,
                                      std::complex<double>& am, std::complex<double>& ap)
{
    double S = lambda * rho + C * (1.0 / std::tanh(rho) - 1.0) / (2.0 * lambda);
    double sh = std::sinh(rho);
    double Sp = lambda - C / (2.0 * lambda * sh * sh);
    std::complex<double> I(0.0, 1.0);
    double v = std::sin(phi);
    double dv = lambda * std::cos(phi);
    ap = 0.5 * (v + dv / (I * Sp)) * std::exp(-I * S);
    am = 0.5 * (v - dv / (I * Sp)) * std::exp(I * S);
    a_minus_mod = std::abs(am);
    return ap / am;
}

bool degenerate_gap(double lambda, double gap)
{
    double x = lambda * gap / pi;
    return std::abs(x - std::round(x)) * pi < 1e-3;
}

ConnectionCoefficients coefficients_from(int k, double lambda, double C, const std::vector<double>& radii,
                                         const std::vector<double>& phases, const std::vector<double>& log_r)
{
    ConnectionCoefficients cc;
    cc.k = k;
    cc.lambda = lambda;
    cc.rho_match = radii.front();
    cc.log_scale = log_r.front();
    std::complex<double> sum = 0.0;
    std::complex<double> am0, ap0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double mod = 0.0;
        std::complex<double> am, ap;
        sum += plane_wave_ratio(lambda, C, radii[i], phases[i], mod, am, ap);
        if (i == 0) {
            am0 = am;
            ap0 = ap;
        }
    }
    std::complex<double> ratio = sum / static_cast<double>(radii.size());
    cc.a_minus = am0;
    cc.a_plus = ratio * am0;
    return cc;
}

double wrap_angle(double x)
{
    double w = std::remainder(x, 2.0 * pi);
    if (w >= pi)
        w -= 2.0 * pi;
    return w;
}

double choose_gap(double lambda, double gap)
{
    for (int i = 0; i < 8; ++i) {
        double g = gap + 0.1 * i;
        if (!degenerate_gap(lambda, g))
            return g;
    }
    return gap;
}

}  // namespace

double centrifugal_constant(int k, int n) { return k * (k + n - 1.0) + n * (n - 2.0) / 4.0; }

double LiouvilleQ::centrifugal(double rho) const
{
    double sh = std::sinh(rho);
    return C / (sh * sh);
}

double LiouvilleQ::operator()(double rho) const { return pot(rho) + centrifugal(rho); }

LiouvilleQ liouville_Q(int k, const RadialPotential& pot, int n)
{
    if (k < 0 || n < 1)
        throw domain_error("liouville_Q: need k >= 0 and n >= 1");
    return LiouvilleQ{pot, centrifugal_constant(k, n)};
}

RegularSolution regular_solution(int k, double lambda, const RadialPotential& pot, int n, double rho_max,
                                 const SolverOptions& opts)
{
    PairRun run = integrate_pair(k, lambda, pot, n, {rho_max}, opts, true);
    const State& y = run.states.front();
    RegularSolution out;
    out.rho = rho_max;
    out.rho0 = run.seed.rho0;
    out.phase = lambda * rho_max + y[0] + y[1];
    out.value = std::sin(out.phase);
    out.derivative = lambda * std::cos(out.phase);
    out.log_scale = y[3];
    out.steps = run.steps;
    return out;
}

double default_rho_match(int k, double lambda, const RadialPotential& pot, int n)
{
    double rho = 12.0;
    rho = std::max(rho, pot.effective_radius(1e-16) + 1.0);
    double C = std::abs(centrifugal_constant(k, n));
    if (C > 0.0)
        rho = std::max(rho, 0.5 * std::log(4.0 * C / (lambda * lambda * 1e-10)));
    return rho;
}

ConnectionCoefficients connection_coefficients(int k, double lambda, const RadialPotential& pot, int n,
                                               double rho_match, const SolverOptions& opts)
{
    if (degenerate_gap(lambda, opts.rho_gap))
        throw tolerance_error("connection_coefficients: lambda times the matching gap is close to a multiple of pi");
    if (rho_match <= 0.0)
        rho_match = default_rho_match(k, lambda, pot, n);
    std::vector<double> radii = {rho_match, rho_match + opts.rho_gap};
    PairRun run = integrate_pair(k, lambda, pot, n, radii, opts, !pot.is_zero());
    std::vector<double> phases, logs;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const State& y = run.states[i];
        phases.push_back(lambda * radii[i] + y[0] + y[1]);
        logs.push_back(y[3]);
    }
    return coefficients_from(k, lambda, centrifugal_constant(k, n), radii, phases, logs);
}

PhaseShiftResult phase_shift_detail(int k, double lambda, const RadialPotential& pot, int n,
                                    const SolverOptions& opts)
{
    SolverOptions o = opts;
    o.rho_gap = choose_gap(lambda, opts.rho_gap);
    double rho_match = o.rho_match > 0.0 ? o.rho_match : default_rho_match(k, lambda, pot, n);
    std::vector<double> radii = {rho_match, rho_match + o.rho_gap};
    bool with_v = !pot.is_zero();
    PairRun run = integrate_pair(k, lambda, pot, n, radii, o, with_v);
    std::vector<double> ph0, phV, l0, lV;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const State& y = run.states[i];
        double p0 = lambda * radii[i] + y[0];
        ph0.push_back(p0);
        phV.push_back(p0 + y[1]);
        l0.push_back(y[2]);
        lV.push_back(y[3]);
    }
    double C = centrifugal_constant(k, n);
    PhaseShiftResult out;
    out.free = coefficients_from(k, lambda, C, radii, ph0, l0);
    out.with_potential = coefficients_from(k, lambda, C, radii, phV, lV);
    out.steps = run.steps;
    out.delta = with_v ? wrap_angle(std::arg(out.with_potential.ratio() / out.free.ratio())) : 0.0;
    return out;
}

double relative_phase_shift(int k, double lambda, const RadialPotential& pot, int n, const SolverOptions& opts)
{
    return phase_shift_detail(k, lambda, pot, n, opts).delta;
}

double free_phase_defect(int k, double lambda, int n, const SolverOptions& opts)
{
    auto res = phase_shift_detail(k, lambda, zero_potential(), n, opts);
    return wrap_angle(std::arg(res.free.ratio() / free_connection_ratio(k, lambda, n)));
}

PhaseShiftSpectrum phase_spectrum(double lambda, int kmax, const RadialPotential& pot, int n, double tol,
                                  MultiplicityRule rule, const SolverOptions& opts)
{
    if (kmax < 0)
        throw domain_error("phase_spectrum: kmax must be nonnegative");
    PhaseShiftSpectrum sp;
    sp.lambda = lambda;
    sp.n = n;
    sp.kmax = kmax;
    sp.tol = tol;
    sp.entries.resize(static_cast<std::size_t>(kmax) + 1);
    parallel_for(sp.entries.size(), [&](std::size_t i) {
        int k = static_cast<int>(i);
        double d = pot.is_zero() ? 0.0 : relative_phase_shift(k, lambda, pot, n, opts);
        std::int64_t m = rule == MultiplicityRule::harmonic ? harmonic_dimension(k, n) : binomial_multiplicity(k, n);
        sp.entries[i] = {k, d, m};
    });
    int kstart = static_cast<int>(std::ceil(0.9 * kmax));
    for (const auto& e : sp.entries)
        if (e.k >= kstart)
            sp.tail_bound = std::max(sp.tail_bound, std::abs(e.delta));
    if (sp.tail_bound > 10.0 * tol)
        sp.warnings.push_back("tail not converged: max |delta_k| over the last decile is " +
                              std::to_string(sp.tail_bound));
    return sp;
}

}  // namespace hypershift
