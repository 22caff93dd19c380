#include "hypershift/xray.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hypershift/parallel.hpp"
#include "hypershift/specfun.hpp"

namespace hypershift {

namespace {

constexpr double max_half_length = 200.0;

// Trapezoid rule on [lo, hi] with interval halving until two levels agree.
// For integrands smooth in u and negligible at both ends the rule converges
// geometrically; otherwise it gives up after a few levels.
template <class F>
std::optional<double> trapezoid_refine(F&& f, double lo, double hi, double tol)
{
    if (!(hi > lo))
        return 0.0;
    int n = 32;
    double h = (hi - lo) / n;
    double sum = 0.5 * (f(lo) + f(hi));
    double mag = std::abs(sum);
    for (int i = 1; i < n; ++i) {
        double v = f(lo + i * h);
        sum += v;
        mag += std::abs(v);
    }
    double est = sum * h;
    for (int level = 0; level < 9; ++level) {
        double add = 0.0;
        for (int i = 0; i < n; ++i) {
            double v = f(lo + (i + 0.5) * h);
            add += v;
            mag += std::abs(v);
        }
        sum += add;
        n *= 2;
        h *= 0.5;
        double next = sum * h;
        double floor = 64.0 * std::numeric_limits<double>::epsilon() * mag * h;
        if (level >= 1 && std::abs(next - est) <= std::max(0.25 * tol, floor))
            return next;
        est = next;
    }
    return std::nullopt;
}

// Adaptive Gauss-Kronrod over consecutive pieces; used when V is not smooth
// along the geodesic (a cone point at the origin, spline knots).
template <class F>
double piecewise_kronrod(F&& f, std::vector<double> cuts, double tol)
{
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0, err_total = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (!(cuts[i] > cuts[i - 1]))
            continue;
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i - 1], cuts[i], 20, 1e-14,
                                                                               &err);
        err_total += err;
    }
    if (err_total > tol)
        throw tolerance_error("X-ray quadrature did not reach the requested tolerance");
    return total;
}

// Half-length S of the u-window around the closest point such that the
// discarded tails are below tol/4, given |V| <= N e^{-m rho} and rho >= |u - u_c|.
double tail_half_length(double N, double m, double tol)
{
    if (N == 0.0)
        return 0.0;
    double S = std::log(8.0 * N / (m * tol)) / m;
    if (!(S <= max_half_length))
        throw tolerance_error("tail bound cannot certify the requested tolerance");
    return std::max(S, 0.0);
}

// Window [u_c - S, u_c + S] outside of which V vanishes, for a potential supported
// in rho <= rho_s and a geodesic with closest distance rho_min.
double support_half_length(double rho_s, double rho_min)
{
    if (rho_min >= rho_s)
        return -1.0;
    return std::acosh(std::cosh(rho_s) / std::cosh(rho_min));
}

std::vector<double> rho_scan_grid()
{
    std::vector<double> g;
    for (int i = 0; i <= 3000; ++i)
        g.push_back(0.02 * i);
    return g;
}

}  // namespace

static std::function<double(double)> sampled_interpolant(const ClassicalProfile& p)
{
    if (p.r_grid.empty())
        throw domain_error("ClassicalProfile: no samples");
    std::shared_ptr<boost::math::interpolators::pchip<std::vector<double>>> spline;
    if (p.r_grid.size() >= 4)
        spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
            std::vector<double>(p.r_grid), std::vector<double>(p.g_values));
    return [r_grid = p.r_grid, g = p.g_values, m = p.tail_exponent, spline](double r) {
        if (r <= r_grid.front())
            return g.front();
        if (r >= r_grid.back()) {
            if (!(m > 0.0) || !std::isfinite(m))
                return 0.0;
            return g.back() * std::pow((1.0 + r_grid.back()) / (1.0 + r), m);
        }
        if (spline)
            return (*spline)(r);
        auto it = std::upper_bound(r_grid.begin(), r_grid.end(), r);
        std::size_t i = static_cast<std::size_t>(it - r_grid.begin());
        double w = (r - r_grid[i - 1]) / (r_grid[i] - r_grid[i - 1]);
        return (1.0 - w) * g[i - 1] + w * g[i];
    };
}

double ClassicalProfile::operator()(double r) const
{
    if (evaluator)
        return evaluator(r);
    return sampled_interpolant(*this)(r);
}

double xray_general(const AmbientPotential& pot, const GeodesicChart& chart, double tol)
{
    if (!(tol > 0.0))
        throw domain_error("xray_general: tol must be positive");
    double a = chart.xi_norm();
    double a2 = a * a;
    double rho_min = geodesic_min_rho(a);
    double uc = 0.5 * std::log1p(4.0 * a2);

    // Points closer to the boundary than rounding resolves are dropped; V is
    // required to vanish there.
    auto point = [&](double u) -> std::optional<Vec> {
        double e = std::exp(u);
        if (1.0 + e == 1.0)
            return std::nullopt;
        double t = -0.5 * (1.0 + e);
        Vec g = chart.theta() + (t * chart.theta() + chart.xi()) / (t * t + a2);
        if (!(g.norm() < 1.0))
            return std::nullopt;
        return g;
    };
    auto integrand = [&](double u) {
        auto g = point(u);
        return g ? pot.eval(*g) : 0.0;
    };

    double S;
    if (pot.support_delta) {
        double rho_s = rho_of_radius(1.0 - *pot.support_delta);
        S = support_half_length(rho_s, rho_min);
        if (S < 0.0)
            return 0.0;
    } else {
        double m = std::isfinite(pot.decay_exponent) ? pot.decay_exponent : pot.working_exponent;
        if (!(m > 1.0))
            throw domain_error("xray_general: decay exponent must exceed 1");
        std::vector<BallPoint> samples;
        for (int i = -2000; i <= 2000; ++i) {
            if (auto g = point(uc + 0.05 * i))
                samples.emplace_back(*g);
        }
        double N = weighted_norm(pot, m, samples);
        S = tail_half_length(N, m, tol);
        if (S == 0.0)
            return 0.0;
    }
    if (auto v = trapezoid_refine(integrand, uc - S, uc + S, tol))
        return *v;
    return piecewise_kronrod(integrand, {uc - S, uc, uc + S}, tol);
}

double radial_xray_integral(const RadialPotential& pot, double a, double tol)
{
    if (!(a >= 0.0))
        throw domain_error("radial_xray_integral: argument must be nonnegative");
    if (!(tol > 0.0))
        throw domain_error("radial_xray_integral: tol must be positive");
    if (pot.is_zero())
        return 0.0;
    double a2 = a * a;
    double rho_min = geodesic_min_rho(a);
    double uc = 0.5 * std::log1p(4.0 * a2);

    // u = log(-(1+2t)) turns dt/(1+2t) into du/2 with reversed orientation;
    // 1 - A^2 = e^u/(t^2+a^2) exactly, so T = 2 log(1+A) - log(1-A^2).
    auto T = [&](double u) {
        double t = -0.5 * (1.0 + std::exp(u));
        double d = t * t + a2;
        double one_minus_A2 = std::exp(u) / d;
        double A = std::sqrt(std::max(0.0, 1.0 - one_minus_A2));
        return 2.0 * std::log1p(A) - u + std::log(d);
    };
    auto integrand = [&](double u) { return pot(T(u)); };

    double S;
    if (std::isfinite(pot.support_rho)) {
        S = support_half_length(pot.support_rho, rho_min);
        if (S < 0.0)
            return 0.0;
    } else {
        double m = pot.working_exponent();
        if (!(m > 1.0))
            throw domain_error("radial_xray_integral: decay exponent must exceed 1");
        double N = weighted_norm(pot, m, rho_scan_grid());
        S = tail_half_length(N, m, tol);
        if (S == 0.0)
            return 0.0;
    }
    if (auto v = trapezoid_refine(integrand, uc - S, uc + S, 2.0 * tol))
        return -0.5 * *v;
    // cosh(rho) = cosh(rho_min) cosh(u - u_c) places the knots of V along the line
    std::vector<double> cuts = {uc - S, uc, uc + S};
    for (double b : pot.breakpoints) {
        if (b <= rho_min)
            continue;
        double s = std::acosh(std::cosh(b) / std::cosh(rho_min));
        if (s < S) {
            cuts.push_back(uc - s);
            cuts.push_back(uc + s);
        }
    }
    return -0.5 * piecewise_kronrod(integrand, cuts, 2.0 * tol);
}

double classical_profile_value(const RadialPotential& pot, double r, double tol, ProfileNormalization norm,
                               int n)
{
    double scale = norm == ProfileNormalization::arclength ? 1.0 : std::ldexp(1.0, n);
    return scale * radial_xray_integral(pot, 0.5 * r, tol / scale);
}

ClassicalProfile xray_radial_profile(const RadialPotential& pot, const std::vector<double>& r_grid, double tol,
                                     ProfileNormalization norm, int n)
{
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] >= 0.0))
            throw domain_error("xray_radial_profile: r must be nonnegative");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw domain_error("xray_radial_profile: r_grid must be strictly increasing");
    }
    ClassicalProfile p;
    p.r_grid = r_grid;
    p.g_values.assign(r_grid.size(), 0.0);
    p.normalization = norm;
    p.tail_exponent = pot.decay_exponent;
    parallel_for(r_grid.size(),
                 [&](std::size_t i) { p.g_values[i] = classical_profile_value(pot, r_grid[i], tol, norm, n); });
    p.monotone_decreasing = true;
    for (std::size_t i = 1; i < r_grid.size(); ++i)
        if (p.g_values[i] > p.g_values[i - 1] + 1e-10)
            p.monotone_decreasing = false;
    p.evaluator = [pot, tol, norm, n](double r) { return classical_profile_value(pot, r, tol, norm, n); };
    return p;
}

ClassicalProfile profile_from_function(std::function<double(double)> g, const std::vector<double>& r_grid,
                                       double tail_exponent)
{
    ClassicalProfile p;
    p.r_grid = r_grid;
    for (double r : r_grid)
        p.g_values.push_back(g(r));
    p.tail_exponent = tail_exponent;
    p.monotone_decreasing = true;
    for (std::size_t i = 1; i < r_grid.size(); ++i)
        if (p.g_values[i] > p.g_values[i - 1] + 1e-10)
            p.monotone_decreasing = false;
    p.evaluator = std::move(g);
    return p;
}

double classical_nu_integral(const ClassicalProfile& profile, const std::function<double(double)>& f, int n,
                             double tol)
{
    if (n < 1)
        throw domain_error("classical_nu_integral: n must be positive");
    if (f(0.0) != 0.0)
        throw domain_error("classical_nu_integral: f(0) != 0 is not integrable against nu");
    using boost::math::quadrature::gauss_kronrod;
    double pref = sphere_volume(n) * sphere_volume(n - 1);

    if (profile.evaluator) {
        // r = sinh u; panels of unit length until the integrand is negligible
        auto integrand = [&](double u) {
            double r = std::sinh(u);
            return f(profile.evaluator(r)) * std::pow(r, n - 1) * std::cosh(u);
        };
        double total = 0.0;
        int quiet = 0;
        for (int j = 0; j < 80; ++j) {
            double err = 0.0;
            double piece = gauss_kronrod<double, 15>::integrate(integrand, j, j + 1.0, 12, 1e-12, &err);
            total += piece;
            if (std::abs(piece) < 1e-3 * tol / pref)
                ++quiet;
            else
                quiet = 0;
            if (quiet >= 2)
                return pref * total;
        }
        throw tolerance_error("classical_nu_integral: integrand does not decay");
    }

    const auto& r = profile.r_grid;
    if (r.size() < 2)
        throw domain_error("classical_nu_integral: profile needs at least two samples");
    auto G = sampled_interpolant(profile);
    auto integrand = [&](double x) { return f(G(x)) * std::pow(x, n - 1); };
    double total = r.front() > 0.0 ? gauss_kronrod<double, 15>::integrate(integrand, 0.0, r.front(), 10, 1e-12)
                                   : 0.0;
    for (std::size_t i = 1; i < r.size(); ++i)
        total += gauss_kronrod<double, 15>::integrate(integrand, r[i - 1], r[i], 10, 1e-12);
    if (std::isfinite(profile.tail_exponent) && profile.tail_exponent > 0.0) {
        boost::math::quadrature::exp_sinh<double> es;
        double rl = r.back();
        total += es.integrate([&](double x) { return integrand(rl + x); }, 0.0,
                              std::numeric_limits<double>::infinity());
    }
    return pref * total;
}

double decay_constant(const ClassicalProfile& profile, double m)
{
    double c = 0.0;
    for (std::size_t i = 0; i < profile.r_grid.size(); ++i)
        c = std::max(c, std::abs(profile.g_values[i]) * std::pow(1.0 + profile.r_grid[i], m));
    return c;
}

}  // namespace hypershift
