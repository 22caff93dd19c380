#include "hypershift/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "hypershift/parallel.hpp"
#include "hypershift/specfun.hpp"

namespace hypershift {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double cubic_bspline(double x)
{
    if (x <= 0.0 || x >= 4.0)
        return 0.0;
    if (x < 1.0)
        return x * x * x / 6.0;
    if (x < 2.0)
        return (((-3.0 * x + 12.0) * x - 12.0) * x + 4.0) / 6.0;
    if (x < 3.0)
        return (((3.0 * x - 24.0) * x + 60.0) * x - 44.0) / 6.0;
    double y = 4.0 - x;
    return y * y * y / 6.0;
}

struct Basis {
    double t0 = 0.0;
    double h = 0.1;
    int intervals = 0;
    double rho_end = 0.0;
    double m = inf;

    int spline_count() const { return intervals + 3; }
    int size() const { return spline_count() + (std::isfinite(m) ? 1 : 0); }
    // knot t_j of spline j, j = 0..spline_count()-1, is t0 + (j - 3) h
    double left(int j) const { return t0 + (j - 3) * h; }
    double eval(int j, double rho) const
    {
        if (j < spline_count())
            return cubic_bspline((rho - left(j)) / h);
        return rho <= rho_end ? 1.0 : std::exp(-m * (rho - rho_end));
    }
};

Basis make_basis(const std::vector<double>& knots, double m)
{
    if (knots.size() < 2)
        throw domain_error("potential_from_profile: need at least two knots");
    Basis b;
    b.t0 = knots.front();
    b.intervals = static_cast<int>(knots.size()) - 1;
    b.h = (knots.back() - knots.front()) / b.intervals;
    b.rho_end = knots.back();
    b.m = m;
    if (b.t0 != 0.0)
        throw domain_error("potential_from_profile: rho_grid must start at 0");
    for (std::size_t i = 0; i < knots.size(); ++i)
        if (std::abs(knots[i] - (b.t0 + i * b.h)) > 1e-9 * (1.0 + b.rho_end))
            throw domain_error("potential_from_profile: rho_grid must be uniform");
    if (std::isfinite(m) && !(m > 0.0))
        throw domain_error("potential_from_profile: tail exponent must be positive");
    return b;
}

// Along the geodesic at distance rho_m from the origin, cosh(rho) = cosh(rho_m) cosh(s).
double rho_of_s(double rho_m, double s)
{
    double a = std::sinh(rho_m), b = std::cosh(rho_m) * std::sinh(s);
    return std::asinh(std::sqrt(a * a + b * b));
}

double s_of_rho(double rho_m, double rho)
{
    double q = std::sinh(0.5 * (rho + rho_m)) * std::sinh(0.5 * (rho - rho_m)) / std::cosh(rho_m);
    return 2.0 * std::asinh(std::sqrt(std::max(q, 0.0)));
}

// -int_0^inf f(rho(s)) ds for f supported in [lo, hi] and smooth between breaks.
template <class F>
double half_line_integral(F&& f, double rho_m, std::vector<double> breaks)
{
    using boost::math::quadrature::gauss;
    breaks.push_back(rho_m);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double total = 0.0;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        double a = breaks[i - 1], b = breaks[i];
        if (b <= rho_m)
            continue;
        a = std::max(a, rho_m);
        double sa = s_of_rho(rho_m, a), sb = s_of_rho(rho_m, b);
        total += gauss<double, 10>::integrate([&](double s) { return f(rho_of_s(rho_m, s)); }, sa, sb);
    }
    return -total;
}

double basis_forward(const Basis& basis, int j, double rho_m)
{
    if (j < basis.spline_count()) {
        double lo = basis.left(j), hi = lo + 4.0 * basis.h;
        if (hi <= rho_m)
            return 0.0;
        std::vector<double> breaks;
        for (int q = 0; q <= 4; ++q)
            breaks.push_back(lo + q * basis.h);
        return half_line_integral([&](double rho) { return basis.eval(j, rho); }, rho_m, breaks);
    }
    // tail element: constant up to rho_end, exponential beyond
    double total = 0.0;
    if (rho_m < basis.rho_end)
        total += half_line_integral([](double) { return 1.0; }, rho_m, {0.0, basis.rho_end});
    double start = std::max(rho_m, basis.rho_end);
    double s0 = s_of_rho(rho_m, start);
    boost::math::quadrature::exp_sinh<double> es;
    double m = basis.m, re = basis.rho_end;
    total -= es.integrate([&](double s) { return std::exp(-m * (rho_of_s(rho_m, s0 + s) - re)); }, 0.0, inf);
    return total;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

MonotoneProfile profile_from_measure(const NuDistribution& nu, int n, const std::vector<double>& value_grid)
{
    if (n < 1)
        throw domain_error("profile_from_measure: n must be positive");
    for (std::size_t i = 0; i < value_grid.size(); ++i) {
        if (!(value_grid[i] > 0.0))
            throw domain_error("profile_from_measure: levels must be positive");
        if (i > 0 && !(value_grid[i] > value_grid[i - 1]))
            throw domain_error("profile_from_measure: levels must increase");
    }
    double norm = sphere_volume(n) * ball_volume(n);
    std::vector<double> r(value_grid.size());
    for (std::size_t i = 0; i < value_grid.size(); ++i) {
        double mass = nu(value_grid[i], inf);
        if (mass < 0.0)
            throw domain_error("profile_from_measure: negative mass");
        r[i] = std::pow(mass / norm, 1.0 / n);
    }
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] > r[i - 1] * (1.0 + 1e-12) + 1e-300)
            throw domain_error("profile_from_measure: r(alpha) increases, data are not monotone");

    MonotoneProfile p;
    for (std::size_t i = r.size(); i-- > 0;) {
        if (!(r[i] > 0.0))
            continue;
        if (!p.r_grid.empty() && !(r[i] > p.r_grid.back()))
            continue;
        p.r_grid.push_back(r[i]);
        p.g_values.push_back(value_grid[i]);
    }
    if (p.r_grid.empty()) {
        p.r_grid = {0.0};
        p.g_values = {0.0};
        p.finite_support = true;
        return p;
    }
    p.g0 = p.g_values.front();
    p.support_radius = p.r_grid.back();
    p.finite_support = false;
    return p;
}

NuDistribution nu_from_profile(const ClassicalProfile& profile, int n, double r_max)
{
    double norm = sphere_volume(n) * ball_volume(n);
    // r(alpha) = sup{r : G(r) > alpha} by bisection on the non-increasing profile
    auto radius = [profile, r_max](double alpha) {
        if (!(alpha < profile(0.0)))
            return 0.0;
        double lo = 0.0, hi = 1.0;
        while (profile(hi) > alpha) {
            lo = hi;
            hi *= 2.0;
            if (hi > r_max)
                return inf;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            (profile(mid) > alpha ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    return [radius, norm, n](double alpha, double beta) {
        if (!(beta > alpha))
            return 0.0;
        double ra = radius(alpha);
        double rb = std::isfinite(beta) ? radius(beta) : 0.0;
        return norm * (std::pow(ra, n) - std::pow(rb, n));
    };
}

NuDistribution nu_from_spectrum(const PhaseShiftSpectrum& spectrum)
{
    double h = 1.0 / spectrum.lambda;
    double scale = std::pow(2.0 * std::numbers::pi * h, spectrum.n);
    std::vector<double> t, w;
    for (const auto& e : spectrum.entries) {
        t.push_back(e.delta / h);
        w.push_back(static_cast<double>(e.multiplicity));
    }
    return [t, w, scale](double alpha, double beta) {
        double s = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] > alpha && t[i] < beta)
                s += w[i];
        return scale * s;
    };
}

MonotoneProfile monotone_from_classical(const ClassicalProfile& profile)
{
    MonotoneProfile p;
    p.r_grid = profile.r_grid;
    p.g_values = profile.g_values;
    if (p.r_grid.empty())
        throw domain_error("monotone_from_classical: empty profile");
    for (std::size_t i = 1; i < p.g_values.size(); ++i)
        if (p.g_values[i] > p.g_values[i - 1] + 1e-10)
            throw domain_error("monotone_from_classical: profile is not non-increasing");
    p.g0 = p.g_values.front();
    p.support_radius = p.r_grid.back();
    return p;
}

std::vector<double> default_rho_grid(const MonotoneProfile& profile, double spacing)
{
    double rho_end = std::asinh(profile.r_grid.back());
    int n = std::max(1, static_cast<int>(std::ceil(rho_end / spacing - 1e-9)));
    std::vector<double> g;
    for (int i = 0; i <= n; ++i)
        g.push_back(i * spacing);
    return g;
}

Eigen::MatrixXd inversion_forward_matrix(const std::vector<double>& r, const std::vector<double>& knots,
                                         double tail_exponent)
{
    Basis basis = make_basis(knots, tail_exponent);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(r.size()), basis.size());
    parallel_for(static_cast<std::size_t>(basis.size()), [&](std::size_t jj) {
        int j = static_cast<int>(jj);
        for (std::size_t i = 0; i < r.size(); ++i)
            A(static_cast<Eigen::Index>(i), j) = basis_forward(basis, j, std::asinh(r[i]));
    });
    return A;
}

InversionResult potential_from_profile(const MonotoneProfile& profile, int n, const std::vector<double>& rho_grid,
                                       double reg, double tail_exponent)
{
    (void)n;  // the arclength profile does not depend on the dimension
    for (std::size_t i = 1; i < profile.g_values.size(); ++i)
        if (profile.g_values[i] > profile.g_values[i - 1] + 1e-10)
            throw domain_error("potential_from_profile: profile must be non-increasing");
    Basis basis = make_basis(rho_grid, tail_exponent);
    InversionResult out;
    out.knots = rho_grid;

    Eigen::Map<const Eigen::VectorXd> g(profile.g_values.data(), static_cast<Eigen::Index>(profile.g_values.size()));
    if (max_abs(g) == 0.0) {
        out.coefficients = Eigen::VectorXd::Zero(basis.size());
        out.potential = zero_potential();
        return out;
    }
    Eigen::MatrixXd A = inversion_forward_matrix(profile.r_grid, rho_grid, tail_exponent);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0.0 && A.rows() >= A.cols() ? sv(0) / sv(sv.size() - 1) : inf;
    Eigen::VectorXd ug = svd.matrixU().transpose() * g;

    auto solve = [&](double lam) {
        Eigen::VectorXd f(sv.size());
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            f(i) = sv(i) > 0.0 ? sv(i) / (sv(i) * sv(i) + lam) * ug(i) : 0.0;
        return Eigen::VectorXd(svd.matrixV() * f);
    };

    std::vector<double> sweep = {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6};
    double best_prod = inf, best_reg = 0.0;
    for (double lam : sweep) {
        if (lam == 0.0 && out.condition > 1e12)
            continue;
        Eigen::VectorXd c = solve(lam);
        LCurvePoint pt{lam, (A * c - g).norm(), c.norm()};
        out.lcurve.push_back(pt);
        double prod = pt.residual_norm * pt.solution_norm;
        if (prod < best_prod) {
            best_prod = prod;
            best_reg = lam;
        }
    }
    if (reg < 0.0)
        reg = best_reg;
    if (reg == 0.0 && out.condition > 1e12)
        throw tolerance_error("potential_from_profile: system is ill-conditioned (condition " +
                              std::to_string(out.condition) + "); use reg > 0");
    out.reg = reg;
    out.coefficients = solve(reg);
    out.max_residual = max_abs(A * out.coefficients - g);

    RadialPotential pot;
    auto coef = out.coefficients;
    pot.profile = [basis, coef](double rho) {
        double v = 0.0;
        int j0 = static_cast<int>(std::floor(rho / basis.h));
        for (int j = std::max(0, j0); j <= std::min(basis.spline_count() - 1, j0 + 3); ++j)
            v += coef(j) * basis.eval(j, rho);
        if (basis.size() > basis.spline_count())
            v += coef(basis.spline_count()) * basis.eval(basis.spline_count(), rho);
        return v;
    };
    pot.family = Family::reconstructed;
    pot.decay_exponent = tail_exponent;
    pot.params = {{"knot_spacing", basis.h}, {"reg", reg}};
    pot.breakpoints = rho_grid;
    if (!std::isfinite(tail_exponent))
        pot.support_rho = basis.rho_end + 3.0 * basis.h;
    out.potential = std::move(pot);
    return out;
}

}  // namespace hypershift
