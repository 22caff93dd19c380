#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypershift/inversion.hpp"
#include "hypershift/specfun.hpp"

using namespace hypershift;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> u_grid(double u_max, double du)
{
    std::vector<double> r;
    for (int i = 0; i * du <= u_max + 1e-12; ++i)
        r.push_back(std::sinh(i * du));
    return r;
}

// G(r) = e^{-r}: nu(alpha, inf) = vol(S^n) vol(B^n) (-log alpha)^n
NuDistribution exp_measure(int n)
{
    double c = sphere_volume(n) * ball_volume(n);
    return [c, n](double a, double b) {
        auto tail = [n](double x) { return x < 1.0 ? std::pow(-std::log(x), n) : 0.0; };
        return c * (tail(a) - (std::isfinite(b) ? tail(b) : 0.0));
    };
}

std::vector<double> levels(int count, double step)
{
    std::vector<double> a;
    for (int i = count; i >= 1; --i)
        a.push_back(std::exp(-step * i));
    return a;
}

}  // namespace

TEST_CASE("monotone rearrangement of e^{-r}")
{
    for (int n = 1; n <= 3; ++n) {
        auto p = profile_from_measure(exp_measure(n), n, levels(300, 0.05));
        REQUIRE(p.r_grid.size() == 300);
        CHECK(std::is_sorted(p.r_grid.begin(), p.r_grid.end()));
        for (std::size_t i = 0; i < p.r_grid.size(); ++i)
            CHECK(std::abs(p.g_values[i] - std::exp(-p.r_grid[i])) < 1e-12);
    }
    // refining the level grid leaves shared points unchanged
    auto coarse = profile_from_measure(exp_measure(2), 2, levels(50, 0.2));
    auto fine = profile_from_measure(exp_measure(2), 2, levels(200, 0.05));
    for (std::size_t i = 0; i < coarse.r_grid.size(); ++i)
        CHECK(coarse.r_grid[i] == doctest::Approx(fine.r_grid[4 * i + 3]).epsilon(1e-13));
}

TEST_CASE("degenerate and invalid measures")
{
    auto zero = profile_from_measure([](double, double) { return 0.0; }, 1, {0.1, 0.5});
    CHECK(zero.r_grid == std::vector<double>{0.0});
    CHECK(zero.g_values == std::vector<double>{0.0});
    CHECK(zero.finite_support);
    // mass growing with the level is not a distribution of a monotone profile
    NuDistribution bad = [](double a, double) { return a; };
    CHECK_THROWS_AS(profile_from_measure(bad, 1, {0.1, 0.2}), domain_error);
    CHECK_THROWS_AS(profile_from_measure(exp_measure(1), 1, {0.2, 0.1}), domain_error);
    CHECK_THROWS_AS(profile_from_measure(exp_measure(1), 1, {0.0, 0.1}), domain_error);
}

TEST_CASE("measures from profiles and spectra")
{
    ClassicalProfile g;
    g.evaluator = [](double r) { return std::exp(-r); };
    for (int n = 1; n <= 3; ++n) {
        auto nu = nu_from_profile(g, n);
        auto ref = exp_measure(n);
        for (double a : {0.01, 0.3, 0.9})
            CHECK(nu(a, INFINITY) == doctest::Approx(ref(a, INFINITY)).epsilon(1e-12));
        CHECK(nu(0.3, 0.6) == doctest::Approx(ref(0.3, 0.6)).epsilon(1e-12));
        CHECK(nu(1.5, INFINITY) == 0.0);
        CHECK(nu(0.5, 0.4) == 0.0);
    }
    PhaseShiftSpectrum sp;
    sp.lambda = 10.0;
    sp.n = 2;
    sp.entries = {{0, 0.05, 1}, {1, 0.02, 3}, {2, -0.01, 5}};
    auto nu = nu_from_spectrum(sp);
    double s = std::pow(2 * pi / 10.0, 2);
    CHECK(nu(0.0, INFINITY) == doctest::Approx(4 * s));
    CHECK(nu(0.3, INFINITY) == doctest::Approx(s));
    CHECK(nu(-INFINITY, 0.0) == doctest::Approx(5 * s));
}

TEST_CASE("roundtrip through the X-ray profile")
{
    auto V = gaussian_rho(0.5, 1.0);
    auto prof = monotone_from_classical(xray_radial_profile(V, u_grid(5.0, 0.025), 1e-12));
    auto inv = potential_from_profile(prof, 1, default_rho_grid(prof), 1e-10);
    double worst = 0.0;
    for (int i = 0; i <= 300; ++i)
        worst = std::max(worst, std::abs(inv.potential(0.01 * i) - V(0.01 * i)));
    CHECK(worst < 1e-3);
    CHECK(inv.max_residual < 1e-6);
    CHECK(inv.reg == 1e-10);
    CHECK(inv.potential.family == Family::reconstructed);

    // the fitted coefficients reproduce the data through the forward matrix,
    // and the forward matrix agrees with the X-ray of the reconstruction
    auto A = inversion_forward_matrix(prof.r_grid, inv.knots, INFINITY);
    Eigen::VectorXd fit = A * inv.coefficients;
    for (Eigen::Index i = 0; i < fit.size(); i += 20) {
        CHECK(std::abs(fit(i) - prof.g_values[i]) < 1e-6);
        CHECK(std::abs(classical_profile_value(inv.potential, prof.r_grid[i]) - fit(i)) < 1e-9);
    }

    // automatic selection picks a parameter from the sweep
    auto autosel = potential_from_profile(prof, 1, default_rho_grid(prof), -1.0);
    CHECK(autosel.lcurve.size() >= 7);
    CHECK(std::abs(autosel.potential(0.5) - V(0.5)) < 1e-2);
}

TEST_CASE("linearity and tails")
{
    auto V = exp_decay(1.0, 3.0);
    auto r = u_grid(5.0, 0.025);
    auto p1 = monotone_from_classical(xray_radial_profile(V, r, 1e-12));
    auto p2 = p1;
    for (double& g : p2.g_values)
        g *= 2.0;
    auto knots = default_rho_grid(p1, 0.1);
    auto i1 = potential_from_profile(p1, 1, knots, 1e-10, 3.0);
    auto i2 = potential_from_profile(p2, 1, knots, 1e-10, 3.0);
    CHECK((i2.coefficients - 2.0 * i1.coefficients).norm() < 1e-9 * i1.coefficients.norm());
    CHECK(i1.coefficients.size() == static_cast<Eigen::Index>(knots.size()) + 3);
    for (double rho : {0.5, 1.0, 2.0, 6.0})
        CHECK(std::abs(i1.potential(rho) - V(rho)) < 1e-3);
}

TEST_CASE("inversion errors")
{
    auto V = gaussian_rho(0.5, 1.0);
    auto prof = monotone_from_classical(xray_radial_profile(V, u_grid(3.0, 0.05), 1e-12));
    auto knots = default_rho_grid(prof);
    auto rising = prof;
    std::reverse(rising.g_values.begin(), rising.g_values.end());
    CHECK_THROWS_AS(potential_from_profile(rising, 1, knots, 1e-10), domain_error);
    std::vector<double> shifted = knots;
    for (double& k : shifted)
        k += 0.1;
    CHECK_THROWS_AS(potential_from_profile(prof, 1, shifted, 1e-10), domain_error);
    std::vector<double> uneven = {0.0, 0.1, 0.3, 0.4};
    CHECK_THROWS_AS(potential_from_profile(prof, 1, uneven, 1e-10), domain_error);
    CHECK_THROWS_AS(potential_from_profile(prof, 1, knots, 1e-10, -1.0), domain_error);
    ClassicalProfile up;
    up.r_grid = {0.0, 1.0};
    up.g_values = {0.0, 1.0};
    CHECK_THROWS_AS(monotone_from_classical(up), domain_error);

    // more unknowns than the data resolve: unregularised solve refuses
    auto few = monotone_from_classical(xray_radial_profile(V, u_grid(3.0, 0.3), 1e-12));
    auto dense = default_rho_grid(few, 0.02);
    auto ok = potential_from_profile(few, 1, dense, 1e-8);
    CHECK(ok.condition > 1e12);
    CHECK_THROWS_AS(potential_from_profile(few, 1, dense, 0.0), tolerance_error);

    // zero data give the zero potential
    auto flat = prof;
    std::fill(flat.g_values.begin(), flat.g_values.end(), 0.0);
    auto z = potential_from_profile(flat, 1, knots, -1.0);
    CHECK(z.potential(0.3) == 0.0);
}
