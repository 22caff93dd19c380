#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "hypershift/radial_scattering.hpp"
#include "hypershift/specfun.hpp"

using namespace hypershift;

namespace {

constexpr double pi = std::numbers::pi;

double wrap(double x)
{
    double y = std::remainder(x, 2 * pi);
    return y >= pi ? y - 2 * pi : y;
}

// Classical RK4 on v'' = (Q - lambda^2) v from a two-term Frobenius start.
// Returns (v, v') at rho_end, up to normalisation.
std::array<double, 2> rk4_regular(int k, double lambda, const RadialPotential& pot, int n, double rho_end, double h)
{
    LiouvilleQ Q = liouville_Q(k, pot, n);
    double a = k + 0.5 * n;
    double rho = 1e-3;
    // C/sinh^2 = C/rho^2 - C/3 + O(rho^2)
    double c2 = (pot(0.0) - lambda * lambda - Q.C / 3.0) / (4.0 * a + 2.0);
    std::array<double, 2> y = {std::pow(rho, a) * (1.0 + c2 * rho * rho),
                               std::pow(rho, a - 1.0) * (a + (a + 2.0) * c2 * rho * rho)};
    auto f = [&](double r, const std::array<double, 2>& s) {
        return std::array<double, 2>{s[1], (Q(r) - lambda * lambda) * s[0]};
    };
    int steps = static_cast<int>(std::round((rho_end - rho) / h));
    h = (rho_end - rho) / steps;
    for (int i = 0; i < steps; ++i) {
        auto k1 = f(rho, y);
        auto k2 = f(rho + h / 2, {y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]});
        auto k3 = f(rho + h / 2, {y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]});
        auto k4 = f(rho + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
        for (int j = 0; j < 2; ++j)
            y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        rho += h;
    }
    return y;
}

// angle of (v, v'/lambda) modulo pi
double angle_mod_pi(double v, double dv, double lambda)
{
    double t = std::atan2(v, dv / lambda);
    return std::remainder(t, pi);
}

}  // namespace

TEST_CASE("centrifugal constant and Q")
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k < 20; ++k) {
            double a = k + 0.5 * n;
            CHECK(centrifugal_constant(k, n) == doctest::Approx(a * (a - 1.0)).epsilon(1e-15));
        }
    CHECK(centrifugal_constant(0, 2) == 0.0);
    CHECK(centrifugal_constant(0, 1) == -0.25);
    auto pot = gaussian_rho(0.5, 1.0);
    LiouvilleQ Q = liouville_Q(3, pot, 2);
    for (double r : {0.1, 1.0, 4.0})
        CHECK(Q(r) == doctest::Approx(pot(r) + 12.0 / std::pow(std::sinh(r), 2)).epsilon(1e-14));
    CHECK_THROWS_AS(liouville_Q(-1, pot, 2), domain_error);
}

TEST_CASE("regular solution against a fixed-step RK4 oracle")
{
    struct Case {
        int k, n;
        double lambda;
        RadialPotential pot;
    };
    Case cases[] = {
        {2, 1, 5.0, gaussian_rho(1.0, 1.0)},
        {0, 2, 3.0, gaussian_rho(0.5, 1.0)},
        {1, 3, 4.0, exp_decay(1.0, 2.0)},
        {0, 1, 2.0, zero_potential()},
    };
    for (const auto& c : cases) {
        CAPTURE(c.k);
        CAPTURE(c.n);
        double rho_end = 3.0;
        auto ref = rk4_regular(c.k, c.lambda, c.pot, c.n, rho_end, 2e-5);
        auto sol = regular_solution(c.k, c.lambda, c.pot, c.n, rho_end);
        CHECK(sol.rho == doctest::Approx(rho_end));
        double got = angle_mod_pi(sol.value, sol.derivative, c.lambda);
        double want = angle_mod_pi(ref[0], ref[1], c.lambda);
        CHECK(std::abs(std::remainder(got - want, pi)) < 1e-8);
        // the Pruefer angle agrees with the returned pair
        CHECK(std::abs(std::remainder(sol.phase - got, pi)) < 1e-10);
    }
}

TEST_CASE("k = 0 on H^3 is an explicit sine")
{
    // n = 2, k = 0: Q = V, so for V = 0 the regular solution is sin(lambda rho)
    for (double l : {0.7, 10.0, 123.4}) {
        auto sol = regular_solution(0, l, zero_potential(), 2, 5.0);
        double want = std::remainder(l * 5.0, pi);
        CHECK(std::abs(std::remainder(angle_mod_pi(sol.value, sol.derivative, l) - want, pi)) < 1e-9);
        auto cc = connection_coefficients(0, l, zero_potential(), 2, 0.0);
        CHECK(std::abs(cc.ratio() + 1.0) < 1e-9);
    }
    // with a potential, delta = 2 eta where v ~ sin(lambda rho + eta) beyond the support
    auto pot = bump_ball(2.0, 0.3);
    double l = 4.0;
    double rho_end = 2.0;
    auto ref = rk4_regular(0, l, pot, 2, rho_end, 1e-5);
    double eta = std::atan2(ref[0], ref[1] / l) - l * rho_end;
    double delta = relative_phase_shift(0, l, pot, 2);
    CHECK(std::abs(wrap(delta - 2.0 * eta)) < 1e-8);
}

TEST_CASE("zero potential and free defect")
{
    for (int n = 1; n <= 3; ++n)
        for (int k : {0, 1, 5, 40, 150}) {
            CHECK(relative_phase_shift(k, 30.0, zero_potential(), n) == 0.0);
            CHECK(std::abs(free_phase_defect(k, 30.0, n)) < 1e-7);
        }
    // small lambda and a large degree still match the closed form
    CHECK(std::abs(free_phase_defect(3, 0.5, 1)) < 1e-7);
    CHECK(std::abs(free_phase_defect(60, 2.0, 2)) < 1e-7);
}

TEST_CASE("matching radius does not change delta")
{
    auto pot = gaussian_rho(0.5, 1.0);
    for (int k : {0, 7, 30}) {
        SolverOptions a, b;
        a.rho_match = default_rho_match(k, 20.0, pot, 1);
        b.rho_match = a.rho_match + 1.3;
        double da = relative_phase_shift(k, 20.0, pot, 1, a);
        double db = relative_phase_shift(k, 20.0, pot, 1, b);
        CHECK(std::abs(wrap(da - db)) < 1e-8);
        // unitarity of the connection coefficients
        auto det = phase_shift_detail(k, 20.0, pot, 1, a);
        CHECK(std::abs(std::abs(det.with_potential.ratio()) - 1.0) < 1e-8);
    }
}

TEST_CASE("attractive potentials push phases forward")
{
    auto pot = gaussian_rho(0.5, 1.0);
    for (int k = 0; k < 30; ++k)
        CHECK(relative_phase_shift(k, 25.0, pot, 2) > 0.0);
    auto rep = gaussian_rho(-0.5, 1.0);
    CHECK(relative_phase_shift(3, 25.0, rep, 2) < 0.0);
}

TEST_CASE("weak coupling is linear")
{
    auto base = gaussian_rho(1.0, 1.0);
    for (int k : {0, 10, 40}) {
        double d1 = relative_phase_shift(k, 30.0, gaussian_rho(1e-4, 1.0), 1) / 1e-4;
        double d2 = relative_phase_shift(k, 30.0, gaussian_rho(2e-4, 1.0), 1) / 2e-4;
        CHECK(std::abs(d1 - d2) < 1e-3 * std::abs(d1) + 1e-9);
    }
    (void)base;
}

TEST_CASE("Frobenius and WKB seeds agree")
{
    // a = k + n/2 = 30.5 switches to the WKB seed; an explicit rho0 forces Frobenius
    auto pot = gaussian_rho(0.5, 1.0);
    double l = 20.0;
    double auto_seed = relative_phase_shift(30, l, pot, 1);
    SolverOptions o;
    o.rho0 = 0.05;
    double frob = relative_phase_shift(30, l, pot, 1, o);
    CHECK(std::abs(wrap(auto_seed - frob)) < 1e-8);
}

TEST_CASE("errors")
{
    auto pot = gaussian_rho(0.5, 1.0);
    CHECK_THROWS_AS(relative_phase_shift(0, 0.0, pot, 1), domain_error);
    CHECK_THROWS_AS(relative_phase_shift(-1, 5.0, pot, 1), domain_error);
    SolverOptions bad;
    bad.rho0 = 0.5;
    CHECK_THROWS_AS(regular_solution(0, 5.0, pot, 1, 3.0, bad), domain_error);
    SolverOptions gap;
    gap.rho_gap = 1.0;
    CHECK_THROWS_AS(connection_coefficients(0, pi, pot, 1, 0.0, gap), tolerance_error);
    // phase_shift_detail nudges a degenerate gap instead of failing
    CHECK_NOTHROW(phase_shift_detail(0, pi, pot, 1, gap));
    SolverOptions tiny;
    tiny.max_steps = 10;
    CHECK_THROWS_AS(relative_phase_shift(0, 50.0, pot, 1, tiny), tolerance_error);
    CHECK_THROWS_AS(phase_spectrum(10.0, -1, pot, 1), domain_error);
}

TEST_CASE("spectrum bookkeeping")
{
    auto pot = bump_ball(1.0, 0.3);
    auto sp = phase_spectrum(10.0, 80, pot, 2, 1e-8);
    REQUIRE(sp.entries.size() == 81);
    CHECK(sp.kmax == 80);
    CHECK(sp.warnings.empty());
    CHECK(sp.tail_bound < 1e-7);
    for (const auto& e : sp.entries) {
        CHECK(e.multiplicity == harmonic_dimension(e.k, 2));
        CHECK(e.delta == doctest::Approx(relative_phase_shift(e.k, 10.0, pot, 2)).epsilon(1e-12));
    }
    auto bin = phase_spectrum(10.0, 5, pot, 2, 1e-8, MultiplicityRule::binomial);
    CHECK(bin.entries[5].multiplicity == binomial_multiplicity(5, 2));
    // truncating inside the support leaves a large tail
    auto cut = phase_spectrum(10.0, 4, pot, 2, 1e-8);
    CHECK_FALSE(cut.warnings.empty());
    CHECK(cut.tail_bound > 1e-3);
}
