#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hypershift/geometry.hpp"
#include "hypershift/inversion.hpp"
#include "hypershift/radial_scattering.hpp"
#include "hypershift/specfun.hpp"
#include "hypershift/trace_formula.hpp"
#include "hypershift/xray.hpp"

using namespace hypershift;

namespace {

std::mt19937_64& rng()
{
    static std::mt19937_64 g(20211);
    return g;
}

double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

Vec random_point(int d, double rmax)
{
    Vec v(d);
    for (int i = 0; i < d; ++i)
        v(i) = uniform(-1.0, 1.0);
    return v.normalized() * uniform(0.0, rmax);
}

Eigen::MatrixXd random_rotation(int d)
{
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = uniform(-1.0, 1.0);
    return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
}

GeodesicChart random_chart(int d)
{
    Vec theta = random_point(d, 1.0).normalized();
    Vec xi = random_point(d, 1.0);
    xi -= xi.dot(theta) * theta;
    xi = xi.normalized() * uniform(0.05, 3.0);
    return GeodesicChart(theta, xi);
}

}  // namespace

TEST_CASE("distance is a rotation-invariant metric")
{
    for (int i = 0; i < 300; ++i) {
        int d = 2 + i % 3;
        Vec a = random_point(d, 0.95), b = random_point(d, 0.95), c = random_point(d, 0.95);
        BallPoint A(a), B(b), C(c);
        double ab = hyperbolic_distance(A, B);
        CHECK(ab >= 0.0);
        CHECK(ab == doctest::Approx(hyperbolic_distance(B, A)).epsilon(1e-13));
        CHECK(hyperbolic_distance(A, A) < 1e-7);
        CHECK(ab <= hyperbolic_distance(A, C) + hyperbolic_distance(C, B) + 1e-10);
        Eigen::MatrixXd R = random_rotation(d);
        CHECK(hyperbolic_distance(BallPoint(R * a), BallPoint(R * b)) == doctest::Approx(ab).epsilon(1e-10));
    }
}

TEST_CASE("geodesic charts parametrise distance-minimising curves")
{
    for (int i = 0; i < 200; ++i) {
        GeodesicChart g = random_chart(2 + i % 3);
        double t1 = -uniform(0.6, 20.0), t2 = -uniform(0.6, 20.0), t3 = -uniform(0.6, 20.0);
        if (t1 > t2)
            std::swap(t1, t2);
        if (t2 > t3)
            std::swap(t2, t3);
        if (t1 > t2)
            std::swap(t1, t2);
        auto p1 = geodesic_point(t1, g), p2 = geodesic_point(t2, g), p3 = geodesic_point(t3, g);
        double d13 = hyperbolic_distance(p1, p3);
        CHECK(d13 == doctest::Approx(hyperbolic_distance(p1, p2) + hyperbolic_distance(p2, p3)).epsilon(1e-8));
        CHECK(d13 == doctest::Approx(std::abs(std::log((1 + 2 * t3) / (1 + 2 * t1)))).epsilon(1e-8));
        // no point is closer to the origin than the closest approach
        CHECK(rho_of_radius(p2.norm()) >= geodesic_min_rho(g.xi_norm()) - 1e-12);
    }
}

TEST_CASE("profiles are linear, bounded by G(0) and monotone for attractive bumps")
{
    for (int i = 0; i < 25; ++i) {
        double A = uniform(0.1, 3.0), s = uniform(0.3, 2.0);
        auto V = gaussian_rho(A, s), W = gaussian_rho(2.0 * A, s);
        double prev = classical_profile_value(V, 0.0);
        for (double r : {0.3, 1.0, 3.0, 10.0}) {
            double g = classical_profile_value(V, r);
            CHECK(g <= prev + 1e-14);
            CHECK(g > 0.0);
            CHECK(classical_profile_value(W, r) == doctest::Approx(2.0 * g).epsilon(1e-11));
            prev = g;
        }
    }
}

TEST_CASE("connection coefficients are unitary and delta is odd at weak coupling")
{
    for (int i = 0; i < 40; ++i) {
        int n = 1 + i % 3;
        int k = std::uniform_int_distribution<int>(0, 60)(rng());
        double l = uniform(2.0, 60.0);
        double A = uniform(-2.0, 2.0), s = uniform(0.5, 1.5);
        auto det = phase_shift_detail(k, l, gaussian_rho(A, s), n);
        CAPTURE(k);
        CAPTURE(l);
        CHECK(std::abs(std::abs(det.with_potential.ratio()) - 1.0) < 1e-8);
        CHECK(std::abs(std::abs(det.free.ratio()) - 1.0) < 1e-8);
        double eps = 1e-5;
        double up = relative_phase_shift(k, l, gaussian_rho(eps * A, s), n);
        double down = relative_phase_shift(k, l, gaussian_rho(-eps * A, s), n);
        CHECK(std::abs(up + down) < 1e-3 * std::abs(up) + 1e-12);
    }
}

TEST_CASE("free eigenvalues and multiplicities")
{
    for (int i = 0; i < 300; ++i) {
        int n = 1 + i % 3;
        int k = std::uniform_int_distribution<int>(0, 5000)(rng());
        double l = uniform(0.01, 2000.0);
        auto mu = free_eigenvalue_mu_k(k, l, n);
        CHECK(std::abs(std::abs(mu.value) - 1.0) < 1e-12);
        CHECK(mu.multiplicity == harmonic_dimension(k, n));
        CHECK(std::abs(std::abs(free_connection_ratio(k, l, n)) - 1.0) < 1e-12);
        CHECK(harmonic_dimension(k, n) <= binomial_multiplicity(k, n));
    }
}

TEST_CASE("rearrangement inverts the push-forward")
{
    for (int i = 0; i < 10; ++i) {
        int n = 1 + i % 3;
        double c = uniform(0.5, 3.0), q = uniform(0.5, 2.0);
        ClassicalProfile g;
        g.evaluator = [c, q](double r) { return c / std::pow(1.0 + r * r, q); };
        std::vector<double> alphas;
        for (int j = 1; j <= 40; ++j)
            alphas.push_back(c * j / 41.0);
        auto prof = profile_from_measure(nu_from_profile(g, n), n, alphas);
        REQUIRE(prof.r_grid.size() == alphas.size());
        for (std::size_t j = 0; j < prof.r_grid.size(); ++j)
            CHECK(g(prof.r_grid[j]) == doctest::Approx(prof.g_values[j]).epsilon(1e-9));
    }
}

TEST_CASE("pairing is linear in the test function")
{
    PhaseShiftSpectrum sp;
    sp.lambda = uniform(5.0, 50.0);
    sp.n = 2;
    for (int k = 0; k < 50; ++k)
        sp.entries.push_back({k, uniform(-0.1, 0.1), harmonic_dimension(k, 2)});
    auto f = [](double t) { return t; };
    auto g = [](double t) { return t * t; };
    double a = uniform(-3.0, 3.0), b = uniform(-3.0, 3.0);
    double lhs = mu_h_pairing(sp, [&](double t) { return a * f(t) + b * g(t); }, 2).value;
    double rhs = a * mu_h_pairing(sp, f, 2).value + b * mu_h_pairing(sp, g, 2).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}
