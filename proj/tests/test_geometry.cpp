#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hypershift/geometry.hpp"

using namespace hypershift;

namespace {

Vec v2(double a, double b)
{
    Vec v(2);
    v << a, b;
    return v;
}

Vec v3(double a, double b, double c)
{
    Vec v(3);
    v << a, b, c;
    return v;
}

// cosh d = 1 + 2|w-w'|^2 / ((1-|w|^2)(1-|w'|^2)) in long double
double distance_oracle(const Vec& a, const Vec& b)
{
    long double num = (a - b).squaredNorm();
    long double den = (1.0L - a.squaredNorm()) * (1.0L - b.squaredNorm());
    return static_cast<double>(std::acosh(1.0L + 2.0L * num / den));
}

double metric_speed_fd(const GeodesicChart& c, double t)
{
    double e = 1e-5 * std::abs(1.0 + 2.0 * t);
    Vec a = geodesic_point(t - e, c).w(), b = geodesic_point(t + e, c).w();
    Vec m = geodesic_point(t, c).w();
    return 2.0 * (b - a).norm() / (2.0 * e) / (1.0 - m.squaredNorm());
}

}  // namespace

TEST_CASE("ball points")
{
    CHECK_THROWS_AS(BallPoint(v2(1.0, 0.0)), domain_error);
    CHECK_THROWS_AS(BallPoint(Vec::Zero(1)), domain_error);
    CHECK_THROWS_AS(BallPoint(Vec::Zero(5)), domain_error);
    CHECK(BallPoint(v3(0.1, 0.2, 0.3)).dim() == 3);
}

TEST_CASE("distance")
{
    BallPoint o(v2(0, 0)), w(v2(0.6, 0.0)), z(v2(-0.3, 0.5));
    CHECK(hyperbolic_distance(o, o) == 0.0);
    CHECK(hyperbolic_distance(o, w) == doctest::Approx(2.0 * std::atanh(0.6)).epsilon(1e-14));
    CHECK(hyperbolic_distance(w, z) == doctest::Approx(distance_oracle(w.w(), z.w())).epsilon(1e-13));
    CHECK(hyperbolic_distance(w, z) == doctest::Approx(hyperbolic_distance(z, w)).epsilon(1e-15));
    // close points: no cancellation
    BallPoint a(v2(0.5, 0.0)), b(v2(0.5 + 1e-10, 0.0));
    CHECK(hyperbolic_distance(a, b) == doctest::Approx(2e-10 / 0.75).epsilon(1e-6));
    CHECK_THROWS_AS(hyperbolic_distance(o, BallPoint(v3(0, 0, 0))), domain_error);
}

TEST_CASE("radius and rho")
{
    for (double r : {0.0, 0.1, 0.5, 0.9, 0.999999})
        CHECK(radius_of_rho(rho_of_radius(r)) == doctest::Approx(r).epsilon(1e-14));
    CHECK(rho_of_radius(0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(rho_of_radius(1.0), domain_error);
    CHECK_THROWS_AS(rho_of_radius(-0.1), domain_error);
    CHECK(boundary_defining_function(BallPoint(v2(0.5, 0))) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("chart validation")
{
    CHECK_THROWS_AS(GeodesicChart(v2(1, 0), v2(0, 0)), domain_error);
    CHECK_THROWS_AS(GeodesicChart(v2(1.1, 0), v2(0, 1)), domain_error);
    CHECK_THROWS_AS(GeodesicChart(v2(1, 0), v2(0.1, 1)), domain_error);
    CHECK_THROWS_AS(GeodesicChart(v2(1, 0), v3(0, 1, 0)), domain_error);
    GeodesicChart c(v2(1.0 + 1e-11, 0.0), v2(1e-11, 2.0));
    CHECK(c.theta().norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(c.theta().dot(c.xi())) < 1e-15);
}

TEST_CASE("geodesic parametrization")
{
    GeodesicChart c(v3(0, 0, 1), v3(0.3, -0.4, 0));
    for (double t : {-0.5001, -0.6, -1.0, -3.0, -50.0}) {
        BallPoint p = geodesic_point(t, c);
        CHECK(p.norm() < 1.0);
        // near t = -1/2 the difference quotient loses digits to rounding
        double eps = t > -0.51 ? 1e-6 : 1e-8;
        CHECK(geodesic_speed(t, c) == doctest::Approx(metric_speed_fd(c, t)).epsilon(eps));
        CHECK(geodesic_speed(t, c) > 0.0);
    }
    // arclength between two parameters is log of the ratio of (1+2t)
    double t1 = -0.7, t2 = -4.0;
    double d = hyperbolic_distance(geodesic_point(t1, c), geodesic_point(t2, c));
    CHECK(d == doctest::Approx(std::log((1.0 + 2.0 * t2) / (1.0 + 2.0 * t1))).epsilon(1e-12));
    CHECK_THROWS_AS(geodesic_point(-0.5, c), domain_error);
    CHECK_THROWS_AS(geodesic_speed(0.0, c), domain_error);
    // t -> -inf tends to theta, t -> -1/2 to the endpoint
    CHECK((geodesic_point(-1e7, c).w() - c.theta()).norm() < 1e-6);
    CHECK((geodesic_point(-0.5 - 1e-8, c).w() - geodesic_endpoint(c)).norm() < 1e-6);
    CHECK(geodesic_endpoint(c).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closest distance to the origin")
{
    for (double a : {0.05, 0.5, 2.0, 7.0}) {
        GeodesicChart c(v2(0, 1), v2(a, 0));
        double best = 1e300;
        for (int i = -4000; i <= 4000; ++i) {
            double u = 0.5 * std::log1p(4 * a * a) + 1e-3 * i;
            best = std::min(best, rho_of_radius(geodesic_point(-0.5 * (1.0 + std::exp(u)), c).norm()));
        }
        CHECK(geodesic_min_rho(a) == doctest::Approx(best).epsilon(1e-6));
    }
}

TEST_CASE("scattering relation")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int i = 0; i < 20; ++i) {
        Vec th = v3(g(rng), g(rng), g(rng));
        th.normalize();
        Vec xi = v3(g(rng), g(rng), g(rng));
        xi -= xi.dot(th) * th;
        GeodesicChart c(th, xi);
        ScatteringRelation s = scattering_relation(c);
        CHECK((s.theta2 - geodesic_endpoint(c)).norm() < 1e-12);
        CHECK(std::abs(s.theta2.dot(s.xi2)) < 1e-12);
        CHECK(s.xi2.norm() == doctest::Approx(xi.norm()).epsilon(1e-12));
        // the reversed chart runs back to theta along the same curve
        GeodesicChart back(s.theta2, -s.xi2);
        CHECK((geodesic_endpoint(back) - th).norm() < 1e-10);
        BallPoint p = geodesic_point(-1.3, c);
        double best = 1e300;
        for (int j = 0; j < 20000; ++j)
            best = std::min(best, hyperbolic_distance(p, geodesic_point(-0.5 - std::exp(-12.0 + 1.2e-3 * j), back)));
        CHECK(best < 1e-3);
    }
}

TEST_CASE("scattering relation, planar example")
{
    ScatteringRelation s = scattering_relation(GeodesicChart(v2(1, 0), v2(0, 0.5)));
    CHECK((s.theta2 - v2(0, 1)).norm() < 1e-15);
    CHECK(geodesic_speed(-1.0, GeodesicChart(v2(1, 0), v2(0, 0.5))) == 2.0);
}

TEST_CASE("spectral parameter")
{
    SpectralParameter sp(2, 4.0);
    CHECK(sp.h == 0.25);
    CHECK(sp.s() == std::complex<double>(1.0, 4.0));
    CHECK_THROWS_AS(SpectralParameter(0, 1.0), domain_error);
    CHECK_THROWS_AS(SpectralParameter(1, 0.0), domain_error);
}
