#include "hypershift/geometry.hpp"

#include <cmath>

namespace hypershift {

namespace {

constexpr double unit_tol = 1e-12;
constexpr double repair_tol = 1e-9;

void check_dim(const Vec& v, const char* what)
{
    if (v.size() < 2 || v.size() > 4)
        throw domain_error(std::string(what) + ": ambient dimension must be 2, 3 or 4");
}

}  // namespace

BallPoint::BallPoint(Vec w) : w_(std::move(w))
{
    check_dim(w_, "BallPoint");
    if (!(w_.norm() < 1.0))
        throw domain_error("BallPoint: |w| must be < 1");
}

GeodesicChart::GeodesicChart(Vec theta, Vec xi) : theta_(std::move(theta)), xi_(std::move(xi))
{
    check_dim(theta_, "GeodesicChart");
    if (xi_.size() != theta_.size())
        throw domain_error("GeodesicChart: theta and xi differ in dimension");

    double tn = theta_.norm();
    if (std::abs(tn - 1.0) > unit_tol) {
        if (std::abs(tn - 1.0) > repair_tol)
            throw domain_error("GeodesicChart: theta is not a unit vector");
        theta_ /= tn;
    }
    double ip = xi_.dot(theta_);
    if (std::abs(ip) > unit_tol) {
        if (std::abs(ip) > repair_tol)
            throw domain_error("GeodesicChart: xi is not orthogonal to theta");
        xi_ -= ip * theta_;
    }
    if (!(xi_.norm() > 0.0))
        throw domain_error("GeodesicChart: xi = 0 is excluded");
}

SpectralParameter::SpectralParameter(int n_, double lambda_) : n(n_), lambda(lambda_), h(1.0 / lambda_)
{
    if (n < 1)
        throw domain_error("SpectralParameter: n must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw domain_error("SpectralParameter: lambda must be positive");
}

double hyperbolic_distance(const BallPoint& w, const BallPoint& w2)
{
    if (w.dim() != w2.dim())
        throw domain_error("hyperbolic_distance: dimension mismatch");
    double d2 = (w.w() - w2.w()).squaredNorm();
    double a = 1.0 - w.w().squaredNorm();
    double b = 1.0 - w2.w().squaredNorm();
    // acosh(1+y) = log1p(y + sqrt(y(y+2))) keeps accuracy for small y
    double y = 2.0 * d2 / (a * b);
    return std::log1p(y + std::sqrt(y * (y + 2.0)));
}

double rho_of_radius(double r)
{
    if (!(r >= 0.0 && r < 1.0))
        throw domain_error("rho_of_radius: r must lie in [0,1)");
    return std::log1p(r) - std::log1p(-r);
}

double radius_of_rho(double rho) { return std::tanh(0.5 * rho); }

double boundary_defining_function(const BallPoint& w)
{
    double r = w.norm();
    return (1.0 - r) / (1.0 + r);
}

BallPoint geodesic_point(double t, const GeodesicChart& chart)
{
    if (!(t < -0.5))
        throw domain_error("geodesic_point: t must be < -1/2");
    double a2 = chart.xi().squaredNorm();
    Vec w = chart.theta() + (t * chart.theta() + chart.xi()) / (t * t + a2);
    return BallPoint(std::move(w));
}

double geodesic_speed(double t, const GeodesicChart&)
{
    if (!(t < -0.5))
        throw domain_error("geodesic_speed: t must be < -1/2");
    return -2.0 / (1.0 + 2.0 * t);
}

Vec geodesic_endpoint(const GeodesicChart& chart)
{
    double a2 = chart.xi().squaredNorm();
    return chart.theta() + (-0.5 * chart.theta() + chart.xi()) / (0.25 + a2);
}

ScatteringRelation scattering_relation(const GeodesicChart& chart)
{
    Vec theta2 = geodesic_endpoint(chart);
    theta2.normalize();
    // gamma(-1/2, -xi2, theta2) = theta splits into a component along theta2,
    // which fixes q = 1/4 + |xi2|^2, and a tangential one, which fixes xi2.
    Vec b = chart.theta() - theta2;
    double bn = b.dot(theta2);
    double q = -0.5 / bn;
    Vec xi2 = -q * (b - bn * theta2);
    return {std::move(theta2), std::move(xi2)};
}

double geodesic_min_rho(double xi_norm) { return std::asinh(2.0 * xi_norm); }

}  // namespace hypershift
