#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace hypershift {

using Vec = Eigen::VectorXd;

/// Thrown when an argument lies outside the domain of an operation.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown when a numerical routine cannot certify the requested tolerance.
struct tolerance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point of the open unit ball, the model of H^{n+1}.
class BallPoint {
public:
    explicit BallPoint(Vec w);
    const Vec& w() const { return w_; }
    int dim() const { return static_cast<int>(w_.size()); }
    double norm() const { return w_.norm(); }

private:
    Vec w_;
};

/// Geodesic circle gamma(t) = theta + (t theta + xi)/(t^2 + |xi|^2), t < -1/2.
class GeodesicChart {
public:
    /// theta is renormalized and xi projected onto theta^perp when the defects are
    /// below 1e-9; larger defects or xi = 0 are rejected.
    GeodesicChart(Vec theta, Vec xi);
    const Vec& theta() const { return theta_; }
    const Vec& xi() const { return xi_; }
    double xi_norm() const { return xi_.norm(); }
    int dim() const { return static_cast<int>(theta_.size()); }

private:
    Vec theta_;
    Vec xi_;
};

/// s = n/2 + i lambda together with h = 1/lambda.
struct SpectralParameter {
    SpectralParameter(int n, double lambda);
    int n;
    double lambda;
    double h;
    std::complex<double> s() const { return {0.5 * n, lambda}; }
};

double hyperbolic_distance(const BallPoint& w, const BallPoint& w2);

/// Distance from the origin for a Euclidean radius r in [0,1).
double rho_of_radius(double r);
/// Inverse of rho_of_radius.
double radius_of_rho(double rho);

/// x(w) = (1-|w|)/(1+|w|).
double boundary_defining_function(const BallPoint& w);

BallPoint geodesic_point(double t, const GeodesicChart& chart);

/// The g0-speed -2/(1+2t) of the geodesic parametrization.
double geodesic_speed(double t, const GeodesicChart& chart);

/// Boundary point gamma(-1/2) as a limit; valid for t = -1/2 itself.
Vec geodesic_endpoint(const GeodesicChart& chart);

struct ScatteringRelation {
    Vec theta2;
    Vec xi2;
};

ScatteringRelation scattering_relation(const GeodesicChart& chart);

/// Hyperbolic distance from the origin to the geodesic: sinh(rho_min) = 2|xi|.
double geodesic_min_rho(double xi_norm);

}  // namespace hypershift
