#pragma once

#include <functional>
#include <vector>

#include "hypershift/geometry.hpp"
#include "hypershift/potentials.hpp"

namespace hypershift {

/// Scale convention for the radial profile. `arclength` is
/// G_V(r) = -1/2 X(V)(xi/2, theta); `literal` multiplies it by 2^n, i.e.
/// -2^{n-1} X(V)(xi/2, theta). Only `arclength` matches the phase shifts.
enum class ProfileNormalization { arclength, literal };

struct ClassicalProfile {
    std::vector<double> r_grid;
    std::vector<double> g_values;
    bool monotone_decreasing = false;
    double tail_exponent = 0.0;
    ProfileNormalization normalization = ProfileNormalization::arclength;
    /// Exact evaluator at arbitrary r when available.
    std::function<double(double)> evaluator;

    /// Evaluator if set, otherwise monotone cubic interpolation of the samples
    /// with a (1+r)^{-m} tail.
    double operator()(double r) const;
};

/// Geodesic X-ray transform: integral of V over the geodesic of the chart with
/// respect to hyperbolic arclength.
double xray_general(const AmbientPotential& pot, const GeodesicChart& chart, double tol = 1e-10);

/// Integral in the radial form: int_{-inf}^{-1/2} V(T(a,t)) dt/(1+2t), with
/// T(a,t) = log((1+A)/(1-A)), A^2 = ((1+t)^2 + a^2)/(t^2 + a^2).
double radial_xray_integral(const RadialPotential& pot, double a, double tol = 1e-10);

/// G_V at a single r.
double classical_profile_value(const RadialPotential& pot, double r, double tol = 1e-10,
                               ProfileNormalization norm = ProfileNormalization::arclength,
                               int n = 1);

/// G_V on a grid; `n` only enters the literal normalization.
ClassicalProfile xray_radial_profile(const RadialPotential& pot, const std::vector<double>& r_grid,
                                     double tol = 1e-10,
                                     ProfileNormalization norm = ProfileNormalization::arclength,
                                     int n = 1);

/// Profile given by a closed form, sampled on r_grid.
ClassicalProfile profile_from_function(std::function<double(double)> g, const std::vector<double>& r_grid,
                                       double tail_exponent);

/// vol(S^n) vol(S^{n-1}) int_0^inf f(G(r)) r^{n-1} dr.
double classical_nu_integral(const ClassicalProfile& profile, const std::function<double(double)>& f,
                             int n, double tol = 1e-8);

/// max_i |g_i| (1+r_i)^m.
double decay_constant(const ClassicalProfile& profile, double m);

}  // namespace hypershift
