#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hypershift/potentials.hpp"
#include "hypershift/radial_scattering.hpp"
#include "hypershift/xray.hpp"

namespace hypershift {

/// nu(alpha, beta): mass of the interval (alpha, beta); beta may be +infinity.
using NuDistribution = std::function<double(double, double)>;

struct MonotoneProfile {
    std::vector<double> r_grid;
    std::vector<double> g_values;
    double g0 = 0.0;
    double support_radius = 0.0;
    bool finite_support = false;
};

/// Monotone rearrangement: r(alpha) = [nu(alpha, inf) / (vol(S^n) vol(B^n))]^{1/n},
/// returned as G(r(alpha)) = alpha on the induced grid, sorted by r.
MonotoneProfile profile_from_measure(const NuDistribution& nu, int n, const std::vector<double>& value_grid);

/// Push-forward of Lebesgue measure on S^n x R^n under (theta, xi) -> G(|xi|) for a
/// non-increasing G.
NuDistribution nu_from_profile(const ClassicalProfile& profile, int n, double r_max = 1e4);

/// Empirical measure (2 pi h)^n sum_k d_k [alpha < delta_k/h < beta].
NuDistribution nu_from_spectrum(const PhaseShiftSpectrum& spectrum);

/// Samples a monotone profile from a ClassicalProfile.
MonotoneProfile monotone_from_classical(const ClassicalProfile& profile);

struct LCurvePoint {
    double reg = 0.0;
    double residual_norm = 0.0;
    double solution_norm = 0.0;
};

struct InversionResult {
    RadialPotential potential;
    Eigen::VectorXd coefficients;
    std::vector<double> knots;
    double condition = 0.0;
    double reg = 0.0;
    /// max_i |(A c)_i - g_i| over the data points.
    double max_residual = 0.0;
    std::vector<LCurvePoint> lcurve;
};

/// Default knot grid: spacing 0.1 on [0, asinh(r_max)] of the profile.
std::vector<double> default_rho_grid(const MonotoneProfile& profile, double spacing = 0.1);

/// Least-squares fit of V in a uniform cubic B-spline basis on rho_grid, plus an
/// e^{-m rho} tail element when tail_exponent is finite, to G(r) = -int V ds.
/// reg < 0 selects the parameter from the sweep {0, 1e-12, ..., 1e-6} by the
/// minimum-product criterion.
InversionResult potential_from_profile(const MonotoneProfile& profile, int n, const std::vector<double>& rho_grid,
                                       double reg, double tail_exponent = INFINITY);

/// Forward matrix: column j holds G of basis element j at the profile radii.
Eigen::MatrixXd inversion_forward_matrix(const std::vector<double>& r, const std::vector<double>& knots,
                                         double tail_exponent);

}  // namespace hypershift
