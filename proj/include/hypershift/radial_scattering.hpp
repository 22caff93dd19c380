#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypershift/potentials.hpp"

namespace hypershift {

/// k(k+n-1) + n(n-2)/4, the coefficient of 1/sinh^2 in Q_k.
double centrifugal_constant(int k, int n);

/// Q_k(rho) = V(rho) + C_k/sinh^2(rho): with v = sinh(rho)^{n/2} u the degree-k
/// radial equation becomes v'' + (lambda^2 - Q_k) v = 0.
struct LiouvilleQ {
    RadialPotential pot;
    double C = 0.0;
    double operator()(double rho) const;
    double centrifugal(double rho) const;
};

LiouvilleQ liouville_Q(int k, const RadialPotential& pot, int n);

struct SolverOptions {
    /// Relative local error per step.
    double rel_tol = 1e-12;
    /// Absolute local error per step on the phase variables.
    double abs_tol = 1e-14;
    /// Matching radius; 0 selects the default.
    double rho_match = 0.0;
    /// Distance between the two matching radii.
    double rho_gap = 1.5;
    /// Starting radius; 0 selects the Frobenius or WKB seed automatically.
    double rho0 = 0.0;
    long max_steps = 2'000'000;
    /// Upper bound on lambda * step. The embedded error estimate of the stepper
    /// misses the oscillatory forcing once a step spans several periods.
    double max_phase_step = 1.0;
};

/// Regular solution at rho: v = e^{log_scale} * value, v' = e^{log_scale} * derivative.
struct RegularSolution {
    double rho = 0.0;
    double value = 0.0;
    double derivative = 0.0;
    double log_scale = 0.0;
    /// Pruefer angle, v = R sin(phase), v' = lambda R cos(phase).
    double phase = 0.0;
    double rho0 = 0.0;
    long steps = 0;
};

RegularSolution regular_solution(int k, double lambda, const RadialPotential& pot, int n, double rho_max,
                                 const SolverOptions& opts = {});

/// Coefficients of v ~ a_- e^{-iS} + a_+ e^{iS}, S = lambda rho + O(e^{-2rho}),
/// scaled by e^{-log_scale}.
struct ConnectionCoefficients {
    int k = 0;
    double lambda = 0.0;
    std::complex<double> a_minus;
    std::complex<double> a_plus;
    double rho_match = 0.0;
    double log_scale = 0.0;
    std::complex<double> ratio() const { return a_plus / a_minus; }
};

ConnectionCoefficients connection_coefficients(int k, double lambda, const RadialPotential& pot, int n,
                                               double rho_match, const SolverOptions& opts = {});

/// Default matching radius for degree k.
double default_rho_match(int k, double lambda, const RadialPotential& pot, int n);

/// Result of a paired run with and without the potential.
struct PhaseShiftResult {
    double delta = 0.0;
    ConnectionCoefficients with_potential;
    ConnectionCoefficients free;
    long steps = 0;
};

PhaseShiftResult phase_shift_detail(int k, double lambda, const RadialPotential& pot, int n,
                                    const SolverOptions& opts = {});

/// delta_k in [-pi, pi): argument of the degree-k eigenvalue of the relative
/// scattering matrix.
double relative_phase_shift(int k, double lambda, const RadialPotential& pot, int n,
                            const SolverOptions& opts = {});

/// arg of (numerical free ratio) / (closed-form free ratio).
double free_phase_defect(int k, double lambda, int n, const SolverOptions& opts = {});

enum class MultiplicityRule { harmonic, binomial };

struct PhaseShiftEntry {
    int k;
    double delta;
    std::int64_t multiplicity;
};

struct PhaseShiftSpectrum {
    double lambda = 0.0;
    int n = 1;
    int kmax = 0;
    double tol = 0.0;
    double tail_bound = 0.0;
    std::vector<PhaseShiftEntry> entries;
    std::vector<std::string> warnings;
};

PhaseShiftSpectrum phase_spectrum(double lambda, int kmax, const RadialPotential& pot, int n,
                                  double tol = 1e-10, MultiplicityRule rule = MultiplicityRule::harmonic,
                                  const SolverOptions& opts = {});

/// Rescaled Born eigenvalue on H^2: degree-k eigenvalue of (1/h) Im U_V, which
/// approximates lambda * delta_k at weak coupling.
double born_eigenvalue_h2(int k, double lambda, const RadialPotential& pot, double tol = 1e-8);

/// Same for k = 0..kmax.
std::vector<double> born_spectrum_h2(int kmax, double lambda, const RadialPotential& pot, double tol = 1e-8);

/// Kernel of U_V(s) on an equispaced angle grid of S^1, including the quadrature
/// weight of the theta' integration, so that matrix-vector products apply U_V.
Eigen::MatrixXcd born_kernel_matrix(double lambda, const RadialPotential& pot, int n_angles);

}  // namespace hypershift
