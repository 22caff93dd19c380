#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypershift/radial_scattering.hpp"
#include "hypershift/xray.hpp"

namespace hypershift {

struct Pairing {
    double value = 0.0;
    /// Share of |sum| contributed by the last decile of k.
    double tail_fraction = 0.0;
    bool tail_dominated = false;
};

/// (2 pi h)^n sum_k d_k f(delta_k / h), summed in ascending k with pairwise reduction.
Pairing mu_h_pairing(const PhaseShiftSpectrum& spectrum, const std::function<double(double)>& f, int n);

/// Same spectrum with multiplicities recomputed under another rule.
PhaseShiftSpectrum with_multiplicity(PhaseShiftSpectrum spectrum, MultiplicityRule rule);

/// Test function sampled on a grid, linearly interpolated, zero outside the
/// samples. It must vanish on (-eps, eps) for the declared eps > 0.
std::function<double(double)> sampled_test_function(std::vector<double> t, std::vector<double> values,
                                                    double zero_radius);

struct TraceOptions {
    /// Tolerance for the profile, the kmax policy and the nu-integrals.
    double tol = 1e-8;
    /// Overrides the kmax policy when positive.
    int kmax = 0;
    MultiplicityRule multiplicity = MultiplicityRule::harmonic;
    ProfileNormalization normalization = ProfileNormalization::arclength;
    SolverOptions solver;
};

struct TraceRow {
    double lambda = 0.0;
    double h = 0.0;
    int p = 1;
    double quantum = 0.0;
    double classical = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    /// (2 pi h)^n sum d_k |(delta_k/h)^p - (sin(delta_k)/h)^p|.
    double sin_defect = 0.0;
    int kmax = 0;
};

struct SlopeFit {
    int p = 1;
    std::optional<double> slope;
    std::vector<double> residuals;
};

struct TraceReport {
    std::vector<double> lambda_list;
    std::vector<TraceRow> rows;
    std::vector<SlopeFit> fits;
    std::vector<std::string> warnings;
};

/// kmax = ceil(2 lambda R) with R the radius beyond which |G_V| < tol.
int kmax_policy(const RadialPotential& pot, double lambda, double tol);

/// Rows for one lambda from an already computed spectrum and profile.
std::vector<TraceRow> moment_rows(const PhaseShiftSpectrum& spectrum, const ClassicalProfile& profile,
                                  const std::vector<int>& p_list, double tol);

std::vector<TraceRow> moment_compare(const RadialPotential& pot, int n, double lambda, const std::vector<int>& p_list,
                                     const TraceOptions& opts = {});

/// Least-squares slope of log|error| against log h; empty if any error vanishes.
SlopeFit fit_convergence(const std::vector<TraceRow>& rows, int p);

TraceReport convergence_study(const RadialPotential& pot, int n, const std::vector<double>& lambda_list,
                              const std::vector<int>& p_list, const TraceOptions& opts = {});

}  // namespace hypershift
