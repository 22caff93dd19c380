#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypershift/geometry.hpp"

namespace hypershift {

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Family { zero, gaussian_rho, bump_ball, exp_decay, tabulated, reconstructed };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

using ParamMap = std::map<std::string, double>;

/// Radial potential V(rho), rho the distance to the origin.
struct RadialPotential {
    std::function<double(double)> profile;
    /// Declared decay exponent m in e^{-m rho}; infinity for super-exponential decay.
    double decay_exponent = std::numeric_limits<double>::infinity();
    Family family = Family::zero;
    ParamMap params;
    /// V vanishes identically for rho >= support_rho.
    double support_rho = std::numeric_limits<double>::infinity();
    /// Points where V is less smooth (spline knots), sorted.
    std::vector<double> breakpoints;

    double operator()(double rho) const { return profile(rho); }
    bool is_zero() const { return family == Family::zero; }
    /// Finite exponent used for tail bounds; for super-exponential families a
    /// family-dependent working value.
    double working_exponent() const;
    /// Radius beyond which |V| < eps * max|V| on a coarse scan.
    double effective_radius(double eps) const;
};

/// Potential on the ball given pointwise.
struct AmbientPotential {
    std::function<double(const Vec&)> eval;
    /// Compactly supported in |w| <= 1 - delta when set.
    std::optional<double> support_delta;
    double decay_exponent = std::numeric_limits<double>::infinity();
    /// Working exponent for tail bounds when decay_exponent is infinite.
    double working_exponent = 10.0;

    double operator()(const BallPoint& w) const { return eval(w.w()); }
};

RadialPotential zero_potential();
/// V = -A exp(-(rho/sigma)^2).
RadialPotential gaussian_rho(double A, double sigma);
/// V = -A exp(1 - 1/(1-(|w|/(1-delta))^2)) inside |w| < 1-delta, zero outside.
RadialPotential bump_ball(double A, double delta);
/// V = -A exp(-m rho).
RadialPotential exp_decay(double A, double m);
/// Monotone cubic interpolation through samples; beyond the last sample
/// V = C exp(-m rho) matching the last value.
RadialPotential tabulated(std::vector<double> rho, std::vector<double> values, double tail_exponent);

/// Builds a built-in family from a tag and named parameters.
RadialPotential make_potential(Family family, const ParamMap& params);
/// Parses "family:key=value,key=value". The tabulated family takes path=...
RadialPotential parse_potential(const std::string& spec);

/// V(w) = profile(rho(w)).
AmbientPotential to_ambient(const RadialPotential& pot);

/// Reads a `rho,value` CSV.
RadialPotential load_tabulated_csv(const std::string& path, double tail_exponent);

/// max over the grid of |e^{m rho} V(rho)|.
double weighted_norm(const RadialPotential& pot, double m, const std::vector<double>& rho_grid);
/// max over the grid of |x(w)^{-m} V(w)|.
double weighted_norm(const AmbientPotential& pot, double m, const std::vector<BallPoint>& grid);

/// +1 if V is non-decreasing on the grid, -1 if non-increasing, 0 otherwise.
/// Grid points with |V| <= 1e-13 are ignored.
int monotonicity(const RadialPotential& pot, const std::vector<double>& rho_grid);

}  // namespace hypershift
