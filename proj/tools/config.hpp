#pragma once

#include <string>
#include <vector>

namespace hypershift::cli {

struct RunConfig {
    std::string subcommand;
    int n = 1;
    std::string potential = "gaussian_rho:A=0.5,sigma=1";
    double lambda = 100.0;
    std::vector<double> lambda_list;
    /// 0 selects the kmax policy.
    int kmax = 0;
    double tol = 1e-8;
    std::vector<int> p_list = {1, 2};
    /// Negative selects the regularization from the L-curve sweep.
    double reg = -1.0;
    std::string out = "out";
    /// Radial grid of `xray`: r = sinh(u), u = 0, du, ..., u_max.
    double u_max = 5.0;
    double du = 0.025;
    /// Input profile of `invert` (CSV with header r,G).
    std::string profile;
    double knot_spacing = 0.1;
    /// Declared exponential tail of the reconstruction; 0 means none.
    double tail_exponent = 0.0;
    /// Potential compared against the reconstruction of `invert`.
    std::string reference;
    /// Acceptance ids for `selftest`; empty runs all.
    std::vector<std::string> only;
    std::string multiplicity = "harmonic";
    std::string normalization = "arclength";
};

/// Throws hypershift::domain_error on invalid settings.
void validate(const RunConfig& cfg);

/// Sorted key=value lines describing every setting that affects the output.
std::string canonical(const RunConfig& cfg);

/// CRC-32 of the canonical form as 8 hex digits.
std::string config_hash(const RunConfig& cfg);

std::vector<double> parse_double_list(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);

}  // namespace hypershift::cli
