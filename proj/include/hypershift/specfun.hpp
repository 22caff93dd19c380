#pragma once

#include <complex>
#include <cstdint>

#include "hypershift/geometry.hpp"

namespace hypershift {

using cplx = std::complex<double>;

/// log Gamma(z) on the branch continuous off the negative real axis (the
/// imaginary part is not reduced to (-pi, pi]). Throws domain_error at the poles.
cplx complex_log_gamma(cplx z);
cplx complex_gamma(cplx z);
/// Gamma'(z)/Gamma(z).
cplx complex_digamma(cplx z);

/// c(s) = Gamma(s) / (2 pi^{n/2} Gamma(s - n/2 + 1)).
cplx c_of_s(cplx s, int n);

struct FreeEigenvalue {
    int k;
    double lambda;
    cplx value;
    std::int64_t multiplicity;
    /// Set for k = 0, where only relative quantities are meaningful.
    bool conventional = false;
};

/// (Gamma(-i lambda)/Gamma(i lambda)) (k(k+n-1))^{i lambda}.
FreeEigenvalue free_eigenvalue_mu_k(int k, double lambda, int n);

/// Dimension of degree-k spherical harmonics on S^n.
std::int64_t harmonic_dimension(int k, int n);
/// binom(n+k, n); kept for comparison runs only.
std::int64_t binomial_multiplicity(int k, int n);

/// Ratio a_+/a_- of the outgoing and incoming coefficients of the regular free
/// degree-k solution: Gamma(i l) Gamma(k+n/2-i l) / (Gamma(-i l) Gamma(k+n/2+i l)).
cplx free_connection_ratio(int k, double lambda, int n);

/// pi^{-n/2} 2^{-s-1} sum_j 2^{-2j} Gamma(s+2j)/(Gamma(s-n/2+j+1) j!) tau^{-2j}.
cplx resolvent_series_G(cplx s, double tau, int n, double tol = 1e-15);

/// Kernel of the free resolvent, tau^{-s} G(s, tau) with tau = cosh d.
cplx free_resolvent_kernel(cplx s, double distance, int n, double tol = 1e-15);

/// Volume of the unit sphere S^n; vol(S^0) = 2.
double sphere_volume(int n);
/// Volume of the unit ball B^n.
double ball_volume(int n);

}  // namespace hypershift
