#include "hypershift/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace hypershift {

namespace {

constexpr double pi = std::numbers::pi;

bool is_pole(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Lanczos approximation, g = 607/128, 14 terms; valid for Re z > 0.
cplx lanczos_log_gamma(cplx z)
{
    static constexpr std::array<double, 14> cof = {
        57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
        -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
        -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
        .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
        -.261908384015814087e-4, .368991826595316234e-5};
    cplx tmp = z + 5.24218750000000000;
    tmp = (z + 0.5) * std::log(tmp) - tmp;
    cplx ser = 0.999999999999997092;
    cplx y = z;
    for (double c : cof) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(2.5066282746310005 * ser / z);
}

}  // namespace

cplx complex_log_gamma(cplx z)
{
    if (is_pole(z))
        throw domain_error("complex_log_gamma: pole at a nonpositive integer");
    if (z.real() >= 0.5)
        return lanczos_log_gamma(z);
    // shift right and walk back with log Gamma(z) = log Gamma(z+N) - sum log(z+j);
    // summing logs of the factors keeps the branch continuous in z
    int N = static_cast<int>(std::ceil(0.5 - z.real()));
    cplx acc = 0.0;
    for (int j = 0; j < N; ++j)
        acc += std::log(z + static_cast<double>(j));
    return lanczos_log_gamma(z + static_cast<double>(N)) - acc;
}

cplx complex_gamma(cplx z) { return std::exp(complex_log_gamma(z)); }

cplx complex_digamma(cplx z)
{
    if (is_pole(z))
        throw domain_error("complex_digamma: pole at a nonpositive integer");
    cplx acc = 0.0;
    if (z.real() < 0.5 && std::abs(z.imag()) < 15.0) {
        // reflection: psi(1-z) - psi(z) = pi cot(pi z)
        return complex_digamma(1.0 - z) - pi / std::tan(pi * z);
    }
    while (std::abs(z) < 15.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // asymptotic series with Bernoulli numbers B_2..B_12
    static constexpr std::array<double, 6> b = {1.0 / 12,   -1.0 / 120,     1.0 / 252,
                                                -1.0 / 240, 1.0 / 132, -691.0 / 32760};
    cplx iz2 = 1.0 / (z * z);
    cplx p = iz2;
    cplx s = 0.0;
    for (double c : b) {
        s += c * p;
        p *= iz2;
    }
    return acc + std::log(z) - 0.5 / z - s;
}

cplx c_of_s(cplx s, int n)
{
    if (is_pole(s))
        throw domain_error("c_of_s: s is a pole of Gamma");
    cplx d = s - 0.5 * n + 1.0;
    if (is_pole(d))
        return 0.0;
    return std::exp(complex_log_gamma(s) - complex_log_gamma(d)) / (2.0 * std::pow(pi, 0.5 * n));
}

std::int64_t harmonic_dimension(int k, int n)
{
    if (k < 0 || n < 1)
        throw domain_error("harmonic_dimension: need k >= 0, n >= 1");
    if (k == 0)
        return 1;
    // (2k+n-1) (k+n-2)! / (k! (n-1)!) = (2k+n-1) binom(k+n-2, n-1) / k
    std::int64_t binom = 1;
    for (int j = 1; j <= n - 1; ++j)
        binom = binom * (k - 1 + j) / j;
    return (2LL * k + n - 1) * binom / k;
}

std::int64_t binomial_multiplicity(int k, int n)
{
    if (k < 0 || n < 1)
        throw domain_error("binomial_multiplicity: need k >= 0, n >= 1");
    std::int64_t b = 1;
    for (int j = 1; j <= n; ++j)
        b = b * (k + j) / j;
    return b;
}

FreeEigenvalue free_eigenvalue_mu_k(int k, double lambda, int n)
{
    if (k < 0)
        throw domain_error("free_eigenvalue_mu_k: k must be nonnegative");
    if (!(lambda > 0.0))
        throw domain_error("free_eigenvalue_mu_k: lambda must be positive");
    FreeEigenvalue e;
    e.k = k;
    e.lambda = lambda;
    e.multiplicity = harmonic_dimension(k, n);
    cplx lg = complex_log_gamma(cplx(0.0, -lambda)) - complex_log_gamma(cplx(0.0, lambda));
    if (k == 0) {
        e.conventional = true;
    } else {
        double kk = static_cast<double>(k) * (k + n - 1);
        lg += cplx(0.0, lambda * std::log(kk));
    }
    e.value = std::exp(lg);
    return e;
}

cplx free_connection_ratio(int k, double lambda, int n)
{
    double a = k + 0.5 * n;
    cplx l = complex_log_gamma(cplx(0.0, lambda)) - complex_log_gamma(cplx(0.0, -lambda)) +
             complex_log_gamma(cplx(a, -lambda)) - complex_log_gamma(cplx(a, lambda));
    return std::exp(l);
}

cplx resolvent_series_G(cplx s, double tau, int n, double tol)
{
    if (!(tau > 1.0))
        throw domain_error("resolvent_series_G: tau must exceed 1");
    if (is_pole(s))
        throw domain_error("resolvent_series_G: s is a pole of Gamma");
    // start at the first j where Gamma(s - n/2 + j + 1) is finite
    int j = 0;
    while (is_pole(s - 0.5 * n + static_cast<double>(j) + 1.0))
        ++j;
    double itau2 = 1.0 / (tau * tau);
    cplx term = std::exp(complex_log_gamma(s + 2.0 * j) -
                         complex_log_gamma(s - 0.5 * n + static_cast<double>(j) + 1.0) -
                         std::lgamma(j + 1.0) - j * std::log(4.0 * tau * tau));
    cplx sum = term;
    const int cap = 10000;
    for (int it = 0; it < cap; ++it, ++j) {
        double jd = j;
        cplx ratio = (s + 2.0 * jd) * (s + 2.0 * jd + 1.0) /
                     (4.0 * (jd + 1.0) * (s - 0.5 * n + jd + 1.0)) * itau2;
        term *= ratio;
        sum += term;
        if (std::abs(ratio) < 1.0 && std::abs(term) < tol * std::abs(sum))
            return std::pow(pi, -0.5 * n) * std::exp(-(s + 1.0) * std::log(2.0)) * sum;
    }
    throw tolerance_error("resolvent_series_G: series did not converge within 10000 terms");
}

cplx free_resolvent_kernel(cplx s, double distance, int n, double tol)
{
    double tau = std::cosh(distance);
    return std::exp(-s * std::log(tau)) * resolvent_series_G(s, tau, n, tol);
}

double sphere_volume(int n)
{
    if (n == 0)
        return 2.0;
    return 2.0 * std::pow(pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

double ball_volume(int n) { return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

}  // namespace hypershift
