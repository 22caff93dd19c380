#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "hypershift/parallel.hpp"
#include "hypershift/radial_scattering.hpp"
#include "hypershift/specfun.hpp"

namespace hypershift {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

// Kernel |w - theta|^{-1 + 2 i lambda} on S^1 evaluated through
// log|w - theta|^2 = log(1 + r^2 - 2 r cos(beta)).
cd ring_factor(double r, double beta, double lambda)
{
    double L = std::log1p(r * r - 2.0 * r * std::cos(beta));
    return std::exp(cd(-0.5, lambda) * L);
}

int ring_points(double r, double lambda, int kmax)
{
    double freq = lambda * std::sqrt(r) / (1.0 - r) + kmax;
    int need = static_cast<int>(4.0 * freq) + 64;
    int N = 64;
    while (N < need)
        N *= 2;
    return N;
}

// Phi_k(r) = int_0^{2pi} |r - e^{i beta}|^{-1+2i lambda} e^{i k beta} d beta for k = 0..kmax.
// The integrand is even in beta, so the forward transform gives the same values.
std::vector<double> ring_moduli_sq(double r, double lambda, int kmax)
{
    int N = ring_points(r, lambda, kmax);
    std::vector<cd> f(N), F;
    for (int j = 0; j < N; ++j)
        f[j] = ring_factor(r, 2.0 * pi * j / N, lambda);
    Eigen::FFT<double> fft;
    fft.fwd(F, f);
    std::vector<double> out(kmax + 1);
    double w = 2.0 * pi / N;
    for (int k = 0; k <= kmax; ++k)
        out[k] = std::norm(w * F[k]);
    return out;
}

struct RhoGrid {
    std::vector<double> rho;
    std::vector<double> weight;
};

// Composite Simpson grid on [0, rho_cut] with spacing <= 0.25/lambda.
RhoGrid simpson_grid(double rho_cut, double lambda)
{
    double target = std::min(0.25 / lambda, 0.02);
    int n = static_cast<int>(std::ceil(rho_cut / target));
    if (n % 2)
        ++n;
    double h = rho_cut / n;
    if (lambda * h > 0.3)
        throw tolerance_error("born: grid spacing too coarse for the oscillation scale");
    RhoGrid g;
    for (int i = 0; i <= n; ++i) {
        g.rho.push_back(i * h);
        double c = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        g.weight.push_back(c * h / 3.0);
    }
    return g;
}

// 2^{n+2} lambda^2 |c(1/2 + i lambda)|^2 times the boundary measure factor 2^{-n}.
double born_prefactor(double lambda)
{
    double c = std::abs(c_of_s(cd(0.5, lambda), 1));
    return 8.0 * lambda * lambda * c * c * 0.5;
}

}  // namespace

std::vector<double> born_spectrum_h2(int kmax, double lambda, const RadialPotential& pot, double tol)
{
    if (kmax < 0)
        throw domain_error("born_spectrum_h2: kmax must be nonnegative");
    if (!(lambda > 0.0))
        throw domain_error("born_spectrum_h2: lambda must be positive");
    std::vector<double> out(kmax + 1, 0.0);
    if (pot.is_zero())
        return out;
    double rho_cut = pot.effective_radius(std::min(1e-6, tol));
    RhoGrid g = simpson_grid(rho_cut, lambda);
    std::vector<std::vector<double>> rows(g.rho.size());
    parallel_for(g.rho.size(), [&](std::size_t i) {
        double rho = g.rho[i];
        double v = pot(rho);
        if (rho == 0.0 || v == 0.0) {
            rows[i].assign(kmax + 1, 0.0);
            return;
        }
        double r = radius_of_rho(rho);
        rows[i] = ring_moduli_sq(r, lambda, kmax);
        // dr/(1-r^2) = d rho / 2
        double w = g.weight[i] * v * r * 0.5;
        for (double& x : rows[i])
            x *= w;
    });
    std::vector<double> col(g.rho.size());
    double pref = -born_prefactor(lambda);
    for (int k = 0; k <= kmax; ++k) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            col[i] = rows[i][k];
        out[k] = pref * pairwise_sum(col);
    }
    return out;
}

double born_eigenvalue_h2(int k, double lambda, const RadialPotential& pot, double tol)
{
    return born_spectrum_h2(k, lambda, pot, tol).back();
}

Eigen::MatrixXcd born_kernel_matrix(double lambda, const RadialPotential& pot, int n_angles)
{
    if (n_angles < 4)
        throw domain_error("born_kernel_matrix: need at least 4 angles");
    double rho_cut = std::max(pot.effective_radius(1e-7), 1e-3);
    RhoGrid g = simpson_grid(rho_cut, lambda);
    int M = ring_points(radius_of_rho(rho_cut), lambda, n_angles);
    // U(theta_i, theta_j) = -i 2^{n+2} lambda |c|^2 int V conj(g_i) g_j dw/(1-|w|^2),
    // times the theta' quadrature weight 2^{-n} 2 pi / N; accumulated ring by ring
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(n_angles, n_angles);
    Eigen::MatrixXcd G(M, n_angles);
    for (std::size_t i = 0; i < g.rho.size(); ++i) {
        double rho = g.rho[i];
        double v = pot(rho);
        if (rho == 0.0 || v == 0.0)
            continue;
        double r = radius_of_rho(rho);
        // area element r dr d alpha with dr/(1-r^2) = d rho/2
        double wr = g.weight[i] * v * r * 0.5 * (2.0 * pi / M);
        for (int a = 0; a < M; ++a) {
            double alpha = 2.0 * pi * a / M;
            for (int j = 0; j < n_angles; ++j)
                G(a, j) = ring_factor(r, alpha - 2.0 * pi * j / n_angles, lambda);
        }
        U.noalias() += wr * (G.adjoint() * G);
    }
    double c = std::abs(c_of_s(cd(0.5, lambda), 1));
    double pref = 8.0 * lambda * c * c * 0.5 * (2.0 * pi / n_angles);
    return cd(0.0, -pref) * U;
}

}  // namespace hypershift
