#include "hypershift/trace_formula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypershift/parallel.hpp"
#include "hypershift/specfun.hpp"

namespace hypershift {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

Pairing mu_h_pairing(const PhaseShiftSpectrum& spectrum, const std::function<double(double)>& f, int n)
{
    double h = 1.0 / spectrum.lambda;
    std::vector<double> terms;
    terms.reserve(spectrum.entries.size());
    for (const auto& e : spectrum.entries)
        terms.push_back(static_cast<double>(e.multiplicity) * f(e.delta / h));
    double scale = std::pow(2.0 * pi * h, n);
    Pairing out;
    double total = pairwise_sum(terms);
    out.value = scale * total;
    std::size_t start = terms.size() - terms.size() / 10;
    double tail = pairwise_sum(terms.data() + start, terms.size() - start);
    double mag = 0.0;
    for (double t : terms)
        mag += std::abs(t);
    out.tail_fraction = mag > 0.0 ? std::abs(tail) / mag : 0.0;
    out.tail_dominated = out.tail_fraction > 0.01;
    return out;
}

PhaseShiftSpectrum with_multiplicity(PhaseShiftSpectrum spectrum, MultiplicityRule rule)
{
    for (auto& e : spectrum.entries)
        e.multiplicity = rule == MultiplicityRule::harmonic ? harmonic_dimension(e.k, spectrum.n)
                                                            : binomial_multiplicity(e.k, spectrum.n);
    return spectrum;
}

std::function<double(double)> sampled_test_function(std::vector<double> t, std::vector<double> values,
                                                    double zero_radius)
{
    if (t.size() != values.size() || t.size() < 2)
        throw domain_error("sampled_test_function: need matching samples");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw domain_error("sampled_test_function: abscissae must increase");
    if (!(zero_radius > 0.0))
        throw domain_error("sampled_test_function: declare a positive zero radius");
    for (std::size_t i = 0; i < t.size(); ++i)
        if (std::abs(t[i]) < zero_radius && values[i] != 0.0)
            throw domain_error("sampled_test_function: f must vanish near 0");
    return [t = std::move(t), v = std::move(values), zero_radius](double x) {
        if (std::abs(x) < zero_radius || x <= t.front() || x >= t.back())
            return 0.0;
        auto it = std::upper_bound(t.begin(), t.end(), x);
        std::size_t i = static_cast<std::size_t>(it - t.begin());
        double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
        return (1.0 - w) * v[i - 1] + w * v[i];
    };
}

int kmax_policy(const RadialPotential& pot, double lambda, double tol)
{
    if (pot.is_zero())
        return 0;
    double R = 0.0;
    for (double u = 0.0; u < 12.0; u += 0.05) {
        double r = std::sinh(u);
        if (std::abs(classical_profile_value(pot, r, 0.1 * tol)) < tol) {
            R = r;
            break;
        }
        R = r;
    }
    return static_cast<int>(std::ceil(2.0 * lambda * R));
}

std::vector<TraceRow> moment_rows(const PhaseShiftSpectrum& spectrum, const ClassicalProfile& profile,
                                  const std::vector<int>& p_list, double tol)
{
    std::vector<TraceRow> rows;
    int n = spectrum.n;
    double h = 1.0 / spectrum.lambda;
    for (int p : p_list) {
        if (p < 1)
            throw domain_error("moment_compare: p must be at least 1");
        auto f = [p](double t) { return std::pow(t, p); };
        TraceRow row;
        row.lambda = spectrum.lambda;
        row.h = h;
        row.p = p;
        row.kmax = spectrum.kmax;
        row.quantum = mu_h_pairing(spectrum, f, n).value;
        row.classical = classical_nu_integral(profile, f, n, tol);
        row.abs_err = std::abs(row.quantum - row.classical);
        row.rel_err = row.classical != 0.0 ? row.abs_err / std::abs(row.classical) : (row.abs_err == 0.0 ? 0.0 : INFINITY);
        std::vector<double> d;
        for (const auto& e : spectrum.entries)
            d.push_back(static_cast<double>(e.multiplicity) *
                        std::abs(std::pow(e.delta / h, p) - std::pow(std::sin(e.delta) / h, p)));
        row.sin_defect = std::pow(2.0 * pi * h, n) * pairwise_sum(d);
        rows.push_back(row);
    }
    return rows;
}

std::vector<TraceRow> moment_compare(const RadialPotential& pot, int n, double lambda, const std::vector<int>& p_list,
                                     const TraceOptions& opts)
{
    if (!std::isfinite(pot.decay_exponent)) {
        for (int p : p_list)
            if (p < 1)
                throw domain_error("moment_compare: p must be at least 1");
    } else {
        double m = pot.decay_exponent;
        double pmin = 2.0 * (n - 0.5) / (m - 1.0);
        for (int p : p_list)
            if (p < 1 || !(p > pmin))
                throw domain_error("moment_compare: p must exceed 2(n-1/2)/(m-1)");
    }
    int kmax = opts.kmax > 0 ? opts.kmax : kmax_policy(pot, lambda, opts.tol);
    auto spectrum = phase_spectrum(lambda, kmax, pot, n, opts.tol, opts.multiplicity, opts.solver);
    ClassicalProfile profile;
    profile.evaluator = [pot, tol = opts.tol, norm = opts.normalization, n](double r) {
        return classical_profile_value(pot, r, 0.01 * tol, norm, n);
    };
    profile.normalization = opts.normalization;
    return moment_rows(spectrum, profile, p_list, opts.tol);
}

SlopeFit fit_convergence(const std::vector<TraceRow>& rows, int p)
{
    SlopeFit fit;
    fit.p = p;
    std::vector<double> x, y;
    for (const auto& r : rows) {
        if (r.p != p)
            continue;
        if (!(r.abs_err > 0.0))
            return fit;
        x.push_back(std::log(r.h));
        y.push_back(std::log(r.abs_err));
    }
    if (x.size() < 2)
        return fit;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double slope = sxy / sxx;
    fit.slope = slope;
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.residuals.push_back(y[i] - (my + slope * (x[i] - mx)));
    return fit;
}

TraceReport convergence_study(const RadialPotential& pot, int n, const std::vector<double>& lambda_list,
                              const std::vector<int>& p_list, const TraceOptions& opts)
{
    if (lambda_list.size() < 3)
        throw domain_error("convergence_study: need at least 3 lambda values");
    for (std::size_t i = 1; i < lambda_list.size(); ++i)
        if (!(lambda_list[i] > lambda_list[i - 1]))
            throw domain_error("convergence_study: lambda_list must increase");
    TraceReport rep;
    rep.lambda_list = lambda_list;
    for (double lambda : lambda_list) {
        auto rows = moment_compare(pot, n, lambda, p_list, opts);
        rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
    }
    for (int p : p_list) {
        auto fit = fit_convergence(rep.rows, p);
        if (!fit.slope)
            rep.warnings.push_back("slope undefined for p=" + std::to_string(p) + " (vanishing error)");
        rep.fits.push_back(std::move(fit));
    }
    return rep;
}

}  // namespace hypershift
