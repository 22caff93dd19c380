#include "hypershift/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>

namespace hypershift {

std::string family_name(Family f)
{
    switch (f) {
        case Family::zero: return "zero";
        case Family::gaussian_rho: return "gaussian_rho";
        case Family::bump_ball: return "bump_ball";
        case Family::exp_decay: return "exp_decay";
        case Family::tabulated: return "tabulated";
        case Family::reconstructed: return "reconstructed";
    }
    return "unknown";
}

Family family_from_name(const std::string& name)
{
    for (Family f : {Family::zero, Family::gaussian_rho, Family::bump_ball, Family::exp_decay,
                     Family::tabulated, Family::reconstructed})
        if (family_name(f) == name)
            return f;
    throw invalid_parameter("unknown potential family: " + name);
}

double RadialPotential::working_exponent() const
{
    if (std::isfinite(decay_exponent))
        return decay_exponent;
    if (family == Family::gaussian_rho)
        return 10.0 / params.at("sigma");
    return 10.0;
}

double RadialPotential::effective_radius(double eps) const
{
    if (std::isfinite(support_rho))
        return support_rho;
    double vmax = 0.0;
    for (int i = 0; i <= 400; ++i)
        vmax = std::max(vmax, std::abs(profile(0.05 * i)));
    if (vmax == 0.0)
        return 0.0;
    double rho = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        double r = 0.05 * i;
        if (std::abs(profile(r)) >= eps * vmax)
            rho = r;
    }
    return rho + 0.05;
}

RadialPotential zero_potential()
{
    RadialPotential p;
    p.profile = [](double) { return 0.0; };
    p.family = Family::zero;
    p.support_rho = 0.0;
    return p;
}

RadialPotential gaussian_rho(double A, double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(A))
        throw invalid_parameter("gaussian_rho: sigma must be positive and A finite");
    if (A == 0.0) {
        auto p = zero_potential();
        p.params = {{"A", A}, {"sigma", sigma}};
        return p;
    }
    RadialPotential p;
    double s2 = sigma * sigma;
    p.profile = [A, s2](double rho) { return -A * std::exp(-rho * rho / s2); };
    p.family = Family::gaussian_rho;
    p.params = {{"A", A}, {"sigma", sigma}};
    return p;
}

RadialPotential bump_ball(double A, double delta)
{
    if (!(delta > 0.0 && delta < 1.0) || !std::isfinite(A))
        throw invalid_parameter("bump_ball: delta must lie in (0,1)");
    RadialPotential p;
    double R = 1.0 - delta;
    p.profile = [A, R](double rho) {
        double q = std::tanh(0.5 * rho) / R;
        if (q >= 1.0)
            return 0.0;
        return -A * std::exp(1.0 - 1.0 / (1.0 - q * q));
    };
    p.family = A == 0.0 ? Family::zero : Family::bump_ball;
    p.params = {{"A", A}, {"delta", delta}};
    p.support_rho = rho_of_radius(R);
    return p;
}

RadialPotential exp_decay(double A, double m)
{
    if (!(m > 0.0) || !std::isfinite(m) || !std::isfinite(A))
        throw invalid_parameter("exp_decay: m must be positive");
    RadialPotential p;
    p.profile = [A, m](double rho) { return -A * std::exp(-m * rho); };
    p.family = A == 0.0 ? Family::zero : Family::exp_decay;
    p.decay_exponent = m;
    p.params = {{"A", A}, {"m", m}};
    return p;
}

RadialPotential tabulated(std::vector<double> rho, std::vector<double> values, double tail_exponent)
{
    if (!(tail_exponent > 0.0) || !std::isfinite(tail_exponent))
        throw invalid_parameter("tabulated: a positive tail exponent must be declared");
    if (rho.size() != values.size() || rho.size() < 4)
        throw invalid_parameter("tabulated: need at least 4 samples of equal length");
    if (rho.front() != 0.0)
        throw invalid_parameter("tabulated: rho must start at 0");
    for (std::size_t i = 1; i < rho.size(); ++i)
        if (!(rho[i] > rho[i - 1]))
            throw invalid_parameter("tabulated: rho must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v))
            throw invalid_parameter("tabulated: non-finite value");

    double rho_last = rho.back();
    double v_last = values.back();
    std::vector<double> knots = rho;
    auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
        std::move(rho), std::move(values));
    RadialPotential p;
    p.profile = [spline, rho_last, v_last, m = tail_exponent](double r) {
        if (r <= rho_last)
            return (*spline)(r);
        return v_last * std::exp(-m * (r - rho_last));
    };
    p.family = Family::tabulated;
    p.decay_exponent = tail_exponent;
    p.params = {{"m", tail_exponent}};
    p.breakpoints = std::move(knots);
    return p;
}

RadialPotential make_potential(Family family, const ParamMap& params)
{
    auto get = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            throw invalid_parameter(family_name(family) + ": missing parameter " + key);
        return it->second;
    };
    auto get_or = [&](const char* key, double dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    switch (family) {
        case Family::zero: return zero_potential();
        case Family::gaussian_rho: return gaussian_rho(get_or("A", 1.0), get_or("sigma", 1.0));
        case Family::bump_ball: return bump_ball(get_or("A", 1.0), get("delta"));
        case Family::exp_decay: return exp_decay(get_or("A", 1.0), get("m"));
        case Family::tabulated:
        case Family::reconstructed:
            throw invalid_parameter(family_name(family) + " potentials are built from samples");
    }
    throw invalid_parameter("unknown family");
}

RadialPotential parse_potential(const std::string& spec)
{
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    ParamMap params;
    std::string path;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw invalid_parameter("potential spec: expected key=value, got " + item);
            std::string key = item.substr(0, eq);
            std::string val = item.substr(eq + 1);
            if (key == "path") {
                path = val;
                continue;
            }
            try {
                std::size_t used = 0;
                params[key] = std::stod(val, &used);
                if (used != val.size())
                    throw std::invalid_argument(val);
            } catch (const std::exception&) {
                throw invalid_parameter("potential spec: bad number for " + key);
            }
        }
    }
    Family f = family_from_name(name);
    if (f == Family::tabulated) {
        if (path.empty())
            throw invalid_parameter("tabulated potential needs path=...");
        auto it = params.find("m");
        if (it == params.end())
            throw invalid_parameter("tabulated potential needs a declared tail exponent m");
        return load_tabulated_csv(path, it->second);
    }
    return make_potential(f, params);
}

AmbientPotential to_ambient(const RadialPotential& pot)
{
    AmbientPotential a;
    auto prof = pot.profile;
    a.eval = [prof](const Vec& w) {
        double r = w.norm();
        return prof(std::log1p(r) - std::log1p(-r));
    };
    if (std::isfinite(pot.support_rho))
        a.support_delta = 1.0 - radius_of_rho(pot.support_rho);
    a.decay_exponent = pot.decay_exponent;
    a.working_exponent = pot.working_exponent();
    return a;
}

RadialPotential load_tabulated_csv(const std::string& path, double tail_exponent)
{
    std::ifstream in(path);
    if (!in)
        throw invalid_parameter("cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw invalid_parameter(path + ": empty file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "rho,value")
        throw invalid_parameter(path + ": expected header rho,value");
    std::vector<double> rho, val;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw invalid_parameter(path + ":" + std::to_string(lineno) + ": expected two columns");
        try {
            rho.push_back(std::stod(line.substr(0, comma)));
            val.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw invalid_parameter(path + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    return tabulated(std::move(rho), std::move(val), tail_exponent);
}

double weighted_norm(const RadialPotential& pot, double m, const std::vector<double>& rho_grid)
{
    double best = 0.0;
    for (double r : rho_grid) {
        double v = std::abs(pot(r));
        if (v > 0.0)
            best = std::max(best, std::exp(m * r + std::log(v)));
    }
    return best;
}

double weighted_norm(const AmbientPotential& pot, double m, const std::vector<BallPoint>& grid)
{
    double best = 0.0;
    for (const auto& w : grid) {
        double v = pot(w);
        if (v == 0.0)
            continue;
        best = std::max(best, std::exp(-m * std::log(boundary_defining_function(w)) + std::log(std::abs(v))));
    }
    return best;
}

int monotonicity(const RadialPotential& pot, const std::vector<double>& rho_grid)
{
    bool up = true, down = true;
    for (std::size_t i = 1; i < rho_grid.size(); ++i) {
        double a = pot(rho_grid[i - 1]), b = pot(rho_grid[i]);
        if (std::abs(a) <= 1e-13 && std::abs(b) <= 1e-13)
            continue;
        if (b < a)
            up = false;
        if (b > a)
            down = false;
    }
    if (up && !down)
        return 1;
    if (down && !up)
        return -1;
    return 0;
}

}  // namespace hypershift
