#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/crc.hpp>

#include "csv_io.hpp"
#include "hypershift/geometry.hpp"

namespace hypershift::cli {

namespace {

template <class T>
std::vector<T> parse_list(const std::string& s)
{
    std::vector<std::string> parts;
    boost::algorithm::split(parts, s, boost::is_any_of(",; "), boost::token_compress_on);
    std::vector<T> out;
    for (auto& p : parts) {
        boost::algorithm::trim(p);
        if (p.empty())
            continue;
        std::istringstream in(p);
        in.imbue(std::locale::classic());
        T v;
        if (!(in >> v) || !in.eof())
            throw domain_error("cannot parse list element '" + p + "'");
        out.push_back(v);
    }
    return out;
}

std::string join(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + io::fmt(v[i]);
    return s;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& s) { return parse_list<double>(s); }
std::vector<int> parse_int_list(const std::string& s) { return parse_list<int>(s); }

void validate(const RunConfig& cfg)
{
    if (cfg.n < 1 || cfg.n > 3)
        throw domain_error("dim must be 1, 2 or 3");
    if (!(cfg.tol > 0.0))
        throw domain_error("tol must be positive");
    if (!(cfg.lambda > 0.0))
        throw domain_error("lambda must be positive");
    for (double l : cfg.lambda_list)
        if (!(l > 0.0))
            throw domain_error("lambda-list entries must be positive");
    if (cfg.kmax < 0)
        throw domain_error("kmax must be nonnegative");
    for (int p : cfg.p_list)
        if (p < 1)
            throw domain_error("p-list entries must be at least 1");
    if (!(cfg.du > 0.0) || !(cfg.u_max > 0.0))
        throw domain_error("r grid parameters must be positive");
    if (!(cfg.knot_spacing > 0.0))
        throw domain_error("knot spacing must be positive");
    if (cfg.tail_exponent < 0.0)
        throw domain_error("tail exponent must be nonnegative");
    if (cfg.multiplicity != "harmonic" && cfg.multiplicity != "binomial")
        throw domain_error("multiplicity must be harmonic or binomial");
    if (cfg.normalization != "arclength" && cfg.normalization != "literal")
        throw domain_error("normalization must be arclength or literal");
    if (cfg.out.empty())
        throw domain_error("out must name a directory");
}

std::string canonical(const RunConfig& cfg)
{
    std::map<std::string, std::string> kv;
    kv["subcommand"] = cfg.subcommand;
    kv["dim"] = std::to_string(cfg.n);
    kv["potential"] = cfg.potential;
    kv["lambda"] = io::fmt(cfg.lambda);
    kv["lambda_list"] = join(cfg.lambda_list);
    kv["kmax"] = std::to_string(cfg.kmax);
    kv["tol"] = io::fmt(cfg.tol);
    std::vector<double> p(cfg.p_list.begin(), cfg.p_list.end());
    kv["p_list"] = join(p);
    kv["reg"] = io::fmt(cfg.reg);
    kv["u_max"] = io::fmt(cfg.u_max);
    kv["du"] = io::fmt(cfg.du);
    kv["profile"] = cfg.profile;
    kv["knot_spacing"] = io::fmt(cfg.knot_spacing);
    kv["tail_exponent"] = io::fmt(cfg.tail_exponent);
    kv["reference"] = cfg.reference;
    kv["multiplicity"] = cfg.multiplicity;
    kv["normalization"] = cfg.normalization;
    std::string s;
    for (const auto& [k, v] : kv)
        s += k + "=" + v + "\n";
    return s;
}

std::string config_hash(const RunConfig& cfg)
{
    boost::crc_32_type crc;
    std::string s = canonical(cfg);
    crc.process_bytes(s.data(), s.size());
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
    return buf;
}

}  // namespace hypershift::cli
