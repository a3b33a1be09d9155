#pragma once

// CSV and JSON renderings of census reports. Densities are produced from the
// exact counts by integer round-half-even to 6 decimals, so output is
// bit-exact and locale independent.

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "artin/census.hpp"
#include "artin/errors.hpp"
#include "artin/order_kernel.hpp"

namespace artin {

// count / denominator rounded half-even to `digits` decimals ("nan" for 0/0).
inline std::string format_density(std::uint64_t count, std::uint64_t denominator,
                                  unsigned digits = 6) {
    if (denominator == 0)
        return "nan";
    u128 scale = 1;
    for (unsigned i = 0; i < digits; ++i)
        scale *= 10;
    const u128 scaled = static_cast<u128>(count) * scale;
    u128 q = scaled / denominator;
    const u128 r = scaled % denominator;
    if (2 * r > denominator || (2 * r == denominator && q % 2 == 1))
        ++q;
    const auto whole = static_cast<std::uint64_t>(q / scale);
    std::string frac = std::to_string(static_cast<std::uint64_t>(q % scale));
    if (digits == 0)
        return std::to_string(whole);
    return std::to_string(whole) + "." + std::string(digits - frac.size(), '0') + frac;
}

inline std::string csv_header(std::uint64_t k) {
    std::string out = "x,pi_x";
    for (std::uint64_t l = 0; l < k; ++l)
        out += ",count_" + std::to_string(l);
    out += ",excluded";
    for (std::uint64_t l = 0; l < k; ++l)
        out += ",density_" + std::to_string(l);
    return out;
}

inline std::string csv_row(const Checkpoint& cp) {
    const CountVector& v = cp.counts;
    std::string out = std::to_string(cp.x) + "," + std::to_string(v.pi_x);
    for (auto c : v.counts)
        out += "," + std::to_string(c);
    out += "," + std::to_string(v.excluded);
    for (auto c : v.counts)
        out += "," + format_density(c, v.denominator());
    return out;
}

inline void write_csv(std::ostream& os, const CensusReport& report) {
    os << csv_header(report.k) << '\n';
    for (const auto& cp : report.checkpoints)
        os << csv_row(cp) << '\n';
}

inline nlohmann::ordered_json to_json(const CensusReport& report) {
    nlohmann::ordered_json j;
    j["a"] = report.a;
    j["k"] = report.k;
    j["eligibility_rule"] = std::string(to_string(report.rule));
    j["tool_version"] = report.tool_version;
    if (report.timestamp)
        j["timestamp"] = *report.timestamp;
    auto cps = nlohmann::ordered_json::array();
    for (const auto& cp : report.checkpoints) {
        nlohmann::ordered_json c;
        c["x"] = cp.x;
        c["pi_x"] = cp.counts.pi_x;
        c["counts"] = cp.counts.counts;
        c["excluded"] = cp.counts.excluded;
        c["denominator"] = cp.counts.denominator();
        auto dens = nlohmann::ordered_json::array();
        for (auto count : cp.counts.counts)
            dens.push_back(format_density(count, cp.counts.denominator()));
        c["densities"] = dens;
        cps.push_back(std::move(c));
    }
    j["checkpoints"] = std::move(cps);
    return j;
}

inline CensusReport census_report_from_json(const nlohmann::ordered_json& j) {
    try {
        CensusReport report;
        report.a = j.at("a").get<std::uint64_t>();
        report.k = j.at("k").get<std::uint64_t>();
        report.rule = parse_eligibility_rule(j.at("eligibility_rule").get<std::string>());
        report.tool_version = j.at("tool_version").get<std::string>();
        if (j.contains("timestamp"))
            report.timestamp = j.at("timestamp").get<std::string>();
        for (const auto& c : j.at("checkpoints")) {
            CountVector v(report.k, report.rule);
            v.counts = c.at("counts").get<std::vector<std::uint64_t>>();
            v.excluded = c.at("excluded").get<std::uint64_t>();
            v.pi_x = c.at("pi_x").get<std::uint64_t>();
            if (!v.consistent())
                throw InvalidArgument("census JSON: inconsistent counts");
            report.checkpoints.push_back({c.at("x").get<std::uint64_t>(), std::move(v)});
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("census JSON: ") + e.what());
    }
}

inline void write_json(std::ostream& os, const CensusReport& report) {
    os << to_json(report).dump(2) << '\n';
}

} // namespace artin
