#pragma once

// On-disk cache of census reports, one JSON file per
// (a, k, x, eligibility rule, tool version).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "artin/census.hpp"
#include "artin/report.hpp"

namespace artin {

class CensusCache {
public:
    explicit CensusCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(std::uint64_t a, std::uint64_t k, std::uint64_t x,
                                   EligibilityRule rule) const {
        return dir_ / ("census-a" + std::to_string(a) + "-k" + std::to_string(k) + "-x" +
                       std::to_string(x) + "-" + std::string(to_string(rule)) + "-v" +
                       std::string(kToolVersion) + ".json");
    }

    // A hit needs the same key and the same checkpoint list.
    std::optional<CensusReport> load(std::uint64_t a, std::uint64_t k, std::uint64_t x,
                                     EligibilityRule rule,
                                     const std::vector<std::uint64_t>& checkpoints) const {
        std::ifstream in(path_for(a, k, x, rule));
        if (!in)
            return std::nullopt;
        try {
            auto report = census_report_from_json(nlohmann::ordered_json::parse(in));
            if (report.a != a || report.k != k || report.rule != rule ||
                report.tool_version != kToolVersion)
                return std::nullopt;
            std::vector<std::uint64_t> stored;
            for (const auto& cp : report.checkpoints)
                stored.push_back(cp.x);
            if (stored != checkpoints)
                return std::nullopt;
            report.timestamp.reset();
            return report;
        } catch (const std::exception&) {
            return std::nullopt;  // unreadable entries are recomputed
        }
    }

    void store(CensusReport report) const {
        std::filesystem::create_directories(dir_);
        report.timestamp.reset();
        const auto x = report.checkpoints.empty() ? 0 : report.checkpoints.back().x;
        const auto target = path_for(report.a, report.k, x, report.rule);
        const auto tmp = std::filesystem::path(target.string() + ".tmp");
        {
            std::ofstream out(tmp);
            write_json(out, report);
        }
        std::filesystem::rename(tmp, target);
    }

private:
    std::filesystem::path dir_;
};

} // namespace artin
