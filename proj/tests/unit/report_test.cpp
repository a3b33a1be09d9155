#include <sstream>

#include <gtest/gtest.h>

#include "artin/report.hpp"

namespace artin {
namespace {

TEST(FormatDensity, RoundsHalfToEven) {
    EXPECT_EQ(format_density(1, 4), "0.250000");
    EXPECT_EQ(format_density(1, 3), "0.333333");
    EXPECT_EQ(format_density(2, 3), "0.666667");
    // 1/16 = 0.0625 exactly: tie at the 4th digit
    EXPECT_EQ(format_density(1, 16, 3), "0.062");
    EXPECT_EQ(format_density(3, 16, 3), "0.188");
    EXPECT_EQ(format_density(1, 8, 2), "0.12");
    EXPECT_EQ(format_density(3, 8, 2), "0.38");
    EXPECT_EQ(format_density(5, 5), "1.000000");
    EXPECT_EQ(format_density(0, 7), "0.000000");
    EXPECT_EQ(format_density(0, 0), "nan");
    EXPECT_EQ(format_density(1, 2, 0), "0");
    EXPECT_EQ(format_density(3, 2, 0), "2");
}

TEST(FormatDensity, SixDecimalRatios) {
    // 53 of the 166 odd primes p <= 1000 not dividing 5 have order = 0 mod 4
    EXPECT_EQ(format_density(53, 166), "0.319277");
    EXPECT_EQ(format_density(26, 166), "0.156627");
}

TEST(Csv, SmallCensus) {
    std::ostringstream os;
    write_csv(os, census(3, 4, 10, {}));
    EXPECT_EQ(os.str(),
              "x,pi_x,count_0,count_1,count_2,count_3,excluded,density_0,density_1,density_2,"
              "density_3\n"
              "10,4,1,1,1,0,1,0.250000,0.250000,0.250000,0.000000\n");
}

TEST(Json, RoundTrip) {
    auto report = census(21, 4, 20'000, {1000, 10'000});
    report.timestamp = "2026-01-01T00:00:00Z";
    const auto j = to_json(report);
    EXPECT_EQ(j.at("eligibility_rule"), "coprime");
    EXPECT_EQ(j.at("checkpoints").size(), 3u);
    EXPECT_EQ(j.at("checkpoints")[0].at("densities").size(), 4u);
    EXPECT_EQ(census_report_from_json(j), report);
}

TEST(Json, KeysAreOrdered) {
    const auto j = to_json(census(5, 4, 100, {}));
    std::vector<std::string> keys;
    for (const auto& [key, value] : j.items())
        keys.push_back(key);
    EXPECT_EQ(keys, (std::vector<std::string>{"a", "k", "eligibility_rule", "tool_version",
                                              "checkpoints"}));
}

TEST(Json, RejectsInconsistentCounts) {
    auto j = to_json(census(5, 4, 100, {}));
    j["checkpoints"][0]["excluded"] = 7;
    EXPECT_THROW(census_report_from_json(j), InvalidArgument);
    j.erase("k");
    EXPECT_THROW(census_report_from_json(j), InvalidArgument);
}

} // namespace
} // namespace artin
