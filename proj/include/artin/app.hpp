#pragma once

// Command dispatch for the `artin` tool. Parsing of argv lives in
// tools/artin.cpp; everything here works on a validated RunConfig so it can
// be driven from tests without a process boundary.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "artin/cache.hpp"
#include "artin/census.hpp"
#include "artin/errors.hpp"
#include "artin/li.hpp"
#include "artin/report.hpp"
#include "artin/sieve_identities.hpp"
#include "artin/theory.hpp"

namespace artin {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitHypothesis = 2, kExitVerification = 3 };

inline constexpr std::uint64_t kMaxCliBase = std::uint64_t{1} << 31;
inline constexpr std::uint64_t kTableBases[] = {5, 21, 3, 6};

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
    std::string command;         // census | tables | verify-sieve | theory | splitting | index-tail
    std::string theory_command;  // coeff | hasse | kummer | degrees | case | density
    std::uint64_t a = 5;
    std::uint64_t k = 4;
    std::uint64_t x = 10'000'000;
    std::vector<std::uint64_t> checkpoints;  // empty: decades from 10^3
    OutputFormat format = OutputFormat::kCsv;
    std::string output_path;                 // empty: stdout
    std::uint64_t segment_size = kDefaultSegmentSize;
    unsigned workers = 1;
    std::optional<EligibilityRule> rule;     // default depends on the command
    std::string cache_dir;
    bool timestamp = false;

    // theory / experiment parameters
    std::uint64_t q = 2;
    unsigned terms = 20;
    std::uint64_t r = 1;
    std::uint64_t m = 1;
    unsigned f = 1;
    std::uint64_t l = 0;
    std::uint64_t n = 1;
    std::uint64_t d = 1;
    theory::TowerKind kind = theory::TowerKind::kK;
    unsigned target = 1;
    unsigned i = 1;
    unsigned j = 0;
    std::uint64_t psi = 1;
};

// Accepts "10000000", "1e7", "2.5e6" and "10^7".
inline std::uint64_t parse_count(const std::string& text) {
    auto fail = [&]() -> std::uint64_t {
        throw InvalidArgument("not a non-negative integer: '" + text + "'");
    };
    auto digits_only = [](const std::string& s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    };
    auto pow10 = [&](std::uint64_t base, std::uint64_t e) {
        std::uint64_t v = base;
        for (std::uint64_t i = 0; i < e; ++i)
            if (__builtin_mul_overflow(v, std::uint64_t{10}, &v))
                fail();
        return v;
    };
    if (digits_only(text)) {
        if (text.size() > 19)
            fail();
        return std::stoull(text);
    }
    if (const auto caret = text.find('^'); caret != std::string::npos) {
        const auto base = text.substr(0, caret), exp = text.substr(caret + 1);
        if (!digits_only(base) || !digits_only(exp) || base.size() > 19 || exp.size() > 3)
            fail();
        std::uint64_t v = 1, b = std::stoull(base);
        for (std::uint64_t e = std::stoull(exp); e > 0; --e)
            if (__builtin_mul_overflow(v, b, &v))
                fail();
        return v;
    }
    if (const auto ePos = text.find_first_of("eE"); ePos != std::string::npos) {
        std::string mant = text.substr(0, ePos);
        const std::string exp = text.substr(ePos + 1);
        if (!digits_only(exp) || exp.size() > 3)
            fail();
        std::uint64_t e = std::stoull(exp);
        if (const auto dot = mant.find('.'); dot != std::string::npos) {
            std::string frac = mant.substr(dot + 1);
            while (!frac.empty() && frac.back() == '0')
                frac.pop_back();
            if (frac.size() > e)
                fail();
            e -= frac.size();
            mant = mant.substr(0, dot) + frac;
        }
        if (!digits_only(mant) || mant.size() > 19)
            fail();
        return pow10(std::stoull(mant), e);
    }
    return fail();
}

inline void validate(const RunConfig& cfg) {
    if (cfg.a < 2 || cfg.a > kMaxCliBase)
        throw InvalidArgument("--a must be in [2, 2^31]");
    if (cfg.x < 2 || cfg.x > kMaxTableLimit)
        throw InvalidArgument("--x must be in [2, 2^32 - 1]");
    if (cfg.k < 2)
        throw InvalidArgument("--k must be at least 2");
    if (cfg.workers < 1)
        throw InvalidArgument("--workers must be at least 1");
    if (cfg.segment_size < 2)
        throw InvalidArgument("--segment-size must be at least 2");
    for (auto c : cfg.checkpoints)
        if (c < 1 || c > cfg.x)
            throw InvalidArgument("checkpoint " + std::to_string(c) + " outside [1, x]");
}

namespace detail {

inline void warn_on_hypotheses(std::uint64_t a, std::ostream& err) {
    if (a < 3)
        err << "warning: a = " << a << " is below 3\n";
    if (!theory::is_squarefree(a))
        err << "warning: a = " << a << " is not squarefree\n";
    if (a % 2 == 0)
        err << "warning: a = " << a << " is even\n";
    if (a % 4 != 1)
        err << "warning: a = " << a << " is not 1 mod 4; no theoretical value for l = 1, 3\n";
}

inline CensusOptions options_for(const RunConfig& cfg, EligibilityRule fallback) {
    CensusOptions opt;
    opt.segment_size = cfg.segment_size;
    opt.workers = cfg.workers;
    opt.rule = cfg.rule.value_or(fallback);
    return opt;
}

inline std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

inline CensusReport run_census(const RunConfig& cfg, std::uint64_t a, EligibilityRule fallback) {
    const auto opt = options_for(cfg, fallback);
    std::vector<std::uint64_t> cps =
        cfg.checkpoints.empty() ? default_checkpoints(cfg.x) : cfg.checkpoints;
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    if (cps.back() != cfg.x)
        cps.push_back(cfg.x);

    std::optional<CensusCache> cache;
    if (!cfg.cache_dir.empty())
        cache.emplace(cfg.cache_dir);
    if (cache)
        if (auto hit = cache->load(a, cfg.k, cfg.x, opt.rule, cps))
            return *hit;
    auto report = census(a, cfg.k, cfg.x, cps, opt);
    if (cache)
        cache->store(report);
    return report;
}

inline int cmd_census(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    warn_on_hypotheses(cfg.a, err);
    auto report = run_census(cfg, cfg.a, EligibilityRule::kCoprime);
    if (cfg.timestamp)
        report.timestamp = utc_now();
    if (cfg.format == OutputFormat::kJson)
        write_json(out, report);
    else
        write_csv(out, report);
    return kExitOk;
}

inline int cmd_tables(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    std::vector<CensusReport> reports;
    for (auto a : kTableBases) {
        RunConfig c = cfg;
        c.k = 4;
        reports.push_back(run_census(c, a, EligibilityRule::kOddCoprime));
    }
    if (cfg.format == OutputFormat::kJson) {
        nlohmann::ordered_json j;
        j["tables"] = nlohmann::ordered_json::array();
        for (const auto& r : reports)
            j["tables"].push_back(to_json(r));
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    for (std::size_t t = 0; t < reports.size(); ++t) {
        if (t > 0)
            out << '\n';
        out << "# densities of Q_a(x;4,l), a=" << reports[t].a
            << ", rule=" << to_string(reports[t].rule) << '\n';
        write_csv(out, reports[t]);
    }
    return kExitOk;
}

inline int cmd_verify_sieve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    warn_on_hypotheses(cfg.a, err);
    const auto report =
        verify_sieve_identities(cfg.a, cfg.x, options_for(cfg, EligibilityRule::kOddCoprime));
    if (cfg.format == OutputFormat::kJson) {
        nlohmann::ordered_json j;
        j["a"] = report.a;
        j["x"] = report.x;
        j["identities"] = nlohmann::ordered_json::array();
        for (const auto& id : report.identities)
            j["identities"].push_back(
                {{"l", id.l}, {"lhs", id.lhs}, {"rhs", id.rhs}, {"holds", id.holds()}});
        j["classified_total"] = report.classified_total;
        j["odd_order_total"] = report.odd_order_total;
        j["partition_holds"] = report.partition_holds();
        out << j.dump(2) << '\n';
    } else {
        out << "a=" << report.a << " x=" << report.x << '\n';
        for (const auto& id : report.identities)
            out << "l=" << id.l << " lhs=" << id.lhs << " rhs=" << id.rhs << ' '
                << (id.holds() ? "ok" : "FAIL") << '\n';
        out << "classified=" << report.classified_total
            << " odd_orders=" << report.odd_order_total << ' '
            << (report.partition_holds() ? "ok" : "FAIL") << '\n';
    }
    if (!report.all_hold()) {
        err << "error: sieve identity verification failed\n";
        return kExitVerification;
    }
    return kExitOk;
}

inline int cmd_splitting(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    warn_on_hypotheses(cfg.a, err);
    const auto count = count_split(cfg.a, cfg.i, cfg.j, cfg.x,
                                   options_for(cfg, EligibilityRule::kCoprime));
    out << "count=" << count << '\n';
    if (theory::is_squarefree(cfg.a) && cfg.a >= 3 && cfg.i < 62) {
        const auto deg = theory::two_power_kummer_degree(cfg.a, std::max(cfg.i, cfg.j), cfg.j);
        const double expected = li(static_cast<double>(cfg.x)) / static_cast<double>(deg);
        std::ostringstream os;
        os << std::setprecision(10) << expected;
        out << "degree=" << deg << '\n' << "li_over_degree=" << os.str() << '\n';
        os.str("");
        os << std::setprecision(6) << static_cast<double>(count) / expected;
        out << "ratio=" << os.str() << '\n';
    }
    return kExitOk;
}

inline int cmd_index_tail(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    warn_on_hypotheses(cfg.a, err);
    out << "count=" << index_tail(cfg.a, cfg.x, cfg.psi, options_for(cfg, EligibilityRule::kCoprime))
        << '\n';
    return kExitOk;
}

inline void emit(const RunConfig& cfg, std::ostream& out, const nlohmann::ordered_json& j) {
    if (cfg.format == OutputFormat::kJson) {
        out << j.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : j.items())
        out << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump())
            << '\n';
}

inline int cmd_theory(const RunConfig& cfg, std::ostream& out) {
    using namespace theory;
    const auto& sub = cfg.theory_command;
    nlohmann::ordered_json j;
    if (sub == "hasse") {
        const auto v = hasse_density(cfg.q);
        if (cfg.format != OutputFormat::kJson) {
            out << v.str() << '\n';
            return kExitOk;
        }
        j["q"] = cfg.q;
        j["density"] = v.str();
    } else if (sub == "coeff") {
        const auto b = q40_coefficient(cfg.a, cfg.terms);
        const Rational third(1, 3);
        j["a"] = cfg.a;
        j["terms"] = cfg.terms;
        j["partial"] = b.partial.str();
        j["tail_bound"] = b.tail_bound.str();
        j["lower"] = (b.partial - b.tail_bound).str();
        j["upper"] = (b.partial + b.tail_bound).str();
        j["brackets_one_third"] = abs(b.partial - third) <= b.tail_bound;
    } else if (sub == "kummer") {
        const auto deg = kummer_degree({cfg.a, cfg.r, cfg.m});
        j["a"] = cfg.a;
        j["r"] = cfg.r;
        j["m"] = cfg.m;
        j["degree"] = deg.value;
        j["halved"] = deg.halved;
        j["generalized"] = deg.generalized;
    } else if (sub == "degrees") {
        const auto tower = TowerParams::make(cfg.f, cfg.l, cfg.n, cfg.d, cfg.kind);
        const auto kk = degree_Kk(cfg.a, tower);
        j["a"] = cfg.a;
        j["k"] = tower.k;
        j["k0"] = tower.k0;
        j["n"] = tower.n;
        j["d"] = tower.d;
        j["degree_Kk"] = kk.degree;
        j["eta1"] = kk.eta1.str();
        j["degree_G"] = degree_G(cfg.a, tower);
        j["degree_Gtilde"] = degree_Gtilde(cfg.a, tower);
    } else if (sub == "case") {
        const auto tower = TowerParams::make(cfg.f, cfg.l, cfg.n, cfg.d, cfg.kind);
        const auto v = sigma_star_case(cfg.a, tower, cfg.target);
        j["a"] = cfg.a;
        j["k"] = tower.k;
        j["n"] = tower.n;
        j["d"] = tower.d;
        j["target"] = cfg.target;
        j["verdict"] = std::string(to_string(v.verdict));
        j["tag"] = std::string(to_string(v.tag));
        if (v.witness)
            j["witness"] = v.witness->str();
    } else if (sub == "density") {
        const auto r = q4l_density(cfg.a, static_cast<unsigned>(cfg.l));
        j["a"] = cfg.a;
        j["l"] = cfg.l;
        j["density"] = r.value ? r.value->str() : "none";
        j["conditionality"] = std::string(to_string(r.conditionality));
    } else {
        throw InvalidArgument("unknown theory command '" + sub + "'");
    }
    emit(cfg, out, j);
    return kExitOk;
}

inline int dispatch_to(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == "census")
        return cmd_census(cfg, out, err);
    if (cfg.command == "tables")
        return cmd_tables(cfg, out, err);
    if (cfg.command == "verify-sieve")
        return cmd_verify_sieve(cfg, out, err);
    if (cfg.command == "theory")
        return cmd_theory(cfg, out);
    if (cfg.command == "splitting")
        return cmd_splitting(cfg, out, err);
    if (cfg.command == "index-tail")
        return cmd_index_tail(cfg, out, err);
    throw InvalidArgument("unknown command '" + cfg.command + "'");
}

} // namespace detail

// Runs one command. Output goes to cfg.output_path when set, else `out`;
// diagnostics go to `err`. Returns the process exit status.
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        if (cfg.output_path.empty())
            return detail::dispatch_to(cfg, out, err);
        std::ostringstream buffer;
        const int status = detail::dispatch_to(cfg, buffer, err);
        std::ofstream file(cfg.output_path, std::ios::binary);
        if (!file)
            throw InvalidArgument("cannot open output file '" + cfg.output_path + "'");
        file << buffer.str();
        return status;
    } catch (const HypothesisViolation& e) {
        err << "error: hypothesis violated: " << e.what() << '\n';
        return kExitHypothesis;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const OutOfRange& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace artin
