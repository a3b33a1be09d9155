// artin: census of the residual order of a mod p, and the matching theory.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "artin/app.hpp"

namespace {

// Transform turning "1e7" or "10^7" into plain digits.
CLI::Validator count_transform() {
    return CLI::Validator(
        [](std::string& s) {
            try {
                s = std::to_string(artin::parse_count(s));
            } catch (const artin::InvalidArgument& e) {
                return std::string(e.what());
            }
            return std::string();
        },
        "COUNT", "count");
}

void add_common(CLI::App* cmd, artin::RunConfig& cfg, std::string& format, std::string& rule,
                bool with_x = true) {
    cmd->add_option("--a", cfg.a, "base a (2..2^31)")->capture_default_str();
    if (with_x)
        cmd->add_option("--x", cfg.x, "upper limit x")->transform(count_transform())->capture_default_str();
    cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", cfg.output_path, "write the report to this file");
    cmd->add_option("--segment-size", cfg.segment_size, "numbers per sieve segment")
        ->transform(count_transform())
        ->capture_default_str();
    cmd->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
    cmd->add_option("--rule", rule, "eligibility rule: coprime | odd-coprime")
        ->check(CLI::IsMember({"coprime", "odd-coprime"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Residual order census and density theory for Q_a(x;k,l)"};
    app.require_subcommand(1);

    artin::RunConfig cfg;
    std::string format = "csv";
    std::string rule;
    std::vector<std::string> checkpoints;
    std::string kind = "k";

    auto* census = app.add_subcommand("census", "count primes by D_a(p) mod k at checkpoints");
    add_common(census, cfg, format, rule);
    census->add_option("--k", cfg.k, "modulus k")->capture_default_str();
    census->add_option("--checkpoints", checkpoints, "checkpoint limits (default: decades)")
        ->delimiter(',');
    census->add_option("--cache-dir", cfg.cache_dir, "cache directory (env ARTIN_CACHE_DIR)");
    census->add_flag("--timestamp", cfg.timestamp, "stamp JSON reports with the current UTC time");

    auto* tables = app.add_subcommand("tables", "densities of Q_a(x;4,l) for a = 5, 21, 3, 6");
    add_common(tables, cfg, format, rule);
    tables->add_option("--cache-dir", cfg.cache_dir, "cache directory (env ARTIN_CACHE_DIR)");

    auto* verify = app.add_subcommand("verify-sieve", "check the four decompositions of Q_a(x;4,l)");
    add_common(verify, cfg, format, rule);

    auto* split = app.add_subcommand("splitting", "count p = 1 mod 2^i with 2^j | I_a(p)");
    add_common(split, cfg, format, rule);
    split->add_option("--i", cfg.i)->required();
    split->add_option("--j", cfg.j)->required();

    auto* tail = app.add_subcommand("index-tail", "count p with I_a(p) >= psi");
    add_common(tail, cfg, format, rule);
    tail->add_option("--psi", cfg.psi)->required();

    auto* theory = app.add_subcommand("theory", "exact degrees and densities");
    theory->require_subcommand(1);
    auto add_theory = [&](const char* name, const char* desc) {
        auto* sub = theory->add_subcommand(name, desc);
        sub->add_option("--format", format, "csv (key=value) | json")
            ->check(CLI::IsMember({"csv", "json"}));
        return sub;
    };
    auto add_tower = [&](CLI::App* sub) {
        sub->add_option("--a", cfg.a)->capture_default_str();
        sub->add_option("--f", cfg.f)->capture_default_str();
        sub->add_option("--l", cfg.l)->capture_default_str();
        sub->add_option("--n", cfg.n)->capture_default_str();
        sub->add_option("--d", cfg.d)->capture_default_str();
        sub->add_option("--kind", kind, "k = 2^f + l 2^{f+2} | m = 3 2^f + l 2^{f+2}")
            ->check(CLI::IsMember({"k", "m"}));
    };
    auto* coeff = add_theory("coeff", "partial sum of the Q_a(x;4,0) coefficient series");
    coeff->add_option("--a", cfg.a)->capture_default_str();
    coeff->add_option("--terms", cfg.terms)->capture_default_str();
    auto* hasse = add_theory("hasse", "q / (q^2 - 1)");
    hasse->add_option("--q", cfg.q)->required();
    auto* kummer = add_theory("kummer", "[Q(zeta_r, a^{1/m}) : Q]");
    kummer->add_option("--a", cfg.a)->capture_default_str();
    kummer->add_option("--r", cfg.r)->required();
    kummer->add_option("--m", cfg.m)->required();
    add_tower(add_theory("degrees", "degrees of K_k, G and G~"));
    auto* cases = add_theory("case", "existence of the Frobenius automorphism sigma*");
    add_tower(cases);
    cases->add_option("--target", cfg.target, "1 or 3")->capture_default_str();
    auto* density = add_theory("density", "natural density of Q_a(x;4,l)");
    density->add_option("--a", cfg.a)->capture_default_str();
    density->add_option("--l", cfg.l)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? artin::kExitOk : artin::kExitUsage;
    }

    try {
        for (const auto& c : checkpoints)
            cfg.checkpoints.push_back(artin::parse_count(c));
    } catch (const artin::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return artin::kExitUsage;
    }

    for (auto* sub : app.get_subcommands())
        cfg.command = sub->get_name();
    if (cfg.command == "theory")
        for (auto* sub : theory->get_subcommands())
            cfg.theory_command = sub->get_name();
    cfg.format = format == "json" ? artin::OutputFormat::kJson : artin::OutputFormat::kCsv;
    if (!rule.empty())
        cfg.rule = artin::parse_eligibility_rule(rule);
    cfg.kind = kind == "m" ? artin::theory::TowerKind::kM : artin::theory::TowerKind::kK;
    if (cfg.cache_dir.empty())
        if (const char* env = std::getenv("ARTIN_CACHE_DIR"))
            cfg.cache_dir = env;

    return artin::dispatch(cfg, std::cout, std::cerr);
}
