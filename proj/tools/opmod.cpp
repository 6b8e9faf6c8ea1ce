#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "opmod/suites.hpp"

namespace {

void print_report(const opmod::RunReport& report) {
    for (const auto& a : report.assertions)
        std::printf("[%s] %s  (lhs=%.12g, rhs=%.12g)\n", a.pass ? "PASS" : "FAIL", a.name.c_str(),
                    a.lhs, a.rhs);
    std::printf("%s: %zu assertions, %s, %.2fs\n", report.suite.c_str(), report.assertions.size(),
                report.pass() ? "all passed" : "FAILURES PRESENT", report.wall_time_seconds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-function calculus verification suites"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a verification suite");
    std::string suite, config_path, out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    run->add_option("--suite", suite, "suite name, or 'all'");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "RNG seed (overrides config)")->each([&](const std::string&) {
        seed_given = true;
    });

    auto* rep = app.add_subcommand("replay", "recompute a witness bundle");
    std::string bundle_path;
    rep->add_option("bundle", bundle_path, "witness bundle JSON")->required();

    auto* list = app.add_subcommand("list", "list suite names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : opmod::suite_names()) std::printf("%s\n", name.c_str());
            return 0;
        }
        if (rep->parsed()) {
            const opmod::RunReport report = opmod::replay(bundle_path);
            print_report(report);
            return report.pass() ? 0 : 1;
        }

        opmod::SuiteConfig config;
        if (!config_path.empty()) {
            config = opmod::SuiteConfig::load(config_path);
        } else {
            if (suite.empty()) {
                std::fprintf(stderr, "error: need --suite or --config\n");
                return 2;
            }
            if (!seed_given) {
                std::fprintf(stderr, "error: seed is mandatory (use --seed or a config file)\n");
                return 2;
            }
        }
        if (!suite.empty()) config.suite = suite;
        if (seed_given) {
            config.seed = seed;
            config.seed_set = true;
        }
        if (out_dir != ".") config.out_dir = out_dir;

        bool ok = true;
        if (config.suite == "all") {
            for (const auto& name : opmod::suite_names()) {
                opmod::SuiteConfig sub = config;
                sub.suite = name;
                sub.out_dir = config.out_dir + "/" + name;
                const opmod::RunReport report = opmod::run_suite(sub);
                print_report(report);
                ok = ok && report.pass();
            }
        } else {
            const opmod::RunReport report = opmod::run_suite(config);
            print_report(report);
            ok = report.pass();
        }
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
