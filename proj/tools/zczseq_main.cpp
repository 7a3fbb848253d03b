#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zczseq/commands.hpp"

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    using namespace zczseq::cli;

    CLI::App app{"Spectrally constrained ZCZ sequence sets and MCAZAC carriers"};
    app.require_subcommand(1);

    double tol = 0.0;
    std::uint64_t seed = 0;
    auto* tolOpt = app.add_option("--tol", tol, "Zero threshold relative to the reference level")
                       ->check(CLI::PositiveNumber);
    auto* seedOpt = app.add_option("--seed", seed, "Seed for random parameter draws");

    std::string genConfig;
    std::string genOut;
    auto* gen = app.add_subcommand("generate", "Build sequence sets and write them with a manifest");
    gen->add_option("--config", genConfig, "Job config or manifest (JSON)")->required();
    gen->add_option("--out", genOut, "Output directory (overrides output.dir)");

    std::string verConfig;
    std::string verOut;
    auto* ver = app.add_subcommand("verify", "Run every property check and write a JSON report");
    ver->add_option("--config", verConfig, "Job config, or a manifest to check the written files")->required();
    ver->add_option("--out", verOut, "Report directory");

    std::vector<std::string> anIn;
    std::string anOut;
    auto* an = app.add_subcommand("analyze", "Export correlation profiles, zones and PAPR");
    an->add_option("--in", anIn, "Sequence CSV or manifest JSON (repeatable)")->required();
    an->add_option("--out", anOut, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kValidationFailure;
    }

    CommonOptions opts;
    if (*tolOpt) {
        opts.overrides.zeroTol = tol;
    }
    if (*seedOpt) {
        opts.overrides.seed = seed;
    }

    if (*gen) {
        if (!genOut.empty()) {
            opts.outDir = fs::path(genOut);
        }
        return run_generate(genConfig, opts, std::cout, std::cerr);
    }
    if (*ver) {
        if (!verOut.empty()) {
            opts.outDir = fs::path(verOut);
        }
        return run_verify(verConfig, opts, std::cout, std::cerr);
    }
    std::vector<fs::path> inputs(anIn.begin(), anIn.end());
    return run_analyze(inputs, anOut, opts, std::cout, std::cerr);
}
