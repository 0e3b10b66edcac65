// clawgate CLI: run the adversarial harness or scrub a samples CSV.

#include "clawgate/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"clawgate runtime-security harness"};
    app.require_subcommand(1);

    clawgate::RunConfig config;
    bool stress = false;

    auto* run = app.add_subcommand("run", "Generate samples, mediate them, emit reports");
    run->add_option("--n", config.nPerCell, "Samples per label per (channel, category) cell")
        ->envname("CLAWGATE_N")
        ->check(CLI::PositiveNumber);
    run->add_option("--seed", config.seedString, "Seed string for the replayable PRNG")
        ->envname("CLAWGATE_SEED");
    run->add_option("--channels", config.channels, "Mock channels to drive")
        ->envname("CLAWGATE_CHANNELS")
        ->delimiter(',');
    run->add_option("--subjects", config.subjects,
                    "Subjects to run (passthrough, gated, gated-witness)")
        ->envname("CLAWGATE_SUBJECTS")
        ->delimiter(',');
    run->add_option("--out-dir", config.outDir, "Artifact directory")->envname("CLAWGATE_OUT_DIR");
    run->add_flag("--stats-only", config.statsOnly,
                  "Count sink posts without retaining message bodies")
        ->envname("CLAWGATE_STATS_ONLY");
    run->add_flag("--disable-witness", config.disableWitness,
                  "Disengage the witness signer (fail-closed drill)")
        ->envname("CLAWGATE_DISABLE_WITNESS");
    run->add_flag("--widened-dlp", config.widenedDlp, "Use the widened DLP catalog")
        ->envname("CLAWGATE_WIDENED_DLP");
    run->add_flag("--stress", stress, "Stress preset: 10000 per cell, telegram-mock only")
        ->envname("CLAWGATE_STRESS");

    std::string scrubTarget;
    bool scrubWidened = false;
    auto* scrub = app.add_subcommand("scrub", "Redact the content column of a samples CSV");
    scrub->add_option("csv", scrubTarget, "Path to samples.csv")->required();
    scrub->add_flag("--widened-dlp", scrubWidened, "Scrub with the widened catalog");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (stress) {
                config.nPerCell = 10000;
                config.channels = {"telegram-mock"};
                config.statsOnly = true;
            }
            auto bundle = clawgate::runExperiment(config);
            std::printf("artifacts: %s, %s\n", bundle.csvPath.string().c_str(),
                        bundle.reportPath.string().c_str());
            return bundle.chainsOk ? 0 : 1;
        }
        auto catalog = scrubWidened ? clawgate::widenCatalog(clawgate::DlpCatalog::strict())
                                    : clawgate::DlpCatalog::strict();
        auto outPath = clawgate::scrubCsv(scrubTarget, catalog);
        std::printf("scrubbed: %s\n", outPath.string().c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
