// rwrs: simulate U-statistics indexed by a random walk in random scenery,
// verify their scaling behaviour, and estimate the transient-regime constant.
//
//   rwrs simulate   --config cfg [--out DIR] [--threads N]
//   rwrs verify     --config cfg [--suite scaling|limit|lil|selfint|remainder|all]
//                   [--out DIR] [--threads N] [--plots] [--ingest records.csv]
//   rwrs estimate-b --config cfg [--out DIR]
//
// Exit codes: 0 pass, 1 verification FAIL, 2 usage/config error.

#include <CLI11.hpp>

#include "rwrs/commands.hpp"
#include "rwrs/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"random walk in random scenery U-statistic laboratory"};
    app.set_version_flag("--version", rwrs::kArtifactVersion);
    app.require_subcommand(1);

    rwrs::CommandOptions opts;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "experiment config file")
            ->required();
        cmd->add_option("--out", opts.out_dir, "output directory (default: out)");
        cmd->add_option("--threads", opts.threads,
                        "worker threads (default: config, then all cores)");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run replicates, write CSV + manifest");
    add_common(simulate);

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify);
    verify->add_option("--suite", opts.suite,
                       "scaling | limit | lil | selfint | remainder | all");
    verify->add_flag("--plots", opts.plots, "emit SVG plots");
    verify->add_option("--ingest", opts.ingest, "analyze an existing records CSV");

    CLI::App* estimate = app.add_subcommand("estimate-b", "Monte Carlo of the alpha<1 constant");
    add_common(estimate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (simulate->parsed()) return rwrs::cmd_simulate(opts);
    if (verify->parsed()) return rwrs::cmd_verify(opts);
    return rwrs::cmd_estimate_b(opts);
}
