#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "loopgas/config.hpp"
#include "loopgas/pipeline.hpp"
#include "loopgas/version.hpp"

namespace {

int do_run(const loopgas::RunConfig& config, const std::string& resume_from) {
    const loopgas::PipelineOutcome out = loopgas::run_pipeline(config, resume_from);
    if (!out.message.empty()) std::cerr << out.message << "\n";
    return out.exit_code;
}

int do_validate(const loopgas::RunConfig& config, const std::string&) {
    const loopgas::PipelineOutcome out = loopgas::validate_pipeline(config);
    for (const loopgas::CheckRecord& r : out.records)
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.check
                  << "  estimate=" << r.estimate << " target=" << r.target
                  << " stderr=" << r.std_error << "  " << r.details << "\n";
    if (!out.message.empty()) std::cerr << out.message << "\n";
    return out.exit_code;
}

int do_oracle_compare(const loopgas::RunConfig& config, const std::string&) {
    const loopgas::PipelineOutcome out = loopgas::oracle_compare_pipeline(config);
    for (const loopgas::CheckRecord& r : out.records)
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.ref << "  mc=" << r.estimate
                  << " oracle=" << r.target << "  " << r.details << "\n";
    if (!out.message.empty()) std::cerr << out.message << "\n";
    return out.exit_code;
}

int run_command(const std::string& config_path, const std::string& resume_from,
                const std::string& output_override,
                int (*pipeline)(const loopgas::RunConfig&, const std::string&)) {
    loopgas::RunConfig config;
    try {
        config = loopgas::load_config_file(config_path);
    } catch (const loopgas::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return loopgas::kExitConfigError;
    }
    if (!output_override.empty()) config.output_dir = output_override;
    return pipeline(config, resume_from);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loopgas: grand-canonical loop-gas Monte Carlo simulator and validator"};
    app.set_version_flag("--version", loopgas::kVersion);
    app.require_subcommand(1);

    std::string config_path, resume_from, output_override;

    CLI::App* run = app.add_subcommand("run", "run chains and write estimate reports");
    run->add_option("config", config_path, "configuration file (JSON)")->required();
    run->add_option("--resume", resume_from,
                    "directory with per-chain checkpoints to continue from");
    run->add_option("--output", output_override, "override the output directory");

    CLI::App* validate =
        app.add_subcommand("validate", "run the selected validator suite");
    validate->add_option("config", config_path, "configuration file (JSON)")->required();
    validate->add_option("--output", output_override, "override the output directory");

    CLI::App* oracle = app.add_subcommand(
        "oracle-compare", "run the sampler and the quadrature oracle side by side");
    oracle->add_option("config", config_path, "configuration file (JSON)")->required();
    oracle->add_option("--output", output_override, "override the output directory");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return run_command(config_path, resume_from, output_override, do_run);
    if (validate->parsed())
        return run_command(config_path, "", output_override, do_validate);
    if (oracle->parsed())
        return run_command(config_path, "", output_override, do_oracle_compare);
    return loopgas::kExitConfigError;
}
