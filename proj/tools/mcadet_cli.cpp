// Experiment driver: Monte-Carlo BER sweeps, scaling-parameter studies,
// topology comparisons, transient traces and power reports, all from a flat
// key = value config file. Results go to CSV with a .meta sidecar.
#include <CLI11.hpp>
#include <iostream>

#include "mcadet/harness.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool has_seed = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Config file (key = value)")->required();
    cmd->add_option("--out", opts.out_override, "Override output path");
    cmd->add_option("--seed", opts.seed_override, "Override RNG seed")
        ->each([&opts](const std::string&) { opts.has_seed = true; });
}

mcadet::ExperimentConfig load(const CommonOpts& opts) {
    auto cfg = mcadet::load_config(opts.config_path);
    if (!opts.out_override.empty()) cfg.out_path = opts.out_override;
    if (opts.has_seed) cfg.seed = opts.seed_override;
    return cfg;
}

void finish_ber(const mcadet::ExperimentConfig& cfg,
                const std::vector<mcadet::BerRecord>& records) {
    mcadet::write_ber_csv(cfg.out_path, records);
    mcadet::write_meta(cfg.out_path, cfg);
    std::cout << "wrote " << records.size() << " records to " << cfg.out_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral simulator of memristive-crossbar massive-MIMO detector circuits"};
    app.require_subcommand(1);

    CommonOpts sweep_opts, beta_opts, compare_opts, transient_opts, power_opts;
    auto* sweep = app.add_subcommand("ber-sweep", "BER over the (SNR, beta, sigma_m) grid");
    add_common(sweep, sweep_opts);
    auto* beta = app.add_subcommand("beta-study", "BER vs scaling parameter at fixed SNR");
    add_common(beta, beta_opts);
    auto* compare =
        app.add_subcommand("compare", "Proposed vs conventional, paired random draws");
    add_common(compare, compare_opts);
    auto* transient = app.add_subcommand("transient", "Output-voltage transient trace");
    add_common(transient, transient_opts);
    auto* power = app.add_subcommand("power", "Power / RAPC / TOPS / TOPS-per-W report");
    add_common(power, power_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            auto cfg = load(sweep_opts);
            finish_ber(cfg, mcadet::run_ber_sweep(cfg));
        } else if (beta->parsed()) {
            auto cfg = load(beta_opts);
            finish_ber(cfg, mcadet::run_beta_study(cfg));
        } else if (compare->parsed()) {
            auto cfg = load(compare_opts);
            finish_ber(cfg, mcadet::run_topology_compare(cfg));
        } else if (transient->parsed()) {
            auto cfg = load(transient_opts);
            auto run = mcadet::run_transient(cfg);
            mcadet::write_trace_csv(cfg.out_path, run);
            mcadet::write_meta(cfg.out_path, cfg);
            std::cout << "topology " << run.topology << ": settle_time_s "
                      << run.result.settle_time_s << ", trace " << cfg.out_path << "\n";
        } else if (power->parsed()) {
            auto cfg = load(power_opts);
            auto records = mcadet::run_power_report(cfg);
            mcadet::write_power_csv(cfg.out_path, records);
            mcadet::write_meta(cfg.out_path, cfg);
            std::cout << "wrote " << records.size() << " records to " << cfg.out_path << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
