#pragma once

#include <string>
#include <vector>

#include "mcadet/config.hpp"

namespace mcadet {

struct BerRecord {
    double snr_db = 0.0;  ///< NaN when the cell scenario fixes the noise physically
    std::string scheme;   ///< scb | icb
    double beta = 0.0;    ///< 0 for icb
    double sigma_m_frac = 0.0;
    std::string topology;  ///< proposed | conventional | digital
    std::string detector;
    int r = 0, k = 0;
    std::int64_t trials = 0;
    std::int64_t bits = 0;
    std::int64_t bit_errors = 0;
    std::int64_t failures = 0;
    double ber = 0.0;
    double clip_fraction = 0.0;
};

struct PowerRecord {
    int k = 0;
    std::string topology;
    double p_total_w = 0.0;
    double rapc = 0.0;
    std::int64_t flops = 0;
    double tops = 0.0;
    double tops_per_watt = 0.0;
    double ee_ratio_vs_gpu = 0.0;
};

struct TransientRun {
    TransientResult result;
    std::string topology;
    Vec algebraic_s_hat;
};

/// Monte-Carlo BER over the full (snr, beta, sigma_m) grid of the config.
std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& cfg);

/// Fixed-SNR sweep over beta and sigma_m, with an ICB reference row per
/// sigma_m level.
std::vector<BerRecord> run_beta_study(const ExperimentConfig& cfg);

/// Proposed vs conventional with shared random draws (paired comparison).
std::vector<BerRecord> run_topology_compare(const ExperimentConfig& cfg);

TransientRun run_transient(const ExperimentConfig& cfg);

std::vector<PowerRecord> run_power_report(const ExperimentConfig& cfg);

void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records);
void write_power_csv(const std::string& path, const std::vector<PowerRecord>& records);
void write_trace_csv(const std::string& path, const TransientRun& run);
void write_meta(const std::string& csv_path, const ExperimentConfig& cfg);

std::string ber_csv_text(const std::vector<BerRecord>& records);

}  // namespace mcadet
