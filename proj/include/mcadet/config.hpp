#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcadet/channel.hpp"
#include "mcadet/circuit.hpp"
#include "mcadet/detectors.hpp"
#include "mcadet/mapping.hpp"
#include "mcadet/metrics.hpp"

namespace mcadet {

enum class TopologySelect { proposed, conventional, both };
enum class ScenarioKind { unit_lsfc, cell };

/// Declarative description of a Monte-Carlo sweep. Parsed from a flat
/// key = value config file; unknown keys are errors.
struct ExperimentConfig {
    int r = 64;
    int k = 4;
    std::string modulation = "qam64";
    std::vector<double> snr_db;
    std::vector<double> beta = {3.0};
    std::vector<double> sigma_m_frac = {0.0};  ///< fractions of the range span
    MappingSchemeKind scheme = MappingSchemeKind::scb;
    DetectorKind detector = DetectorKind::mmse;
    TopologySelect topology = TopologySelect::proposed;
    bool include_digital = false;
    ScenarioKind scenario = ScenarioKind::unit_lsfc;
    CellScenario cell;
    std::int64_t trials = 1000;
    int channel_redraws = 10;
    std::uint64_t seed = 1;
    std::string out_path = "results.csv";

    double sigma_g = 0.7071067811865476;  // 1/sqrt(2): unit-variance complex entries
    ConductanceRange range;
    std::int64_t target_errors = 200;
    double max_trials_factor = 20.0;

    TransientSpec transient;

    // power/metrics sweep
    PowerModel power;
    std::vector<int> k_list = {2, 4, 8, 16};
    double compute_time_s = 80e-9;
    double gpu_tflops = 14.8;
    double gpu_power_w = 250.0;

    void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical key=value rendering (stable order); hashed into the meta file.
std::string canonical_config_text(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

extern const char* const kVersion;

}  // namespace mcadet
