#pragma once

#include <cstdint>

#include "mcadet/circuit.hpp"

namespace mcadet {

struct PowerModel {
    double p_oa_w = 12e-6;   ///< static OA power
    double p_dac_w = 0.5e-3;  ///< per input DAC (config placeholder)
    double p_adc_w = 1.0e-3;  ///< per output ADC (config placeholder)
    std::int64_t n_dac = 0;
    std::int64_t n_adc = 0;
    bool include_crossbar_dissipation = false;

    void validate() const {
        if (p_oa_w < 0 || p_dac_w < 0 || p_adc_w < 0 || n_dac < 0 || n_adc < 0) {
            throw ParameterError("PowerModel: powers and counts must be >= 0");
        }
    }
};

struct ComputeMetrics {
    std::int64_t flops = 0;
    double time_s = 0.0;
    double power_w = 0.0;
    double tops = 0.0;
    double tops_per_watt = 0.0;
};

/// OA counts per topology: 2R first-set + 2K second-set, plus 2K amplifier
/// OAs for the proposed circuit.
std::int64_t oa_count(Topology kind, int r, int k);

/// Static dissipation sum g * dv^2 over every crossbar and feedback device
/// at a solved operating point.
double crossbar_dissipation(const CircuitInstance& c, const CircuitSolution& sol);

double total_power(const CircuitInstance& c, const CircuitSolution* sol, const PowerModel& pm);

/// OA-count based total, without needing a built instance (power sweeps).
double total_power_nominal(Topology kind, int r, int k, const PowerModel& pm);

/// (p_proposed - p_conventional) / p_conventional
double rapc(double p_proposed, double p_conventional);

/// FLOP count of the digital linear detection the circuit replaces, with
/// n = 2K, m = 2R and one FLOP = one real multiply or add:
///   symmetric Gram n(n+1)/2 * (2m-1), + n for the MMSE diagonal,
///   SPD inversion n^3, H^T y n(2m-1), final matrix-vector n(2n-1).
std::int64_t equivalent_flops(int r, int k, DetectorKind kind);

ComputeMetrics compute_metrics(std::int64_t flops, double time_s, double power_w);

}  // namespace mcadet
