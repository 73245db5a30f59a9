#include "mcadet/harness.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "mcadet/kernels.hpp"
#include "mcadet/modem.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace mcadet {

namespace {

constexpr std::uint64_t kPurposeChannel = 1;
constexpr std::uint64_t kPurposeDevice = 2;
constexpr std::uint64_t kPurposeTrial = 3;

// Early-stop decisions are taken at fixed chunk boundaries so results do not
// depend on the number of worker threads.
constexpr std::int64_t kBlocksPerChunk = 16;

struct PointSpec {
    std::size_t index = 0;  ///< position in the canonical grid order
    MappingScheme scheme;
    double sigma_m_frac = 0.0;
    double snr_db = 0.0;
    bool has_snr = true;
};

struct TopoAccum {
    std::int64_t trials = 0, bits = 0, errors = 0, failures = 0;
    std::int64_t clips = 0, mapped = 0;
};

std::string topology_name(Topology t) {
    return t == Topology::proposed ? "proposed" : "conventional";
}

std::string detector_name(DetectorKind d) { return d == DetectorKind::zf ? "zf" : "mmse"; }

// One channel realization for a block: real channel plus the noise spec and
// MMSE regularizer under the harness SNR convention.
struct BlockChannel {
    RealChannel rc;
    NoiseSpec noise;
    double rho = 0.0;
};

BlockChannel draw_channel(const ExperimentConfig& cfg, const PointSpec& pt, Rng& rng) {
    BlockChannel bc;
    ComplexChannel cc = gen_ssfc(cfg.r, cfg.k, cfg.sigma_g, rng);
    if (cfg.scenario == ScenarioKind::cell) {
        auto [lam, pos] = gen_lsfc_cell(cfg.k, cfg.cell, rng);
        // Normalize so the noise variance is 1: fold transmit power over
        // noise power into the large-scale gains.
        double scale = std::pow(10.0, (cfg.cell.tx_power_dbm - noise_power_dbm(cfg.cell)) / 10.0);
        for (auto& l : lam) l *= scale;
        cc.lambda = lam;
        if (pt.has_snr) {
            // Receive-SNR convention: mean per-antenna signal power is
            // sum_k lambda_k * 2 sigma_g^2 * p_s.
            double sum_lambda = 0.0;
            for (double l : lam) sum_lambda += l;
            bc.noise = snr_to_noise_var(pt.snr_db, 1.0,
                                        sum_lambda * 2.0 * cfg.sigma_g * cfg.sigma_g);
        } else {
            bc.noise = NoiseSpec{1.0};
        }
    } else {
        bc.noise = snr_to_noise_var(
            pt.snr_db, 1.0, static_cast<double>(cfg.k) * 2.0 * cfg.sigma_g * cfg.sigma_g);
    }
    bc.rc = realify(cc);
    bc.rho = cfg.detector == DetectorKind::mmse ? bc.noise.sigma_n_sq : 0.0;
    return bc;
}

struct BlockResult {
    std::vector<TopoAccum> acc;  // parallel to the topology list
};

BlockResult run_block(const ExperimentConfig& cfg, const PointSpec& pt,
                      const std::vector<std::string>& topologies, std::int64_t block,
                      const ModulationSpec& mod) {
    BlockResult res;
    res.acc.resize(topologies.size());

    Rng rng_ch(cfg.seed, derive_stream(pt.index, static_cast<std::uint64_t>(block), kPurposeChannel));
    BlockChannel bc = draw_channel(cfg, pt, rng_ch);

    LinearDetectorSpec det{cfg.detector, bc.rho};
    ErrorModel err{pt.sigma_m_frac * cfg.range.span(), true, true, false};

    struct TopoState {
        bool circuit = false;
        bool failed = false;
        std::unique_ptr<CircuitSolver> solver;
        std::unique_ptr<CircuitInstance> inst;
    };
    std::vector<TopoState> state(topologies.size());

    for (std::size_t ti = 0; ti < topologies.size(); ++ti) {
        if (topologies[ti] == "digital") continue;
        state[ti].circuit = true;
        // Same device-error stream for every topology: paired draws.
        Rng rng_dev(cfg.seed,
                    derive_stream(pt.index, static_cast<std::uint64_t>(block), kPurposeDevice));
        try {
            auto inst = std::make_unique<CircuitInstance>(
                topologies[ti] == "proposed"
                    ? build_proposed(bc.rc.g, bc.rc.lambda, cfg.sigma_g, det, pt.scheme,
                                     cfg.range, err, rng_dev)
                    : build_conventional(bc.rc.h, bc.rc.lambda, cfg.sigma_g, det, pt.scheme,
                                         cfg.range, err, rng_dev));
            res.acc[ti].clips += inst->clip_count;
            res.acc[ti].mapped += inst->mapped_elements;
            state[ti].solver = std::make_unique<CircuitSolver>(*inst);
            state[ti].inst = std::move(inst);
        } catch (const RealizabilityError&) {
            state[ti].failed = true;
        } catch (const SingularMatrixError&) {
            state[ti].failed = true;
        }
    }

    const std::size_t bits_per_trial = static_cast<std::size_t>(cfg.k) * 6;
    for (int t = 0; t < cfg.channel_redraws; ++t) {
        std::uint64_t trial_id =
            static_cast<std::uint64_t>(block) * static_cast<std::uint64_t>(cfg.channel_redraws) +
            static_cast<std::uint64_t>(t);
        Rng rng_tr(cfg.seed, derive_stream(pt.index, trial_id, kPurposeTrial));
        BitVec tx_bits = random_bits(bits_per_trial, rng_tr);
        Vec s = realify_vector(modulate(tx_bits, mod));
        Vec y = linalg::matvec(bc.rc.h, s) + awgn(bc.rc.h.rows(), bc.noise, rng_tr);

        for (std::size_t ti = 0; ti < topologies.size(); ++ti) {
            TopoAccum& a = res.acc[ti];
            ++a.trials;
            if (state[ti].failed) {
                ++a.failures;
                continue;
            }
            try {
                Vec s_hat;
                if (state[ti].circuit) {
                    s_hat = state[ti].solver->solve(y).s_hat;
                } else {
                    s_hat = cfg.detector == DetectorKind::mmse ? mmse_detect(bc.rc.h, y, bc.rho)
                                                               : zf_detect(bc.rc.h, y);
                }
                a.errors += static_cast<std::int64_t>(
                    count_bit_errors(tx_bits, demodulate(s_hat, mod)));
                a.bits += static_cast<std::int64_t>(bits_per_trial);
            } catch (const SingularMatrixError&) {
                ++a.failures;
            }
        }
    }
    return res;
}

std::vector<BerRecord> evaluate_point(const ExperimentConfig& cfg, const PointSpec& pt,
                                      const std::vector<std::string>& topologies) {
    const ModulationSpec mod = ModulationSpec::qam64();
    std::vector<TopoAccum> total(topologies.size());

    const std::int64_t min_blocks =
        (cfg.trials + cfg.channel_redraws - 1) / cfg.channel_redraws;
    const std::int64_t max_blocks = std::max<std::int64_t>(
        min_blocks,
        static_cast<std::int64_t>(std::ceil(static_cast<double>(cfg.trials) *
                                            cfg.max_trials_factor /
                                            static_cast<double>(cfg.channel_redraws))));

    std::int64_t blocks_done = 0;
    while (blocks_done < max_blocks) {
        std::int64_t chunk = std::min(kBlocksPerChunk, max_blocks - blocks_done);
        std::vector<BlockResult> results(static_cast<std::size_t>(chunk));
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < chunk; ++i) {
            results[static_cast<std::size_t>(i)] =
                run_block(cfg, pt, topologies, blocks_done + i, mod);
        }
        for (const auto& r : results) {
            for (std::size_t ti = 0; ti < topologies.size(); ++ti) {
                total[ti].trials += r.acc[ti].trials;
                total[ti].bits += r.acc[ti].bits;
                total[ti].errors += r.acc[ti].errors;
                total[ti].failures += r.acc[ti].failures;
                total[ti].clips += r.acc[ti].clips;
                total[ti].mapped += r.acc[ti].mapped;
            }
        }
        blocks_done += chunk;
        if (total[0].trials >= cfg.trials) {
            bool enough = true;
            for (const auto& a : total) {
                if (a.errors < cfg.target_errors) enough = false;
            }
            if (enough) break;
        }
    }

    std::vector<BerRecord> records;
    for (std::size_t ti = 0; ti < topologies.size(); ++ti) {
        const TopoAccum& a = total[ti];
        BerRecord rec;
        rec.snr_db = pt.has_snr ? pt.snr_db : std::numeric_limits<double>::quiet_NaN();
        rec.scheme = pt.scheme.kind == MappingSchemeKind::scb ? "scb" : "icb";
        rec.beta = pt.scheme.kind == MappingSchemeKind::scb ? pt.scheme.beta : 0.0;
        rec.sigma_m_frac = pt.sigma_m_frac;
        rec.topology = topologies[ti];
        rec.detector = detector_name(cfg.detector);
        rec.r = cfg.r;
        rec.k = cfg.k;
        rec.trials = a.trials;
        rec.bits = a.bits;
        rec.bit_errors = a.errors;
        rec.failures = a.failures;
        rec.ber = a.bits > 0 ? static_cast<double>(a.errors) / static_cast<double>(a.bits) : 0.0;
        rec.clip_fraction =
            a.mapped > 0 ? static_cast<double>(a.clips) / static_cast<double>(a.mapped) : 0.0;
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<std::string> selected_topologies(const ExperimentConfig& cfg) {
    std::vector<std::string> t;
    if (cfg.topology == TopologySelect::proposed || cfg.topology == TopologySelect::both) {
        t.push_back("proposed");
    }
    if (cfg.topology == TopologySelect::conventional || cfg.topology == TopologySelect::both) {
        t.push_back("conventional");
    }
    if (cfg.include_digital) t.push_back("digital");
    return t;
}

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    auto topologies = selected_topologies(cfg);
    std::vector<BerRecord> out;
    std::size_t index = 0;
    std::vector<double> snrs = cfg.snr_db;
    if (snrs.empty()) snrs.push_back(std::numeric_limits<double>::quiet_NaN());
    for (double snr : snrs) {
        for (double sm : cfg.sigma_m_frac) {
            if (cfg.scheme == MappingSchemeKind::scb) {
                for (double beta : cfg.beta) {
                    PointSpec pt{index++, {MappingSchemeKind::scb, beta}, sm, snr,
                                 !std::isnan(snr)};
                    auto recs = evaluate_point(cfg, pt, topologies);
                    out.insert(out.end(), recs.begin(), recs.end());
                }
            } else {
                PointSpec pt{index++, {MappingSchemeKind::icb, 0.0}, sm, snr, !std::isnan(snr)};
                auto recs = evaluate_point(cfg, pt, topologies);
                out.insert(out.end(), recs.begin(), recs.end());
            }
        }
    }
    return out;
}

std::vector<BerRecord> run_beta_study(const ExperimentConfig& cfg) {
    cfg.validate();
    auto topologies = selected_topologies(cfg);
    double snr = cfg.snr_db.empty() ? 15.0 : cfg.snr_db.front();
    std::vector<BerRecord> out;
    std::size_t index = 0;
    for (double sm : cfg.sigma_m_frac) {
        for (double beta : cfg.beta) {
            PointSpec pt{index++, {MappingSchemeKind::scb, beta}, sm, snr, true};
            auto recs = evaluate_point(cfg, pt, topologies);
            out.insert(out.end(), recs.begin(), recs.end());
        }
        PointSpec pt{index++, {MappingSchemeKind::icb, 0.0}, sm, snr, true};
        auto recs = evaluate_point(cfg, pt, topologies);
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

std::vector<BerRecord> run_topology_compare(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<std::string> topologies = {"proposed", "conventional"};
    if (cfg.include_digital) topologies.push_back("digital");
    bool phys = cfg.scenario == ScenarioKind::cell && cfg.snr_db.empty();
    double snr = phys ? std::numeric_limits<double>::quiet_NaN()
                      : (cfg.snr_db.empty() ? 15.0 : cfg.snr_db.front());
    std::vector<BerRecord> out;
    std::size_t index = 0;
    for (double sm : cfg.sigma_m_frac) {
        if (cfg.scheme == MappingSchemeKind::scb) {
            for (double beta : cfg.beta) {
                PointSpec pt{index++, {MappingSchemeKind::scb, beta}, sm, snr, !phys};
                auto recs = evaluate_point(cfg, pt, topologies);
                out.insert(out.end(), recs.begin(), recs.end());
            }
        } else {
            PointSpec pt{index++, {MappingSchemeKind::icb, 0.0}, sm, snr, !phys};
            auto recs = evaluate_point(cfg, pt, topologies);
            out.insert(out.end(), recs.begin(), recs.end());
        }
    }
    return out;
}

TransientRun run_transient(const ExperimentConfig& cfg) {
    cfg.validate();
    const ModulationSpec mod = ModulationSpec::qam64();
    PointSpec pt;
    pt.index = 0;
    pt.scheme = cfg.scheme == MappingSchemeKind::scb
                    ? MappingScheme{MappingSchemeKind::scb, cfg.beta.front()}
                    : MappingScheme{MappingSchemeKind::icb, 0.0};
    pt.sigma_m_frac = cfg.sigma_m_frac.front();
    pt.has_snr = !cfg.snr_db.empty();
    pt.snr_db = pt.has_snr ? cfg.snr_db.front() : std::numeric_limits<double>::quiet_NaN();
    if (cfg.scenario == ScenarioKind::unit_lsfc && !pt.has_snr) pt.snr_db = 15.0, pt.has_snr = true;

    Rng rng_ch(cfg.seed, derive_stream(0, 0, kPurposeChannel));
    BlockChannel bc = draw_channel(cfg, pt, rng_ch);
    LinearDetectorSpec det{cfg.detector, bc.rho};
    ErrorModel err{pt.sigma_m_frac * cfg.range.span(), true, true, false};
    Rng rng_dev(cfg.seed, derive_stream(0, 0, kPurposeDevice));

    bool proposed = cfg.topology != TopologySelect::conventional;
    CircuitInstance inst =
        proposed ? build_proposed(bc.rc.g, bc.rc.lambda, cfg.sigma_g, det, pt.scheme, cfg.range,
                                  err, rng_dev)
                 : build_conventional(bc.rc.h, bc.rc.lambda, cfg.sigma_g, det, pt.scheme,
                                      cfg.range, err, rng_dev);

    Rng rng_tr(cfg.seed, derive_stream(0, 0, kPurposeTrial));
    BitVec bits = random_bits(static_cast<std::size_t>(cfg.k) * 6, rng_tr);
    Vec s = realify_vector(modulate(bits, mod));
    Vec y = linalg::matvec(bc.rc.h, s) + awgn(bc.rc.h.rows(), bc.noise, rng_tr);

    TransientRun run;
    run.topology = topology_name(inst.kind);
    run.result = transient_solve(inst, y, cfg.transient);
    run.algebraic_s_hat = solve_algebraic(inst, y).s_hat;
    return run;
}

std::vector<PowerRecord> run_power_report(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<PowerRecord> out;
    const double gpu_tops_per_watt = cfg.gpu_tflops / cfg.gpu_power_w;
    for (int k : cfg.k_list) {
        PowerModel pm = cfg.power;
        pm.n_dac = 2LL * cfg.r;
        pm.n_adc = 2LL * k;
        double p_prop = total_power_nominal(Topology::proposed, cfg.r, k, pm);
        double p_conv = total_power_nominal(Topology::conventional, cfg.r, k, pm);
        double additional = rapc(p_prop, p_conv);
        std::int64_t flops = equivalent_flops(cfg.r, k, cfg.detector);
        for (Topology topo : {Topology::proposed, Topology::conventional}) {
            double p = topo == Topology::proposed ? p_prop : p_conv;
            ComputeMetrics cm = compute_metrics(flops, cfg.compute_time_s, p);
            PowerRecord rec;
            rec.k = k;
            rec.topology = topology_name(topo);
            rec.p_total_w = p;
            rec.rapc = additional;
            rec.flops = flops;
            rec.tops = cm.tops;
            rec.tops_per_watt = cm.tops_per_watt;
            rec.ee_ratio_vs_gpu = cm.tops_per_watt / gpu_tops_per_watt;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::string ber_csv_text(const std::vector<BerRecord>& records) {
    std::ostringstream os;
    os << "snr_db,scheme,beta,sigma_m_frac,topology,detector,R,K,trials,bits,bit_errors,ber,"
          "clip_fraction,failures\n";
    for (const auto& r : records) {
        os << fmt_double(r.snr_db) << ',' << r.scheme << ',' << fmt_double(r.beta) << ','
           << fmt_double(r.sigma_m_frac) << ',' << r.topology << ',' << r.detector << ',' << r.r
           << ',' << r.k << ',' << r.trials << ',' << r.bits << ',' << r.bit_errors << ','
           << fmt_double(r.ber) << ',' << fmt_double(r.clip_fraction) << ',' << r.failures
           << '\n';
    }
    return os.str();
}

void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write " + path);
    out << ber_csv_text(records);
}

void write_power_csv(const std::string& path, const std::vector<PowerRecord>& records) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write " + path);
    out << "K,topology,p_total_w,rapc,flops,tops,tops_per_watt,ee_ratio_vs_gpu\n";
    for (const auto& r : records) {
        out << r.k << ',' << r.topology << ',' << fmt_double(r.p_total_w) << ','
            << fmt_double(r.rapc) << ',' << r.flops << ',' << fmt_double(r.tops) << ','
            << fmt_double(r.tops_per_watt) << ',' << fmt_double(r.ee_ratio_vs_gpu) << '\n';
    }
}

void write_trace_csv(const std::string& path, const TransientRun& run) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write " + path);
    out << "time_s,node_name,voltage_V\n";
    const auto& res = run.result;
    for (std::size_t i = 0; i < res.time_s.size(); ++i) {
        for (Eigen::Index j = 0; j < res.outputs.rows(); ++j) {
            out << fmt_double(res.time_s[i]) << ",out_" << (j + 1) << ','
                << fmt_double(res.outputs(j, static_cast<Eigen::Index>(i))) << '\n';
        }
    }
}

void write_meta(const std::string& csv_path, const ExperimentConfig& cfg) {
    std::string stem = csv_path;
    auto dot = stem.find_last_of('.');
    auto slash = stem.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        stem = stem.substr(0, dot);
    }
    std::ofstream out(stem + ".meta");
    if (!out) throw ParameterError("cannot write " + stem + ".meta");
    std::ostringstream hash;
    hash << std::hex << config_hash(cfg);
    out << "config_hash=" << hash.str() << "\nversion=" << kVersion << "\nseed=" << cfg.seed
        << "\nsimd_backend=" << kernels::backend_name()
        << "\npathloss_model=log_distance_128.1+37.6log10(d_km)"
        << "\nnoise_model=-174dBm/Hz+10log10(bw)+nf"
        << "\nsnr_convention=p_s*sum_lambda*2*sigma_g^2/sigma_n^2"
        << "\nut_placement=uniform_area_annulus"
        << "\ninput_gain_a_per_unit=1e-06"
        << "\ndelta0_policy=log_midpoint_of_feasible_interval"
        << "\ntheta_policy=max_theta_at_w_max"
        << "\nperturbation_reclip=off"
        << "\nearly_stop=target_errors_" << cfg.target_errors << "_cap_factor_"
        << cfg.max_trials_factor << "\n---config---\n"
        << canonical_config_text(cfg);
}

}  // namespace mcadet
