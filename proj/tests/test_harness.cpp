#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcadet/harness.hpp"

using namespace mcadet;

namespace {

ExperimentConfig small_cfg() {
    return parse_config_text(
        "R = 8\nK = 2\nsnr_db = 15\nbeta = 3\nsigma_m_frac = 0\n"
        "scheme = scb\ndetector = mmse\ntopology = proposed\ninclude_digital = true\n"
        "trials = 200\nchannel_redraws = 10\ntarget_errors = 1\nseed = 11\n");
}

const BerRecord* find_record(const std::vector<BerRecord>& recs, const std::string& topology) {
    for (const auto& r : recs) {
        if (r.topology == topology) return &r;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("sweeps are bit-for-bit reproducible") {
    ExperimentConfig cfg = small_cfg();
    auto a = run_ber_sweep(cfg);
    auto b = run_ber_sweep(cfg);
    CHECK(ber_csv_text(a) == ber_csv_text(b));

    cfg.seed = 12;
    auto c = run_ber_sweep(cfg);
    CHECK(ber_csv_text(a) != ber_csv_text(c));
}

TEST_CASE("ideal circuit tracks the digital baseline") {
    ExperimentConfig cfg = small_cfg();
    cfg.scheme = MappingSchemeKind::icb;
    auto recs = run_ber_sweep(cfg);
    const auto* circuit = find_record(recs, "proposed");
    const auto* digital = find_record(recs, "digital");
    REQUIRE(circuit != nullptr);
    REQUIRE(digital != nullptr);
    CHECK(circuit->trials == digital->trials);
    // sigma_m = 0 with instantaneous mapping: identical estimates, identical
    // error counts
    CHECK(circuit->bit_errors == digital->bit_errors);
    CHECK(circuit->failures == 0);
    CHECK(circuit->clip_fraction == 0.0);
}

TEST_CASE("high snr yields an error-free digital baseline") {
    ExperimentConfig cfg = small_cfg();
    cfg.snr_db = {40.0};
    auto recs = run_ber_sweep(cfg);
    const auto* digital = find_record(recs, "digital");
    REQUIRE(digital != nullptr);
    CHECK(digital->bit_errors == 0);
    CHECK(digital->ber == 0.0);
    CHECK(digital->bits == digital->trials * 12);  // K=2 users, 6 bits each
}

TEST_CASE("beta study emits one icb reference row per error level") {
    ExperimentConfig cfg = small_cfg();
    cfg.beta = {2.0, 3.0};
    cfg.sigma_m_frac = {0.0, 0.01};
    cfg.include_digital = false;
    cfg.trials = 50;
    auto recs = run_beta_study(cfg);
    REQUIRE(recs.size() == 6);  // (2 scb + 1 icb) x 2 error levels
    int icb_rows = 0;
    for (const auto& r : recs) {
        CHECK(r.snr_db == 15.0);
        if (r.scheme == "icb") {
            ++icb_rows;
            CHECK(r.beta == 0.0);
        }
    }
    CHECK(icb_rows == 2);
}

TEST_CASE("topology compare pairs both circuits in the cell scenario") {
    ExperimentConfig cfg = parse_config_text(
        "R = 8\nK = 2\nscenario = cell\nbeta = 3\nsigma_m_frac = 0.005\n"
        "scheme = scb\ndetector = zf\ntrials = 50\nchannel_redraws = 5\n"
        "target_errors = 1\nseed = 21\n");
    auto recs = run_topology_compare(cfg);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].topology == "proposed");
    CHECK(recs[1].topology == "conventional");
    CHECK(recs[0].trials == recs[1].trials);
    // physical noise floor: the record carries no SNR axis value
    CHECK(std::isnan(recs[0].snr_db));
    std::string csv = ber_csv_text(recs);
    CHECK(csv.find("nan,scb") != std::string::npos);
}

TEST_CASE("early stopping keeps sampling until the error target") {
    ExperimentConfig cfg = small_cfg();
    cfg.snr_db = {30.0};  // low BER: the target forces extra blocks
    cfg.trials = 100;
    cfg.target_errors = 50;
    cfg.max_trials_factor = 3.0;
    cfg.include_digital = false;
    auto recs = run_ber_sweep(cfg);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].trials >= cfg.trials);
    // the cap is enforced in whole chunks of blocks
    CHECK(recs[0].trials <= 3 * cfg.trials + 16 * cfg.channel_redraws);
}

TEST_CASE("transient run returns a settled trace") {
    ExperimentConfig cfg = small_cfg();
    auto run = run_transient(cfg);
    CHECK(run.topology == "proposed");
    CHECK(run.result.settle_time_s > 0.0);
    CHECK(run.result.time_s.size() > 10);
    Vec diff = run.result.final.s_hat - run.algebraic_s_hat;
    CHECK(diff.norm() / run.algebraic_s_hat.norm() < 1e-3);
}

TEST_CASE("power report rows and shared rapc") {
    ExperimentConfig cfg = small_cfg();
    cfg.k_list = {2, 4};
    auto recs = run_power_report(cfg);
    REQUIRE(recs.size() == 4);  // two topologies per K
    CHECK(recs[0].k == 2);
    CHECK(recs[0].topology == "proposed");
    CHECK(recs[1].topology == "conventional");
    CHECK(recs[0].rapc == recs[1].rapc);
    CHECK(recs[0].p_total_w > recs[1].p_total_w);
    CHECK(recs[0].tops == recs[1].tops);  // same equivalent workload and time
    CHECK(recs[2].tops > recs[0].tops);   // more users, more work per solve
}

TEST_CASE("csv and meta sidecar files") {
    ExperimentConfig cfg = small_cfg();
    cfg.trials = 30;
    cfg.out_path = "harness_test_out.csv";
    auto recs = run_ber_sweep(cfg);
    write_ber_csv(cfg.out_path, recs);
    write_meta(cfg.out_path, cfg);

    std::ifstream csv(cfg.out_path);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header ==
          "snr_db,scheme,beta,sigma_m_frac,topology,detector,R,K,trials,bits,bit_errors,ber,"
          "clip_fraction,failures");

    std::ifstream meta("harness_test_out.meta");
    REQUIRE(meta.good());
    std::stringstream ss;
    ss << meta.rdbuf();
    std::string text = ss.str();
    std::ostringstream hash;
    hash << std::hex << config_hash(cfg);
    CHECK(text.find("config_hash=" + hash.str()) != std::string::npos);
    CHECK(text.find("seed=11") != std::string::npos);
    CHECK(text.find("version=") != std::string::npos);
    CHECK(text.find("---config---") != std::string::npos);

    std::remove("harness_test_out.csv");
    std::remove("harness_test_out.meta");
}
