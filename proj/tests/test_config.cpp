#include <doctest.h>

#include "mcadet/config.hpp"

using namespace mcadet;

TEST_CASE("defaults parse and validate") {
    ExperimentConfig cfg = parse_config_text("snr_db = 10\n");
    CHECK(cfg.r == 64);
    CHECK(cfg.k == 4);
    CHECK(cfg.modulation == "qam64");
    CHECK(cfg.beta == std::vector<double>{3.0});
    CHECK(cfg.trials == 1000);
    CHECK(cfg.seed == 1);
    CHECK(cfg.detector == DetectorKind::mmse);
    CHECK(cfg.scheme == MappingSchemeKind::scb);
}

TEST_CASE("values, lists, comments and whitespace") {
    ExperimentConfig cfg = parse_config_text(
        "# full sweep\n"
        "R = 32\n"
        "K=8\n"
        "snr_db = 0, 5, 10 15\n"
        "beta = 1,2,3\n"
        "sigma_m_frac = 0 0.01\n"
        "scheme = icb\n"
        "detector = zf\n"
        "topology = both\n"
        "include_digital = true\n"
        "trials = 500   # inline comment\n"
        "seed = 99\n");
    CHECK(cfg.r == 32);
    CHECK(cfg.k == 8);
    CHECK(cfg.snr_db == std::vector<double>{0.0, 5.0, 10.0, 15.0});
    CHECK(cfg.beta == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(cfg.sigma_m_frac == std::vector<double>{0.0, 0.01});
    CHECK(cfg.scheme == MappingSchemeKind::icb);
    CHECK(cfg.detector == DetectorKind::zf);
    CHECK(cfg.topology == TopologySelect::both);
    CHECK(cfg.include_digital);
    CHECK(cfg.trials == 500);
    CHECK(cfg.seed == 99);
}

TEST_CASE("rejects malformed input") {
    CHECK_THROWS_AS(parse_config_text("snr_db = 10\nnot_a_key = 1\n"), ParameterError);
    CHECK_THROWS_AS(parse_config_text("snr_db = ten\n"), ParameterError);
    CHECK_THROWS_AS(parse_config_text("R = 3.5\nsnr_db = 10\n"), ParameterError);
    CHECK_THROWS_AS(parse_config_text("include_digital = maybe\nsnr_db = 10\n"), ParameterError);
    CHECK_THROWS_AS(parse_config_text("just a line\n"), ParameterError);
    CHECK_THROWS_AS(parse_config_text("R =\nsnr_db = 10\n"), ParameterError);
    CHECK_THROWS_AS(parse_config_text("scheme = other\nsnr_db = 10\n"), ParameterError);
}

TEST_CASE("validation catches inconsistent setups") {
    CHECK_THROWS_AS(parse_config_text("R = 2\nK = 4\nsnr_db = 10\n"), ParameterError);
    CHECK_THROWS_AS(parse_config_text("snr_db = 10\ntrials = 0\n"), ParameterError);
    CHECK_THROWS_AS(parse_config_text("snr_db = 10\nmodulation = qam16\n"), ParameterError);
    // unit-gain scenario needs an SNR grid
    CHECK_THROWS_AS(parse_config_text("R = 8\nK = 2\n"), ParameterError);
    // the cell scenario fixes the noise physically, no SNR grid needed
    CHECK_NOTHROW(parse_config_text("scenario = cell\n"));
    CHECK_THROWS_AS(parse_config_text("snr_db = 10\nw_min_s = 5e-6\nw_max_s = 1e-6\n"),
                    ParameterError);
}

TEST_CASE("config hash tracks content") {
    ExperimentConfig a = parse_config_text("snr_db = 10\n");
    ExperimentConfig b = parse_config_text("snr_db = 10\n");
    ExperimentConfig c = parse_config_text("snr_db = 11\n");
    ExperimentConfig d = parse_config_text("snr_db = 10\nseed = 2\n");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(c));
    CHECK(config_hash(a) != config_hash(d));
    // canonical text round-trips through the parser to the same hash
    ExperimentConfig rt = parse_config_text(canonical_config_text(a));
    CHECK(config_hash(rt) == config_hash(a));
}

TEST_CASE("missing file errors cleanly") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/config.cfg"), ParameterError);
}
