#include "mcadet/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mcadet {

const char* const kVersion = "0.1.0";

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ParameterError("config: bad number for '" + key + "': " + v);
    }
    if (pos != v.size()) throw ParameterError("config: bad number for '" + key + "': " + v);
    return d;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    double d = to_double(key, v);
    auto i = static_cast<std::int64_t>(d);
    if (static_cast<double>(i) != d) throw ParameterError("config: expected integer for '" + key + "'");
    return i;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& tok : split_list(v)) out.push_back(to_double(key, tok));
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParameterError("config: expected boolean for '" + key + "'");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt(v[i]);
    }
    return s;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (r < k || k < 1) throw ParameterError("config: require R >= K >= 1");
    if (trials < 1) throw ParameterError("config: trials >= 1");
    if (channel_redraws < 1) throw ParameterError("config: channel_redraws >= 1");
    if (beta.empty()) throw ParameterError("config: beta grid must be non-empty");
    if (sigma_m_frac.empty()) throw ParameterError("config: sigma_m grid must be non-empty");
    if (modulation != "qam64") throw ParameterError("config: unsupported modulation " + modulation);
    if (scenario == ScenarioKind::unit_lsfc && snr_db.empty()) {
        throw ParameterError("config: snr_db grid required for unit_lsfc scenario");
    }
    range.validate();
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw ParameterError("config: empty value for '" + key + "'");

        if (key == "R") cfg.r = static_cast<int>(to_int(key, val));
        else if (key == "K") cfg.k = static_cast<int>(to_int(key, val));
        else if (key == "modulation") cfg.modulation = val;
        else if (key == "snr_db") cfg.snr_db = to_list(key, val);
        else if (key == "beta") cfg.beta = to_list(key, val);
        else if (key == "sigma_m_frac") cfg.sigma_m_frac = to_list(key, val);
        else if (key == "scheme") {
            if (val == "scb") cfg.scheme = MappingSchemeKind::scb;
            else if (val == "icb") cfg.scheme = MappingSchemeKind::icb;
            else throw ParameterError("config: scheme must be scb or icb");
        } else if (key == "detector") {
            if (val == "zf") cfg.detector = DetectorKind::zf;
            else if (val == "mmse") cfg.detector = DetectorKind::mmse;
            else throw ParameterError("config: detector must be zf or mmse");
        } else if (key == "topology") {
            if (val == "proposed") cfg.topology = TopologySelect::proposed;
            else if (val == "conventional") cfg.topology = TopologySelect::conventional;
            else if (val == "both") cfg.topology = TopologySelect::both;
            else throw ParameterError("config: topology must be proposed, conventional or both");
        } else if (key == "include_digital") cfg.include_digital = to_bool(key, val);
        else if (key == "scenario") {
            if (val == "unit_lsfc") cfg.scenario = ScenarioKind::unit_lsfc;
            else if (val == "cell") cfg.scenario = ScenarioKind::cell;
            else throw ParameterError("config: scenario must be unit_lsfc or cell");
        } else if (key == "cell_radius_m") cfg.cell.radius_m = to_double(key, val);
        else if (key == "carrier_freq_hz") cfg.cell.carrier_freq_hz = to_double(key, val);
        else if (key == "bandwidth_hz") cfg.cell.bandwidth_hz = to_double(key, val);
        else if (key == "tx_power_dbm") cfg.cell.tx_power_dbm = to_double(key, val);
        else if (key == "noise_figure_db") cfg.cell.noise_figure_db = to_double(key, val);
        else if (key == "min_distance_m") cfg.cell.min_distance_m = to_double(key, val);
        else if (key == "trials") cfg.trials = to_int(key, val);
        else if (key == "channel_redraws") cfg.channel_redraws = static_cast<int>(to_int(key, val));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
        else if (key == "out") cfg.out_path = val;
        else if (key == "sigma_g") cfg.sigma_g = to_double(key, val);
        else if (key == "w_min_s") cfg.range.w_min = to_double(key, val);
        else if (key == "w_max_s") cfg.range.w_max = to_double(key, val);
        else if (key == "target_errors") cfg.target_errors = to_int(key, val);
        else if (key == "max_trials_factor") cfg.max_trials_factor = to_double(key, val);
        else if (key == "gbp_hz") cfg.transient.gbp_hz = to_double(key, val);
        else if (key == "dc_gain") cfg.transient.dc_gain = to_double(key, val);
        else if (key == "t_end_s") cfg.transient.t_end_s = to_double(key, val);
        else if (key == "settle_tol") cfg.transient.settle_tol = to_double(key, val);
        else if (key == "p_oa_w") cfg.power.p_oa_w = to_double(key, val);
        else if (key == "p_dac_w") cfg.power.p_dac_w = to_double(key, val);
        else if (key == "p_adc_w") cfg.power.p_adc_w = to_double(key, val);
        else if (key == "include_crossbar_dissipation")
            cfg.power.include_crossbar_dissipation = to_bool(key, val);
        else if (key == "k_list") {
            cfg.k_list.clear();
            for (double d : to_list(key, val)) cfg.k_list.push_back(static_cast<int>(d));
        } else if (key == "compute_time_s") cfg.compute_time_s = to_double(key, val);
        else if (key == "gpu_tflops") cfg.gpu_tflops = to_double(key, val);
        else if (key == "gpu_power_w") cfg.gpu_power_w = to_double(key, val);
        else throw ParameterError("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string canonical_config_text(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "R=" << cfg.r << "\nK=" << cfg.k << "\nmodulation=" << cfg.modulation
       << "\nsnr_db=" << fmt_list(cfg.snr_db) << "\nbeta=" << fmt_list(cfg.beta)
       << "\nsigma_m_frac=" << fmt_list(cfg.sigma_m_frac)
       << "\nscheme=" << (cfg.scheme == MappingSchemeKind::scb ? "scb" : "icb")
       << "\ndetector=" << (cfg.detector == DetectorKind::zf ? "zf" : "mmse") << "\ntopology="
       << (cfg.topology == TopologySelect::proposed
               ? "proposed"
               : cfg.topology == TopologySelect::conventional ? "conventional" : "both")
       << "\ninclude_digital=" << cfg.include_digital << "\nscenario="
       << (cfg.scenario == ScenarioKind::unit_lsfc ? "unit_lsfc" : "cell")
       << "\ncell_radius_m=" << fmt(cfg.cell.radius_m)
       << "\ncarrier_freq_hz=" << fmt(cfg.cell.carrier_freq_hz)
       << "\nbandwidth_hz=" << fmt(cfg.cell.bandwidth_hz)
       << "\ntx_power_dbm=" << fmt(cfg.cell.tx_power_dbm)
       << "\nnoise_figure_db=" << fmt(cfg.cell.noise_figure_db)
       << "\nmin_distance_m=" << fmt(cfg.cell.min_distance_m) << "\ntrials=" << cfg.trials
       << "\nchannel_redraws=" << cfg.channel_redraws << "\nseed=" << cfg.seed
       << "\nsigma_g=" << fmt(cfg.sigma_g) << "\nw_min_s=" << fmt(cfg.range.w_min)
       << "\nw_max_s=" << fmt(cfg.range.w_max) << "\ntarget_errors=" << cfg.target_errors
       << "\nmax_trials_factor=" << fmt(cfg.max_trials_factor)
       << "\ngbp_hz=" << fmt(cfg.transient.gbp_hz) << "\ndc_gain=" << fmt(cfg.transient.dc_gain)
       << "\nt_end_s=" << fmt(cfg.transient.t_end_s)
       << "\nsettle_tol=" << fmt(cfg.transient.settle_tol)
       << "\np_oa_w=" << fmt(cfg.power.p_oa_w) << "\np_dac_w=" << fmt(cfg.power.p_dac_w)
       << "\np_adc_w=" << fmt(cfg.power.p_adc_w)
       << "\ninclude_crossbar_dissipation=" << cfg.power.include_crossbar_dissipation
       << "\ncompute_time_s=" << fmt(cfg.compute_time_s)
       << "\ngpu_tflops=" << fmt(cfg.gpu_tflops) << "\ngpu_power_w=" << fmt(cfg.gpu_power_w)
       << "\nk_list=";
    for (std::size_t i = 0; i < cfg.k_list.size(); ++i) {
        if (i) os << ",";
        os << cfg.k_list[i];
    }
    os << "\n";
    return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    // FNV-1a 64
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char ch : canonical_config_text(cfg)) {
        h ^= ch;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace mcadet
