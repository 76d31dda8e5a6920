#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cavitychain/errors.hpp"

namespace cavitychain {

// Line-oriented `key = value` document, UTF-8, '#' comments. Keys are
// lowercase with explicit unit suffixes (ghz, mhz, nh, ff, mm); unknown keys
// are rejected so typos cannot silently fall back to defaults.
struct ExperimentConfig {
    std::string scenario;
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }

    std::string get_str(const std::string& key, const std::string& fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }

    double get_num(const std::string& key, double fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        try {
            size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            while (pos < it->second.size() && std::isspace(static_cast<unsigned char>(it->second[pos]))) ++pos;
            if (pos != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw ValidationError(key + ": not a number: '" + it->second + "'");
        }
    }

    double require_num(const std::string& key) const {
        if (!has(key)) throw ValidationError(key + ": required key missing");
        return get_num(key, 0.0);
    }

    int get_int(const std::string& key, int fallback) const {
        const double v = get_num(key, fallback);
        if (v != static_cast<int>(v)) throw ValidationError(key + ": not an integer");
        return static_cast<int>(v);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
        if (it->second == "false" || it->second == "0" || it->second == "no") return false;
        throw ValidationError(key + ": not a boolean: '" + it->second + "'");
    }

    std::vector<double> get_list(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end()) return {};
        std::vector<double> out;
        std::istringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ValidationError(key + ": bad list entry '" + tok + "'");
            }
        }
        return out;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": empty key");
        }
        if (cfg.kv.count(key)) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
        }
        cfg.kv[key] = value;
    }
    cfg.scenario = cfg.get_str("scenario", "");
    return cfg;
}

// ---------------------------------------------------------------------------
// Validation: per-scenario allowed/required keys plus semantic checks. Every
// violation is reported with the offending key.

namespace detail {

struct ScenarioSchema {
    std::set<std::string> required;
    std::set<std::string> optional;
};

inline const std::map<std::string, ScenarioSchema>& scenario_schemas() {
    static const std::set<std::string> common = {"scenario", "out", "threads", "seed"};
    static const std::set<std::string> circuit_overrides = {"base_c_ff", "c_sigma_ff",
                                                            "c_j_ff"};
    static const std::map<std::string, ScenarioSchema> schemas = [] {
        std::map<std::string, ScenarioSchema> m;
        auto with_common = [&](std::set<std::string> req, std::set<std::string> opt) {
            opt.insert(common.begin(), common.end());
            return ScenarioSchema{std::move(req), std::move(opt)};
        };
        auto plus = [](std::set<std::string> a, const std::set<std::string>& b) {
            a.insert(b.begin(), b.end());
            return a;
        };
        m["spectrum"] = with_common(
            {"trace", "cavities", "omega_ghz", "f_start_ghz", "f_stop_ghz", "f_step_mhz"},
            plus({"gamma_mhz", "q_ghz", "g_mhz", "lj_nh", "qubit_host", "port_c_ff",
                  "port_r_ohm"},
                 circuit_overrides));
        m["eigen"] = with_common(
            {"source"},
            plus({"intrinsic_ghz", "couplings_mhz", "qubits", "cavities", "omega_ghz",
                  "gamma_mhz", "q_ghz", "g_mhz", "lj_nh", "qubit_host"},
                 circuit_overrides));
        m["extract-gamma"] = with_common({"modes_ghz"}, {});
        m["fit-alpha"] = with_common(
            {}, {"points_csv", "alpha_khz_mm4", "diameters_mm", "noise_pct", "source_tag"});
        m["fit-g"] = with_common(
            {"omega_ghz", "g_mhz"},
            plus({"mode", "q_ghz", "c_sigma_ff", "lj_min_nh", "lj_max_nh", "lj_step_nh",
                  "noise_mhz", "f_step_mhz"},
                 circuit_overrides));
        m["bbq"] = with_common(
            {"mode"},
            plus({"chi_q_mhz", "chi_r_mhz", "delta_qr_mhz", "ec_mhz", "convention",
                  "omega_ghz", "g_mhz", "q_ghz", "lj_nh", "f_step_mhz"},
                 circuit_overrides));
        const std::set<std::string> delta_grid = {"delta_min_mhz", "delta_max_mhz",
                                                  "delta_step_mhz", "include_negative"};
        m["j12-model"] = with_common(
            {"omega_ghz", "gamma_mhz", "g_mhz"},
            plus(plus({"configuration", "q2_window_mhz", "q2_step_mhz"}, delta_grid), {}));
        const std::set<std::string> oracle_keys = {
            "window_half_mhz", "band_guard_mhz", "q2_half_span_mhz", "lj2_points",
            "participation_min", "f_step_mhz", "single_qubit_host", "q_span_mhz",
            "q_step_mhz"};
        m["j12-oracle"] = with_common(
            {"omega_ghz", "gamma_mhz", "g_mhz", "q_ghz"},
            plus(plus(plus({"configuration"}, delta_grid), oracle_keys), circuit_overrides));
        m["compare"] = with_common(
            {"omega_ghz", "gamma_mhz", "g_mhz", "q_ghz"},
            plus(plus(plus(plus({"configuration", "q2_window_mhz", "q2_step_mhz"}, delta_grid),
                           {"window_half_mhz", "band_guard_mhz", "q2_half_span_mhz",
                            "lj2_points", "participation_min", "f_step_mhz"}),
                      circuit_overrides),
                 {}));
        m["photon-field"] = with_common({"e_norm_v_per_m", "w_norm_j", "f_ghz"}, {});
        return m;
    }();
    return schemas;
}

inline void check_positive(const ExperimentConfig& cfg, const std::string& key,
                           std::vector<std::string>& diags) {
    if (!cfg.has(key)) return;
    try {
        if (!(cfg.get_num(key, 0.0) > 0.0)) {
            diags.push_back(key + ": must be positive");
        }
    } catch (const ValidationError& e) {
        diags.push_back(e.what());
    }
}

inline void check_nonnegative(const ExperimentConfig& cfg, const std::string& key,
                              std::vector<std::string>& diags) {
    if (!cfg.has(key)) return;
    try {
        if (cfg.get_num(key, 0.0) < 0.0) diags.push_back(key + ": must be nonnegative");
    } catch (const ValidationError& e) {
        diags.push_back(e.what());
    }
}

}  // namespace detail

inline std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> diags;
    const auto& schemas = detail::scenario_schemas();
    if (cfg.scenario.empty()) {
        diags.push_back("scenario: required key missing");
        return diags;
    }
    const auto it = schemas.find(cfg.scenario);
    if (it == schemas.end()) {
        diags.push_back("scenario: unknown scenario '" + cfg.scenario + "'");
        return diags;
    }
    const auto& schema = it->second;
    for (const auto& [key, value] : cfg.kv) {
        if (!schema.required.count(key) && !schema.optional.count(key)) {
            diags.push_back(key + ": unknown key for scenario '" + cfg.scenario + "'");
        }
    }
    for (const auto& key : schema.required) {
        if (!cfg.has(key)) diags.push_back(key + ": required key missing");
    }

    // unit-bearing numeric keys must be positive unless noted
    for (const char* key :
         {"omega_ghz", "g_mhz", "q_ghz", "lj_nh", "f_step_mhz", "f_start_ghz",
          "f_stop_ghz", "delta_step_mhz", "q2_window_mhz", "q2_step_mhz", "base_c_ff",
          "c_sigma_ff", "c_j_ff", "port_c_ff", "port_r_ohm", "lj_min_nh", "lj_max_nh",
          "lj_step_nh", "alpha_khz_mm4", "ec_mhz", "e_norm_v_per_m", "w_norm_j", "f_ghz",
          "window_half_mhz", "band_guard_mhz", "q2_half_span_mhz", "participation_min",
          "q_span_mhz", "q_step_mhz", "delta_min_mhz", "delta_max_mhz"}) {
        detail::check_positive(cfg, key, diags);
    }
    for (const char* key : {"gamma_mhz", "noise_pct", "noise_mhz"}) {
        detail::check_nonnegative(cfg, key, diags);
    }

    auto check_enum = [&](const std::string& key, const std::set<std::string>& allowed) {
        if (!cfg.has(key)) return;
        const std::string v = cfg.get_str(key, "");
        if (!allowed.count(v)) {
            std::string opts;
            for (const auto& a : allowed) opts += (opts.empty() ? "" : "|") + a;
            diags.push_back(key + ": must be one of " + opts + ", got '" + v + "'");
        }
    };
    check_enum("trace", {"admittance", "impedance", "transmission"});
    check_enum("source", {"model", "circuit"});
    check_enum("configuration", {"nn", "nnn", "both"});
    check_enum("mode", cfg.scenario == "bbq"
                           ? std::set<std::string>{"circuit", "direct"}
                           : std::set<std::string>{"oracle", "synthetic"});
    check_enum("convention", {"factor-2", "literal-b4"});
    check_enum("source_tag", {"h1", "h2", "user"});

    try {
        if (cfg.scenario == "spectrum" || cfg.scenario == "eigen") {
            if (cfg.has("cavities") && cfg.get_int("cavities", 1) < 1) {
                diags.push_back("cavities: must be >= 1");
            }
            if (cfg.scenario == "spectrum" && cfg.get_int("cavities", 1) > 1 &&
                !cfg.has("gamma_mhz")) {
                diags.push_back("gamma_mhz: required when cavities > 1");
            }
            const int q_keys = (cfg.has("q_ghz") ? 1 : 0) + (cfg.has("g_mhz") ? 1 : 0) +
                               (cfg.has("lj_nh") ? 1 : 0);
            if (cfg.scenario == "spectrum" && q_keys != 0 && q_keys != 3) {
                diags.push_back("q_ghz: qubit needs q_ghz, g_mhz and lj_nh together");
            }
            if (cfg.scenario == "eigen") {
                const std::string src = cfg.get_str("source", "");
                if (src == "model" && !cfg.has("intrinsic_ghz")) {
                    diags.push_back("intrinsic_ghz: required for source = model");
                }
                if (src == "circuit" && (!cfg.has("cavities") || !cfg.has("omega_ghz"))) {
                    diags.push_back("cavities: source = circuit needs cavities and omega_ghz");
                }
            }
        }
        if (cfg.scenario == "spectrum" && cfg.has("f_start_ghz") && cfg.has("f_stop_ghz") &&
            cfg.get_num("f_start_ghz", 0.0) >= cfg.get_num("f_stop_ghz", 0.0)) {
            diags.push_back("f_start_ghz: must be below f_stop_ghz");
        }
        if (cfg.scenario == "extract-gamma") {
            const auto modes = cfg.get_list("modes_ghz");
            if (cfg.has("modes_ghz") && modes.size() != 2 && modes.size() != 3) {
                diags.push_back("modes_ghz: needs 2 or 3 comma-separated frequencies");
            }
        }
        if (cfg.scenario == "fit-alpha") {
            const bool file = cfg.has("points_csv");
            const bool synth = cfg.has("alpha_khz_mm4");
            if (file == synth) {
                diags.push_back(
                    "points_csv: give either points_csv or alpha_khz_mm4 (+ diameters_mm)");
            }
            if (synth && cfg.get_list("diameters_mm").empty()) {
                diags.push_back("diameters_mm: required for synthetic fit-alpha");
            }
        }
        if (cfg.scenario == "fit-g") {
            const std::string mode = cfg.get_str("mode", "oracle");
            if (mode == "oracle" && !cfg.has("q_ghz")) {
                diags.push_back("q_ghz: required for fit-g in oracle mode");
            }
            if (mode == "synthetic" && !cfg.has("c_sigma_ff")) {
                diags.push_back("c_sigma_ff: required for fit-g in synthetic mode");
            }
            const int grid_keys = (cfg.has("lj_min_nh") ? 1 : 0) +
                                  (cfg.has("lj_max_nh") ? 1 : 0) +
                                  (cfg.has("lj_step_nh") ? 1 : 0);
            if (grid_keys != 0 && grid_keys != 3) {
                diags.push_back(
                    "lj_step_nh: sweep grid incomplete (needs lj_min_nh, lj_max_nh and "
                    "lj_step_nh, or none for the 6-14 nH / 0.05 nH default)");
            }
            if (cfg.get_num("lj_min_nh", 6.0) >= cfg.get_num("lj_max_nh", 14.0)) {
                diags.push_back("lj_min_nh: must be below lj_max_nh");
            }
        }
        if (cfg.scenario == "bbq") {
            const std::string mode = cfg.get_str("mode", "");
            if (mode == "direct") {
                for (const char* key : {"chi_q_mhz", "chi_r_mhz", "delta_qr_mhz", "ec_mhz"}) {
                    if (!cfg.has(key)) diags.push_back(std::string(key) + ": required for mode = direct");
                }
            } else if (mode == "circuit") {
                for (const char* key : {"omega_ghz", "g_mhz", "q_ghz"}) {
                    if (!cfg.has(key)) diags.push_back(std::string(key) + ": required for mode = circuit");
                }
            }
        }
        if (cfg.scenario == "j12-model" || cfg.scenario == "j12-oracle" ||
            cfg.scenario == "compare") {
            if (cfg.get_num("delta_min_mhz", 10.0) > cfg.get_num("delta_max_mhz", 300.0)) {
                diags.push_back("delta_min_mhz: must not exceed delta_max_mhz");
            }
        }
        if (cfg.scenario == "j12-oracle" && cfg.has("single_qubit_host")) {
            const int host = cfg.get_int("single_qubit_host", 0);
            if (host < 1 || host > 3) {
                diags.push_back("single_qubit_host: must be 1, 2 or 3");
            }
        }
        if (cfg.has("threads") && cfg.get_int("threads", 1) < 1) {
            diags.push_back("threads: must be >= 1");
        }
        if (cfg.has("lj2_points") && cfg.get_int("lj2_points", 41) < 5) {
            diags.push_back("lj2_points: must be >= 5");
        }
    } catch (const ValidationError& e) {
        diags.push_back(e.what());
    }

    std::sort(diags.begin(), diags.end());
    diags.erase(std::unique(diags.begin(), diags.end()), diags.end());
    return diags;
}

}  // namespace cavitychain
