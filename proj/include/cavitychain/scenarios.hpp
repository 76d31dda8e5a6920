#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cavitychain/bbq.hpp"
#include "cavitychain/branches.hpp"
#include "cavitychain/calibrate.hpp"
#include "cavitychain/circuit.hpp"
#include "cavitychain/closed_form.hpp"
#include "cavitychain/config.hpp"
#include "cavitychain/coupler_law.hpp"
#include "cavitychain/csv.hpp"
#include "cavitychain/errors.hpp"
#include "cavitychain/j12.hpp"
#include "cavitychain/mode_matrix.hpp"
#include "cavitychain/network_modes.hpp"
#include "cavitychain/oracle_pipeline.hpp"
#include "cavitychain/photon_field.hpp"
#include "cavitychain/resonance.hpp"
#include "cavitychain/spectra.hpp"
#include "cavitychain/svg_plot.hpp"
#include "cavitychain/two_level_fit.hpp"
#include "cavitychain/version.hpp"

namespace cavitychain {

struct RunReport {
    std::string scenario;
    std::vector<std::pair<std::string, std::string>> inputs;   // resolved, with defaults
    std::vector<std::pair<std::string, std::string>> outputs;
    std::vector<std::string> files;
    double wall_ms = 0.0;
};

namespace detail {

// Config access that records every resolved value, so the run report echoes
// all defaults and no implicit parameter goes unrecorded.
class Resolved {
  public:
    explicit Resolved(const ExperimentConfig& cfg) : cfg_(cfg) {}

    double num(const std::string& key, double fallback) {
        const double v = cfg_.get_num(key, fallback);
        record(key, format_double(v));
        return v;
    }

    double require(const std::string& key) {
        const double v = cfg_.require_num(key);
        record(key, format_double(v));
        return v;
    }

    int integer(const std::string& key, int fallback) {
        const int v = cfg_.get_int(key, fallback);
        record(key, std::to_string(v));
        return v;
    }

    bool boolean(const std::string& key, bool fallback) {
        const bool v = cfg_.get_bool(key, fallback);
        record(key, v ? "true" : "false");
        return v;
    }

    std::string str(const std::string& key, const std::string& fallback) {
        const std::string v = cfg_.get_str(key, fallback);
        record(key, v);
        return v;
    }

    std::vector<double> list(const std::string& key) {
        const auto v = cfg_.get_list(key);
        record(key, cfg_.get_str(key, ""));
        return v;
    }

    bool has(const std::string& key) const { return cfg_.has(key); }

    const std::vector<std::pair<std::string, std::string>>& trail() const { return trail_; }

  private:
    void record(const std::string& key, const std::string& value) {
        for (auto& [k, v] : trail_) {
            if (k == key) {
                v = value;
                return;
            }
        }
        trail_.emplace_back(key, value);
    }

    const ExperimentConfig& cfg_;
    std::vector<std::pair<std::string, std::string>> trail_;
};

inline void put(RunReport& r, const std::string& key, double value) {
    r.outputs.emplace_back(key, format_double(value));
}

inline void put(RunReport& r, const std::string& key, const std::string& value) {
    r.outputs.emplace_back(key, value);
}

inline std::string out_file(const std::string& dir, const std::string& name, RunReport& r) {
    r.files.push_back(name);
    return (std::filesystem::path(dir) / name).string();
}

struct CircuitParams {
    double base_c;
    double c_sigma;
    double c_j;
};

inline CircuitParams circuit_params(Resolved& rv) {
    return {rv.num("base_c_ff", 400.0) * 1e-15, rv.num("c_sigma_ff", 78.0) * 1e-15,
            rv.num("c_j_ff", 10.0) * 1e-15};
}

inline CalibrationOptions calibration_options(const CircuitParams& p) {
    CalibrationOptions o;
    o.base_c = p.base_c;
    o.c_sigma = p.c_sigma;
    o.c_j = p.c_j;
    return o;
}

inline std::vector<double> delta_grid_hz(Resolved& rv) {
    const double lo = rv.num("delta_min_mhz", 10.0) * 1e6;
    const double hi = rv.num("delta_max_mhz", 300.0) * 1e6;
    const double step = rv.num("delta_step_mhz", 10.0) * 1e6;
    const bool negative = rv.boolean("include_negative", true);
    std::vector<double> grid;
    if (negative) {
        for (double d = hi; d >= lo - 0.5 * step; d -= step) grid.push_back(-d);
    }
    for (double d = lo; d <= hi + 0.5 * step; d += step) grid.push_back(d);
    return grid;
}

inline std::vector<QubitPlacement> placements(Resolved& rv) {
    const std::string c = rv.str("configuration", "both");
    if (c == "nn") return {QubitPlacement::NN};
    if (c == "nnn") return {QubitPlacement::NNN};
    return {QubitPlacement::NN, QubitPlacement::NNN};
}

// j12-model curve; shared verbatim by the compare scenario so the model
// column there is bit-identical to a standalone j12-model run.
inline J12Curve model_curve(QubitPlacement placement, double omega_hz, double gamma_hz,
                            double g_hz, const std::vector<double>& deltas_hz,
                            const J12SweepSettings& settings) {
    J12Curve curve;
    curve.placement = placement;
    curve.q2_window_hz = settings.q2_window_hz;
    curve.q2_step_hz = settings.q2_step_hz;
    for (double d : deltas_hz) {
        try {
            const J12Point p = j12_sweep(placement, omega_hz, gamma_hz, g_hz,
                                         omega_hz + d, settings);
            curve.detunings_hz.push_back(d);
            curve.couplings_hz.push_back(p.j12_hz);
        } catch (const BranchError&) {
            // hybridized beyond a two-branch reading at this detuning
        }
    }
    return curve;
}

inline void write_curve_csv(const std::string& path, const J12Curve& curve) {
    CsvTable t;
    t.columns = {"delta_hz", "j12_hz"};
    for (size_t i = 0; i < curve.detunings_hz.size(); ++i) {
        t.rows.push_back({curve.detunings_hz[i], curve.couplings_hz[i]});
    }
    write_table_csv(path, t);
}

inline double curve_max(const J12Curve& curve) {
    double m = 0.0;
    for (double j : curve.couplings_hz) m = std::max(m, j);
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline RunReport run_scenario(const ExperimentConfig& cfg, const std::string& out_dir,
                              int threads, unsigned seed, bool plot) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    RunReport report;
    report.scenario = cfg.scenario;
    detail::Resolved rv(cfg);

    if (cfg.scenario == "spectrum") {
        const std::string kind = rv.str("trace", "admittance");
        const int cavities = rv.integer("cavities", 1);
        const double omega = rv.require("omega_ghz") * 1e9;
        const double gamma = cavities > 1 ? rv.require("gamma_mhz") * 1e6 : 0.0;
        const auto cp = detail::circuit_params(rv);
        CalibrationTargets targets;
        targets.omega_hz = omega;
        if (cavities > 1) targets.gamma_hz = gamma;
        const bool with_qubit = rv.has("q_ghz");
        if (with_qubit) {
            targets.g_hz = rv.require("g_mhz") * 1e6;
            targets.q_hz = rv.require("q_ghz") * 1e9;
        }
        const CalibratedChain cal = calibrate_chain(targets, detail::calibration_options(cp));
        std::vector<QubitSpec> qubits;
        if (with_qubit) {
            const int host = rv.integer("qubit_host", 1) - 1;
            const double lj = rv.num("lj_nh", cal.qubit_l_j * 1e9) * 1e-9;
            qubits.push_back(cal.qubit(host, lj, "lp1"));
        }
        ChainSpec spec = cal.chain(cavities, qubits);
        if (kind == "transmission") {
            const double c_p = rv.num("port_c_ff", cal.tank_c / 200.0 * 1e15) * 1e-15;
            const double r = rv.num("port_r_ohm", 50.0);
            spec.measurement_ports.push_back({0, c_p, r, PortRole::Drive, "in"});
            spec.measurement_ports.push_back({cavities - 1, c_p, r, PortRole::Readout, "out"});
        }
        const BuiltCircuit built = build_cavity_circuit(spec);
        SweepGrid grid{rv.require("f_start_ghz") * 1e9, rv.require("f_stop_ghz") * 1e9,
                       rv.require("f_step_mhz") * 1e6};
        SpectrumTrace trace;
        if (kind == "admittance") {
            trace = port_admittance_spectrum(built.net, "lp1", grid, threads);
        } else if (kind == "impedance") {
            trace = port_impedance_spectrum(built.net, "lp1", grid, threads);
        } else {
            trace = transmission_spectrum(built.net, "in", "out", grid, threads);
        }
        write_trace_csv(detail::out_file(out_dir, "trace.csv", report), trace);
        if (kind == "transmission") {
            const ResonanceSet peaks = find_transmission_peaks(trace);
            detail::put(report, "peak_count", static_cast<double>(peaks.frequencies_hz.size()));
            for (size_t i = 0; i < peaks.frequencies_hz.size(); ++i) {
                detail::put(report, "peak_" + std::to_string(i + 1) + "_hz",
                            peaks.frequencies_hz[i]);
            }
        }
        if (plot) {
            PlotSeries s;
            s.label = kind;
            for (size_t i = 0; i < trace.samples.size(); ++i) {
                s.x.push_back(trace.frequency(static_cast<int>(i)) / 1e9);
                s.y.push_back(kind == "transmission" ? to_db(trace.samples[i])
                                                     : trace.samples[i].imag());
            }
            write_svg_plot(detail::out_file(out_dir, "trace.svg", report),
                           "spectrum (" + kind + ")", "frequency (GHz)",
                           kind == "transmission" ? "|S21| (dB)" : "imaginary part", {s});
        }
    } else if (cfg.scenario == "eigen") {
        const std::string source = rv.str("source", "model");
        std::vector<double> freqs;
        if (source == "model") {
            std::vector<double> intrinsic;
            for (double v : rv.list("intrinsic_ghz")) intrinsic.push_back(v * 1e9);
            std::vector<double> couplings;
            for (double v : rv.list("couplings_mhz")) couplings.push_back(v * 1e6);
            ModeMatrix m = build_chain_matrix(intrinsic, couplings);
            const std::string qubit_spec = rv.str("qubits", "");
            if (!qubit_spec.empty()) {
                std::vector<QubitAttachment> qs;
                std::istringstream ss(qubit_spec);
                std::string tok;
                while (std::getline(ss, tok, ';')) {
                    std::istringstream ts(tok);
                    std::string host, q, g;
                    if (!std::getline(ts, host, ':') || !std::getline(ts, q, ':') ||
                        !std::getline(ts, g)) {
                        throw ValidationError("qubits: expected host:q_ghz:g_mhz;...");
                    }
                    qs.push_back({std::stoi(host) - 1, std::stod(q) * 1e9, std::stod(g) * 1e6});
                }
                m = build_qubit_chain_matrix(m, qs);
            }
            const EigenSolution sol = eigenmodes(m);
            freqs.assign(sol.frequencies.data(), sol.frequencies.data() + sol.frequencies.size());
            CsvTable vecs;
            vecs.columns.push_back("node");
            for (int k = 0; k < sol.vectors.cols(); ++k) {
                vecs.columns.push_back("mode_" + std::to_string(k + 1));
            }
            for (int i = 0; i < sol.vectors.rows(); ++i) {
                std::vector<double> row{static_cast<double>(i + 1)};
                for (int k = 0; k < sol.vectors.cols(); ++k) row.push_back(sol.vectors(i, k));
                vecs.rows.push_back(row);
            }
            write_table_csv(detail::out_file(out_dir, "eigenvectors.csv", report), vecs);
        } else {
            const int cavities = rv.integer("cavities", 1);
            CalibrationTargets targets;
            targets.omega_hz = rv.require("omega_ghz") * 1e9;
            if (cavities > 1) targets.gamma_hz = rv.require("gamma_mhz") * 1e6;
            const auto cp = detail::circuit_params(rv);
            const bool with_qubit = rv.has("q_ghz");
            if (with_qubit) {
                targets.g_hz = rv.require("g_mhz") * 1e6;
                targets.q_hz = rv.require("q_ghz") * 1e9;
            }
            const CalibratedChain cal =
                calibrate_chain(targets, detail::calibration_options(cp));
            std::vector<QubitSpec> qubits;
            if (with_qubit) {
                const int host = rv.integer("qubit_host", 1) - 1;
                const double lj = rv.num("lj_nh", cal.qubit_l_j * 1e9) * 1e-9;
                qubits.push_back(cal.qubit(host, lj, "lp1"));
            }
            freqs = network_eigenfrequencies(build_cavity_circuit(cal.chain(cavities, qubits)).net);
        }
        CsvTable t;
        t.columns = {"mode", "frequency_hz"};
        for (size_t i = 0; i < freqs.size(); ++i) {
            t.rows.push_back({static_cast<double>(i + 1), freqs[i]});
        }
        write_table_csv(detail::out_file(out_dir, "eigenfrequencies.csv", report), t);
        detail::put(report, "mode_count", static_cast<double>(freqs.size()));
    } else if (cfg.scenario == "extract-gamma") {
        std::vector<double> modes;
        for (double v : rv.list("modes_ghz")) modes.push_back(v * 1e9);
        if (modes.size() == 2) {
            const PairExtraction px = gamma_from_two_modes(modes[0], modes[1]);
            detail::put(report, "gamma_hz", px.gamma_hz);
            detail::put(report, "omega_hz", px.omega_hz);
        } else if (modes.size() == 3) {
            const TripleExtraction tx = params_from_three_modes(modes[0], modes[1], modes[2]);
            detail::put(report, "omega1_hz", tx.omega1_hz);
            detail::put(report, "omega2_hz", tx.omega2_hz);
            detail::put(report, "gamma_hz", tx.gamma_hz);
        } else {
            throw ValidationError("modes_ghz: needs 2 or 3 entries");
        }
    } else if (cfg.scenario == "fit-alpha") {
        std::vector<CouplerPoint> points;
        if (rv.has("points_csv")) {
            const std::string path = rv.str("points_csv", "");
            for (const auto& [d, g] : read_pairs_csv(path, "d_mm,gamma_hz")) {
                points.push_back({d, g});
            }
        } else {
            const double alpha = rv.require("alpha_khz_mm4") * 1e3;
            const double noise_pct = rv.num("noise_pct", 0.0);
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> jitter(-noise_pct / 100.0,
                                                          noise_pct / 100.0);
            for (double d : rv.list("diameters_mm")) {
                const double gamma = alpha * d * d * d * d * (1.0 + (noise_pct > 0.0 ? jitter(rng) : 0.0));
                points.push_back({d, gamma});
            }
            CsvTable t;
            t.columns = {"d_mm", "gamma_hz"};
            for (const auto& p : points) t.rows.push_back({p.d_mm, p.gamma_hz});
            write_table_csv(detail::out_file(out_dir, "points.csv", report), t);
        }
        const CouplerLaw law = fit_alpha(points, rv.str("source_tag", "user"));
        detail::put(report, "alpha_hz_per_mm4", law.alpha_hz_per_mm4);
        detail::put(report, "residual_rms_hz", law.residual_rms_hz);
        detail::put(report, "source", law.source);
        if (points.size() >= 2 && points.front().d_mm != points.back().d_mm) {
            try {
                const PowerLawFit free_fit = fit_power_law(points);
                detail::put(report, "free_fit_exponent", free_fit.exponent);
                detail::put(report, "free_fit_coefficient_hz", free_fit.coefficient_hz);
            } catch (const DegenerateFitError&) {
            }
        }
        std::ofstream law_out(detail::out_file(out_dir, "coupler_law.txt", report),
                              std::ios::binary);
        law_out << "alpha_hz_per_mm4=" << format_double(law.alpha_hz_per_mm4) << '\n'
                << "exponent=4\n"
                << "residual_rms_hz=" << format_double(law.residual_rms_hz) << '\n'
                << "source=" << law.source << '\n';
    } else if (cfg.scenario == "fit-g") {
        const std::string mode = rv.str("mode", "oracle");
        const double lj_min = rv.num("lj_min_nh", 6.0) * 1e-9;
        const double lj_max = rv.num("lj_max_nh", 14.0) * 1e-9;
        const double lj_step = rv.num("lj_step_nh", 0.05) * 1e-9;
        AvoidedCrossing ac;
        if (mode == "oracle") {
            CalibrationTargets targets;
            targets.omega_hz = rv.require("omega_ghz") * 1e9;
            targets.g_hz = rv.require("g_mhz") * 1e6;
            targets.q_hz = rv.require("q_ghz") * 1e9;
            const auto cp = detail::circuit_params(rv);
            const CalibratedChain cal =
                calibrate_chain(targets, detail::calibration_options(cp));
            const double f_step = rv.num("f_step_mhz", 1.0) * 1e6;
            const int n = static_cast<int>(std::floor((lj_max - lj_min) / lj_step)) + 1;
            std::vector<std::pair<double, ResonanceSet>> sweep(n);
            const double q_hi = 1.0 / (2.0 * k_pi * std::sqrt(cal.c_sigma * lj_min));
            const double q_lo = 1.0 / (2.0 * k_pi * std::sqrt(cal.c_sigma * lj_max));
            SweepGrid grid{std::min(q_lo, targets.omega_hz) - 300e6,
                           std::max(q_hi, targets.omega_hz) + 300e6, f_step};
            parallel_for(n, threads, [&](int i) {
                const double lj = lj_min + i * lj_step;
                ChainSpec spec = cal.chain(1, {cal.qubit(0, lj, "lp")});
                const SpectrumTrace y =
                    port_admittance_spectrum(build_cavity_circuit(spec).net, "lp", grid, 1);
                sweep[i] = {lj, find_imY_zeros(y)};
            });
            ac = assemble_branches(sweep, {grid.start_hz, grid.stop_hz});
        } else {
            const double omega = rv.require("omega_ghz") * 1e9;
            const double g = rv.require("g_mhz") * 1e6;
            const double c_sigma = rv.require("c_sigma_ff") * 1e-15;
            const double noise = rv.num("noise_mhz", 0.0) * 1e6;
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> jitter(-noise, noise);
            for (double lj = lj_min; lj <= lj_max + 0.5 * lj_step; lj += lj_step) {
                const double q = 1.0 / (2.0 * k_pi * std::sqrt(c_sigma * lj));
                const TwoLevelModes tm = two_level_modes(omega, q, g);
                ac.sweep_values.push_back(lj);
                ac.branch_low.push_back(tm.lower_hz + (noise > 0.0 ? jitter(rng) : 0.0));
                ac.branch_high.push_back(tm.upper_hz + (noise > 0.0 ? jitter(rng) : 0.0));
            }
        }
        write_branches_csv(detail::out_file(out_dir, "branches.csv", report), ac);
        const TwoLevelFitResult fit = fit_two_level(ac);
        const MinGapResult mg = min_gap(ac);
        detail::put(report, "g_fit_hz", fit.g_hz);
        detail::put(report, "omega_fit_hz", fit.omega_hz);
        detail::put(report, "c_sigma_fit_f", fit.c_sigma_f);
        detail::put(report, "fit_rms_hz", fit.rms_hz);
        detail::put(report, "half_min_gap_hz", mg.half_gap_hz);
        detail::put(report, "min_gap_lj_h", mg.location);
        if (plot) {
            PlotSeries lo{"branch low", "#1f77b4", {}, {}};
            PlotSeries hi{"branch high", "#d62728", {}, {}};
            for (size_t i = 0; i < ac.sweep_values.size(); ++i) {
                if (ac.branch_low[i]) {
                    lo.x.push_back(ac.sweep_values[i] * 1e9);
                    lo.y.push_back(*ac.branch_low[i] / 1e9);
                }
                if (ac.branch_high[i]) {
                    hi.x.push_back(ac.sweep_values[i] * 1e9);
                    hi.y.push_back(*ac.branch_high[i] / 1e9);
                }
            }
            write_svg_plot(detail::out_file(out_dir, "branches.svg", report),
                           "avoided crossing", "L_J (nH)", "frequency (GHz)", {lo, hi});
        }
    } else if (cfg.scenario == "bbq") {
        const std::string mode = rv.str("mode", "circuit");
        const std::string conv_name = rv.str("convention", "factor-2");
        const KerrConvention conv = conv_name == "literal-b4" ? KerrConvention::LiteralB4
                                                              : KerrConvention::FactorTwo;
        KerrReport kerr;
        double g_other = 0.0;
        if (mode == "direct") {
            const double chi_q = rv.require("chi_q_mhz") * 1e6;
            const double chi_r = rv.require("chi_r_mhz") * 1e6;
            const double delta = rv.require("delta_qr_mhz") * 1e6;
            const double ec = rv.require("ec_mhz") * 1e6;
            kerr = bbq_kerr_from_values(chi_q, chi_r, delta, ec, conv);
            g_other = bbq_kerr_from_values(chi_q, chi_r, delta, ec,
                                           conv == KerrConvention::FactorTwo
                                               ? KerrConvention::LiteralB4
                                               : KerrConvention::FactorTwo)
                          .g_hz;
        } else {
            CalibrationTargets targets;
            targets.omega_hz = rv.require("omega_ghz") * 1e9;
            targets.g_hz = rv.require("g_mhz") * 1e6;
            targets.q_hz = rv.require("q_ghz") * 1e9;
            const auto cp = detail::circuit_params(rv);
            const CalibratedChain cal =
                calibrate_chain(targets, detail::calibration_options(cp));
            const double lj = rv.num("lj_nh", cal.qubit_l_j * 1e9) * 1e-9;
            ChainSpec spec = cal.chain(1, {cal.qubit(0, lj, "lp")});
            const BuiltCircuit built = build_cavity_circuit(spec);
            const double f_step = rv.num("f_step_mhz", 1.0) * 1e6;
            const auto ef = network_eigenfrequencies(built.net);
            SweepGrid grid{ef.front() - 300e6, ef.back() + 300e6, f_step};
            const SpectrumTrace y = port_admittance_spectrum(built.net, "lp", grid, threads);
            write_trace_csv(detail::out_file(out_dir, "imy_trace.csv", report), y);
            const ResonanceSet zeros = find_imY_zeros(y);
            if (zeros.frequencies_hz.size() < 2) {
                throw InsufficientDataError("expected two ImY zeros, found " +
                                            std::to_string(zeros.frequencies_hz.size()));
            }
            const double f_r = zeros.frequencies_hz.front();
            const double f_q = zeros.frequencies_hz.back();
            kerr = bbq_kerr(y, f_q, f_r, lj, conv);
            g_other = bbq_kerr(y, f_q, f_r, lj,
                               conv == KerrConvention::FactorTwo ? KerrConvention::LiteralB4
                                                                 : KerrConvention::FactorTwo)
                          .g_hz;
        }
        std::ofstream ko(detail::out_file(out_dir, "kerr_report.txt", report),
                         std::ios::binary);
        auto kv = [&](const std::string& k, double v) {
            ko << k << '=' << format_double(v) << '\n';
            detail::put(report, k, v);
        };
        if (kerr.f_q_hz > 0.0) {
            kv("f_q_hz", kerr.f_q_hz);
            kv("f_r_hz", kerr.f_r_hz);
            kv("c_q_f", kerr.c_q_f);
            kv("c_r_f", kerr.c_r_f);
            kv("l_q_h", kerr.l_q_h);
            kv("l_r_h", kerr.l_r_h);
        }
        kv("chi_q_hz", kerr.chi_q_hz);
        kv("chi_r_hz", kerr.chi_r_hz);
        kv("chi_qr_hz", kerr.chi_qr_hz);
        kv("delta_qr_hz", kerr.delta_qr_hz);
        if (kerr.c_sigma_f > 0.0) {
            kv("c_sigma_f", kerr.c_sigma_f);
            kv("e_j_hz", kerr.e_j_hz);
        }
        kv("e_c_hz", kerr.e_c_hz);
        kv("g_hz", kerr.g_hz);
        ko << "convention=" << to_string(kerr.convention) << '\n';
        detail::put(report, "convention", to_string(kerr.convention));
        kv(conv == KerrConvention::FactorTwo ? "g_literal_b4_hz" : "g_factor2_hz", g_other);
    } else if (cfg.scenario == "j12-model") {
        const double omega = rv.require("omega_ghz") * 1e9;
        const double gamma = rv.require("gamma_mhz") * 1e6;
        const double g = rv.require("g_mhz") * 1e6;
        J12SweepSettings settings;
        settings.q2_window_hz = rv.num("q2_window_mhz", 40.0) * 1e6;
        settings.q2_step_hz = rv.num("q2_step_mhz", 0.5) * 1e6;
        const auto deltas = detail::delta_grid_hz(rv);
        std::vector<PlotSeries> series;
        for (QubitPlacement placement : detail::placements(rv)) {
            const J12Curve curve =
                detail::model_curve(placement, omega, gamma, g, deltas, settings);
            const std::string name = "j12_model_" + to_string(placement) + ".csv";
            detail::write_curve_csv(detail::out_file(out_dir, name, report), curve);
            detail::put(report, "max_j12_" + to_string(placement) + "_hz",
                        detail::curve_max(curve));
            if (plot) {
                PlotSeries s{to_string(placement),
                             placement == QubitPlacement::NN ? "#1f77b4" : "#d62728",
                             {},
                             {}};
                for (size_t i = 0; i < curve.detunings_hz.size(); ++i) {
                    s.x.push_back(curve.detunings_hz[i] / 1e6);
                    s.y.push_back(curve.couplings_hz[i] / 1e6);
                }
                series.push_back(std::move(s));
            }
        }
        if (plot) {
            write_svg_plot(detail::out_file(out_dir, "j12_model.svg", report),
                           "inter-qubit coupling (model)", "detuning (MHz)", "J12 (MHz)",
                           series);
        }
    } else if (cfg.scenario == "j12-oracle" || cfg.scenario == "compare") {
        const double omega = rv.require("omega_ghz") * 1e9;
        const double gamma = rv.require("gamma_mhz") * 1e6;
        const double g = rv.require("g_mhz") * 1e6;
        const double q = rv.require("q_ghz") * 1e9;
        const auto cp = detail::circuit_params(rv);
        CalibrationTargets targets;
        targets.omega_hz = omega;
        targets.gamma_hz = gamma;
        targets.g_hz = g;
        targets.q_hz = q;
        const CalibratedChain cal = calibrate_chain(targets, detail::calibration_options(cp));

        if (cfg.scenario == "j12-oracle" && rv.has("single_qubit_host")) {
            const int host = rv.integer("single_qubit_host", 2) - 1;
            OraclePipelineSettings s;
            s.freq_step_hz = rv.num("f_step_mhz", 1.0) * 1e6;
            s.threads = threads;
            const double q_span = rv.num("q_span_mhz", 150.0) * 1e6;
            const double q_step = rv.num("q_step_mhz", 2.0) * 1e6;
            const DarkScan scan = dark_state_scan(cal, host, q_span, q_step, s);
            CsvTable fan;
            fan.columns = {"lj_h", "frequency_hz"};
            for (const auto& [lj, zeros] : scan.fan) {
                for (double f : zeros.frequencies_hz) fan.rows.push_back({lj, f});
            }
            write_table_csv(detail::out_file(out_dir, "fan.csv", report), fan);
            for (size_t i = 0; i < scan.modes.size(); ++i) {
                const auto& m = scan.modes[i];
                detail::put(report, "mode_" + std::to_string(i + 1) + "_hz", m.mode_hz);
                detail::put(report, "mode_" + std::to_string(i + 1) + "_gap_hz", m.gap_hz);
                detail::put(report, "mode_" + std::to_string(i + 1) + "_dark",
                            std::string(m.dark ? "true" : "false"));
            }
        } else {
            OraclePipelineSettings s;
            s.freq_step_hz = rv.num("f_step_mhz", 1.0) * 1e6;
            s.window_half_hz = rv.num("window_half_mhz", 30.0) * 1e6;
            s.band_guard_hz = rv.num("band_guard_mhz", 10.0) * 1e6;
            s.q2_half_span_hz = rv.num("q2_half_span_mhz", 24.0) * 1e6;
            s.lj2_points = rv.integer("lj2_points", 41);
            s.participation_min = rv.num("participation_min", 0.45);
            s.threads = threads;
            J12SweepSettings model_settings;
            model_settings.q2_window_hz = rv.num("q2_window_mhz", 40.0) * 1e6;
            model_settings.q2_step_hz = rv.num("q2_step_mhz", 0.5) * 1e6;
            const auto deltas = detail::delta_grid_hz(rv);
            for (QubitPlacement placement : detail::placements(rv)) {
                J12Curve oracle;
                oracle.placement = placement;
                std::vector<std::array<double, 2>> skipped;
                int n_skipped = 0;
                for (double d : deltas) {
                    const OracleJ12Sweep sweep = oracle_j12_point(cal, placement, omega, d, s);
                    if (sweep.point.ok()) {
                        oracle.detunings_hz.push_back(d);
                        oracle.couplings_hz.push_back(sweep.point.j12_hz);
                    } else {
                        ++n_skipped;
                    }
                }
                const std::string tag = to_string(placement);
                if (cfg.scenario == "j12-oracle") {
                    detail::write_curve_csv(
                        detail::out_file(out_dir, "j12_oracle_" + tag + ".csv", report),
                        oracle);
                } else {
                    const J12Curve model = detail::model_curve(placement, omega, gamma, g,
                                                               deltas, model_settings);
                    detail::write_curve_csv(
                        detail::out_file(out_dir, "j12_model_" + tag + ".csv", report), model);
                    detail::write_curve_csv(
                        detail::out_file(out_dir, "j12_oracle_" + tag + ".csv", report),
                        oracle);
                    CsvTable cmp;
                    cmp.columns = {"delta_hz", "j12_model_hz", "j12_oracle_hz", "rel_diff"};
                    for (size_t i = 0; i < model.detunings_hz.size(); ++i) {
                        for (size_t k = 0; k < oracle.detunings_hz.size(); ++k) {
                            if (model.detunings_hz[i] == oracle.detunings_hz[k]) {
                                const double jm = model.couplings_hz[i];
                                const double jo = oracle.couplings_hz[k];
                                cmp.rows.push_back(
                                    {model.detunings_hz[i], jm, jo,
                                     jm != 0.0 ? (jo - jm) / jm : 0.0});
                            }
                        }
                    }
                    write_table_csv(
                        detail::out_file(out_dir, "compare_" + tag + ".csv", report), cmp);
                    const double max_model = detail::curve_max(model);
                    const double max_oracle = detail::curve_max(oracle);
                    detail::put(report, "max_j12_model_" + tag + "_hz", max_model);
                    detail::put(report, "max_j12_oracle_" + tag + "_hz", max_oracle);
                    detail::put(report, "max_rel_diff_" + tag,
                                max_model != 0.0 ? (max_oracle - max_model) / max_model : 0.0);
                }
                if (cfg.scenario == "j12-oracle") {
                    detail::put(report, "max_j12_" + tag + "_hz", detail::curve_max(oracle));
                }
                detail::put(report, "skipped_points_" + tag, static_cast<double>(n_skipped));
            }
        }
    } else if (cfg.scenario == "photon-field") {
        const PhotonFieldResult r = single_photon_field(rv.require("e_norm_v_per_m"),
                                                        rv.require("w_norm_j"),
                                                        rv.require("f_ghz") * 1e9);
        detail::put(report, "w_photon_j", r.w_photon_j);
        detail::put(report, "e_single_photon_v_per_m", r.e_single_photon_v_per_m);
    } else {
        throw ValidationError("scenario: unknown scenario '" + cfg.scenario + "'");
    }

    report.inputs = rv.trail();
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();

    std::ofstream rep((std::filesystem::path(out_dir) / "report.txt").string(),
                      std::ios::binary);
    rep << "scenario=" << report.scenario << '\n';
    rep << "version=" << k_version << '\n';
    for (const auto& [k, v] : report.inputs) rep << "input." << k << '=' << v << '\n';
    for (const auto& [k, v] : report.outputs) rep << "output." << k << '=' << v << '\n';
    for (const auto& f : report.files) rep << "file=" << f << '\n';
    rep << "wall_time_ms=" << format_double(report.wall_ms) << '\n';
    return report;
}

}  // namespace cavitychain
