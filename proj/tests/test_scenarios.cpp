#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cavitychain/config.hpp"
#include "cavitychain/scenarios.hpp"

using namespace cavitychain;

namespace {

namespace fs = std::filesystem;

ExperimentConfig config_from(const std::string& body) {
    static int counter = 0;
    const auto path = fs::temp_directory_path() /
                      ("cavitychain_scn_" + std::to_string(++counter) + ".conf");
    std::ofstream out(path);
    out << body;
    out.close();
    const ExperimentConfig cfg = parse_config(path.string());
    REQUIRE(validate_config(cfg).empty());
    return cfg;
}

fs::path temp_out() {
    static int counter = 0;
    return fs::temp_directory_path() / ("cavitychain_out_" + std::to_string(++counter));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double output_value(const RunReport& r, const std::string& key) {
    for (const auto& [k, v] : r.outputs) {
        if (k == key) return std::stod(v);
    }
    FAIL("missing output " + key);
    return 0.0;
}

}  // namespace

TEST_CASE("extract-gamma inverts a symmetric pair") {
    const auto out = temp_out();
    const RunReport r = run_scenario(
        config_from("scenario = extract-gamma\nmodes_ghz = 5.975,6.025\n"), out.string(), 1,
        1, false);
    CHECK(output_value(r, "gamma_hz") == Catch::Approx(25e6));
    CHECK(output_value(r, "omega_hz") == Catch::Approx(6e9));
    CHECK(fs::exists(out / "report.txt"));
}

TEST_CASE("extract-gamma inverts a three-mode spectrum") {
    const auto out = temp_out();
    const RunReport r = run_scenario(
        config_from("scenario = extract-gamma\nmodes_ghz = 5.96464466,6.0,6.03535534\n"),
        out.string(), 1, 1, false);
    CHECK(output_value(r, "gamma_hz") == Catch::Approx(25e6).epsilon(1e-6));
    CHECK(output_value(r, "omega1_hz") == Catch::Approx(6e9));
}

TEST_CASE("photon-field scenario") {
    const auto out = temp_out();
    const RunReport r = run_scenario(
        config_from("scenario = photon-field\ne_norm_v_per_m = 1\nw_norm_j = 4e-18\n"
                    "f_ghz = 6\n"),
        out.string(), 1, 1, false);
    CHECK(output_value(r, "e_single_photon_v_per_m") == Catch::Approx(9.9695e-4).epsilon(1e-4));
}

TEST_CASE("bbq direct scenario reproduces the reported coupling") {
    const auto out = temp_out();
    const RunReport r = run_scenario(
        config_from("scenario = bbq\nmode = direct\nchi_q_mhz = -227\nchi_r_mhz = -0.134\n"
                    "delta_qr_mhz = 739\nec_mhz = 248\n"),
        out.string(), 1, 1, false);
    CHECK(output_value(r, "chi_qr_hz") == Catch::Approx(-11.03e6).epsilon(0.005));
    CHECK(output_value(r, "g_hz") == Catch::Approx(110e6).epsilon(0.01));
    CHECK(output_value(r, "g_literal_b4_hz") == Catch::Approx(155.86e6).epsilon(0.01));
    CHECK(fs::exists(out / "kerr_report.txt"));
}

TEST_CASE("eigen scenario on the model side writes modes and vectors") {
    const auto out = temp_out();
    const RunReport r = run_scenario(
        config_from("scenario = eigen\nsource = model\nintrinsic_ghz = 6,6,6\n"
                    "couplings_mhz = 25,25\n"),
        out.string(), 1, 1, false);
    CHECK(output_value(r, "mode_count") == 3.0);
    CHECK(fs::exists(out / "eigenfrequencies.csv"));
    CHECK(fs::exists(out / "eigenvectors.csv"));
}

TEST_CASE("spectrum scenario emits the fixed trace columns") {
    const auto out = temp_out();
    run_scenario(config_from("scenario = spectrum\ntrace = admittance\ncavities = 1\n"
                             "omega_ghz = 6\nq_ghz = 6.368\ng_mhz = 110\nlj_nh = 8\n"
                             "f_start_ghz = 5.0\nf_stop_ghz = 7.0\nf_step_mhz = 1\n"),
                 out.string(), 2, 1, false);
    std::ifstream in(out / "trace.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "frequency_hz,re,im");
}

TEST_CASE("fit-alpha synthetic run is deterministic under a fixed seed") {
    const std::string body =
        "scenario = fit-alpha\nalpha_khz_mm4 = 11.7\ndiameters_mm = 3,4,5,6,7,8\n"
        "noise_pct = 2\nsource_tag = h1\n";
    const auto out1 = temp_out(), out2 = temp_out();
    const RunReport r1 = run_scenario(config_from(body), out1.string(), 1, 42, false);
    const RunReport r2 = run_scenario(config_from(body), out2.string(), 1, 42, false);
    CHECK(slurp(out1 / "points.csv") == slurp(out2 / "points.csv"));
    CHECK(slurp(out1 / "coupler_law.txt") == slurp(out2 / "coupler_law.txt"));
    CHECK(output_value(r1, "alpha_hz_per_mm4") == output_value(r2, "alpha_hz_per_mm4"));
    CHECK(std::abs(output_value(r1, "alpha_hz_per_mm4") - 11.7e3) <= 0.03 * 11.7e3);

    SECTION("different seeds move the noisy fit") {
        const auto out3 = temp_out();
        const RunReport r3 = run_scenario(config_from(body), out3.string(), 1, 43, false);
        CHECK(output_value(r1, "alpha_hz_per_mm4") != output_value(r3, "alpha_hz_per_mm4"));
    }
}

TEST_CASE("fit-g synthetic scenario recovers the injected coupling") {
    const auto out = temp_out();
    const RunReport r = run_scenario(
        config_from("scenario = fit-g\nmode = synthetic\nomega_ghz = 5.642\ng_mhz = 110\n"
                    "c_sigma_ff = 78\n"),
        out.string(), 1, 7, false);
    CHECK(output_value(r, "g_fit_hz") == Catch::Approx(110e6).epsilon(1e-9));
    CHECK(output_value(r, "half_min_gap_hz") == Catch::Approx(110e6).epsilon(1e-3));
    std::ifstream in(out / "branches.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "lj_h,branch_low_hz,branch_high_hz");
}

TEST_CASE("j12-model scenario and the compare model column agree bit-exactly") {
    const std::string grid =
        "omega_ghz = 5.642\ngamma_mhz = 25\ng_mhz = 110\nconfiguration = nn\n"
        "delta_min_mhz = 150\ndelta_max_mhz = 250\ndelta_step_mhz = 50\n"
        "include_negative = false\n";
    const auto out_model = temp_out(), out_cmp = temp_out();
    run_scenario(config_from("scenario = j12-model\n" + grid), out_model.string(), 1, 1,
                 false);
    run_scenario(config_from("scenario = compare\nq_ghz = 6.368\n" + grid),
                 out_cmp.string(), 2, 1, false);
    CHECK(slurp(out_model / "j12_model_nn.csv") == slurp(out_cmp / "j12_model_nn.csv"));

    SECTION("deterministic re-run is byte-identical") {
        const auto out_again = temp_out();
        run_scenario(config_from("scenario = j12-model\n" + grid), out_again.string(), 4, 1,
                     false);
        CHECK(slurp(out_model / "j12_model_nn.csv") == slurp(out_again / "j12_model_nn.csv"));
    }
}

TEST_CASE("dark-state oracle run succeeds with the middle-cavity qubit") {
    const auto out = temp_out();
    const RunReport r = run_scenario(
        config_from("scenario = j12-oracle\nomega_ghz = 5.642\ngamma_mhz = 25\n"
                    "g_mhz = 110\nq_ghz = 6.368\nsingle_qubit_host = 2\n"
                    "q_span_mhz = 120\nq_step_mhz = 4\n"),
        out.string(), 4, 1, false);
    CHECK(fs::exists(out / "fan.csv"));
    std::map<std::string, std::string> outputs(r.outputs.begin(), r.outputs.end());
    CHECK(outputs.at("mode_2_dark") == "true");
    CHECK(std::stod(outputs.at("mode_2_gap_hz")) < 4e3);
    CHECK(outputs.at("mode_1_dark") == "false");
    CHECK(outputs.at("mode_3_dark") == "false");
    CHECK(std::stod(outputs.at("mode_1_gap_hz")) > 10e6);
    CHECK(std::stod(outputs.at("mode_3_gap_hz")) > 10e6);
}
