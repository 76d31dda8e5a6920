#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cavitychain/constants.hpp"
#include "cavitychain/coupler_law.hpp"
#include "cavitychain/photon_field.hpp"

using namespace cavitychain;

namespace {

std::vector<CouplerPoint> exact_points(double alpha, const std::vector<double>& ds) {
    std::vector<CouplerPoint> pts;
    for (double d : ds) pts.push_back({d, alpha * d * d * d * d});
    return pts;
}

}  // namespace

TEST_CASE("exact-law data recovers both reported coefficients") {
    for (double alpha : {11.7e3, 6.6e3}) {
        const CouplerLaw law = fit_alpha(exact_points(alpha, {3, 4, 5, 6, 7, 8}));
        CHECK(law.alpha_hz_per_mm4 == Catch::Approx(alpha).epsilon(1e-12));
        CHECK(law.residual_rms_hz == Catch::Approx(0.0).margin(1e-6));
    }
}

TEST_CASE("multiplicative noise at two percent keeps alpha within three") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> jitter(-0.02, 0.02);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = exact_points(6.6e3, {3, 4, 5, 6, 7, 8});
        for (auto& p : pts) p.gamma_hz *= 1.0 + jitter(rng);
        const CouplerLaw law = fit_alpha(pts);
        CHECK(std::abs(law.alpha_hz_per_mm4 - 6.6e3) <= 0.03 * 6.6e3);
    }
}

TEST_CASE("a single point is an exact ratio") {
    const CouplerLaw law = fit_alpha({{6.0, 15.163e6}});
    CHECK(law.alpha_hz_per_mm4 == Catch::Approx(11.7e3).epsilon(1e-3));
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(fit_alpha({}), DegenerateFitError);
    CHECK_THROWS_AS(fit_alpha({{6.0, 1e6}, {6.0, 1.1e6}}), DegenerateFitError);
    CHECK_THROWS_AS(fit_alpha({{-1.0, 1e6}}), DegenerateFitError);
}

TEST_CASE("evaluating the law") {
    const CouplerLaw h1{11.7e3, 0.0, "h1"};
    const CouplerLaw h2{6.6e3, 0.0, "h2"};
    CHECK(gamma_of_d(h1, 0.0) == 0.0);
    CHECK(gamma_of_d(h1, 6.0) == Catch::Approx(15.1632e6).epsilon(1e-12));
    CHECK(gamma_of_d(h2, 8.0) == Catch::Approx(27.0336e6).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_of_d(h1, -1.0), DegenerateFitError);
}

TEST_CASE("fit and evaluation round trip for random coefficients") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coeff(1e3, 50e3);
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha = coeff(rng);
        CouplerLaw law{alpha, 0.0, "user"};
        std::vector<CouplerPoint> pts;
        for (double d : {2.0, 5.0, 9.0}) pts.push_back({d, gamma_of_d(law, d)});
        const CouplerLaw back = fit_alpha(pts);
        CHECK(back.alpha_hz_per_mm4 == Catch::Approx(alpha).epsilon(1e-12));
    }
}

TEST_CASE("free-exponent diagnostic confirms the quartic") {
    const PowerLawFit fit = fit_power_law(exact_points(11.7e3, {3, 4, 5, 6, 7, 8}));
    CHECK(fit.exponent == Catch::Approx(4.0).epsilon(1e-9));
    CHECK(fit.coefficient_hz == Catch::Approx(11.7e3).epsilon(1e-9));
    CHECK_THROWS_AS(fit_power_law({{6.0, 1e6}}), DegenerateFitError);
}

TEST_CASE("single photon field rescaling") {
    SECTION("reported order of magnitude at the fundamental") {
        const PhotonFieldResult r = single_photon_field(1.0, 4e-18, 6e9);
        CHECK(r.w_photon_j == Catch::Approx(k_planck * 6e9));
        CHECK(r.e_single_photon_v_per_m == Catch::Approx(9.9695e-4).epsilon(1e-4));
    }
    SECTION("identity when the stored energy is one photon") {
        const double wph = k_planck * 6e9;
        const PhotonFieldResult r = single_photon_field(2.5, wph, 6e9);
        CHECK(r.e_single_photon_v_per_m == Catch::Approx(2.5).epsilon(1e-12));
    }
    SECTION("square-root scaling in the stored energy") {
        const PhotonFieldResult base = single_photon_field(1.0, 1e-18, 6e9);
        const PhotonFieldResult quad = single_photon_field(1.0, 4e-18, 6e9);
        CHECK(quad.e_single_photon_v_per_m ==
              Catch::Approx(0.5 * base.e_single_photon_v_per_m).epsilon(1e-12));
    }
    SECTION("linear scaling in the field and random-input property") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.1, 10.0);
        for (int i = 0; i < 50; ++i) {
            const double e = u(rng), w = u(rng) * 1e-18, f = u(rng) * 1e9;
            const PhotonFieldResult a = single_photon_field(e, w, f);
            const PhotonFieldResult b = single_photon_field(2.0 * e, w, f);
            CHECK(b.e_single_photon_v_per_m ==
                  Catch::Approx(2.0 * a.e_single_photon_v_per_m).epsilon(1e-12));
        }
    }
    SECTION("nonpositive inputs are rejected") {
        CHECK_THROWS_AS(single_photon_field(0.0, 1e-18, 6e9), Error);
        CHECK_THROWS_AS(single_photon_field(1.0, 0.0, 6e9), Error);
        CHECK_THROWS_AS(single_photon_field(1.0, 1e-18, 0.0), Error);
    }
}
