#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cavitychain/branches.hpp"
#include "cavitychain/closed_form.hpp"
#include "cavitychain/constants.hpp"

using namespace cavitychain;

namespace {

// synthetic avoided-crossing detections from the two-level closed form
std::vector<std::pair<double, ResonanceSet>> synthetic_sweep(double omega, double g,
                                                             double c_sigma, double lj_min,
                                                             double lj_max, double lj_step) {
    std::vector<std::pair<double, ResonanceSet>> sweep;
    for (double lj = lj_min; lj <= lj_max + 0.5 * lj_step; lj += lj_step) {
        const double q = 1.0 / (2.0 * k_pi * std::sqrt(c_sigma * lj));
        const TwoLevelModes m = two_level_modes(omega, q, g);
        ResonanceSet rs;
        rs.frequencies_hz = {m.lower_hz, m.upper_hz};
        sweep.push_back({lj, rs});
    }
    return sweep;
}

}  // namespace

TEST_CASE("synthetic branches reassemble exactly") {
    const double omega = 5.642e9, g = 110e6, cs = 78e-15;
    const auto sweep = synthetic_sweep(omega, g, cs, 6e-9, 14e-9, 0.1e-9);
    const AvoidedCrossing ac = assemble_branches(sweep, {4.5e9, 7.5e9});
    REQUIRE(ac.sweep_values.size() == sweep.size());
    for (size_t i = 0; i < sweep.size(); ++i) {
        REQUIRE(ac.branch_low[i].has_value());
        REQUIRE(ac.branch_high[i].has_value());
        CHECK(*ac.branch_low[i] == sweep[i].second.frequencies_hz[0]);
        CHECK(*ac.branch_high[i] == sweep[i].second.frequencies_hz[1]);
    }
    SECTION("resonant minimum gap recovers g") {
        const MinGapResult mg = min_gap(ac);
        CHECK(mg.half_gap_hz == Catch::Approx(g).epsilon(1e-4));
    }
}

TEST_CASE("crossing branches of a decoupled pair reach zero gap") {
    const auto sweep = synthetic_sweep(5.642e9, 0.0, 78e-15, 6e-9, 14e-9, 0.05e-9);
    const AvoidedCrossing ac = assemble_branches(sweep, {4.5e9, 7.5e9});
    const MinGapResult mg = min_gap(ac);
    CHECK(mg.half_gap_hz < 50e3);
}

TEST_CASE("parallel branches return half the constant separation") {
    std::vector<std::pair<double, ResonanceSet>> sweep;
    for (int i = 0; i < 9; ++i) {
        const double lj = 6e-9 + i * 1e-9;
        ResonanceSet rs;
        rs.frequencies_hz = {5.0e9, 5.0e9 + 2 * 7e6};
        sweep.push_back({lj, rs});
    }
    const AvoidedCrossing ac = assemble_branches(sweep, {4.9e9, 5.1e9});
    const MinGapResult mg = min_gap(ac);
    CHECK(mg.half_gap_hz == Catch::Approx(7e6).epsilon(1e-12));
}

TEST_CASE("gap invariance under uniform frequency translation") {
    const auto sweep = synthetic_sweep(5.642e9, 110e6, 78e-15, 7e-9, 13e-9, 0.1e-9);
    const AvoidedCrossing base = assemble_branches(sweep, {4.5e9, 7.5e9});
    auto shifted_sweep = sweep;
    const double shift = 0.42e9;
    for (auto& [lj, rs] : shifted_sweep) {
        for (auto& f : rs.frequencies_hz) f += shift;
    }
    const AvoidedCrossing shifted =
        assemble_branches(shifted_sweep, {4.5e9 + shift, 7.5e9 + shift});
    CHECK(min_gap(base).half_gap_hz ==
          Catch::Approx(min_gap(shifted).half_gap_hz).epsilon(1e-9));
}

TEST_CASE("dark detections leave gaps instead of fabricated points") {
    auto sweep = synthetic_sweep(5.642e9, 110e6, 78e-15, 6e-9, 14e-9, 0.2e-9);
    // the lower branch goes dark over a stretch of the sweep
    for (size_t i = 10; i < 16 && i < sweep.size(); ++i) {
        sweep[i].second.frequencies_hz.erase(sweep[i].second.frequencies_hz.begin());
    }
    const AvoidedCrossing ac = assemble_branches(sweep, {4.5e9, 7.5e9});
    int gaps = 0;
    for (size_t i = 10; i < 16 && i < sweep.size(); ++i) {
        if (!ac.branch_low[i]) ++gaps;
        CHECK(ac.branch_high[i].has_value());
    }
    CHECK(gaps == 6);
    CHECK_NOTHROW(min_gap(ac));
}

TEST_CASE("implausible jumps open gaps under the median-motion rule") {
    auto sweep = synthetic_sweep(5.642e9, 110e6, 78e-15, 6e-9, 14e-9, 0.2e-9);
    // an isolated far-off spurious detection replaces both branch points
    sweep[20].second.frequencies_hz = {6.9e9};
    const AvoidedCrossing ac = assemble_branches(sweep, {4.5e9, 7.5e9});
    CHECK(!ac.branch_low[20].has_value());
    CHECK(!ac.branch_high[20].has_value());
}

TEST_CASE("persistently crowded windows are ambiguous") {
    std::vector<std::pair<double, ResonanceSet>> sweep;
    for (int i = 0; i < 8; ++i) {
        ResonanceSet rs;
        rs.frequencies_hz = {5.0e9, 5.1e9, 5.2e9};
        sweep.push_back({6e-9 + i * 1e-9, rs});
    }
    CHECK_THROWS_AS(assemble_branches(sweep, {4.9e9, 5.3e9}), AmbiguousWindowError);
}

TEST_CASE("input preconditions") {
    std::vector<std::pair<double, ResonanceSet>> tiny(3);
    for (int i = 0; i < 3; ++i) tiny[i].first = 6e-9 + i * 1e-9;
    CHECK_THROWS_AS(assemble_branches(tiny, {1e9, 2e9}), InsufficientDataError);

    AvoidedCrossing sparse;
    sparse.sweep_values = {1e-9, 2e-9, 3e-9};
    sparse.branch_low = {5e9, std::nullopt, std::nullopt};
    sparse.branch_high = {5.1e9, 5.1e9, std::nullopt};
    CHECK_THROWS_AS(min_gap(sparse), InsufficientDataError);
}
