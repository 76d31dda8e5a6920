#pragma once

#include <cmath>

#include "cavitychain/constants.hpp"
#include "cavitychain/errors.hpp"

namespace cavitychain {

struct PhotonFieldResult {
    double e_norm_v_per_m;
    double w_norm_j;
    double f_hz;
    double w_photon_j;
    double e_single_photon_v_per_m;
};

// Rescale a normalized eigenmode field to the single-photon level using
// E proportional to sqrt(W), with W_ph = h f.
inline PhotonFieldResult single_photon_field(double e_norm_v_per_m, double w_norm_j,
                                             double f_hz) {
    if (!(e_norm_v_per_m > 0.0) || !(w_norm_j > 0.0) || !(f_hz > 0.0)) {
        throw Error("single_photon_field needs positive inputs");
    }
    PhotonFieldResult r;
    r.e_norm_v_per_m = e_norm_v_per_m;
    r.w_norm_j = w_norm_j;
    r.f_hz = f_hz;
    r.w_photon_j = k_planck * f_hz;
    r.e_single_photon_v_per_m = e_norm_v_per_m * std::sqrt(r.w_photon_j / w_norm_j);
    return r;
}

}  // namespace cavitychain
