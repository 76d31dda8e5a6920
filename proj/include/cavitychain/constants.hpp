#pragma once

namespace cavitychain {

// SI-2019 exact values.
inline constexpr double k_elementary_charge = 1.602176634e-19;  // C
inline constexpr double k_planck = 6.62607015e-34;              // J s
inline constexpr double k_pi = 3.14159265358979323846;
inline constexpr double k_hbar = k_planck / (2.0 * k_pi);
// Reduced flux quantum hbar/(2e), in Wb.
inline constexpr double k_phi0_reduced = k_hbar / (2.0 * k_elementary_charge);

}  // namespace cavitychain
