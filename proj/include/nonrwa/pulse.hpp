#pragma once

#include <array>
#include <stdexcept>

namespace nonrwa {

// Full pulse description. Angular frequencies in rad/ns, times in ns.
// omega_I is the in-phase drive strength, lambda the PPP scaling the
// quadrature envelope, delta the static detuning (drive frequency is
// omega_01 - delta), omega_delta/epsilon the four-level rescalings of the
// time-dependent detuning correction and the drive amplitude, theta the
// rotation axis in the XY plane, phi the carrier phase at gate start.
struct PulseParams {
    double omega_I = 0.0;     // rad/ns
    double lambda = 0.0;      // ns
    double delta = 0.0;       // rad/ns
    double omega_delta = 0.0; // dimensionless
    double epsilon = 1.0;     // dimensionless
    double theta = 0.0;       // rad
    double phi = 0.0;         // rad
    double t_g = 0.0;         // ns
    double angle = 0.0;       // rad, target rotation

    void validate() const {
        if (t_g <= 0.0) throw std::domain_error("PulseParams: t_g must be positive");
        if (omega_I < 0.0) throw std::domain_error("PulseParams: omega_I must be >= 0");
        if (epsilon <= 0.0) throw std::domain_error("PulseParams: epsilon must be positive");
    }
};

// Level energies (ground-referenced), relative drive strengths and
// anharmonicities for a 2- or 4-level system. eta indices follow the driven
// transitions {01, 12, 23, 03}; eta_01 = 1 by normalization.
struct LevelSystem {
    int dimension = 2;
    std::array<double, 4> omega0 = {0.0, 0.0, 0.0, 0.0}; // rad/ns, omega0[0] = 0
    double eta12 = 0.0;
    double eta23 = 0.0;
    double eta03 = 0.0;

    double omega01() const { return omega0[1]; }
    double alpha(int j) const { return omega0[j] - j * omega0[1]; } // j in {2,3}

    static LevelSystem two_level(double omega01) {
        LevelSystem s;
        s.dimension = 2;
        s.omega0 = {0.0, omega01, 0.0, 0.0};
        return s;
    }

    static LevelSystem four_level(std::array<double, 4> omega0, double eta12, double eta23,
                                  double eta03) {
        LevelSystem s;
        s.dimension = 4;
        s.omega0 = omega0;
        s.eta12 = eta12;
        s.eta23 = eta23;
        s.eta03 = eta03;
        return s;
    }
};

} // namespace nonrwa
