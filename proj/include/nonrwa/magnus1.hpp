#pragma once

#include <vector>

#include "nonrwa/envelope.hpp"
#include "nonrwa/pulse.hpp"
#include "nonrwa/series.hpp"

namespace nonrwa {

// The eight double-integral closed forms over a whole-Magnus-period window
// (carrier cos/sin(2 omega_d t + 2 phi), beta = w.beta at the window start):
//   a: int f(t1)          int^{t1} g(t2) sin   b: int f(t1)          int^{t1} g(t2) cos
//   c: int g(t1) sin      int^{t1} f(t2)       d: int g(t1) cos      int^{t1} f(t2)
//   e: int f(t1) sin      int^{t1} g(t2) sin   f: int f(t1) sin      int^{t1} g(t2) cos
//   g: int f(t1) cos      int^{t1} g(t2) sin   h: int f(t1) cos      int^{t1} g(t2) cos
// Argument roles follow the catalog: for c/d, f is the plainly-integrated
// function (needs its first antiderivative), g the oscillating one.
enum class DoubleIntegralKind { a, b, c, d, e, f, g, h };

double double_integral(DoubleIntegralKind kind, const TrigPoly& f, const TrigPoly& g,
                       double omega_d, const IntegrationWindow& w, int K = kDefaultTruncation);

// zeta_1(b-, b+) = (Delta/2) int dt1 int^{t1} dt2 (E(t1) - E(t2))
//                = (Delta/2) int (2t - b- - b+) E(t) dt
// (vanishes over the full gate for envelopes symmetric about t_g/2).
double zeta1(const Envelope& env, double delta, double b_minus, double b_plus);

struct PauliCoeffs {
    double x = 0.0, y = 0.0, z = 0.0;
};

struct MagnusAverages {
    PauliCoeffs h0; // zeroth-order average Hamiltonian components
    PauliCoeffs h1; // first-order (commutator) components
};

enum class AveragesRoute { series, direct };

// Zeroth- plus first-order average-Hamiltonian components of the two-level
// non-RWA Hamiltonian over the full gate [0, t_g], with the incommensurate
// carrier part absorbed into the envelopes (series route) or by exact
// trig-polynomial integration (direct route).
MagnusAverages magnus_averages(const PulseParams& p, double omega01, AveragesRoute route,
                               int K = kDefaultTruncation);

struct FirstOrderParams {
    double omega_I; // rad/ns
    double lambda;  // ns
    double delta;   // rad/ns
    int truncation;
    int phase_grid_size;
    int iterations_used;
};

struct FixedPointOptions {
    int truncation = kDefaultTruncation;
    double tol = 1e-10;
    int max_iter = 200;
};

// Phase-averaged first-order pulse parameters: per carrier phase, solve the
// coupled (Omega_I, lambda, Delta) requirements by fixed-point iteration,
// then average over the grid. Requires N_c > 3 at resonance.
FirstOrderParams first_order_params(double omega01, double angle, double t_g,
                                    const std::vector<double>& phi_grid,
                                    const FixedPointOptions& opt = {});

std::vector<double> default_phase_grid(int n = 12); // n phases uniform in [0, pi)

} // namespace nonrwa
