#pragma once

#include "nonrwa/envelope.hpp"
#include "nonrwa/trigpoly.hpp"

namespace nonrwa {

// chi_+(k) = 1 for even k, chi_-(k) = 1 for odd k
int chi_plus(int k);
int chi_minus(int k);

// gamma_1(k,beta) = (-1)^floor(k/2)   (chi_+ sin(beta) + chi_- cos(beta))
// gamma_2(k,beta) = (-1)^floor((k+1)/2) (chi_+ cos(beta) + chi_- sin(beta))
double gamma1(int k, double beta);
double gamma2(int k, double beta);

// Integration window spanning a whole number of Magnus periods t_c = pi/omega_d,
// carrying the boundary carrier phase beta = 2 omega_d t_0 + 2 phi.
struct IntegrationWindow {
    double b_minus;
    double b_plus;
    double beta;
    double t_0;

    // [t_0, t_0 + periods * pi/omega_d] with beta = 2 omega_d t_0 + 2 phi
    static IntegrationWindow magnus(double omega_d, double phi, double t_0, int periods);
};

// throws std::domain_error unless b_minus < b_plus and the window spans a
// whole number of Magnus periods of omega_d
void validate_window(const IntegrationWindow& w, double omega_d);

inline constexpr int kDefaultTruncation = 14;

enum class TaylorKind { cos, sin };

// I_C(k) / I_S(k): int_{b-}^{b+} (t1 - t)^k / k! * {cos,sin}(2 omega_d t1 + 2 phi) dt1
// expanded around t (finite sum over k' = k..0). The carrier phase enters
// through w.beta.
double taylor_integral(TaylorKind kind, double omega_d, const IntegrationWindow& w, int k,
                       double t_expand);

// Boundary-difference series for single oscillatory integrals over whole
// Magnus periods of the carrier cos/sin(2 omega_d t + 2 phi):
//   int h(t) cos(..) dt =  sum_k (1/2wd)^{k+1} gamma_1(k,beta) [h^(k)]
//   int h(t) sin(..) dt = -sum_k (1/2wd)^{k+1} gamma_2(k,beta) [h^(k)]
// Throws ConvergenceError when terms grow for three consecutive same-parity
// orders.
double osc_integral_cos(const TrigPoly& h, double omega_d, const IntegrationWindow& w, int K);
double osc_integral_sin(const TrigPoly& h, double omega_d, const IntegrationWindow& w, int K);

struct Magnus0Params {
    double lambda;      // ns
    double drive_scale; // Omega_I / Omega_I,RWA
    int truncation;
    bool algebraic;
};

// Truncated-series PPP of the zeroth-order Magnus correction. Degenerate
// windows (numerator and denominator both vanish, e.g. full commensurate
// gates or symmetric windows with sin(beta) = 0) return the algebraic value
// 1/(2 omega_d), which solves the underlying requirement on any interval.
double magnus0_lambda(const Envelope& s, double omega_d, const IntegrationWindow& w,
                      int K = kDefaultTruncation);

// Truncated-series Omega_I / Omega_I,RWA at the given lambda.
double magnus0_drive_scale(const Envelope& s, double omega_d, double lambda,
                           const IntegrationWindow& w, int K = kDefaultTruncation);

// algebraic zeroth-order solution: lambda = 1/(2 omega_d), drive_scale = 1
Magnus0Params magnus0_algebraic(double omega_d);

// Omega_I,RWA for a rotation by `angle`: Omega * int_0^{t_g} s = angle
double rwa_drive_strength(double angle, const Envelope& s, double t_g);

} // namespace nonrwa
