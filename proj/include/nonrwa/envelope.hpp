#pragma once

#include <optional>
#include <utility>

#include "nonrwa/trigpoly.hpp"

namespace nonrwa {

// Pulse envelope with analytic derivatives of every order and an exact first
// antiderivative. Stores the normalized shape (peak 1 for the cosine kind);
// drive amplitudes live in PulseParams.
class Envelope {
  public:
    enum class Kind { cosine, modulated_product };

    // s(t) = (1 - cos(2 pi t / t_g)) / 2
    static Envelope cosine(double t_g, int max_derivative_order = 16);
    static Envelope from_poly(TrigPoly poly, double t_g, Kind kind,
                              int max_derivative_order = 16);

    // this(t) * cos(mod_freq t + mod_phase), as a product envelope
    Envelope modulated(double mod_freq, double mod_phase) const;

    // k-th derivative; throws std::domain_error for t outside [0, t_g] or
    // k outside [0, max_derivative_order]
    double derivative(double t, int k) const;
    double value(double t) const { return derivative(t, 0); }
    // int_0^t s(tau) dtau
    double antiderivative(double t) const;

    const TrigPoly& poly() const { return poly_; }
    Kind kind() const { return kind_; }
    double t_g() const { return t_g_; }
    int max_derivative_order() const { return max_order_; }

  private:
    Envelope(TrigPoly poly, double t_g, Kind kind, int max_order);
    TrigPoly poly_;
    TrigPoly anti_;
    double t_g_;
    Kind kind_;
    int max_order_;
};

// Commensurate/incommensurate decomposition of the carrier:
// omega_hat = pi * n_hat / t_g with n_hat = round(t_g omega_d / pi),
// omega_d = omega_hat + omega_tilde, phi_tilde = -omega_tilde t_g / 2,
// phi_hat = phi + omega_tilde t_g / 2.
struct CarrierSplit {
    int n_hat;
    double omega_hat;
    double omega_tilde;
    double phi_hat;
    double phi_tilde;
    double t_g;
};

CarrierSplit split_carrier(double omega_d, double t_g, double phi);

// Number of Magnus periods t_g / t_c = t_g omega_d / pi (real-valued; the
// integer count is its floor).
double magnus_period_ratio(double omega_d, double t_g);

// The pair {env(t) cos(2 omega_tilde t + 2 phi_tilde),
//           env(t) sin(2 omega_tilde t + 2 phi_tilde)} that absorbs the
// incommensurate carrier component into the envelopes.
std::pair<Envelope, Envelope> modulated_envelope(const Envelope& env,
                                                 const CarrierSplit& split);

// Optional rescale factor for the quadrature envelope when the drive
// frequency is time-modulated: (omega_ref) / (omega_ref - delta_t) with
// omega_ref = omega_01 - Delta and delta_t the accumulated lab-frame
// detuning at time t.
struct DetuningRescale {
    double omega_ref;
    double delta_t;
};

// lambda * d env/dt, optionally multiplied by the DetuningRescale factor.
// Throws SingularityError when the rescale denominator vanishes.
double quadrature_envelope(const Envelope& env, double lambda, double t,
                           std::optional<DetuningRescale> rescale = std::nullopt);

} // namespace nonrwa
