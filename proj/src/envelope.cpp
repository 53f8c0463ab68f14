#include "nonrwa/envelope.hpp"

#include <cmath>
#include <stdexcept>

#include "nonrwa/errors.hpp"

namespace nonrwa {

Envelope::Envelope(TrigPoly poly, double t_g, Kind kind, int max_order)
    : poly_(std::move(poly)), anti_(poly_.antiderived()), t_g_(t_g), kind_(kind),
      max_order_(max_order) {}

Envelope Envelope::cosine(double t_g, int max_derivative_order) {
    if (t_g <= 0.0) throw std::domain_error("Envelope: t_g must be positive");
    TrigPoly p = TrigPoly::constant(0.5) + TrigPoly::harmonic(-0.5, 2.0 * M_PI / t_g, 0.0);
    return Envelope(std::move(p), t_g, Kind::cosine, max_derivative_order);
}

Envelope Envelope::from_poly(TrigPoly poly, double t_g, Kind kind, int max_derivative_order) {
    return Envelope(std::move(poly), t_g, kind, max_derivative_order);
}

Envelope Envelope::modulated(double mod_freq, double mod_phase) const {
    TrigPoly carrier = TrigPoly::harmonic(1.0, mod_freq, mod_phase);
    return Envelope(poly_ * carrier, t_g_, Kind::modulated_product, max_order_);
}

double Envelope::derivative(double t, int k) const {
    if (t < -1e-12 || t > t_g_ * (1.0 + 1e-12))
        throw std::domain_error("Envelope::derivative: t outside [0, t_g]");
    if (k < 0 || k > max_order_)
        throw std::domain_error("Envelope::derivative: order outside [0, max_derivative_order]");
    return poly_.derivative(t, k);
}

double Envelope::antiderivative(double t) const {
    if (t < -1e-12 || t > t_g_ * (1.0 + 1e-12))
        throw std::domain_error("Envelope::antiderivative: t outside [0, t_g]");
    return anti_.value(t);
}

CarrierSplit split_carrier(double omega_d, double t_g, double phi) {
    if (omega_d <= 0.0 || t_g <= 0.0)
        throw std::domain_error("split_carrier: omega_d and t_g must be positive");
    int n_hat = static_cast<int>(std::llround(t_g * omega_d / M_PI));
    double omega_hat = M_PI * n_hat / t_g;
    double omega_tilde = omega_d - omega_hat;
    return CarrierSplit{n_hat, omega_hat, omega_tilde, phi + omega_tilde * t_g / 2.0,
                        -omega_tilde * t_g / 2.0, t_g};
}

double magnus_period_ratio(double omega_d, double t_g) { return t_g * omega_d / M_PI; }

std::pair<Envelope, Envelope> modulated_envelope(const Envelope& env, const CarrierSplit& split) {
    double f = 2.0 * split.omega_tilde;
    double p = 2.0 * split.phi_tilde;
    return {env.modulated(f, p), env.modulated(f, p - M_PI / 2.0)};
}

double quadrature_envelope(const Envelope& env, double lambda, double t,
                           std::optional<DetuningRescale> rescale) {
    double v = lambda * env.derivative(t, 1);
    if (rescale) {
        double den = rescale->omega_ref - rescale->delta_t;
        if (std::abs(den) <= 1e-12 * std::abs(rescale->omega_ref))
            throw SingularityError("quadrature_envelope: vanishing drive-frequency denominator");
        v *= rescale->omega_ref / den;
    }
    return v;
}

} // namespace nonrwa
