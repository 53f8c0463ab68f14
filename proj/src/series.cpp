#include "nonrwa/series.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nonrwa/errors.hpp"

namespace nonrwa {

int chi_plus(int k) { return (k % 2 == 0) ? 1 : 0; }
int chi_minus(int k) { return (k % 2 == 0) ? 0 : 1; }

namespace {
inline double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }
} // namespace

double gamma1(int k, double beta) {
    return parity_sign(k / 2) * (chi_plus(k) * std::sin(beta) + chi_minus(k) * std::cos(beta));
}

double gamma2(int k, double beta) {
    return parity_sign((k + 1) / 2) * (chi_plus(k) * std::cos(beta) + chi_minus(k) * std::sin(beta));
}

IntegrationWindow IntegrationWindow::magnus(double omega_d, double phi, double t_0, int periods) {
    if (periods < 1) throw std::domain_error("IntegrationWindow: need at least one Magnus period");
    double tc = M_PI / omega_d;
    return IntegrationWindow{t_0, t_0 + periods * tc, 2.0 * omega_d * t_0 + 2.0 * phi, t_0};
}

void validate_window(const IntegrationWindow& w, double omega_d) {
    if (!(w.b_minus < w.b_plus))
        throw std::domain_error("IntegrationWindow: b_minus must be < b_plus");
    double periods = (w.b_plus - w.b_minus) * omega_d / M_PI;
    if (std::abs(periods - std::round(periods)) > 1e-9 * std::max(1.0, periods))
        throw std::domain_error("IntegrationWindow: bounds must span whole Magnus periods");
}

namespace {

// Watches the magnitude sequence of same-parity series terms; the expansion
// parameter is (t_c/t_g)^k so genuine divergence shows as sustained growth.
class SeriesGuard {
  public:
    void feed(int k, double mag) {
        int p = k % 2;
        if (last_[p] >= 0.0 && mag > last_[p] * (1.0 + 1e-12)) {
            if (++grow_[p] >= 3)
                throw ConvergenceError("series terms growing: window spans too few Magnus periods");
        } else {
            grow_[p] = 0;
        }
        if (mag > 0.0) last_[p] = mag;
    }

  private:
    double last_[2] = {-1.0, -1.0};
    int grow_[2] = {0, 0};
};

} // namespace

double taylor_integral(TaylorKind kind, double omega_d, const IntegrationWindow& w, int k,
                       double t_expand) {
    validate_window(w, omega_d);
    if (k < 0) throw std::domain_error("taylor_integral: k must be >= 0");
    double p = 1.0 / (2.0 * omega_d);
    auto poly_boundary = [&](int kp) {
        // [(t1 - t)^{k'} / k'!]_{b-}^{b+}
        double num = 1.0, den = 1.0, num2 = 1.0;
        for (int i = 1; i <= kp; ++i) {
            num *= (w.b_plus - t_expand);
            num2 *= (w.b_minus - t_expand);
            den *= i;
        }
        return (num - num2) / den;
    };
    double acc = 0.0;
    double pw = p;
    for (int d = 0; d <= k; ++d) { // d = k - k'
        int kp = k - d;
        double g = (kind == TaylorKind::cos) ? gamma1(d, w.beta) : gamma2(d, w.beta);
        acc += pw * g * poly_boundary(kp);
        pw *= p;
    }
    return (kind == TaylorKind::cos) ? acc : -acc;
}

namespace {

double osc_integral(const TrigPoly& h, double omega_d, const IntegrationWindow& w, int K,
                    bool cosine) {
    validate_window(w, omega_d);
    double p = 1.0 / (2.0 * omega_d);
    double pw = p;
    double acc = 0.0;
    SeriesGuard guard;
    TrigPoly d = h;
    for (int k = 0; k <= K; ++k) {
        double diff = d.value(w.b_plus) - d.value(w.b_minus);
        double g = cosine ? gamma1(k, w.beta) : gamma2(k, w.beta);
        double term = pw * g * diff;
        guard.feed(k, std::abs(pw * diff));
        acc += term;
        pw *= p;
        if (k < K) d = d.derived();
    }
    return cosine ? acc : -acc;
}

} // namespace

double osc_integral_cos(const TrigPoly& h, double omega_d, const IntegrationWindow& w, int K) {
    return osc_integral(h, omega_d, w, K, true);
}

double osc_integral_sin(const TrigPoly& h, double omega_d, const IntegrationWindow& w, int K) {
    return osc_integral(h, omega_d, w, K, false);
}

double magnus0_lambda(const Envelope& s, double omega_d, const IntegrationWindow& w, int K) {
    validate_window(w, omega_d);
    double p = 1.0 / (2.0 * omega_d);
    std::vector<double> diff(K + 2);
    TrigPoly d = s.poly();
    for (int k = 0; k <= K + 1; ++k) {
        diff[k] = d.value(w.b_plus) - d.value(w.b_minus);
        d = d.derived();
    }
    SeriesGuard ng, dg;
    double num = 0.0, den = diff[0];
    double scale = std::abs(diff[0]);
    double pw = p;
    for (int k = 0; k <= K; ++k) {
        double nterm = pw * gamma2(k, w.beta) * diff[k];
        double dterm = pw * gamma1(k, w.beta) * diff[k + 1];
        ng.feed(k, std::abs(pw * diff[k]));
        dg.feed(k, std::abs(pw * diff[k + 1]));
        num += nterm;
        den -= dterm;
        scale = std::max({scale, std::abs(pw * diff[k]), p * std::abs(pw * diff[k + 1])});
        pw *= p;
    }
    if (scale == 0.0 || (std::abs(num) < 1e-9 * scale && std::abs(den) < 1e-9 * scale))
        return p; // requirement degenerate: any lambda works; algebraic value
    return num / den;
}

double magnus0_drive_scale(const Envelope& s, double omega_d, double lambda,
                           const IntegrationWindow& w, int K) {
    validate_window(w, omega_d);
    double p = 1.0 / (2.0 * omega_d);
    double is = s.poly().integral(w.b_minus, w.b_plus);
    std::vector<double> diff(K + 2);
    TrigPoly d = s.poly();
    for (int k = 0; k <= K + 1; ++k) {
        diff[k] = d.value(w.b_plus) - d.value(w.b_minus);
        d = d.derived();
    }
    SeriesGuard guard;
    double corr = 0.0;
    double pw = p;
    for (int k = 0; k <= K; ++k) {
        guard.feed(k, std::abs(pw * (std::abs(diff[k]) + std::abs(lambda * diff[k + 1]))));
        corr += pw * (gamma1(k, w.beta) * diff[k] - lambda * gamma2(k, w.beta) * diff[k + 1]);
        pw *= p;
    }
    double den = is + corr;
    if (std::abs(den) < 1e-300 || std::abs(den) < 1e-14 * std::abs(is))
        throw SingularityError("magnus0_drive_scale: vanishing denominator");
    return is / den;
}

Magnus0Params magnus0_algebraic(double omega_d) {
    return Magnus0Params{1.0 / (2.0 * omega_d), 1.0, 0, true};
}

double rwa_drive_strength(double angle, const Envelope& s, double t_g) {
    if (angle <= 0.0) throw std::domain_error("rwa_drive_strength: angle must be positive");
    double area = s.antiderivative(t_g);
    return angle / area;
}

} // namespace nonrwa
