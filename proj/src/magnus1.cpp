#include "nonrwa/magnus1.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nonrwa/errors.hpp"

namespace nonrwa {

namespace {

inline double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// boundary_diff[kg][kp] = [d^kp/dt^kp (f * g^(kg))]_{b-}^{b+}
std::vector<std::vector<double>> product_boundary_table(const TrigPoly& f, const TrigPoly& g,
                                                        const IntegrationWindow& w, int K) {
    std::vector<std::vector<double>> table(K + 1, std::vector<double>(K + 1));
    TrigPoly gd = g;
    for (int kg = 0; kg <= K; ++kg) {
        TrigPoly prod = (f * gd).compressed(1e-16);
        for (int kp = 0; kp <= K; ++kp) {
            table[kg][kp] = prod.value(w.b_plus) - prod.value(w.b_minus);
            if (kp < K) prod = prod.derived();
        }
        if (kg < K) gd = gd.derived();
    }
    return table;
}

struct Chains {
    std::vector<TrigPoly> f, g; // derivative chains
};

Chains derivative_chains(const TrigPoly& f, const TrigPoly& g, int K) {
    Chains c;
    c.f.resize(K + 1);
    c.g.resize(K + 1);
    c.f[0] = f;
    c.g[0] = g;
    for (int k = 1; k <= K; ++k) {
        c.f[k] = c.f[k - 1].derived();
        c.g[k] = c.g[k - 1].derived();
    }
    return c;
}

} // namespace

double double_integral(DoubleIntegralKind kind, const TrigPoly& f, const TrigPoly& g,
                       double omega_d, const IntegrationWindow& w, int K) {
    validate_window(w, omega_d);
    const double p = 1.0 / (2.0 * omega_d);
    const double beta = w.beta;
    using DK = DoubleIntegralKind;

    if (kind == DK::c || kind == DK::d) {
        // int g(t1) {sin,cos}(2wd t1+2phi) int_{b-}^{t1} f(t2) dt2
        TrigPoly F1 = f.antiderived();
        double F1bm = F1.value(w.b_minus);
        TrigPoly gF = (g * F1).compressed(1e-16);
        TrigPoly gd = g;
        double acc = 0.0;
        double pw = p;
        SeriesGuardPublic: ;
        struct Guard {
            double last[2] = {-1.0, -1.0};
            int grow[2] = {0, 0};
            void feed(int k, double mag) {
                int par = k % 2;
                if (last[par] >= 0.0 && mag > last[par] * (1.0 + 1e-12)) {
                    if (++grow[par] >= 3)
                        throw ConvergenceError("double_integral: series terms growing");
                } else {
                    grow[par] = 0;
                }
                if (mag > 0.0) last[par] = mag;
            }
        } guard;
        for (int k = 0; k <= K; ++k) {
            double bnd = (gF.value(w.b_plus) - gF.value(w.b_minus)) -
                         F1bm * (gd.value(w.b_plus) - gd.value(w.b_minus));
            double gma = (kind == DK::c) ? gamma2(k, beta) : gamma1(k, beta);
            guard.feed(k, std::abs(pw * bnd));
            acc += pw * gma * bnd;
            pw *= p;
            if (k < K) {
                gF = gF.derived();
                gd = gd.derived();
            }
        }
        return (kind == DK::c) ? -acc : acc;
    }

    if (kind == DK::a || kind == DK::b) {
        // int f(t1) int_{b-}^{t1} g(t2) {sin,cos}(2wd t2+2phi) dt2
        double intf = f.integral(w.b_minus, w.b_plus);
        Chains ch = derivative_chains(f, g, K);
        double lead = 0.0;
        double pw = p;
        for (int k = 0; k <= K; ++k) {
            double gk = ch.g[k].value(w.b_minus);
            lead += pw * ((kind == DK::a) ? gamma2(k, beta) : gamma1(k, beta)) * gk;
            pw *= p;
        }
        lead *= (kind == DK::a) ? intf : -intf;
        auto table = product_boundary_table(f, g, w, K);
        double dbl = 0.0;
        for (int k1 = 0; k1 <= K; ++k1) {
            double pk1 = std::pow(p, k1 + 2);
            for (int k2 = 0; k2 + k1 <= K; ++k2) {
                double coeff;
                if (kind == DK::a)
                    coeff = -parity_sign((k1 + 1) / 2) *
                            (chi_plus(k1) * gamma1(k2, beta) - chi_minus(k1) * gamma2(k2, beta));
                else
                    coeff = parity_sign(k1 / 2) *
                            (chi_minus(k1) * gamma1(k2, beta) - chi_plus(k1) * gamma2(k2, beta));
                dbl += pk1 * std::pow(p, k2) * coeff * table[k1][k2];
            }
        }
        return lead + dbl;
    }

    // kinds e..h: int f(t1) X(t1) int_{b-}^{t1} g(t2) Y(t2), X/Y in {sin,cos}
    Chains ch = derivative_chains(f, g, K);
    // DC part: single sum over int f g^{(k)}
    double dc = 0.0;
    double pw = p;
    for (int k = 0; k <= K; ++k) {
        double J = (f * ch.g[k]).integral(w.b_minus, w.b_plus);
        double c = 0.0;
        switch (kind) {
            case DK::e: c = -parity_sign((k + 1) / 2) * chi_minus(k) * 0.5; break;
            case DK::f: c = parity_sign(k / 2) * chi_plus(k) * 0.5; break;
            case DK::g: c = -parity_sign((k + 1) / 2) * chi_plus(k) * 0.5; break;
            case DK::h: c = parity_sign(k / 2) * chi_minus(k) * 0.5; break;
            default: break;
        }
        dc += pw * c * J;
        pw *= p;
    }
    auto table = product_boundary_table(f, g, w, K); // table[kg][kp]
    double dbl = 0.0;
    for (int k1 = 0; k1 <= K; ++k1) {
        for (int k2 = 0; k2 + k1 <= K; ++k2) {
            double pref = std::pow(p, k1 + k2 + 2);
            double mod; // coefficient of [d^{k1}(f g^{(k2)})]
            double halfp = std::pow(0.5, k1 + 2);
            switch (kind) {
                case DK::e:
                    mod = halfp * parity_sign((k2 + 1) / 2) *
                          (chi_plus(k2) * gamma2(k1, 2 * beta) + chi_minus(k2) * gamma1(k1, 2 * beta));
                    break;
                case DK::f:
                    mod = halfp * parity_sign(k2 / 2) *
                          (-chi_plus(k2) * gamma1(k1, 2 * beta) - chi_minus(k2) * gamma2(k1, 2 * beta));
                    break;
                case DK::g:
                    mod = halfp * parity_sign((k2 + 1) / 2) *
                          (-chi_plus(k2) * gamma1(k1, 2 * beta) + chi_minus(k2) * gamma2(k1, 2 * beta));
                    break;
                default: // h
                    mod = halfp * parity_sign(k2 / 2) *
                          (chi_minus(k2) * gamma1(k1, 2 * beta) - chi_plus(k2) * gamma2(k1, 2 * beta));
                    break;
            }
            double gg; // coefficient of g^{(k2)}(b-) [f^{(k1)}]
            switch (kind) {
                case DK::e: gg = -gamma2(k1, beta) * gamma2(k2, beta); break;
                case DK::f: gg = gamma2(k1, beta) * gamma1(k2, beta); break;
                case DK::g: gg = gamma1(k1, beta) * gamma2(k2, beta); break;
                default: gg = -gamma1(k1, beta) * gamma1(k2, beta); break;
            }
            double fdiff = ch.f[k1].value(w.b_plus) - ch.f[k1].value(w.b_minus);
            dbl += pref * (mod * table[k2][k1] + gg * ch.g[k2].value(w.b_minus) * fdiff);
        }
    }
    return dc + dbl;
}

double zeta1(const Envelope& env, double delta, double b_minus, double b_plus) {
    TrigPoly weight = TrigPoly::linear(2.0) + TrigPoly::constant(-(b_minus + b_plus));
    return 0.5 * delta * (weight * env.poly()).integral(b_minus, b_plus);
}

namespace {

struct EnvelopeSet {
    TrigPoly eI, eQ; // theta-rotated slow envelopes (amplitude included)
};

EnvelopeSet build_envelopes(const PulseParams& p) {
    TrigPoly sI = Envelope::cosine(p.t_g).poly();
    TrigPoly sIp = sI.derived();
    double c = std::cos(p.theta), s = std::sin(p.theta);
    EnvelopeSet e;
    e.eI = sI.scaled(c * p.omega_I) + sIp.scaled(-s * p.omega_I * p.lambda);
    e.eQ = sIp.scaled(c * p.omega_I * p.lambda) + sI.scaled(s * p.omega_I);
    return e;
}

MagnusAverages averages_direct(const PulseParams& p, double omega01) {
    const double T = p.t_g;
    const double wd = omega01 - p.delta;
    EnvelopeSet env = build_envelopes(p);
    TrigPoly c2 = TrigPoly::harmonic(1.0, 2.0 * wd, 2.0 * p.phi);
    TrigPoly s2 = TrigPoly::harmonic(1.0, 2.0 * wd, 2.0 * p.phi - M_PI / 2.0);
    TrigPoly AI = (env.eI + env.eI * c2 + env.eQ * s2).scaled(0.5).compressed(1e-16);
    TrigPoly AQ = (env.eQ - env.eQ * c2 + env.eI * s2).scaled(0.5).compressed(1e-16);

    MagnusAverages m;
    m.h0.x = AI.integral(0.0, T);
    m.h0.y = AQ.integral(0.0, T);
    m.h0.z = -0.5 * p.delta * T;

    TrigPoly cAI = AI.antiderived();
    TrigPoly cAQ = AQ.antiderived();
    m.h1.z = (AI * cAQ - AQ * cAI).integral(0.0, T);
    TrigPoly weight = TrigPoly::linear(2.0) + TrigPoly::constant(-T);
    double Gy = (weight * AI).integral(0.0, T);
    double Gx = (weight * AQ).integral(0.0, T);
    m.h1.y = 0.5 * p.delta * Gy;
    m.h1.x = -0.5 * p.delta * Gx;
    return m;
}

MagnusAverages averages_series(const PulseParams& p, double omega01, int K) {
    const double T = p.t_g;
    const double wd = omega01 - p.delta;
    EnvelopeSet env = build_envelopes(p);
    CarrierSplit split = split_carrier(wd, T, p.phi);
    if (split.n_hat < 1)
        throw std::domain_error("magnus_averages: gate shorter than one Magnus period");
    const double wh = split.omega_hat;
    IntegrationWindow w{0.0, T, 2.0 * split.phi_hat, 0.0};

    TrigPoly cm = TrigPoly::harmonic(1.0, 2.0 * split.omega_tilde, 2.0 * split.phi_tilde);
    TrigPoly sm = TrigPoly::harmonic(1.0, 2.0 * split.omega_tilde, 2.0 * split.phi_tilde - M_PI / 2.0);
    TrigPoly P = (env.eI * cm + env.eQ * sm).compressed(1e-16);
    TrigPoly M = (env.eQ * cm - env.eI * sm).compressed(1e-16);

    MagnusAverages m;
    m.h0.x = 0.5 * (env.eI.integral(0.0, T) + osc_integral_cos(P, wh, w, K) +
                    osc_integral_sin(M, wh, w, K));
    m.h0.y = 0.5 * (env.eQ.integral(0.0, T) - osc_integral_cos(M, wh, w, K) +
                    osc_integral_sin(P, wh, w, K));
    m.h0.z = -0.5 * p.delta * T;

    // sigma_z commutator: 4 (A_I(t1) A_Q(t2) - A_Q(t1) A_I(t2)) expanded over
    // 2 A_I = eI + P cos + M sin and 2 A_Q = eQ - M cos + P sin maps onto the
    // Eq. C2 catalog as:
    //   plain          : eI(t1) eQ(t2) - eQ(t1) eI(t2)
    //   (a) f,int g sin: + (eI, P) - (eQ, M)
    //   (b) f,int g cos: - (eI, M) - (eQ, P)
    //   (c) g sin,int f: + (f=eQ, g=M) - (f=eI, g=P)
    //   (d) g cos,int f: + (f=eQ, g=P) + (f=eI, g=M)
    //   (e) sin,sin    : + (M, P) - (P, M)
    //   (f) sin,cos    : - (M, M) - (P, P)
    //   (g) cos,sin    : + (P, P) + (M, M)
    //   (h) cos,cos    : - (P, M) + (M, P)
    auto plain = [&](const TrigPoly& u, const TrigPoly& v) {
        return (u * v.antiderived()).integral(0.0, T) -
               (u * TrigPoly::constant(v.antiderived().value(0.0))).integral(0.0, T);
    };
    using DK = DoubleIntegralKind;
    auto DI = [&](DK kind, const TrigPoly& f, const TrigPoly& g) {
        return double_integral(kind, f, g, wh, w, K);
    };
    double z = plain(env.eI, env.eQ) - plain(env.eQ, env.eI);
    z += DI(DK::a, env.eI, P) - DI(DK::a, env.eQ, M);
    z += -DI(DK::b, env.eI, M) - DI(DK::b, env.eQ, P);
    z += DI(DK::c, env.eQ, M) - DI(DK::c, env.eI, P);
    z += DI(DK::d, env.eQ, P) + DI(DK::d, env.eI, M);
    z += DI(DK::e, M, P) - DI(DK::e, P, M);
    z += -DI(DK::f, M, M) - DI(DK::f, P, P);
    z += DI(DK::g, P, P) + DI(DK::g, M, M);
    z += -DI(DK::h, P, M) + DI(DK::h, M, P);
    m.h1.z = 0.25 * z;

    // sigma_x / sigma_y cross terms with the static detuning:
    //   int dt1 int^{t1} dt2 (A(t1) - A(t2)) = int (2t - T) A(t) dt
    TrigPoly weight = TrigPoly::linear(2.0) + TrigPoly::constant(-T);
    auto moment = [&](const TrigPoly& slow, const TrigPoly& pc, const TrigPoly& ms, double sc,
                      double sm_sign) {
        TrigPoly wp = (weight * pc).compressed(1e-16);
        TrigPoly wm = (weight * ms).compressed(1e-16);
        return 0.5 * ((weight * slow).integral(0.0, T) + sc * osc_integral_cos(wp, wh, w, K) +
                      sm_sign * osc_integral_sin(wm, wh, w, K));
    };
    double Gy = moment(env.eI, P, M, 1.0, 1.0);
    // A_Q: slow eQ, cos part -M, sin part P
    TrigPoly wM = (weight * M).compressed(1e-16);
    TrigPoly wP = (weight * P).compressed(1e-16);
    double Gx = 0.5 * ((weight * env.eQ).integral(0.0, T) - osc_integral_cos(wM, wh, w, K) +
                       osc_integral_sin(wP, wh, w, K));
    m.h1.y = 0.5 * p.delta * Gy;
    m.h1.x = -0.5 * p.delta * Gx;
    return m;
}

} // namespace

MagnusAverages magnus_averages(const PulseParams& p, double omega01, AveragesRoute route, int K) {
    p.validate();
    return route == AveragesRoute::direct ? averages_direct(p, omega01)
                                          : averages_series(p, omega01, K);
}

std::vector<double> default_phase_grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = M_PI * i / n;
    return g;
}

FirstOrderParams first_order_params(double omega01, double angle, double t_g,
                                    const std::vector<double>& phi_grid,
                                    const FixedPointOptions& opt) {
    if (phi_grid.empty()) throw std::domain_error("first_order_params: empty phase grid");
    int nc = static_cast<int>(std::floor(magnus_period_ratio(omega01, t_g)));
    if (nc <= 3)
        throw std::domain_error("first_order_params: requires N_c > 3 at resonance");

    Envelope s = Envelope::cosine(t_g);
    double omega_rwa = rwa_drive_strength(angle, s, t_g);

    double sum_om = 0.0, sum_lam = 0.0, sum_del = 0.0;
    int iters_max = 0;
    for (double phi : phi_grid) {
        PulseParams p;
        p.t_g = t_g;
        p.angle = angle;
        p.phi = phi;
        p.omega_I = omega_rwa;
        p.lambda = 1.0 / (2.0 * omega01);
        p.delta = 0.0;

        int it = 0;
        double change = 1.0;
        for (; it < opt.max_iter; ++it) {
            PulseParams q = p;
            // lambda from the sigma_y requirement (affine in lambda)
            q.lambda = 0.0;
            MagnusAverages a0 = magnus_averages(q, omega01, AveragesRoute::series, opt.truncation);
            q.lambda = 1.0;
            MagnusAverages a1 = magnus_averages(q, omega01, AveragesRoute::series, opt.truncation);
            double hy0 = a0.h0.y + a0.h1.y;
            double slope = (a1.h0.y + a1.h1.y) - hy0;
            double lam_new = p.lambda;
            if (std::abs(slope) > 1e-12 * std::max(1.0, std::abs(angle)))
                lam_new = -hy0 / slope;
            // Omega_I from the sigma_x requirement (linear in Omega_I)
            q.lambda = lam_new;
            q.omega_I = 1.0;
            MagnusAverages ax = magnus_averages(q, omega01, AveragesRoute::series, opt.truncation);
            double hx_unit = ax.h0.x + ax.h1.x;
            if (std::abs(hx_unit) < 1e-300)
                throw SingularityError("first_order_params: vanishing sigma_x integral");
            double om_new = 0.5 * angle / hx_unit;
            // Delta from the sigma_z requirement, treating the commutator
            // integral as frozen at the current carrier
            q.omega_I = om_new;
            MagnusAverages az = magnus_averages(q, omega01, AveragesRoute::series, opt.truncation);
            double del_new = p.delta + 2.0 * (az.h0.z + az.h1.z) / t_g;

            change = std::max({std::abs(om_new - p.omega_I) / std::abs(om_new),
                               std::abs(lam_new - p.lambda) / std::max(1e-30, std::abs(lam_new)),
                               std::abs(del_new - p.delta) /
                                   std::max(std::abs(del_new), 1e-6 / t_g)});
            p.omega_I = om_new;
            p.lambda = lam_new;
            p.delta = del_new;
            if (change < opt.tol) break;
        }
        if (change >= opt.tol)
            throw IterationError("first_order_params: fixed point did not converge", change);
        iters_max = std::max(iters_max, it + 1);
        sum_om += p.omega_I;
        sum_lam += p.lambda;
        sum_del += p.delta;
    }
    double n = static_cast<double>(phi_grid.size());
    return FirstOrderParams{sum_om / n, sum_lam / n, sum_del / n, opt.truncation,
                            static_cast<int>(phi_grid.size()), iters_max};
}

} // namespace nonrwa
