#pragma once

#include <cstddef>
#include <vector>

namespace nonrwa {

// One term amp * t^tpow * cos(freq * t + phase). freq == 0 covers plain
// polynomials, tpow == 0 plain harmonics.
struct TrigTerm {
    double amp = 0.0;
    int tpow = 0;
    double freq = 0.0;
    double phase = 0.0;
};

// Sum of t^m cos(w t + p) terms. The pulse envelopes used in this project
// (cosine shape, carrier-modulated products, their derivatives, squares and
// running antiderivatives) all stay inside this family, so derivatives and
// definite integrals are evaluated in closed form.
class TrigPoly {
  public:
    TrigPoly() = default;
    explicit TrigPoly(std::vector<TrigTerm> terms) : terms_(std::move(terms)) {}

    static TrigPoly zero() { return TrigPoly{}; }
    static TrigPoly constant(double c);
    // amp * cos(freq t + phase)
    static TrigPoly harmonic(double amp, double freq, double phase);
    // amp * t
    static TrigPoly linear(double amp);

    double value(double t) const;
    // k-th derivative at t (k >= 0)
    double derivative(double t, int k) const;

    TrigPoly derived() const;
    // antiderivative with F(0) = 0
    TrigPoly antiderived() const;
    double integral(double a, double b) const;

    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;
    TrigPoly scaled(double c) const;

    // merge terms sharing (tpow, freq); drops terms below `tol` relative to
    // the largest amplitude
    TrigPoly compressed(double tol = 0.0) const;

    std::size_t size() const { return terms_.size(); }
    const std::vector<TrigTerm>& terms() const { return terms_; }
    double max_amp() const;

  private:
    std::vector<TrigTerm> terms_;
};

} // namespace nonrwa
