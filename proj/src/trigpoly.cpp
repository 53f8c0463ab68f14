#include "nonrwa/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace nonrwa {

namespace {

double term_value(const TrigTerm& tt, double t) {
    double p = 1.0;
    for (int i = 0; i < tt.tpow; ++i) p *= t;
    return tt.amp * p * std::cos(tt.freq * t + tt.phase);
}

// antiderivative of t^m cos(w t + p) (w != 0), up from m = 0
void accumulate_anti(double amp, int m, double w, double p, std::vector<TrigTerm>& out) {
    if (w == 0.0) {
        // amp cos(p) t^m -> amp cos(p) t^{m+1}/(m+1)
        out.push_back({amp / (m + 1), m + 1, 0.0, p});
        return;
    }
    // int t^m cos(w t+p) = t^m sin(w t+p)/w - (m/w) int t^{m-1} sin(w t+p)
    // int t^m sin(w t+p) = -t^m cos(w t+p)/w + (m/w) int t^{m-1} cos(w t+p)
    // expressed with cos only: sin(x) = cos(x - pi/2)
    double s = amp;
    double phase = p;
    for (int j = m; j >= 0; --j) {
        out.push_back({s / w, j, w, phase - M_PI / 2.0});
        if (j == 0) break;
        // remaining: -(j/w) * int t^{j-1} cos(w t + phase - pi/2)
        s = -s * j / w;
        phase -= M_PI / 2.0;
    }
}

} // namespace

TrigPoly TrigPoly::constant(double c) { return TrigPoly({{c, 0, 0.0, 0.0}}); }
TrigPoly TrigPoly::harmonic(double amp, double freq, double phase) {
    return TrigPoly({{amp, 0, freq, phase}});
}
TrigPoly TrigPoly::linear(double amp) { return TrigPoly({{amp, 1, 0.0, 0.0}}); }

double TrigPoly::value(double t) const {
    double s = 0.0;
    for (const auto& tt : terms_) s += term_value(tt, t);
    return s;
}

double TrigPoly::derivative(double t, int k) const {
    if (k == 0) return value(t);
    TrigPoly d = derived();
    for (int i = 1; i < k; ++i) d = d.derived();
    return d.value(t);
}

TrigPoly TrigPoly::derived() const {
    std::vector<TrigTerm> out;
    out.reserve(terms_.size() * 2);
    for (const auto& tt : terms_) {
        if (tt.tpow > 0)
            out.push_back({tt.amp * tt.tpow, tt.tpow - 1, tt.freq, tt.phase});
        if (tt.freq != 0.0)
            out.push_back({tt.amp * tt.freq, tt.tpow, tt.freq, tt.phase + M_PI / 2.0});
    }
    return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::antiderived() const {
    std::vector<TrigTerm> out;
    for (const auto& tt : terms_) accumulate_anti(tt.amp, tt.tpow, tt.freq, tt.phase, out);
    TrigPoly F(std::move(out));
    double f0 = F.value(0.0);
    if (f0 != 0.0) {
        auto terms = F.terms_;
        terms.push_back({-f0, 0, 0.0, 0.0});
        F = TrigPoly(std::move(terms));
    }
    return F;
}

double TrigPoly::integral(double a, double b) const {
    TrigPoly F = antiderived();
    return F.value(b) - F.value(a);
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    std::vector<TrigTerm> out = terms_;
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + o.scaled(-1.0); }

TrigPoly TrigPoly::scaled(double c) const {
    std::vector<TrigTerm> out = terms_;
    for (auto& tt : out) tt.amp *= c;
    return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    std::vector<TrigTerm> out;
    out.reserve(terms_.size() * o.terms_.size() * 2);
    for (const auto& x : terms_) {
        for (const auto& y : o.terms_) {
            double amp = 0.5 * x.amp * y.amp;
            int m = x.tpow + y.tpow;
            // cos A cos B = (cos(A+B) + cos(A-B))/2
            out.push_back({amp, m, x.freq + y.freq, x.phase + y.phase});
            out.push_back({amp, m, x.freq - y.freq, x.phase - y.phase});
        }
    }
    return TrigPoly(std::move(out)).compressed();
}

double TrigPoly::max_amp() const {
    double m = 0.0;
    for (const auto& tt : terms_) m = std::max(m, std::abs(tt.amp));
    return m;
}

TrigPoly TrigPoly::compressed(double tol) const {
    // canonicalize: freq >= 0 (cos is even), then accumulate cos/sin parts
    // per (tpow, freq) bucket
    struct Key {
        int tpow;
        long long fbits;
        bool operator<(const Key& o) const {
            return tpow != o.tpow ? tpow < o.tpow : fbits < o.fbits;
        }
    };
    auto quant = [](double f) {
        return static_cast<long long>(std::llround(f * 1e12));
    };
    struct Bucket {
        double freq = 0.0, c = 0.0, s = 0.0;
    };
    std::map<Key, Bucket> acc;
    for (auto tt : terms_) {
        if (tt.freq < 0.0) {
            tt.freq = -tt.freq;
            tt.phase = -tt.phase;
        }
        auto [it, fresh] = acc.try_emplace({tt.tpow, quant(tt.freq)});
        if (fresh) it->second.freq = tt.freq;
        // amp cos(wt+p) = (amp cos p) cos(wt) - (amp sin p) sin(wt)
        it->second.c += tt.amp * std::cos(tt.phase);
        it->second.s += tt.amp * std::sin(tt.phase);
    }
    std::vector<TrigTerm> out;
    out.reserve(acc.size());
    double biggest = 0.0;
    for (const auto& [key, b] : acc) biggest = std::max(biggest, std::hypot(b.c, b.s));
    for (const auto& [key, b] : acc) {
        double amp = std::hypot(b.c, b.s);
        if (amp == 0.0 || amp < tol * biggest) continue;
        double phase = std::atan2(b.s, b.c);
        out.push_back({amp, key.tpow, b.freq, phase});
    }
    return TrigPoly(std::move(out));
}

} // namespace nonrwa
