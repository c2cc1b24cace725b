// Special affine Fourier transform core: parameter vector, kernel and its
// unimodular factors, chirp modulation, A-translation, A-convolution, and
// quadrature-based forward/inverse transforms used as test oracles.
//
// Conventions.  The transform of f is
//   F_A f(w) = (2 pi |b|)^{-1/2} int f(t)
//              exp[ i/(2b) (a t^2 + 2 p t - 2 w t + d w^2 + 2 (b q - d p) w) ] dt
// for A = (a,b,c,d,p,q) with a d - b c = 1 and b != 0.  It factors as
//   F_A f(w) = eta(w) / sqrt(|b|) * F(f rho)(w / b)
// with unimodular eta, rho, where F is the unitary Fourier transform.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "saft/quadrature.hpp"

namespace saft {

using Complex = std::complex<double>;

inline Complex unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

// The six-vector A = (a, b, c, d, p, q); unit determinant, b away from zero.
struct SaftParams {
    double a, b, c, d, p, q;

    static SaftParams make(double a, double b, double c, double d, double p, double q) {
        for (double v : {a, b, c, d, p, q})
            if (!std::isfinite(v)) throw std::invalid_argument("SaftParams: non-finite entry");
        if (std::abs(b) <= 1e-15)
            throw std::invalid_argument("SaftParams: b = 0 is excluded (transform degenerates)");
        const double det = a * d - b * c;
        if (std::abs(det - 1.0) > 1e-12)
            throw std::invalid_argument("SaftParams: a*d - b*c must equal 1, got " +
                                        std::to_string(det));
        return {a, b, c, d, p, q};
    }

    static SaftParams fourier() { return {0.0, 1.0, -1.0, 0.0, 0.0, 0.0}; }

    // Rotation by angle alpha (fractional-Fourier family), offsets p, q.
    static SaftParams rotation(double alpha, double p = 0.0, double q = 0.0) {
        return make(std::cos(alpha), std::sin(alpha), -std::sin(alpha), std::cos(alpha), p, q);
    }

    double chirp_rate() const { return a / b; }  // rate of the compensating chirp
};

// Band descriptor for functions whose transform lives in [p - |b| delta, p + |b| delta].
struct BandSpec {
    double p = 0.0;
    double delta = std::numbers::pi;
    double b = 1.0;

    BandSpec(double p_, double delta_, double b_) : p(p_), delta(delta_), b(b_) {
        if (!(delta > 0.0) || delta > std::numbers::pi)
            throw std::invalid_argument("BandSpec: delta must lie in (0, pi]");
        if (std::abs(b) <= 1e-15) throw std::invalid_argument("BandSpec: b must be nonzero");
    }

    double lo() const { return p - std::abs(b) * delta; }
    double hi() const { return p + std::abs(b) * delta; }
};

// A signal is just an evaluation handle; transforms stay explicit about
// truncation because nothing about decay is stored here.
struct ComplexSignal {
    std::function<Complex(double)> eval;
    std::string description;

    Complex operator()(double t) const { return eval(t); }
};

struct Interval {
    double lo, hi;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi)) throw std::invalid_argument("Interval: empty or reversed");
    }
    double length() const { return hi - lo; }
};

// eta(w) = exp[i/(2b) (d w^2 + 2 (b q - d p) w)]
inline Complex eta(const SaftParams& A, double omega) {
    return unit_phase((A.d * omega * omega + 2.0 * (A.b * A.q - A.d * A.p) * omega) / (2.0 * A.b));
}

// rho(t) = exp[i/(2b) (a t^2 + 2 p t)]
inline Complex rho(const SaftParams& A, double t) {
    return unit_phase((A.a * t * t + 2.0 * A.p * t) / (2.0 * A.b));
}

// Kernel of the transform; |kernel| = (2 pi |b|)^{-1/2}.
inline Complex kernel(const SaftParams& A, double t, double omega) {
    const double phase = (A.a * t * t + 2.0 * A.p * t - 2.0 * omega * t + A.d * omega * omega +
                          2.0 * (A.b * A.q - A.d * A.p) * omega) /
                         (2.0 * A.b);
    return unit_phase(phase) / std::sqrt(2.0 * std::numbers::pi * std::abs(A.b));
}

// C_s f(t) = exp(i s t^2 / 2) f(t)
inline ComplexSignal chirp_modulate(double s, ComplexSignal f) {
    auto inner = std::move(f.eval);
    return {[s, inner = std::move(inner)](double t) { return unit_phase(0.5 * s * t * t) * inner(t); },
            "chirp(" + std::to_string(s) + ") " + f.description};
}

// T^A_x f(t) = exp(-i (a/b) x (t - x)) f(t - x)
inline ComplexSignal a_translate(const SaftParams& A, double x, ComplexSignal f) {
    const double rate = A.chirp_rate();
    auto inner = std::move(f.eval);
    return {[rate, x, inner = std::move(inner)](double t) {
                return unit_phase(-rate * x * (t - x)) * inner(t - x);
            },
            "translate(" + std::to_string(x) + ") " + f.description};
}

// Forward transform by composite Gauss-Legendre quadrature over a finite
// support window chosen by the caller.
inline Complex saft_quadrature(const SaftParams& A, const ComplexSignal& f, Interval support,
                               double omega, int panels) {
    auto integrand = [&](double t) { return f(t) * kernel(A, t, omega); };
    return quad::integrate_composite(integrand, support.lo, support.hi, panels);
}

// Inverse transform: F_A^{-1} g(t) = conj(rho(t)) (2 pi |b|)^{-1/2}
//                    int g(w) conj(eta(w)) exp(i w t / b) dw.
inline Complex inverse_saft_quadrature(const SaftParams& A, const ComplexSignal& F,
                                       Interval support, double t, int panels) {
    auto integrand = [&](double w) {
        return F(w) * std::conj(eta(A, w)) * unit_phase(w * t / A.b);
    };
    const Complex integral = quad::integrate_composite(integrand, support.lo, support.hi, panels);
    return std::conj(rho(A, t)) * integral / std::sqrt(2.0 * std::numbers::pi * std::abs(A.b));
}

// (f *_A g)(t) = (2 pi |b|)^{-1/2} int f(x) T^A_x g(t) dx.  Adaptive, with
// forced splits around x = t where sharp features of g land.
inline Complex a_convolution_quadrature(const SaftParams& A, const ComplexSignal& f,
                                        const ComplexSignal& g, Interval support, double t) {
    const double rate = A.chirp_rate();
    auto integrand = [&](double x) { return f(x) * unit_phase(-rate * x * (t - x)) * g(t - x); };
    const std::vector<double> splits{t - 1.0, t - 0.1, t - 0.01, t, t + 0.01, t + 0.1, t + 1.0};
    const Complex integral =
        quad::integrate_adaptive(integrand, support.lo, support.hi, 1e-11, splits);
    return integral / std::sqrt(2.0 * std::numbers::pi * std::abs(A.b));
}

// Symmetric support that captures all but `tail_mass` of exp(-t^2/(2 sigma^2)).
inline Interval gaussian_support(double sigma, double tail_mass) {
    if (!(tail_mass > 0.0) || tail_mass >= 1.0)
        throw std::invalid_argument("gaussian_support: tail_mass in (0,1)");
    const double r = sigma * (std::sqrt(-2.0 * std::log(tail_mass)) + 1.0);
    return {-r, r};
}

inline ComplexSignal gaussian_signal(double sigma = 1.0) {
    return {[sigma](double t) { return Complex{std::exp(-t * t / (2.0 * sigma * sigma)), 0.0}; },
            "gaussian(sigma=" + std::to_string(sigma) + ")"};
}

}  // namespace saft
