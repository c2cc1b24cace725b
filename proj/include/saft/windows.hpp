// Compactly supported window functions on [-m, m]: B-spline, sinh-type, and
// continuous Kaiser-Bessel, with closed-form Fourier transforms.
//
// All three windows take the normalized argument t/m on support [-m, m]; the
// transforms below (convention  w^(tau) = (2 pi)^{-1/2} int w(t) e^{-i tau t} dt,
// real and even) are exact for that normalization and are cross-checked
// against direct quadrature in the test suite.
#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "saft/saft_core.hpp"
#include "saft/special_functions.hpp"

namespace saft::win {

enum class WindowKind { BSpline, Sinh, CKB };

inline const char* kind_name(WindowKind k) {
    switch (k) {
        case WindowKind::BSpline: return "bspline";
        case WindowKind::Sinh: return "sinh";
        case WindowKind::CKB: return "ckb";
    }
    throw std::logic_error("unreachable window kind");
}

inline WindowKind kind_from_name(const std::string& s) {
    if (s == "bspline") return WindowKind::BSpline;
    if (s == "sinh") return WindowKind::Sinh;
    if (s == "ckb") return WindowKind::CKB;
    throw std::invalid_argument("unknown window kind '" + s + "' (expected bspline, sinh, ckb)");
}

// Window family tag plus truncation radius m and the family's shape parameter:
// the spline order half s for the B-spline window, beta for sinh/cKB.  When a
// window is built for a band, beta is bound to m*(pi - delta) at construction
// so that beta and delta cannot drift apart downstream.
struct WindowSpec {
    WindowKind kind;
    int m = 2;
    int s = 0;          // B-spline only
    double beta = 0.0;  // sinh / cKB only

    static int default_spline_half_order(int m) { return (m + 2) / 2; }  // ceil((m+1)/2)

    static WindowSpec bspline(int m) { return bspline(m, default_spline_half_order(m)); }

    static WindowSpec bspline(int m, int s) {
        check_m(m);
        if (s < 2) throw std::invalid_argument("WindowSpec: B-spline half order s must be >= 2");
        return {WindowKind::BSpline, m, s, 0.0};
    }

    static WindowSpec sinh_type(int m, double beta) {
        check_m(m);
        check_beta(beta);
        return {WindowKind::Sinh, m, 0, beta};
    }

    static WindowSpec ckb(int m, double beta) {
        check_m(m);
        check_beta(beta);
        return {WindowKind::CKB, m, 0, beta};
    }

    // beta = m * (pi - delta), the rate that pairs the window with the band
    static WindowSpec for_band(WindowKind kind, int m, const BandSpec& band) {
        if (kind == WindowKind::BSpline) return bspline(m);
        const double beta = m * (std::numbers::pi - band.delta);
        if (!(beta > 0.0))
            throw std::invalid_argument("WindowSpec: band with delta = pi leaves beta = 0");
        return kind == WindowKind::Sinh ? sinh_type(m, beta) : ckb(m, beta);
    }

    std::string name() const { return kind_name(kind); }

  private:
    static void check_m(int m) {
        if (m < 2) throw std::invalid_argument("WindowSpec: m must be >= 2");
    }
    static void check_beta(double beta) {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::invalid_argument("WindowSpec: beta must be positive and finite");
    }
};

namespace detail {

// Per-piece Chebyshev representation of the normalized B-spline window: each
// unit knot interval of M_{2s} carries a polynomial of degree 2s-1, which the
// interpolant at 2s Chebyshev nodes reproduces to rounding, piece-relative.
// Cached per (s): evaluation drops from O(s^2) to one Clenshaw sweep, which
// the reconstruction loops depend on.
struct BSplineWindowTable {
    int s;
    std::vector<double> coeff;  // 2s pieces x 2s coefficients

    explicit BSplineWindowTable(int s_) : s(s_) {
        const int deg = 2 * s;
        const double norm = 1.0 / sf::cardinal_bspline(2 * s, 0.0);
        coeff.assign(static_cast<std::size_t>(2 * s) * deg, 0.0);
        std::vector<double> vals(static_cast<std::size_t>(deg));
        for (int piece = 0; piece < 2 * s; ++piece) {
            const double lo = piece - s;
            for (int i = 0; i < deg; ++i) {
                const double th = std::numbers::pi * (i + 0.5) / deg;
                const double x = lo + 0.5 + 0.5 * std::cos(th);
                vals[static_cast<std::size_t>(i)] = sf::cardinal_bspline(2 * s, x) * norm;
            }
            for (int j = 0; j < deg; ++j) {
                double c = 0.0;
                for (int i = 0; i < deg; ++i)
                    c += vals[static_cast<std::size_t>(i)] *
                         std::cos(j * std::numbers::pi * (i + 0.5) / deg);
                coeff[static_cast<std::size_t>(piece) * deg + j] = c * (j == 0 ? 1.0 : 2.0) / deg;
            }
        }
    }

    double eval(double x) const {  // x = s t / m in (-s, s)
        const int deg = 2 * s;
        int piece = static_cast<int>(std::floor(x)) + s;
        if (piece < 0) piece = 0;
        if (piece >= 2 * s) piece = 2 * s - 1;
        const double z = 2.0 * (x - (piece - s)) - 1.0;
        const double* c = &coeff[static_cast<std::size_t>(piece) * deg];
        double b1 = 0.0, b2 = 0.0;
        for (int j = deg - 1; j >= 1; --j) {
            const double b0 = 2.0 * z * b1 - b2 + c[j];
            b2 = b1;
            b1 = b0;
        }
        return z * b1 - b2 + c[0];
    }
};

inline const BSplineWindowTable& bspline_window_table(int s) {
    static std::map<int, BSplineWindowTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, BSplineWindowTable(s)).first;
    return it->second;
}

}  // namespace detail

// Pointwise window value; in [0, 1], even, 1 at the origin, 0 outside [-m, m].
inline double window_value(const WindowSpec& w, double t) {
    const double u = std::abs(t);
    const double m = static_cast<double>(w.m);
    if (u >= m) return 0.0;
    if (t == 0.0) return 1.0;
    switch (w.kind) {
        case WindowKind::BSpline: {
            const double v = detail::bspline_window_table(w.s).eval(w.s * t / m);
            return std::min(1.0, std::max(0.0, v));
        }
        case WindowKind::Sinh: {
            const double r = std::sqrt(1.0 - (u / m) * (u / m));
            return std::sinh(w.beta * r) / std::sinh(w.beta);
        }
        case WindowKind::CKB: {
            const double r = std::sqrt(1.0 - (u / m) * (u / m));
            return (sf::bessel_i0(w.beta * r).value - 1.0) / (sf::bessel_i0(w.beta).value - 1.0);
        }
    }
    throw std::logic_error("unreachable window kind");
}

namespace detail {

// sin(x)/x with the removable singularity filled in (unnormalized sinc).
inline double sinxox(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// G(y) = I1(sqrt(y))/sqrt(y) for y > 0, J1(sqrt(-y))/sqrt(-y) for y < 0;
// both branches share the series (1/2) sum_k (y/4)^k / (k! (k+1)!), which is
// used across the branch point so the transform is continuous there.
inline double bessel1_ratio(double y) {
    if (std::abs(y) < 1e-4) {
        const double q = 0.25 * y;
        return 0.5 * (1.0 + q / 2.0 * (1.0 + q / 6.0 * (1.0 + q / 12.0)));
    }
    if (y > 0) {
        const double z = std::sqrt(y);
        return sf::bessel_i1(z).value / z;
    }
    const double z = std::sqrt(-y);
    return sf::bessel_j1(z).value / z;
}

// S(y) = sinh(sqrt(y))/sqrt(y) for y > 0, sin(sqrt(-y))/sqrt(-y) for y < 0.
inline double sinh_ratio(double y) {
    if (std::abs(y) < 1e-4) return 1.0 + y / 6.0 * (1.0 + y / 20.0 * (1.0 + y / 42.0));
    if (y > 0) {
        const double z = std::sqrt(y);
        return std::sinh(z) / z;
    }
    const double z = std::sqrt(-y);
    return std::sin(z) / z;
}

}  // namespace detail

// Closed-form Fourier transform of the window, (2 pi)^{-1/2} convention.
inline double window_ft(const WindowSpec& w, double tau) {
    const double m = static_cast<double>(w.m);
    switch (w.kind) {
        case WindowKind::BSpline: {
            const double s = static_cast<double>(w.s);
            const double m2s0 = sf::cardinal_bspline(2 * w.s, 0.0);
            const double base = detail::sinxox(m * tau / (2.0 * s));
            return m / (std::sqrt(2.0 * std::numbers::pi) * s * m2s0) *
                   std::pow(base, 2.0 * w.s);
        }
        case WindowKind::Sinh: {
            const double nu = m * tau / w.beta;
            const double y = w.beta * w.beta * (1.0 - nu * nu);
            const double pref = m * std::sqrt(std::numbers::pi) /
                                (std::sqrt(2.0) * std::sinh(w.beta));
            return pref * w.beta * detail::bessel1_ratio(y);
        }
        case WindowKind::CKB: {
            const double nu = m * tau / w.beta;
            const double y = w.beta * w.beta * (1.0 - nu * nu);
            const double pref = std::sqrt(2.0) * m /
                                (std::sqrt(std::numbers::pi) * (sf::bessel_i0(w.beta).value - 1.0));
            return pref * (detail::sinh_ratio(y) - detail::sinxox(w.beta * nu));
        }
    }
    throw std::logic_error("unreachable window kind");
}

inline double window_ft_zero(const WindowSpec& w) { return window_ft(w, 0.0); }

}  // namespace saft::win
