#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "saft/bounds.hpp"
#include "saft/special_functions.hpp"
#include "saft/windows.hpp"

using namespace saft;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<win::WindowSpec> specs_for(int m, double delta) {
    const BandSpec band(0.0, delta, 1.0);
    return {win::WindowSpec::for_band(win::WindowKind::BSpline, m, band),
            win::WindowSpec::for_band(win::WindowKind::Sinh, m, band),
            win::WindowSpec::for_band(win::WindowKind::CKB, m, band)};
}

// direct Fourier transform of the window by quadrature on [-m, m]
double ft_quadrature(const win::WindowSpec& w, double tau) {
    auto f = [&](double t) { return win::window_value(w, t) * std::cos(tau * t); };
    return 2.0 * quad::integrate_adaptive(f, 0.0, static_cast<double>(w.m), 1e-12) /
           std::sqrt(2.0 * pi);
}

}  // namespace

TEST_CASE("spec construction and validation") {
    CHECK_THROWS_AS(win::WindowSpec::bspline(1), std::invalid_argument);
    CHECK_THROWS_AS(win::WindowSpec::bspline(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(win::WindowSpec::sinh_type(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(win::WindowSpec::ckb(4, -1.0), std::invalid_argument);
    CHECK(win::WindowSpec::bspline(14).s == 8);
    CHECK(win::WindowSpec::bspline(29).s == 15);
    CHECK(win::WindowSpec::bspline(2).s == 2);
    const auto w = win::WindowSpec::for_band(win::WindowKind::Sinh, 10, BandSpec(0.0, 1.0, 1.0));
    CHECK(w.beta == doctest::Approx(10.0 * (pi - 1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(win::WindowSpec::for_band(win::WindowKind::Sinh, 10, BandSpec(0.0, pi, 1.0)),
                    std::invalid_argument);
    CHECK(win::kind_from_name("ckb") == win::WindowKind::CKB);
    CHECK_THROWS_AS(win::kind_from_name("hann"), std::invalid_argument);
}

TEST_CASE("class membership: even, supported on [-m, m], monotone, one at zero") {
    for (int m = 2; m <= 30; ++m) {
        for (const auto& w : specs_for(m, 2.0 * pi / 3.0)) {
            CHECK(win::window_value(w, 0.0) == 1.0);
            for (int i = 1; i <= 100; ++i) {
                const double t = m * (i / 100.0) * 1.2;
                CHECK(std::abs(win::window_value(w, t) - win::window_value(w, -t)) <= 1e-14);
                if (t >= m + 1e-12) CHECK(win::window_value(w, t) == 0.0);
            }
            double prev = 1.0;
            for (int i = 1; i <= 1000; ++i) {
                const double t = m * i / 1000.0;
                const double v = win::window_value(w, t);
                CHECK(v <= prev + 1e-14);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                prev = v;
            }
        }
    }
}

TEST_CASE("endpoint and cross-check values") {
    const auto ws = win::WindowSpec::sinh_type(6, 6.0);
    const auto wc = win::WindowSpec::ckb(6, 6.0);
    CHECK(win::window_value(ws, 6.0) == 0.0);
    CHECK(win::window_value(ws, -6.0) == 0.0);
    CHECK(win::window_value(wc, 6.0) == 0.0);
    // B-spline window at m=4, s=3, t=2 equals M6(3/2)/M6(0)
    const auto wb = win::WindowSpec::bspline(4, 3);
    const double want = sf::cardinal_bspline(6, 1.5) / sf::cardinal_bspline(6, 0.0);
    CHECK(win::window_value(wb, 2.0) == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("closed-form transforms match quadrature") {
    const double delta = 2.0 * pi / 3.0;
    for (int m : {8, 14, 20}) {
        for (const auto& w : specs_for(m, delta)) {
            for (double tau : {0.0, 0.3, pi - delta, 2.0, -1.1, 2.0 * pi, -2.0 * pi, 4.4}) {
                CHECK(std::abs(win::window_ft(w, tau) - ft_quadrature(w, tau)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("transform values at zero") {
    // sinh: m sqrt(pi) I1(beta) / (sqrt(2) sinh(beta))
    const auto ws = win::WindowSpec::sinh_type(9, 7.5);
    const double sinh_want =
        9.0 * std::sqrt(pi) * sf::bessel_i1(7.5).value / (std::sqrt(2.0) * std::sinh(7.5));
    CHECK(win::window_ft_zero(ws) == doctest::Approx(sinh_want).epsilon(1e-13));
    // ckb: sqrt(2) m / (sqrt(pi) (I0(beta)-1)) (sinh(beta)/beta - 1)
    const auto wc = win::WindowSpec::ckb(9, 7.5);
    const double ckb_want = std::sqrt(2.0) * 9.0 /
                            (std::sqrt(pi) * (sf::bessel_i0(7.5).value - 1.0)) *
                            (std::sinh(7.5) / 7.5 - 1.0);
    CHECK(win::window_ft_zero(wc) == doctest::Approx(ckb_want).epsilon(1e-13));
    // bspline: m / (sqrt(2 pi) s M_{2s}(0)), and sqrt(2 pi) v <= 1.5 sqrt(m)
    for (int m = 2; m <= 40; ++m) {
        const auto wb = win::WindowSpec::bspline(m);
        const double want =
            m / (std::sqrt(2.0 * pi) * wb.s * sf::cardinal_bspline(2 * wb.s, 0.0));
        CHECK(win::window_ft_zero(wb) == doctest::Approx(want).epsilon(1e-14));
        CHECK(std::sqrt(2.0 * pi) * win::window_ft_zero(wb) <= 1.5 * std::sqrt(double(m)));
    }
    // sinh bound: value < sqrt(m) / (sqrt(pi - delta) (1 - e^{-2 beta}))
    for (int m : {2, 6, 14, 30}) {
        const double delta = 1.0;
        const auto w = win::WindowSpec::for_band(win::WindowKind::Sinh, m, BandSpec(0, delta, 1));
        const double cap = std::sqrt(double(m)) /
                           (std::sqrt(pi - delta) * (1.0 - std::exp(-2.0 * w.beta)));
        CHECK(win::window_ft_zero(w) < cap);
    }
    // consistency with sqrt(2/pi) int_0^m window
    for (const auto& w : specs_for(7, 1.3)) {
        const double byquad =
            std::sqrt(2.0 / pi) *
            quad::integrate_adaptive([&](double t) { return win::window_value(w, t); }, 0.0,
                                     double(w.m), 1e-12);
        CHECK(win::window_ft_zero(w) == doctest::Approx(byquad).epsilon(1e-9));
    }
}

TEST_CASE("transforms are even and continuous across the branch point") {
    for (const auto& w : specs_for(11, 1.7)) {
        for (double tau : {0.2, 1.0, 2.9}) {
            CHECK(win::window_ft(w, tau) == win::window_ft(w, -tau));
        }
        if (w.kind == win::WindowKind::BSpline) continue;
        const double tau_branch = w.beta / w.m;  // nu = 1
        const double base = win::window_ft(w, tau_branch);
        for (double nu : {1.0 - 1e-6, 1.0 + 1e-6}) {
            const double tau = nu * w.beta / w.m;
            CHECK(std::abs(win::window_ft(w, tau) - base) <= 1e-8);
        }
    }
}

TEST_CASE("B-spline transform integrates to the window's unit peak") {
    // 1 = (2 pi)^{-1/2} int ft  (Fourier inversion at the origin), checked by
    // bulk quadrature plus the analytic tail
    for (int m : {4, 9, 14}) {
        const auto w = win::WindowSpec::bspline(m);
        const double X = 30.0;
        const double bulk =
            quad::integrate_adaptive([&](double tau) { return win::window_ft(w, tau); }, -X, X,
                                     1e-11);
        const double tail = 2.0 * bounds::window_ft_tail(w, X);
        CHECK((bulk + tail) / std::sqrt(2.0 * pi) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("B-spline window evaluation matches the exact recursion") {
    std::mt19937_64 rng(31);
    for (int m : {4, 14, 29}) {
        const auto w = win::WindowSpec::bspline(m);
        std::uniform_real_distribution<double> dist(-double(m) - 1.0, double(m) + 1.0);
        const double m0 = sf::cardinal_bspline(2 * w.s, 0.0);
        for (int i = 0; i < 1000; ++i) {
            const double u = dist(rng);
            const double want = sf::cardinal_bspline(2 * w.s, w.s * u / m) / m0;
            CHECK(std::abs(win::window_value(w, u) - want) <= 1e-13);
        }
        CHECK(win::window_value(w, 0.0) == 1.0);
        CHECK(win::window_value(w, double(m)) == 0.0);
        CHECK(win::window_value(w, -double(m)) == 0.0);
    }
}
