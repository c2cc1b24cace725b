#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "saft/testbench.hpp"

using namespace saft;
constexpr double pi = std::numbers::pi;

TEST_CASE("test function: normalization, modulus, phase speed") {
    const auto tf = bench::make_test_function(1.5, pi / 4);
    CHECK(std::abs(tf(0.0)) == doctest::Approx(0.730297).epsilon(1e-6));
    CHECK(std::abs(tf(0.0)) == doctest::Approx(2.0 / std::sqrt(7.5)).epsilon(1e-12));
    for (double t : {0.2, 1.5, -7.3, 26.0}) {
        CHECK(std::abs(std::abs(tf(t)) - std::abs(tf.envelope(t))) <= 1e-15);
    }
    // smaller alpha means a larger |a/b| and faster phase rotation at t = 10
    auto phase_rate = [](double alpha) {
        const auto f = bench::make_test_function(1.5, alpha);
        const double h = 1e-5;
        const Complex z1 = f(10.0 - h), z2 = f(10.0 + h);
        return std::abs(std::arg(z2 / z1)) / (2.0 * h);
    };
    CHECK(phase_rate(pi / 20) > phase_rate(pi / 4));
    CHECK_THROWS_AS(bench::make_test_function(1.0, pi / 4), std::invalid_argument);
    CHECK_THROWS_AS(bench::make_test_function(2.5, pi / 4), std::invalid_argument);
    CHECK_THROWS_AS(bench::make_test_function(1.5, pi), std::invalid_argument);
    // rotation parameters satisfy the determinant constraint by construction
    const auto& A = tf.params;
    CHECK(std::abs(A.a * A.d - A.b * A.c - 1.0) <= 1e-15);
    CHECK(tf.delta() == doctest::Approx(pi / 1.5).epsilon(1e-15));
}

TEST_CASE("sampling the test function") {
    const auto tf = bench::make_test_function(1.5, pi / 4);
    const auto s = bench::take_samples(tf, 50, 14);
    CHECK(s.values.size() == 127);  // 2N + 2m - 1
    CHECK(s.first_index == 1 - 50 - 14);
    CHECK(s.last_index() == 50 + 14 - 1);
    CHECK(std::abs(s.at(0) - tf(0.0)) == 0.0);
    double energy = 0.0;
    for (int n = -10000; n <= 10000; ++n) energy += std::norm(tf(double(n)));
    CHECK(energy == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("noise injection") {
    const auto tf = bench::make_test_function(1.5, pi / 4);
    const auto base = bench::take_samples(tf, 10, 4);
    const auto silent = bench::add_noise(base, 0.0, 0.0, 99);
    CHECK(silent.noise_bound.has_value());
    CHECK(*silent.noise_bound == 0.0);
    for (int n = base.first_index; n <= base.last_index(); ++n)
        CHECK(silent.at(n) == base.at(n));

    const auto n1 = bench::add_noise(base, 1e-5, 5e-5, 1234);
    const auto n2 = bench::add_noise(base, 1e-5, 5e-5, 1234);
    for (int n = base.first_index; n <= base.last_index(); ++n) {
        CHECK(n1.at(n).real() == n2.at(n).real());
        CHECK(n1.at(n).imag() == n2.at(n).imag());
        const Complex eps = n1.at(n) - base.at(n);
        CHECK(std::abs(eps) >= std::sqrt(2.0) * 1e-5 - 1e-18);
        CHECK(std::abs(eps) <= std::sqrt(2.0) * 5e-5 + 1e-18);
        CHECK(eps.real() >= 1e-5);
        CHECK(eps.real() <= 5e-5);
        CHECK(eps.imag() >= 1e-5);
        CHECK(eps.imag() <= 5e-5);
    }
    CHECK(*n1.noise_bound == doctest::Approx(std::sqrt(2.0) * 5e-5).epsilon(1e-15));
    const auto other_seed = bench::add_noise(base, 1e-5, 5e-5, 1235);
    CHECK(other_seed.at(0) != n1.at(0));
    CHECK_THROWS_AS(bench::add_noise(base, 5e-5, 1e-5, 1), std::invalid_argument);
}

TEST_CASE("max error on a grid") {
    const auto tf = bench::make_test_function(1.5, pi / 4);
    const Interval iv(-3.0, 3.0);
    const int G = 61;
    std::vector<Complex> exact(G);
    const double step = iv.length() / (G - 1);
    for (int j = 0; j < G; ++j) exact[static_cast<std::size_t>(j)] = tf(iv.lo + step * j);
    CHECK(bench::max_error_on_grid(tf, exact, iv, G) == 0.0);
    auto bumped = exact;
    bumped[17] += Complex{1e-3, 0.0};
    CHECK(bench::max_error_on_grid(tf, bumped, iv, G) >= 1e-3);
    CHECK_THROWS_AS(bench::max_error_on_grid(tf, exact, iv, G + 1), std::invalid_argument);
}

TEST_CASE("error decay runs: filtering, determinism, dominance of sinh/ckb") {
    const auto tf = bench::make_test_function(1.5, pi / 4);
    bench::ExperimentConfig cfg;
    cfg.N = 20;
    cfg.m_list = {6, 10};
    cfg.kinds = {win::WindowKind::Sinh};
    cfg.include_classical = false;
    cfg.grid_count = 2001;
    const auto r1 = bench::run_error_decay(cfg, tf);
    CHECK(r1.cells.size() == 2);  // no classical baseline requested
    for (const auto& c : r1.cells) CHECK(c.window == "sinh");
    const auto r2 = bench::run_error_decay(cfg, tf);
    for (std::size_t i = 0; i < r1.cells.size(); ++i) {
        CHECK(r1.cells[i].max_error == r2.cells[i].max_error);  // bit-identical
    }

    cfg.m_list = {8, 14};
    cfg.kinds = {win::WindowKind::Sinh, win::WindowKind::CKB};
    cfg.include_classical = true;
    const auto r3 = bench::run_error_decay(cfg, tf);
    CHECK(r3.cells.size() == 6);
    // with enough localization the exponential windows beat the classical
    // series decisively (at small m the window is still too short for that)
    const auto* cls14 = r3.find("classical", 14);
    REQUIRE(cls14 != nullptr);
    for (const char* kind : {"sinh", "ckb"}) {
        const auto* cell = r3.find(kind, 14);
        REQUIRE(cell != nullptr);
        CHECK(cell->max_error < 0.1 * cls14->max_error);
        CHECK(cell->oversampling_ok);
    }
    // errors decay with m for the exponential windows
    CHECK(r3.find("sinh", 14)->max_error < r3.find("sinh", 8)->max_error);
    CHECK(r3.find("ckb", 14)->max_error < r3.find("ckb", 8)->max_error);

    bench::ExperimentConfig bad = cfg;
    bad.noise = bench::NoiseSpec{};
    CHECK_THROWS_AS(bench::run_error_decay(bad, tf), std::invalid_argument);
    bad = cfg;
    bad.m_list = {10, 6};
    CHECK_THROWS_AS(bench::run_error_decay(bad, tf), std::invalid_argument);
}

TEST_CASE("noise runs: zero noise reduces to decay, budget holds, determinism") {
    const auto tf = bench::make_test_function(1.5, pi / 4);
    bench::ExperimentConfig cfg;
    cfg.N = 20;
    cfg.m_list = {6};
    cfg.kinds = {win::WindowKind::Sinh, win::WindowKind::BSpline};
    cfg.include_classical = false;
    cfg.grid_count = 2001;

    bench::ExperimentConfig zero = cfg;
    zero.noise = bench::NoiseSpec{0.0, 0.0, 1, 7};
    const auto rz = bench::run_noise_experiment(zero, tf);
    bench::ExperimentConfig plain = cfg;
    const auto rd = bench::run_error_decay(plain, tf);
    for (const auto& cell : rz.cells) {
        const auto* ref = rd.find(cell.window, cell.m);
        REQUIRE(ref != nullptr);
        CHECK(cell.mean_max_error == ref->max_error);
        CHECK(cell.trials == 1);
    }

    bench::ExperimentConfig noisy = cfg;
    noisy.noise = bench::NoiseSpec{1e-5, 5e-5, 4, 42};
    const auto rn = bench::run_noise_experiment(noisy, tf);
    const auto rn2 = bench::run_noise_experiment(noisy, tf);
    for (std::size_t i = 0; i < rn.cells.size(); ++i) {
        CHECK(rn.cells[i].mean_max_error == rn2.cells[i].mean_max_error);
        CHECK(rn.cells[i].trials == 4);
        double mean = 0.0;
        for (double e : rn.cells[i].per_trial) mean += e;
        mean /= rn.cells[i].per_trial.size();
        CHECK(std::abs(mean - rn.cells[i].mean_max_error) <= 1e-15);
        // perturbation budget: mean <= noise-free + noise_bound * (2 + sqrt(2 pi) ft(0))
        const auto* ref = rd.find(rn.cells[i].window, rn.cells[i].m);
        REQUIRE(ref != nullptr);
        const auto w = win::WindowSpec::for_band(win::kind_from_name(rn.cells[i].window),
                                                 rn.cells[i].m, BandSpec(0, tf.delta(), 1));
        const double budget =
            ref->max_error + std::sqrt(2.0) * 5e-5 * bounds::robustness_coeff(w);
        CHECK(rn.cells[i].mean_max_error <= budget);
    }
    CHECK_THROWS_AS(bench::run_noise_experiment(plain, tf), std::invalid_argument);
}

TEST_CASE("instability report") {
    const auto tf = bench::make_test_function(1.5, pi / 4);
    const auto rep = bench::run_instability(tf, {10, 100}, 1e-3);
    REQUIRE(rep.rows.size() == 2);
    const auto& r10 = rep.rows[0];
    CHECK(r10.lower_bound == doctest::Approx(1e-3 * 2.7158).epsilon(1e-4));
    CHECK(r10.measured >= r10.lower_bound);
    CHECK(r10.measured <= r10.upper_bound + 1e-15);
    CHECK(std::abs(r10.exact_half - r10.formula_half) <= 1e-12);
    CHECK(rep.rows[1].measured > r10.measured);  // grows with N
    CHECK_THROWS_AS(bench::run_instability(tf, {10}, 0.0), std::invalid_argument);
}
