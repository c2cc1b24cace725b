// Experiment engine: the bandlimited chirped test function, sampling, noise
// injection, max-error measurement on a grid, error-decay and noise-robustness
// experiments, and the instability demonstration for the unregularized series.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "saft/bounds.hpp"
#include "saft/sampling.hpp"
#include "saft/saft_core.hpp"
#include "saft/windows.hpp"

namespace saft::bench {

// Test function f = C_{-a/b} g with real envelope
//   g(t) = 2/sqrt(5h) [ S_0(t) + (1/2) S_1(t) ],  S_k(t) = sinc((t - k h)/h),
// so g has unit L2 norm, lives in the band [-pi/h, pi/h], and f is
// band-limited for the rotation parameters a = cos(alpha), b = sin(alpha).
// The chirp direction matches the reconstruction series' phase convention
// exp(-i a/(2b)(t^2 - n^2)); with it the localized series converges to f.
struct TestFunction {
    double h;
    double alpha;
    SaftParams params;
    ComplexSignal signal;

    double delta() const { return std::numbers::pi / h; }
    double envelope(double t) const {
        return 2.0 / std::sqrt(5.0 * h) *
               (sampling::sinc(t / h) + 0.5 * sampling::sinc((t - h) / h));
    }
    Complex operator()(double t) const { return signal(t); }
};

inline TestFunction make_test_function(double h, double alpha) {
    if (!(h > 1.0) || h > 2.0)
        throw std::invalid_argument("make_test_function: h must lie in (1, 2]");
    if (std::abs(std::sin(alpha)) <= 1e-12)
        throw std::invalid_argument("make_test_function: alpha must not be a multiple of pi");
    SaftParams A = SaftParams::rotation(alpha);
    const double rate = A.chirp_rate();
    ComplexSignal sig{[h, rate](double t) {
                          const double g = 2.0 / std::sqrt(5.0 * h) *
                                           (sampling::sinc(t / h) +
                                            0.5 * sampling::sinc((t - h) / h));
                          return unit_phase(-0.5 * rate * t * t) * g;
                      },
                      "bandlimited chirp test function (h=" + std::to_string(h) + ")"};
    return {h, alpha, A, std::move(sig)};
}

// Samples f(n) for n = 1-N-m ... N+m-1: exactly the 2N+2m-1 values the
// localized reconstruction needs on [-N, N].
inline sampling::SampleSet take_samples(const TestFunction& tf, int N, int m) {
    if (N < 1 || m < 1) throw std::invalid_argument("take_samples: N, m must be positive");
    const int first = 1 - N - m;
    const int count = 2 * N + 2 * m - 1;
    std::vector<Complex> vals(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) vals[static_cast<std::size_t>(k)] = tf(first + k);
    return sampling::SampleSet(first, std::move(vals));
}

// Independent uniform noise on real and imaginary parts, both drawn from
// [low, high].  The generator maps the raw 64-bit stream to doubles directly
// so a fixed seed reproduces bit-identical samples on any platform.
// noise_bound = sqrt(2) * high bounds every |eps_n|.
inline sampling::SampleSet add_noise(const sampling::SampleSet& samples, double low, double high,
                                     std::uint64_t seed) {
    if (!(low >= 0.0) || !(high >= low))
        throw std::invalid_argument("add_noise: need 0 <= low <= high");
    std::mt19937_64 rng(seed);
    auto uniform = [&]() {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return low + (high - low) * u;
    };
    std::vector<Complex> vals = samples.values;
    for (Complex& v : vals) {
        const double re = uniform();
        const double im = uniform();
        v += Complex{re, im};
    }
    return sampling::SampleSet(samples.first_index, std::move(vals),
                               std::sqrt(2.0) * high);
}

// max_j | f(t_j) - r_j | over the equispaced grid with endpoints included.
inline double max_error_on_grid(const TestFunction& tf, const std::vector<Complex>& recon,
                                Interval interval, int grid_count) {
    if (static_cast<int>(recon.size()) != grid_count)
        throw std::invalid_argument("max_error_on_grid: reconstruction length != grid_count");
    const double step = interval.length() / (grid_count - 1);
    double worst = 0.0;
    for (int j = 0; j < grid_count; ++j) {
        const double t = interval.lo + step * j;
        worst = std::max(worst, std::abs(tf(t) - recon[static_cast<std::size_t>(j)]));
    }
    return worst;
}

struct NoiseSpec {
    double magnitude_low = 1e-5;
    double magnitude_high = 5e-5;
    int trials = 100;
    std::uint64_t seed = 42;
};

struct ExperimentConfig {
    int N = 50;
    std::vector<int> m_list{14, 17, 20, 26, 29};
    std::vector<win::WindowKind> kinds{win::WindowKind::BSpline, win::WindowKind::Sinh,
                                       win::WindowKind::CKB};
    bool include_classical = true;
    int grid_count = 100000;
    std::optional<NoiseSpec> noise;

    void validate() const {
        if (N < 1) throw std::invalid_argument("ExperimentConfig: N must be positive");
        if (m_list.empty()) throw std::invalid_argument("ExperimentConfig: m_list is empty");
        for (std::size_t i = 1; i < m_list.size(); ++i)
            if (m_list[i] <= m_list[i - 1])
                throw std::invalid_argument("ExperimentConfig: m_list must be ascending");
        if (grid_count < 2) throw std::invalid_argument("ExperimentConfig: grid_count >= 2");
        if (noise && !(noise->magnitude_low <= noise->magnitude_high))
            throw std::invalid_argument("ExperimentConfig: noise magnitudes out of order");
        if (noise && noise->trials < 1)
            throw std::invalid_argument("ExperimentConfig: trials must be positive");
    }
};

// One measured cell.  For noise-free runs trials = 1 and mean equals max.
// For noisy runs max_error is the worst trial and mean_max_error the average.
struct CellResult {
    std::string window;  // "bspline" | "sinh" | "ckb" | "classical"
    int m = 0;
    double max_error = 0.0;
    double mean_max_error = 0.0;
    int trials = 1;
    bool oversampling_ok = false;
    std::vector<double> per_trial;
};

struct ExperimentResult {
    std::vector<CellResult> cells;

    const CellResult* find(const std::string& window, int m) const {
        for (const CellResult& c : cells)
            if (c.window == window && c.m == m) return &c;
        return nullptr;
    }
};

namespace detail {

inline bool cell_oversampling_ok(win::WindowKind kind, int m, double delta) {
    const win::WindowSpec w = win::WindowSpec::for_band(kind, m, BandSpec(0.0, delta, 1.0));
    return bounds::oversampling_check(w, delta).ok;
}

}  // namespace detail

// Noise-free error decay over the (kind, m) grid, plus the classical
// truncated-series baseline per m when requested.
inline ExperimentResult run_error_decay(const ExperimentConfig& cfg, const TestFunction& tf) {
    cfg.validate();
    if (cfg.noise) throw std::invalid_argument("run_error_decay: config carries noise settings");
    const Interval interval{-static_cast<double>(cfg.N), static_cast<double>(cfg.N)};
    ExperimentResult result;
    for (win::WindowKind kind : cfg.kinds) {
        for (int m : cfg.m_list) {
            const auto samples = take_samples(tf, cfg.N, m);
            const win::WindowSpec w =
                win::WindowSpec::for_band(kind, m, BandSpec(0.0, tf.delta(), 1.0));
            const auto recon = sampling::reconstruct_on_grid(tf.params, samples, w, interval,
                                                             cfg.grid_count);
            const double err = max_error_on_grid(tf, recon, interval, cfg.grid_count);
            result.cells.push_back({w.name(), m, err, err, 1,
                                    detail::cell_oversampling_ok(kind, m, tf.delta()),
                                    {err}});
        }
    }
    if (cfg.include_classical) {
        for (int m : cfg.m_list) {
            const auto samples = take_samples(tf, cfg.N, m);
            const auto recon = sampling::reconstruct_on_grid(tf.params, samples, std::nullopt,
                                                             interval, cfg.grid_count);
            const double err = max_error_on_grid(tf, recon, interval, cfg.grid_count);
            result.cells.push_back(
                {"classical", m, err, err, 1, tf.delta() < std::numbers::pi, {err}});
        }
    }
    return result;
}

// Noisy reconstruction averaged over trials.  Trial k draws its noise with
// seed base+k, so trials are reproducible individually; all windows of a
// given (m, trial) share the same noisy samples and stay comparable.
inline ExperimentResult run_noise_experiment(const ExperimentConfig& cfg, const TestFunction& tf) {
    cfg.validate();
    if (!cfg.noise) throw std::invalid_argument("run_noise_experiment: config lacks noise settings");
    const NoiseSpec& ns = *cfg.noise;
    const Interval interval{-static_cast<double>(cfg.N), static_cast<double>(cfg.N)};
    ExperimentResult result;
    auto ensure_cell = [&](const std::string& name, int m, bool os_ok) -> CellResult& {
        for (CellResult& c : result.cells)
            if (c.window == name && c.m == m) return c;
        result.cells.push_back({name, m, 0.0, 0.0, 0, os_ok, {}});
        return result.cells.back();
    };
    for (int m : cfg.m_list) {
        const auto base = take_samples(tf, cfg.N, m);
        for (int trial = 0; trial < ns.trials; ++trial) {
            const auto noisy = add_noise(base, ns.magnitude_low, ns.magnitude_high,
                                         ns.seed + static_cast<std::uint64_t>(trial));
            for (win::WindowKind kind : cfg.kinds) {
                const win::WindowSpec w =
                    win::WindowSpec::for_band(kind, m, BandSpec(0.0, tf.delta(), 1.0));
                const auto recon = sampling::reconstruct_on_grid(tf.params, noisy, w, interval,
                                                                 cfg.grid_count);
                const double err = max_error_on_grid(tf, recon, interval, cfg.grid_count);
                ensure_cell(w.name(), m, detail::cell_oversampling_ok(kind, m, tf.delta()))
                    .per_trial.push_back(err);
            }
            if (cfg.include_classical) {
                const auto recon = sampling::reconstruct_on_grid(tf.params, noisy, std::nullopt,
                                                                 interval, cfg.grid_count);
                const double err = max_error_on_grid(tf, recon, interval, cfg.grid_count);
                ensure_cell("classical", m, tf.delta() < std::numbers::pi)
                    .per_trial.push_back(err);
            }
        }
    }
    for (CellResult& c : result.cells) {
        c.trials = static_cast<int>(c.per_trial.size());
        double worst = 0.0, sum = 0.0;
        for (double e : c.per_trial) {
            worst = std::max(worst, e);
            sum += e;
        }
        c.max_error = worst;
        c.mean_max_error = sum / c.trials;
    }
    return result;
}

// Instability of the plain truncated series under the adversarial
// perturbation: the measured sup of the perturbation series must sit between
// the analytic lower and upper envelopes, and at t = 1/2 it equals the
// closed-form odd-harmonic sum exactly.
struct InstabilityRow {
    int N;
    double eps;
    double measured;      // sup over a grid containing t = 1/2
    double lower_bound;   // eps ((2/pi) ln N + 5/4)
    double upper_bound;   // eps ((2/pi)[ln N + 2 ln 2 + gamma] + (N+2)/(pi N (N+1)))
    double exact_half;    // |perturbation series at t = 1/2|
    double formula_half;  // eps (2/((2N+1) pi) + (4/pi) sum 1/(2n-1))
};

struct InstabilityReport {
    std::vector<InstabilityRow> rows;
};

inline InstabilityReport run_instability(const TestFunction& tf, const std::vector<int>& N_list,
                                         double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("run_instability: eps must be positive");
    InstabilityReport rep;
    for (int N : N_list) {
        // the difference between perturbed and exact series is the
        // perturbation series itself; evaluate it via zero base samples
        std::vector<Complex> zeros(static_cast<std::size_t>(2 * N + 1), Complex{0.0, 0.0});
        const sampling::SampleSet zero_set(-N, std::move(zeros));
        const auto pert = sampling::adversarial_samples(tf.params, zero_set, N, eps);
        double measured = 0.0;
        const int grid = 3001;  // covers [-1, 2] and hits 1/2 exactly
        for (int j = 0; j < grid; ++j) {
            const double t = -1.0 + 3.0 * j / (grid - 1);
            measured = std::max(measured, std::abs(sampling::shannon_truncated(tf.params, pert, t)));
        }
        const double exact_half = std::abs(sampling::shannon_truncated(tf.params, pert, 0.5));
        measured = std::max(measured, exact_half);
        double harmonic = 0.0;
        for (int n = N; n >= 1; --n) harmonic += 1.0 / (2.0 * n - 1.0);
        const double formula_half =
            eps * (2.0 / ((2.0 * N + 1.0) * std::numbers::pi) +
                   4.0 / std::numbers::pi * harmonic);
        const auto env = bounds::instability_bounds(N);
        rep.rows.push_back({N, eps, measured, eps * env.lower, eps * env.upper, exact_half,
                            formula_half});
    }
    return rep;
}

}  // namespace saft::bench
