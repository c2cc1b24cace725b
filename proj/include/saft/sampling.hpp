// Shannon sampling series for the affine transform (truncated and
// window-regularized localized forms), grid evaluation, and the adversarial
// sample perturbation that exhibits the instability of the plain series.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "saft/saft_core.hpp"
#include "saft/windows.hpp"

namespace saft::sampling {

// sinc(t) = sin(pi t) / (pi t), 1 at the origin.  Integer arguments return
// exactly 0 or 1 so that interpolation at integers is exact, not within
// rounding of sin(pi k).
inline double sinc(double t) {
    if (!std::isfinite(t)) throw std::domain_error("sinc: non-finite argument");
    if (t == std::nearbyint(t)) return t == 0.0 ? 1.0 : 0.0;
    const double x = std::numbers::pi * t;
    if (std::abs(t) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Integer-grid samples: values[k] holds f(first_index + k).  noise_bound is
// present exactly when the samples were perturbed; the perturbation applied
// satisfied |eps_n| <= noise_bound by construction.
struct SampleSet {
    int first_index = 0;
    std::vector<Complex> values;
    std::optional<double> noise_bound;

    SampleSet(int first, std::vector<Complex> vals, std::optional<double> noise = std::nullopt)
        : first_index(first), values(std::move(vals)), noise_bound(noise) {
        if (values.empty()) throw std::invalid_argument("SampleSet: values must be nonempty");
        for (const Complex& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("SampleSet: non-finite sample");
    }

    int last_index() const { return first_index + static_cast<int>(values.size()) - 1; }
    bool contains(int n) const { return n >= first_index && n <= last_index(); }
    const Complex& at(int n) const { return values[static_cast<std::size_t>(n - first_index)]; }
};

// Required-samples-missing error; names the first missing run.
struct CoverageError : std::runtime_error {
    int missing_lo, missing_hi;
    CoverageError(int lo, int hi)
        : std::runtime_error("samples missing for indices [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]"),
          missing_lo(lo),
          missing_hi(hi) {}
};

namespace detail {

// Neumaier-compensated accumulation, one compensation per component.
struct KahanComplex {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

    void add(const Complex& v) {
        add_part(re, cre, v.real());
        add_part(im, cim, v.imag());
    }
    Complex sum() const { return {re + cre, im + cim}; }

  private:
    static void add_part(double& s, double& c, double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
};

inline Complex chirp_factor(const SaftParams& A, double t, double n) {
    // exp(-i a/(2b) (t^2 - n^2))
    return unit_phase(-A.chirp_rate() * 0.5 * (t * t - n * n));
}

}  // namespace detail

// Truncated sampling series over whatever samples are available:
//   sum_n f(n) exp(-i a/(2b) (t^2 - n^2)) sinc(t - n).
inline Complex shannon_truncated(const SaftParams& A, const SampleSet& samples, double t) {
    if (!std::isfinite(t)) throw std::domain_error("shannon_truncated: non-finite t");
    detail::KahanComplex acc;
    for (int n = samples.first_index; n <= samples.last_index(); ++n) {
        const double sn = sinc(t - n);
        if (sn == 0.0) continue;
        acc.add(samples.at(n) * detail::chirp_factor(A, t, n) * sn);
    }
    return acc.sum();
}

// Localized regularized series: only samples with |n - t| < m enter, and all
// of them must be present (silent truncation would corrupt error decay).
inline Complex regularized_reconstruct(const SaftParams& A, const SampleSet& samples,
                                       const win::WindowSpec& w, double t) {
    if (!std::isfinite(t)) throw std::domain_error("regularized_reconstruct: non-finite t");
    const int lo = static_cast<int>(std::floor(t - w.m)) + 1;  // smallest n with n - t > -m
    const int hi = static_cast<int>(std::ceil(t + w.m)) - 1;   // largest n with n - t < m
    if (lo < samples.first_index || hi > samples.last_index()) {
        const int mlo = lo < samples.first_index ? lo : samples.last_index() + 1;
        const int mhi = hi > samples.last_index() ? hi : samples.first_index - 1;
        throw CoverageError(mlo, mhi);
    }
    detail::KahanComplex acc;
    for (int n = lo; n <= hi; ++n) {
        const double wv = win::window_value(w, t - n);
        if (wv == 0.0) continue;
        const double sn = sinc(t - n);
        if (sn == 0.0 && t != static_cast<double>(n)) continue;
        acc.add(samples.at(n) * detail::chirp_factor(A, t, n) * (sn * wv));
    }
    return acc.sum();
}

// Equispaced grid over [interval.lo, interval.hi], endpoints included.  With a
// window each point evaluates the scalar localized series (identical values
// by construction).  The classical branch factors the work instead:
//   exp(-i a/(2b) (t^2 - n^2)) = exp(-i a/(2b) t^2) * exp(+i a/(2b) n^2)
// folds the n-dependent phase into the sample coefficients once, and
//   sinc(t - n) = (-1)^n sin(pi t) / (pi (t - n))
// needs a single sine per grid point.
inline std::vector<Complex> reconstruct_on_grid(const SaftParams& A, const SampleSet& samples,
                                                const std::optional<win::WindowSpec>& w,
                                                Interval interval, int grid_count) {
    if (grid_count < 2) throw std::invalid_argument("reconstruct_on_grid: grid_count must be >= 2");
    if (w) {
        // fail before the sweep if any grid point would be short of samples
        const int lo = static_cast<int>(std::floor(interval.lo - w->m)) + 1;
        const int hi = static_cast<int>(std::ceil(interval.hi + w->m)) - 1;
        if (lo < samples.first_index || hi > samples.last_index())
            throw CoverageError(lo < samples.first_index ? lo : samples.last_index() + 1,
                                hi > samples.last_index() ? hi : samples.first_index - 1);
        if (w->kind == win::WindowKind::BSpline)
            win::detail::bspline_window_table(w->s);  // build outside the sweep
    }
    const double theta = 0.5 * A.chirp_rate();
    std::vector<Complex> coeff;
    if (!w) {
        coeff.resize(samples.values.size());
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            const double n = static_cast<double>(samples.first_index + static_cast<int>(k));
            const double sgn = std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0;
            coeff[k] = samples.values[k] * unit_phase(theta * n * n) * sgn;
        }
    }

    std::vector<Complex> out(static_cast<std::size_t>(grid_count));
    const double step = interval.length() / (grid_count - 1);
    auto eval_range = [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            const double t = interval.lo + step * j;
            if (w) {
                out[static_cast<std::size_t>(j)] = regularized_reconstruct(A, samples, *w, t);
                continue;
            }
            if (t == std::nearbyint(t)) {
                out[static_cast<std::size_t>(j)] = shannon_truncated(A, samples, t);
                continue;
            }
            // reduce around the nearest integer first: sin(pi t) computed
            // directly has absolute error ~|t| eps, which is a catastrophic
            // relative error at grid points that fall 1e-12 from an integer
            const double tr = std::nearbyint(t);
            const double sign_t = std::fmod(tr, 2.0) == 0.0 ? 1.0 : -1.0;
            const double s_over_pi =
                sign_t * std::sin(std::numbers::pi * (t - tr)) / std::numbers::pi;
            detail::KahanComplex acc;
            for (int n = samples.first_index; n <= samples.last_index(); ++n) {
                acc.add(coeff[static_cast<std::size_t>(n - samples.first_index)] *
                        (s_over_pi / (t - n)));
            }
            out[static_cast<std::size_t>(j)] = unit_phase(-theta * t * t) * acc.sum();
        }
    };
    const unsigned hw = std::thread::hardware_concurrency();
    const int nthreads = static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 8));
    if (nthreads <= 1 || grid_count < 4096) {
        eval_range(0, grid_count);
        return out;
    }
    std::vector<std::thread> pool;
    const int chunk = (grid_count + nthreads - 1) / nthreads;
    for (int k = 0; k < nthreads; ++k) {
        const int j0 = k * chunk, j1 = std::min(grid_count, (k + 1) * chunk);
        if (j0 < j1) pool.emplace_back(eval_range, j0, j1);
    }
    for (auto& th : pool) th.join();
    return out;
}

// Worst-case perturbation for the truncated series: for |n| <= N
//   eps_n = eps (-1)^{n+1} sign(2n - 1) exp(-i a/(8b) (4 n^2 - 1)),
// chosen so that at t = 1/2 every term of the perturbation series aligns in
// phase and the series sums moduli.  Samples outside [-N, N] are unchanged.
inline SampleSet adversarial_samples(const SaftParams& A, const SampleSet& f_samples, int N,
                                     double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("adversarial_samples: eps must be positive");
    if (!f_samples.contains(-N) || !f_samples.contains(N))
        throw CoverageError(-N, N);
    std::vector<Complex> vals = f_samples.values;
    const double rate = A.a / (8.0 * A.b);
    for (int n = -N; n <= N; ++n) {
        const double sign = ((n % 2 == 0) ? -1.0 : 1.0) * (2 * n - 1 >= 0 ? 1.0 : -1.0);
        const Complex pert = eps * sign * unit_phase(-rate * (4.0 * n * n - 1.0));
        vals[static_cast<std::size_t>(n - f_samples.first_index)] += pert;
    }
    return SampleSet(f_samples.first_index, std::move(vals), eps);
}

}  // namespace saft::sampling
