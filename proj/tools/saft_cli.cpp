// Command-line front end: error-decay and noise experiments, bound tables,
// the instability demonstration, reconstruction from sample files, and a
// self-test of the numerically asserted inequalities.
//
// Exit codes: 0 success, 1 numerical or coverage failure, 2 usage error.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "saft/bounds.hpp"
#include "saft/io.hpp"
#include "saft/sampling.hpp"
#include "saft/testbench.hpp"
#include "saft/windows.hpp"

namespace {

using namespace saft;
using nlohmann::json;
using Clock = std::chrono::system_clock;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

// "a,b,c", "lo:hi:step", or a single value
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        int lo = 0, hi = 0, step = 1;
        if (std::sscanf(text.c_str(), "%d:%d:%d", &lo, &hi, &step) != 3 || step <= 0)
            throw CLI::ValidationError("expected lo:hi:step with positive step, got " + text);
        for (int v = lo; v <= hi; v += step) out.push_back(v);
    } else {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t next = text.find(',', pos);
            if (next == std::string::npos) next = text.size();
            out.push_back(std::stoi(text.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    if (out.empty()) throw CLI::ValidationError("empty list: " + text);
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
            throw CLI::ValidationError("expected lo:hi:step with positive step, got " + text);
        for (double v = lo; v <= hi + 1e-12 * step; v += step) out.push_back(v);
    } else {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t next = text.find(',', pos);
            if (next == std::string::npos) next = text.size();
            out.push_back(std::stod(text.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    if (out.empty()) throw CLI::ValidationError("empty list: " + text);
    return out;
}

std::vector<win::WindowKind> parse_kinds(const std::string& text) {
    std::vector<win::WindowKind> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(win::kind_from_name(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw CLI::ValidationError("no window kinds given");
    return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

struct ManifestScope {
    io::RunManifest m;
    std::string manifest_path;

    ManifestScope(std::string command, std::vector<std::string> argv, json config,
                  std::optional<std::uint64_t> seed, const std::string& out_path)
        : manifest_path(out_path + ".manifest.json") {
        m.command = std::move(command);
        m.argv = std::move(argv);
        m.config = std::move(config);
        m.seed = seed;
        m.started = Clock::now();
    }

    void finish(std::vector<std::string> outputs) {
        m.finished = Clock::now();
        m.wall_seconds = std::chrono::duration<double>(m.finished - m.started).count();
        m.outputs = std::move(outputs);
        io::write_manifest(manifest_path, m);
    }
};

struct ExperimentFlags {
    double h = 1.5;
    double alpha = std::numbers::pi / 4;
    int N = 50;
    std::string m_text = "14,17,20,26,29";
    int grid = 100000;
    std::string windows_text = "bspline,sinh,ckb";
    bool classical = false;
    std::string out;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& fl) {
    cmd->set_help_flag("--help", "print help");  // frees --h for the envelope scale
    cmd->add_option("--h", fl.h, "envelope scale, in (1, 2]")->check(CLI::Range(1.0 + 1e-9, 2.0));
    cmd->add_option("--alpha", fl.alpha, "rotation angle in radians (sin(alpha) != 0)");
    cmd->add_option("--N", fl.N, "half length of the reconstruction interval")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--m", fl.m_text, "window sizes: list or lo:hi:step");
    cmd->add_option("--grid", fl.grid, "grid point count")->check(CLI::Range(2, 100000000));
    cmd->add_option("--windows", fl.windows_text, "subset of bspline,sinh,ckb");
    cmd->add_flag("--classical", fl.classical, "also measure the unwindowed truncated series");
}

json experiment_config_json(const ExperimentFlags& fl, const bench::ExperimentConfig& cfg) {
    json j;
    j["h"] = fl.h;
    j["alpha"] = fl.alpha;
    j["N"] = cfg.N;
    j["m_list"] = cfg.m_list;
    std::vector<std::string> kinds;
    for (auto k : cfg.kinds) kinds.emplace_back(win::kind_name(k));
    j["windows"] = kinds;
    j["classical"] = cfg.include_classical;
    j["grid_count"] = cfg.grid_count;
    if (cfg.noise) {
        j["noise"] = {{"low", cfg.noise->magnitude_low},
                      {"high", cfg.noise->magnitude_high},
                      {"trials", cfg.noise->trials},
                      {"seed", cfg.noise->seed}};
    }
    return j;
}

std::optional<double> closed_form_bound(const std::string& window, int m, double delta) {
    if (window == "bspline")
        return bounds::bound_bspline(m, win::WindowSpec::default_spline_half_order(m), delta);
    if (window == "sinh") return delta < std::numbers::pi ? std::optional<double>(
                                     bounds::bound_sinh(m, delta))
                                                          : std::nullopt;
    if (window == "ckb")
        return delta < std::numbers::pi ? std::optional<double>(bounds::bound_ckb(m, delta))
                                        : std::nullopt;
    return std::nullopt;  // classical
}

int run_exp_decay(const ExperimentFlags& fl, const std::vector<std::string>& argv) {
    bench::ExperimentConfig cfg;
    cfg.N = fl.N;
    cfg.m_list = parse_int_list(fl.m_text);
    cfg.kinds = parse_kinds(fl.windows_text);
    cfg.include_classical = fl.classical;
    cfg.grid_count = fl.grid;
    cfg.validate();
    auto tf = bench::make_test_function(fl.h, fl.alpha);
    ManifestScope scope("exp-decay", argv, experiment_config_json(fl, cfg), std::nullopt, fl.out);
    const auto result = bench::run_error_decay(cfg, tf);
    std::string csv = "window,m,max_error,oversampling_ok,bound\n";
    for (const auto& c : result.cells) {
        const auto bound = c.window == "classical"
                               ? std::nullopt
                               : closed_form_bound(c.window, c.m, tf.delta());
        csv += c.window + ',' + io::format_int(c.m) + ',' + io::format_double(c.max_error) + ',' +
               bool_str(c.oversampling_ok) + ',' + (bound ? io::format_double(*bound) : "") + '\n';
    }
    io::write_file_atomic(fl.out, csv);
    scope.finish({fl.out});
    return kExitOk;
}

int run_exp_noise(const ExperimentFlags& fl, const bench::NoiseSpec& ns,
                  const std::vector<std::string>& argv) {
    bench::ExperimentConfig cfg;
    cfg.N = fl.N;
    cfg.m_list = parse_int_list(fl.m_text);
    cfg.kinds = parse_kinds(fl.windows_text);
    cfg.include_classical = fl.classical;
    cfg.grid_count = fl.grid;
    cfg.noise = ns;
    cfg.validate();
    auto tf = bench::make_test_function(fl.h, fl.alpha);
    ManifestScope scope("exp-noise", argv, experiment_config_json(fl, cfg), ns.seed, fl.out);
    const auto result = bench::run_noise_experiment(cfg, tf);
    std::string csv = "window,m,mean_max_error,trials,noise_low,noise_high,seed\n";
    for (const auto& c : result.cells) {
        csv += c.window + ',' + io::format_int(c.m) + ',' + io::format_double(c.mean_max_error) +
               ',' + io::format_int(c.trials) + ',' + io::format_double(ns.magnitude_low) + ',' +
               io::format_double(ns.magnitude_high) + ',' +
               io::format_int(static_cast<long long>(ns.seed)) + '\n';
    }
    io::write_file_atomic(fl.out, csv);
    scope.finish({fl.out});
    return kExitOk;
}

int run_bounds(const std::string& windows_text, const std::string& m_text,
               const std::string& delta_text, int grid, const std::string& out,
               const std::vector<std::string>& argv) {
    const auto kinds = parse_kinds(windows_text);
    const auto ms = parse_int_list(m_text);
    const auto deltas = parse_double_list(delta_text);
    for (double d : deltas) {
        if (!(d > 0.0) || d > std::numbers::pi)
            throw CLI::ValidationError("--delta must lie in (0, pi], got " +
                                       io::format_double(d));
    }
    for (int m : ms)
        if (m < 2) throw CLI::ValidationError("--m values must be >= 2");
    json cfg;
    cfg["windows"] = windows_text;
    cfg["m"] = ms;
    cfg["delta"] = deltas;
    cfg["grid"] = grid;
    ManifestScope scope("bounds", argv, cfg, std::nullopt, out);
    std::string csv = "kind,m,delta,e_numeric,e_bound,oversampling_ok,robust_coeff\n";
    for (auto kind : kinds) {
        for (int m : ms) {
            for (double d : deltas) {
                if (kind != win::WindowKind::BSpline && d >= std::numbers::pi - 1e-15)
                    throw CLI::ValidationError(
                        "sinh/ckb bounds need delta < pi (beta would vanish)");
                const auto rep = bounds::make_bound_report(kind, m, d, grid);
                csv += std::string(win::kind_name(kind)) + ',' + io::format_int(m) + ',' +
                       io::format_double(d) + ',' + io::format_double(rep.e_numeric) + ',' +
                       (rep.e_closed_form ? io::format_double(*rep.e_closed_form) : "") + ',' +
                       bool_str(rep.oversampling_ok) + ',' +
                       io::format_double(rep.robustness_coeff) + '\n';
            }
        }
    }
    io::write_file_atomic(out, csv);
    scope.finish({out});
    return kExitOk;
}

int run_instability(const std::string& n_text, double eps, double h, double alpha,
                    const std::string& out, const std::vector<std::string>& argv) {
    const auto Ns = parse_int_list(n_text);
    for (int N : Ns)
        if (N < 1) throw CLI::ValidationError("--N values must be >= 1");
    if (!(eps > 0.0)) throw CLI::ValidationError("--eps must be positive");
    auto tf = bench::make_test_function(h, alpha);
    json cfg;
    cfg["N"] = Ns;
    cfg["eps"] = eps;
    cfg["h"] = h;
    cfg["alpha"] = alpha;
    ManifestScope scope("instability", argv, cfg, std::nullopt, out);
    const auto rep = bench::run_instability(tf, Ns, eps);
    std::string csv = "N,eps,measured,lower_bound,upper_bound\n";
    for (const auto& r : rep.rows) {
        if (r.measured < r.lower_bound)
            throw std::runtime_error("instability row N=" + std::to_string(r.N) +
                                     " fell below the guaranteed lower bound");
        csv += io::format_int(r.N) + ',' + io::format_double(r.eps) + ',' +
               io::format_double(r.measured) + ',' + io::format_double(r.lower_bound) + ',' +
               io::format_double(r.upper_bound) + '\n';
    }
    io::write_file_atomic(out, csv);
    scope.finish({out});
    return kExitOk;
}

struct ReconstructFlags {
    std::string input;
    std::string window = "sinh";
    int m = 14;
    int s = 0;  // 0 = default rule
    double delta = 2.0 * std::numbers::pi / 3.0;
    double a = 0.0, b = 1.0, c = -1.0, d = 0.0, p = 0.0, q = 0.0;
    double from = -1.0, to = 1.0;
    int grid = 201;
    std::string out;
};

int run_reconstruct(const ReconstructFlags& fl, const std::vector<std::string>& argv) {
    const auto params = SaftParams::make(fl.a, fl.b, fl.c, fl.d, fl.p, fl.q);
    if (!(fl.from < fl.to)) throw CLI::ValidationError("--from must be less than --to");
    win::WindowSpec w = [&] {
        const auto kind = win::kind_from_name(fl.window);
        if (kind == win::WindowKind::BSpline)
            return fl.s > 0 ? win::WindowSpec::bspline(fl.m, fl.s) : win::WindowSpec::bspline(fl.m);
        if (!(fl.delta > 0.0) || fl.delta >= std::numbers::pi)
            throw CLI::ValidationError("--delta must lie in (0, pi) for sinh/ckb windows");
        return win::WindowSpec::for_band(kind, fl.m, BandSpec(fl.p, fl.delta, fl.b));
    }();
    json cfg;
    cfg["input"] = fl.input;
    cfg["window"] = fl.window;
    cfg["m"] = fl.m;
    cfg["delta"] = fl.delta;
    cfg["params"] = {fl.a, fl.b, fl.c, fl.d, fl.p, fl.q};
    cfg["from"] = fl.from;
    cfg["to"] = fl.to;
    cfg["grid"] = fl.grid;
    ManifestScope scope("reconstruct", argv, cfg, std::nullopt, fl.out);
    const auto rows = io::read_sample_file(fl.input);
    const int need_lo = static_cast<int>(std::floor(fl.from - w.m)) + 1;
    const int need_hi = static_cast<int>(std::ceil(fl.to + w.m)) - 1;
    const auto samples = io::to_sample_set(rows, need_lo, need_hi);
    const auto recon =
        sampling::reconstruct_on_grid(params, samples, w, Interval(fl.from, fl.to), fl.grid);
    std::string csv = "t,re,im\n";
    const double step = (fl.to - fl.from) / (fl.grid - 1);
    for (int j = 0; j < fl.grid; ++j) {
        const double t = fl.from + step * j;
        csv += io::format_double(t) + ',' + io::format_double(recon[j].real()) + ',' +
               io::format_double(recon[j].imag()) + '\n';
    }
    io::write_file_atomic(fl.out, csv);
    scope.finish({fl.out});
    return kExitOk;
}

int run_selftest(bool as_json, bool inject_fault, const std::string& out) {
    const std::vector<double> betas{std::numbers::pi, 5.0, 10.0, 20.0, 40.0, 60.0};
    const std::vector<double> Ts{1.5, 2.0, 10.0, 100.0, 200.0};
    auto report = bounds::verify_proof_inequalities(betas, Ts);
    if (inject_fault && !report.checks.empty()) {
        report.checks.front().margin = -report.checks.front().margin - 1.0;
        report.checks.front().ok = false;
        report.all_ok = false;
    }

    // core invariants, cheap enough to run every time
    struct Inv {
        std::string name;
        double margin;
        bool ok;
    };
    std::vector<Inv> invs;
    auto add_inv = [&](const std::string& name, double margin) {
        invs.push_back({name, margin, margin >= 0.0});
    };
    {
        double worst = 1.0;
        for (double t : {0.3, 1.7, -2.5, 10.25}) {
            double sum = 0.0;
            for (int n = static_cast<int>(t) - 2000; n <= static_cast<int>(t) + 2000; ++n) {
                const double s = sampling::sinc(t - n);
                sum += s * s;
            }
            worst = std::min(worst, 1e-3 - std::abs(sum - 1.0));
        }
        add_inv("sinc energy partition", worst);
    }
    {
        double worst = 1.0;
        for (auto kind : {win::WindowKind::BSpline, win::WindowKind::Sinh, win::WindowKind::CKB}) {
            const auto w = win::WindowSpec::for_band(kind, 5, BandSpec(0.0, 1.0, 1.0));
            for (int i = 0; i <= 200; ++i) {
                const double t = 5.0 * i / 200;
                const double v = win::window_value(w, t);
                worst = std::min(worst, std::min(v + 1e-15, 1.0 + 1e-15 - v));
                worst = std::min(worst, 1e-13 - std::abs(v - win::window_value(w, -t)));
            }
            worst = std::min(worst, std::abs(win::window_value(w, 0.0)) - 1.0 + 1e-15);
        }
        add_inv("window class membership", worst);
    }
    {
        const auto r = bounds::instability_bounds(10);
        const auto tf = bench::make_test_function(1.5, std::numbers::pi / 4);
        const auto rep = bench::run_instability(tf, {10}, 1e-3);
        add_inv("instability envelope",
                std::min(rep.rows[0].measured - rep.rows[0].lower_bound,
                         1e-12 - std::abs(rep.rows[0].exact_half - rep.rows[0].formula_half)));
        add_inv("instability bounds ordered", r.upper - r.lower);
    }

    bool all_ok = report.all_ok;
    for (const auto& i : invs) all_ok = all_ok && i.ok;

    if (as_json) {
        json j;
        j["all_ok"] = all_ok;
        j["claims"] = json::array();
        for (const auto& c : report.checks) {
            json e;
            e["claim"] = c.claim;
            e["beta"] = c.beta;
            if (c.T) e["T"] = *c.T;
            e["value"] = c.value;
            e["margin"] = c.margin;
            e["ok"] = c.ok;
            j["claims"].push_back(e);
        }
        j["invariants"] = json::array();
        for (const auto& i : invs)
            j["invariants"].push_back({{"name", i.name}, {"margin", i.margin}, {"ok", i.ok}});
        const std::string text = j.dump(2) + "\n";
        if (out.empty())
            std::fputs(text.c_str(), stdout);
        else
            io::write_file_atomic(out, text);
    } else {
        std::printf("numeric inequality checks: %zu\n", report.checks.size());
        for (const auto& c : report.checks) {
            if (c.T)
                std::printf("  [%s] %-24s beta=%-8.4g T=%-6.4g margin=%.3e\n",
                            c.ok ? "ok" : "VIOLATED", c.claim.c_str(), c.beta, *c.T, c.margin);
            else
                std::printf("  [%s] %-24s beta=%-8.4g margin=%.3e\n", c.ok ? "ok" : "VIOLATED",
                            c.claim.c_str(), c.beta, c.margin);
        }
        for (const auto& i : invs)
            std::printf("  [%s] %-30s margin=%.3e\n", i.ok ? "ok" : "VIOLATED", i.name.c_str(),
                        i.margin);
        std::printf("selftest: %s\n", all_ok ? "PASS" : "FAIL");
    }
    return all_ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularized sampling for the special affine Fourier transform"};
    app.require_subcommand(1);
    std::vector<std::string> raw_args(argv + 1, argv + argc);

    ExperimentFlags decay_fl;
    decay_fl.out = "decay.csv";
    auto* decay = app.add_subcommand("exp-decay", "noise-free error decay experiment");
    add_experiment_flags(decay, decay_fl);
    decay->add_option("--out", decay_fl.out, "output CSV path");

    ExperimentFlags noise_fl;
    noise_fl.out = "noise.csv";
    bench::NoiseSpec noise_spec;
    auto* noise = app.add_subcommand("exp-noise", "noisy-samples experiment, averaged over trials");
    add_experiment_flags(noise, noise_fl);
    noise->add_option("--out", noise_fl.out, "output CSV path");
    noise->add_option("--trials", noise_spec.trials, "number of noise draws per cell")
        ->check(CLI::PositiveNumber);
    noise->add_option("--noise-low", noise_spec.magnitude_low, "uniform lower bound for Re/Im");
    noise->add_option("--noise-high", noise_spec.magnitude_high, "uniform upper bound for Re/Im");
    noise->add_option("--seed", noise_spec.seed, "base RNG seed; trial k uses seed+k");

    std::string b_windows = "bspline,sinh,ckb", b_m = "8,14,20,26", b_delta = "1.0";
    int b_grid = 2049;
    std::string b_out = "bounds.csv";
    auto* bnd = app.add_subcommand("bounds", "numeric error constants against closed-form bounds");
    bnd->add_option("--windows", b_windows, "subset of bspline,sinh,ckb");
    bnd->add_option("--m", b_m, "window sizes: list or lo:hi:step");
    bnd->add_option("--delta", b_delta, "band half-widths: list or lo:hi:step");
    bnd->add_option("--grid", b_grid, "max-search grid size")->check(CLI::Range(128, 1 << 22));
    bnd->add_option("--out", b_out, "output CSV path");

    std::string i_N = "10,100,1000";
    double i_eps = 1e-3, i_h = 1.5, i_alpha = std::numbers::pi / 4;
    std::string i_out = "instability.csv";
    auto* inst = app.add_subcommand("instability", "adversarial-noise lower-bound demonstration");
    inst->set_help_flag("--help", "print help");
    inst->add_option("--N", i_N, "perturbation half-widths: list or lo:hi:step");
    inst->add_option("--eps", i_eps, "noise amplitude (positive)");
    inst->add_option("--h", i_h, "test function envelope scale")->check(CLI::Range(1.0 + 1e-9, 2.0));
    inst->add_option("--alpha", i_alpha, "test function rotation angle");
    inst->add_option("--out", i_out, "output CSV path");

    ReconstructFlags rec_fl;
    rec_fl.out = "reconstruction.csv";
    auto* rec = app.add_subcommand("reconstruct", "regularized reconstruction from a sample file");
    rec->add_option("--input", rec_fl.input, "CSV sample file with rows n,re,im")->required();
    rec->add_option("--window", rec_fl.window, "bspline, sinh, or ckb");
    rec->add_option("--m", rec_fl.m, "window size")->check(CLI::Range(2, 1000));
    rec->add_option("--s", rec_fl.s, "B-spline half order override (0 = default rule)");
    rec->add_option("--delta", rec_fl.delta, "band half-width for sinh/ckb beta = m(pi-delta)");
    rec->add_option("--a", rec_fl.a, "transform parameter a");
    rec->add_option("--b", rec_fl.b, "transform parameter b (nonzero)");
    rec->add_option("--c", rec_fl.c, "transform parameter c");
    rec->add_option("--d", rec_fl.d, "transform parameter d");
    rec->add_option("--p", rec_fl.p, "transform parameter p");
    rec->add_option("--q", rec_fl.q, "transform parameter q");
    rec->add_option("--from", rec_fl.from, "grid start");
    rec->add_option("--to", rec_fl.to, "grid end");
    rec->add_option("--grid", rec_fl.grid, "grid point count")->check(CLI::Range(2, 100000000));
    rec->add_option("--out", rec_fl.out, "output CSV path");

    bool st_json = false, st_fault = false;
    std::string st_out;
    auto* st = app.add_subcommand("selftest", "verify the numeric inequality claims and core invariants");
    st->add_flag("--json", st_json, "emit a machine-readable report");
    st->add_option("--out", st_out, "write the JSON report to a file");
    st->add_flag("--inject-fault", st_fault, "negative-control hook: force one violation")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (decay->parsed()) return run_exp_decay(decay_fl, raw_args);
        if (noise->parsed()) return run_exp_noise(noise_fl, noise_spec, raw_args);
        if (bnd->parsed()) return run_bounds(b_windows, b_m, b_delta, b_grid, b_out, raw_args);
        if (inst->parsed()) return run_instability(i_N, i_eps, i_h, i_alpha, i_out, raw_args);
        if (rec->parsed()) return run_reconstruct(rec_fl, raw_args);
        if (st->parsed()) return run_selftest(st_json, st_fault, st_out);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const io::SampleFileError& e) {
        std::fprintf(stderr, "error: malformed sample file, %s\n", e.what());
        return kExitUsage;
    } catch (const sampling::CoverageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
