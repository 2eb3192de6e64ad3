#include "bf/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bf/balayage.hpp"
#include "bf/frames.hpp"
#include "bf/io.hpp"
#include "bf/stft.hpp"
#include "bf/version.hpp"

namespace bf {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double unit_uniform(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// three modulated Gaussian bumps, concentrated well inside the grid
GridSignal gaussian_mixture(const UniformGrid& grid, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    GridSignal f = make_signal(grid, Domain::time);
    const int d = grid.dim;
    for (int bump = 0; bump < 3; ++bump) {
        std::vector<double> center(d), freq(d);
        for (int i = 0; i < d; ++i) {
            center[i] = (unit_uniform(gen) - 0.5) * grid.span(i) / 2.0;
            freq[i] = (unit_uniform(gen) - 0.5) * (1.0 / grid.spacing[i]) / 2.0;
        }
        double width = 0.7 + 0.8 * unit_uniform(gen);
        cplx amp = std::polar(0.5 + unit_uniform(gen), two_pi * unit_uniform(gen));
        std::vector<int> idx(d, 0);
        for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
            double n2 = 0.0, phase = 0.0;
            for (int i = 0; i < d; ++i) {
                double c = grid.coord(i, idx[i]) - center[i];
                n2 += c * c;
                phase += grid.coord(i, idx[i]) * freq[i];
            }
            f.values[flat] += amp * std::exp(-std::numbers::pi * n2 / (width * width)) *
                              std::polar(1.0, two_pi * phase);
            int axis = d - 1;
            while (axis >= 0 && ++idx[axis] >= grid.count) idx[axis--] = 0;
        }
    }
    return f;
}

// random element of PW_Lambda: white coefficients on the in-band dual grid
GridSignal random_pw_signal(const UniformGrid& grid, const SpectrumSet& lambda,
                            std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    GridSignal F = make_signal(grid.dual(), Domain::frequency);
    const int d = grid.dim;
    std::vector<int> idx(d, 0);
    std::vector<double> gamma(d);
    for (std::size_t flat = 0; flat < F.values.size(); ++flat) {
        for (int i = 0; i < d; ++i) gamma[i] = F.grid.coord(i, idx[i]);
        if (spectrum_membership(lambda, gamma))
            F.values[flat] = cplx{2.0 * unit_uniform(gen) - 1.0,
                                  2.0 * unit_uniform(gen) - 1.0};
        int axis = d - 1;
        while (axis >= 0 && ++idx[axis] >= grid.count) idx[axis--] = 0;
    }
    GridSignal f = dft(F, Direction::inverse);
    f.domain = Domain::time;
    return f;
}

double rel_error(const GridSignal& got, const GridSignal& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.values.size(); ++i) {
        num += std::norm(got.values[i] - want.values[i]);
        den += std::norm(want.values[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

SpectrumSet spectrum_from_config(const ExperimentConfig& cfg) {
    if (cfg.spectrum == "ball")
        return ball_spectrum(1, cfg.radius, cfg.epsilon);
    return box_spectrum(cfg.half_extent, cfg.epsilon);
}

// run fn(0..count-1) with at most `threads` in flight; results kept in order
template <typename Fn>
std::vector<std::vector<std::string>> ordered_rows(int count, int threads, Fn&& fn) {
    std::vector<std::vector<std::string>> rows(count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) rows[i] = fn(i);
        return rows;
    }
    for (int base = 0; base < count; base += threads) {
        int batch = std::min(threads, count - base);
        std::vector<std::future<std::vector<std::string>>> futs;
        futs.reserve(batch);
        for (int j = 0; j < batch; ++j)
            futs.push_back(std::async(std::launch::async, fn, base + j));
        for (int j = 0; j < batch; ++j) rows[base + j] = futs[j].get();
    }
    return rows;
}

std::string fmt(double v) { return format_double(v); }

struct TableResult {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int status = 0;
    std::string message = "ok";
};

// ---------------------------------------------------------------- sweeps

TableResult run_frame_bounds_sweep(const ExperimentConfig& cfg) {
    const int n = cfg.n > 0 ? cfg.n : 520;
    const double dx = cfg.dx > 0.0 ? cfg.dx : 0.125;
    UniformGrid grid = make_grid(1, n, dx);
    SpectrumSet lambda = spectrum_from_config(cfg);
    std::vector<double> etas = cfg.jitters;
    if (etas.empty())
        for (double r : {0.0, 0.1, 0.2, 0.3, 0.4}) etas.push_back(r * cfg.delta);

    TableResult out;
    out.header = {"jitter", "separation", "A", "B", "condition", "iterations"};
    out.rows = ordered_rows(
        static_cast<int>(etas.size()), cfg.threads, [&](int i) {
            SeparatedSet E = jittered_lattice(1, cfg.delta, etas[i], cfg.extent,
                                              cfg.symmetric, cfg.seed);
            FrameReport rep = frame_bounds(grid, E, lambda);
            return std::vector<std::string>{fmt(etas[i]),      fmt(E.separation),
                                            fmt(rep.lower_A),  fmt(rep.upper_B),
                                            fmt(rep.condition),
                                            std::to_string(rep.iterations)};
        });
    return out;
}

TableResult run_balayage_curve(const ExperimentConfig& cfg) {
    SpectrumSet lambda = spectrum_from_config(cfg);
    std::vector<double> deltas = cfg.curve_deltas;
    if (deltas.empty())
        throw std::invalid_argument("balayage-curve: curve_deltas must be nonempty");

    // build nested lattices by thinning the finest one, so inclusion is exact
    const double fine = deltas.back();
    for (double d : deltas) {
        double ratio = d / fine;
        if (std::abs(ratio - std::llround(ratio)) > 1e-9)
            throw std::invalid_argument(
                "balayage-curve: curve_deltas must be integer multiples of the last");
    }
    const int kmax = static_cast<int>(std::floor(cfg.extent / fine));
    std::vector<SeparatedSet> family;
    for (double d : deltas) {
        const int step = static_cast<int>(std::llround(d / fine));
        std::vector<std::vector<double>> pts;
        for (int k = -kmax; k <= kmax; ++k)
            if (k % step == 0) pts.push_back({k * fine});
        family.push_back(make_separated_set(1, std::move(pts)));
    }

    AtomicMeasure mu;
    mu.dim = 1;
    for (double p : cfg.probe) {
        mu.points.push_back({p});
        mu.weights.push_back(cplx{1.0, 0.0});
    }

    auto rows = balayage_residual_curve(mu, family, lambda, cfg.grid_density,
                                        cfg.regularization);
    TableResult out;
    out.header = {"set_size", "separation", "residual", "condition_estimate"};
    for (const auto& r : rows)
        out.rows.push_back({std::to_string(r.set_size), fmt(r.separation),
                            fmt(r.residual), fmt(r.condition_estimate)});
    return out;
}

TableResult run_stft_roundtrip(const ExperimentConfig& cfg) {
    const int n = cfg.n > 0 ? cfg.n : 512;
    const double dx = cfg.dx > 0.0 ? cfg.dx : 1.0 / 16.0;
    UniformGrid grid = make_grid(1, n, dx);
    GridSignal g = gaussian_window(grid);
    const double tol = 1e-8;

    TableResult out;
    out.header = {"signal", "moyal_rel_err", "roundtrip_rel_err"};
    std::atomic<bool> failed{false};
    out.rows = ordered_rows(cfg.mixtures, cfg.threads, [&](int i) {
        GridSignal f = gaussian_mixture(grid, cfg.seed + static_cast<std::uint64_t>(i));
        STFTField V = stft_forward(f, g);
        double nf2 = l2_norm(f);
        nf2 *= nf2;
        double nv = stft_l2_norm(V);
        double moyal = std::abs(nv * nv - nf2) / nf2;
        GridSignal back = stft_inverse(V, g);
        double rt = rel_error(back, f);
        if (moyal > tol || rt > tol) failed = true;
        return std::vector<std::string>{std::to_string(i), fmt(moyal), fmt(rt)};
    });
    if (failed) {
        out.status = 2;
        out.message = "round-trip or Moyal error above 1e-8";
    }
    return out;
}

TableResult run_semidiscrete_check(const ExperimentConfig& cfg) {
    const int n = cfg.n > 0 ? cfg.n : 264;
    const double dx = cfg.dx > 0.0 ? cfg.dx : 0.125;
    UniformGrid grid = make_grid(1, n, dx);
    SpectrumSet lambda = spectrum_from_config(cfg);
    const double ext = cfg.extent > 0.0 ? std::min(cfg.extent, grid.span(0) / 2.0 - 0.5)
                                        : 16.0;
    SeparatedSet E = jittered_lattice(1, cfg.delta, cfg.jitter, ext, cfg.symmetric,
                                      cfg.seed);
    GridSignal g = gaussian_window(grid);

    // C over one separation cell (gamma axis is flat; kept for the record)
    UniformGrid probe = make_grid(2, 16, cfg.delta / 16.0);
    const double C = upper_constant_C(E, probe).value;
    const double feich = feichtinger_norm(g).value;
    const double upper = C * feich;

    // frequency-side energy: translations of G0 along the dual grid are
    // on-grid rotations; modulation by -x runs over E
    GridSignal G = dft(g, Direction::forward);
    GridSignal G0d = gaussian_window(G.grid, Domain::frequency);

    TableResult out;
    out.header = {"signal", "energy_ratio", "upper_bound", "slack",
                  "freqside_rel_diff"};
    std::atomic<bool> failed{false};
    out.rows = ordered_rows(cfg.num_signals, cfg.threads, [&](int s) {
        GridSignal f =
            random_pw_signal(grid, lambda, cfg.seed + static_cast<std::uint64_t>(s));
        double nf2 = l2_norm(f);
        nf2 *= nf2;
        double energy = semidiscrete_energy(f, g, E);
        double ratio = energy / nf2;

        GridSignal F = dft(f, Direction::forward);
        double efreq = 0.0;
        const double dual_cell = G.grid.cell_volume();
        for (const auto& x : E.points) {
            std::vector<std::vector<double>> pts;
            pts.reserve(G.values.size());
            for (std::size_t wf = 0; wf < G.values.size(); ++wf) {
                double w = G.grid.coord(0, static_cast<int>(wf));
                pts.push_back({w, -x[0]});
            }
            std::vector<cplx> vals = stft_at(F, G0d, pts);
            double acc = 0.0;
            for (const cplx& v : vals) acc += std::norm(v);
            efreq += dual_cell * acc;
        }
        double fdiff = std::abs(efreq - energy) / std::max(energy, 1e-300);
        if (ratio > upper * (1.0 + 1e-12) || fdiff > 1e-8) failed = true;
        return std::vector<std::string>{std::to_string(s), fmt(ratio), fmt(upper),
                                        fmt(upper - ratio), fmt(fdiff)};
    });
    if (failed) {
        out.status = 2;
        out.message = "upper bound violated or side mismatch above 1e-8";
    }
    return out;
}

TableResult run_gabor_sweep(const ExperimentConfig& cfg) {
    struct RowSpec {
        double label;
        double ab;
        double eta;
    };
    std::vector<RowSpec> specs;
    for (double ab : cfg.ab_values) specs.push_back({ab, ab, 0.0});
    for (double eta : cfg.phase_jitters) specs.push_back({eta, 0.5, eta});

    TableResult out;
    out.header = {"ab_product_or_jitter", "A", "B", "condition",
                  "C_constant", "feichtinger_norm", "reconstruction_error"};
    std::atomic<bool> failed{false};
    out.rows = ordered_rows(
        static_cast<int>(specs.size()), cfg.threads, [&](int i) {
            const RowSpec& rs = specs[i];
            const double a = std::sqrt(rs.ab);
            const int n = cfg.n > 0 ? cfg.n : 128;
            UniformGrid grid = make_grid(1, n, a / 8.0);
            GridSignal g = gaussian_window(grid);

            std::vector<std::vector<double>> pts;
            std::mt19937_64 gen(cfg.seed);
            for (int ks = -8; ks < 8; ++ks)
                for (int kb = -8; kb < 8; ++kb) {
                    double s = ks * a + rs.eta * (2.0 * unit_uniform(gen) - 1.0);
                    double sig = kb * a + rs.eta * (2.0 * unit_uniform(gen) - 1.0);
                    pts.push_back({s, sig});
                }
            GaborSystem sys = make_gabor_system(g, make_separated_set(2, pts));
            FrameReport rep = gabor_frame_bounds(sys);

            std::vector<std::vector<double>> tpts;
            for (int ks = -8; ks < 8; ++ks) tpts.push_back({ks * a});
            UniformGrid probe = make_grid(2, 16, a / 16.0);
            const double C = upper_constant_C(make_separated_set(1, tpts), probe).value;
            const double feich = feichtinger_norm(g).value;

            std::string rec = "nan";
            if (rep.is_frame()) {
                GridSignal f = gaussian_mixture(grid, cfg.seed + 17);
                auto coeffs = gabor_coefficients(f, sys);
                auto r = gabor_reconstruct(coeffs, sys, cfg.tol, cfg.max_iter);
                if (!r.converged) failed = true;
                rec = fmt(rel_error(r.signal, f));
            }
            return std::vector<std::string>{fmt(rs.label),    fmt(rep.lower_A),
                                            fmt(rep.upper_B), fmt(rep.condition),
                                            fmt(C),           fmt(feich),
                                            rec};
        });
    if (failed) {
        out.status = 2;
        out.message = "gabor reconstruction did not converge";
    }
    return out;
}

TableResult run_reconstruct(const ExperimentConfig& cfg) {
    const int n = cfg.n > 0 ? cfg.n : 520;
    const double dx = cfg.dx > 0.0 ? cfg.dx : 0.125;
    UniformGrid grid = make_grid(1, n, dx);
    SpectrumSet lambda = spectrum_from_config(cfg);
    SeparatedSet E = jittered_lattice(1, cfg.delta, cfg.jitter, cfg.extent,
                                      cfg.symmetric, cfg.seed);

    GridSignal f = gaussian_mixture(grid, cfg.seed);
    GridSignal truth = mask_to_spectrum(dft(f, Direction::forward), lambda);
    std::vector<cplx> samples = analysis_map(truth, E, lambda);

    ReconstructOptions opts;
    opts.method = cfg.method == "frame-algorithm"
                      ? ReconstructMethod::frame_algorithm
                      : ReconstructMethod::conjugate_gradient;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    ReconstructResult r = frame_reconstruct(samples, grid, E, lambda, opts);

    TableResult out;
    out.header = {"method", "iterations", "residual", "rel_error", "converged"};
    out.rows.push_back({cfg.method, std::to_string(r.iterations), fmt(r.residual),
                        fmt(rel_error(r.signal, truth)),
                        r.converged ? "1" : "0"});
    if (!r.converged) {
        out.status = 2;
        out.message = "reconstruction did not converge within max_iter";
    }
    return out;
}

const char* plot_template(Experiment e) {
    switch (e) {
        case Experiment::frame_bounds_sweep:
            return "columns = ['jitter', 'A', 'B']\n"
                   "ax.set_xlabel('jitter')\nax.set_ylabel('frame bounds')\n";
        case Experiment::balayage_curve:
            return "columns = ['set_size', 'residual']\n"
                   "ax.set_xlabel('set size')\nax.set_ylabel('residual')\n"
                   "ax.set_yscale('log')\n";
        case Experiment::stft_roundtrip:
            return "columns = ['signal', 'moyal_rel_err', 'roundtrip_rel_err']\n"
                   "ax.set_xlabel('signal')\nax.set_ylabel('relative error')\n"
                   "ax.set_yscale('log')\n";
        case Experiment::semidiscrete_check:
            return "columns = ['signal', 'energy_ratio', 'upper_bound']\n"
                   "ax.set_xlabel('signal')\nax.set_ylabel('energy ratio')\n";
        case Experiment::gabor_sweep:
            return "columns = ['ab_product_or_jitter', 'A', 'B']\n"
                   "ax.set_xlabel('ab or jitter')\nax.set_ylabel('frame bounds')\n";
        case Experiment::reconstruct:
            return "columns = ['iterations', 'residual']\n"
                   "ax.set_xlabel('iterations')\nax.set_ylabel('residual')\n"
                   "ax.set_yscale('log')\n";
    }
    return "";
}

void write_plot_script(const std::filesystem::path& dir, Experiment e) {
    std::ofstream os(dir / "plot.py");
    os << "#!/usr/bin/env python3\n"
       << "# reads " << experiment_name(e) << ".csv and renders a quick look\n"
       << "import csv\n"
       << "import matplotlib\n"
       << "matplotlib.use('Agg')\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "with open('" << experiment_name(e) << ".csv') as fh:\n"
       << "    table = list(csv.DictReader(fh))\n\n"
       << "fig, ax = plt.subplots()\n"
       << plot_template(e)
       << "xs = [float(row[columns[0]]) for row in table]\n"
       << "for col in columns[1:]:\n"
       << "    ys = [float(row[col]) for row in table]\n"
       << "    ax.plot(xs, ys, marker='o', label=col)\n"
       << "ax.legend()\n"
       << "fig.savefig('" << experiment_name(e) << ".png', dpi=150)\n";
}

std::string normalized_config(const ExperimentConfig& cfg) {
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += format_double(v[i]);
        }
        return s;
    };
    std::map<std::string, std::string> kv;
    kv["experiment"] = experiment_name(cfg.experiment);
    kv["out"] = cfg.out_dir;
    kv["seed"] = std::to_string(cfg.seed);
    kv["threads"] = std::to_string(cfg.threads);
    kv["n"] = std::to_string(cfg.n);
    kv["dx"] = format_double(cfg.dx);
    kv["spectrum"] = cfg.spectrum;
    kv["half_extent"] = join(cfg.half_extent);
    kv["radius"] = format_double(cfg.radius);
    kv["epsilon"] = format_double(cfg.epsilon);
    kv["delta"] = format_double(cfg.delta);
    kv["jitter"] = format_double(cfg.jitter);
    kv["jitters"] = join(cfg.jitters);
    kv["extent"] = format_double(cfg.extent);
    kv["symmetric"] = cfg.symmetric ? "true" : "false";
    kv["grid_density"] = std::to_string(cfg.grid_density);
    kv["regularization"] = format_double(cfg.regularization);
    kv["probe"] = join(cfg.probe);
    kv["curve_deltas"] = join(cfg.curve_deltas);
    kv["mixtures"] = std::to_string(cfg.mixtures);
    kv["num_signals"] = std::to_string(cfg.num_signals);
    kv["ab_values"] = join(cfg.ab_values);
    kv["phase_jitters"] = join(cfg.phase_jitters);
    kv["tol"] = format_double(cfg.tol);
    kv["max_iter"] = std::to_string(cfg.max_iter);
    kv["method"] = cfg.method;
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

}  // namespace

const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::frame_bounds_sweep: return "frame-bounds-sweep";
        case Experiment::balayage_curve: return "balayage-curve";
        case Experiment::stft_roundtrip: return "stft-roundtrip";
        case Experiment::semidiscrete_check: return "semidiscrete-check";
        case Experiment::gabor_sweep: return "gabor-sweep";
        case Experiment::reconstruct: return "reconstruct";
    }
    return "unknown";
}

std::optional<Experiment> experiment_from_name(const std::string& name) {
    for (Experiment e : {Experiment::frame_bounds_sweep, Experiment::balayage_curve,
                         Experiment::stft_roundtrip, Experiment::semidiscrete_check,
                         Experiment::gabor_sweep, Experiment::reconstruct})
        if (name == experiment_name(e)) return e;
    return std::nullopt;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    bool have_experiment = false;

    auto fail = [](int line, const std::string& what) {
        throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
    };
    auto parse_double = [&](int line, const std::string& key,
                            const std::string& v) {
        try {
            std::size_t used = 0;
            double d = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument("trailing");
            return d;
        } catch (...) {
            fail(line, "invalid numeric value for '" + key + "'");
        }
        return 0.0;
    };
    auto parse_int = [&](int line, const std::string& key, const std::string& v) {
        try {
            std::size_t used = 0;
            long long d = std::stoll(v, &used);
            if (used != v.size()) throw std::invalid_argument("trailing");
            return d;
        } catch (...) {
            fail(line, "invalid integer value for '" + key + "'");
        }
        return 0LL;
    };
    auto parse_list = [&](int line, const std::string& key, const std::string& v) {
        std::vector<double> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(parse_double(line, key, item));
        if (out.empty()) fail(line, "empty list for '" + key + "'");
        return out;
    };
    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };

    std::stringstream stream(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(stream, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");

        if (key == "experiment") {
            auto e = experiment_from_name(value);
            if (!e) fail(lineno, "unknown experiment '" + value + "'");
            cfg.experiment = *e;
            have_experiment = true;
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(lineno, key, value));
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_int(lineno, key, value));
            if (cfg.threads < 1) fail(lineno, "threads must be >= 1");
        } else if (key == "n") {
            cfg.n = static_cast<int>(parse_int(lineno, key, value));
            if (cfg.n < 2 || cfg.n % 2 != 0) fail(lineno, "n must be even and >= 2");
        } else if (key == "dx") {
            cfg.dx = parse_double(lineno, key, value);
            if (!(cfg.dx > 0.0)) fail(lineno, "dx must be > 0");
        } else if (key == "spectrum") {
            if (value != "box" && value != "ball")
                fail(lineno, "spectrum must be box or ball");
            cfg.spectrum = value;
        } else if (key == "half_extent") {
            cfg.half_extent = parse_list(lineno, key, value);
        } else if (key == "radius") {
            cfg.radius = parse_double(lineno, key, value);
            if (!(cfg.radius > 0.0)) fail(lineno, "radius must be > 0");
        } else if (key == "epsilon") {
            cfg.epsilon = parse_double(lineno, key, value);
            if (cfg.epsilon < 0.0) fail(lineno, "epsilon must be >= 0");
        } else if (key == "delta") {
            cfg.delta = parse_double(lineno, key, value);
            if (!(cfg.delta > 0.0)) fail(lineno, "delta must be > 0");
        } else if (key == "jitter") {
            cfg.jitter = parse_double(lineno, key, value);
            if (cfg.jitter < 0.0) fail(lineno, "jitter must be >= 0");
        } else if (key == "jitters") {
            cfg.jitters = parse_list(lineno, key, value);
        } else if (key == "extent") {
            cfg.extent = parse_double(lineno, key, value);
            if (!(cfg.extent > 0.0)) fail(lineno, "extent must be > 0");
        } else if (key == "symmetric") {
            if (value == "true" || value == "1") cfg.symmetric = true;
            else if (value == "false" || value == "0") cfg.symmetric = false;
            else fail(lineno, "symmetric must be true or false");
        } else if (key == "grid_density") {
            cfg.grid_density = static_cast<int>(parse_int(lineno, key, value));
            if (cfg.grid_density < 1) fail(lineno, "grid_density must be >= 1");
        } else if (key == "regularization") {
            cfg.regularization = parse_double(lineno, key, value);
        } else if (key == "probe") {
            cfg.probe = parse_list(lineno, key, value);
        } else if (key == "curve_deltas") {
            cfg.curve_deltas = parse_list(lineno, key, value);
        } else if (key == "mixtures") {
            cfg.mixtures = static_cast<int>(parse_int(lineno, key, value));
            if (cfg.mixtures < 1) fail(lineno, "mixtures must be >= 1");
        } else if (key == "num_signals") {
            cfg.num_signals = static_cast<int>(parse_int(lineno, key, value));
            if (cfg.num_signals < 1) fail(lineno, "num_signals must be >= 1");
        } else if (key == "ab_values") {
            cfg.ab_values = parse_list(lineno, key, value);
        } else if (key == "phase_jitters") {
            cfg.phase_jitters = parse_list(lineno, key, value);
        } else if (key == "tol") {
            cfg.tol = parse_double(lineno, key, value);
            if (!(cfg.tol > 0.0)) fail(lineno, "tol must be > 0");
        } else if (key == "max_iter") {
            cfg.max_iter = static_cast<int>(parse_int(lineno, key, value));
            if (cfg.max_iter < 1) fail(lineno, "max_iter must be >= 1");
        } else if (key == "method") {
            if (value != "cg" && value != "frame-algorithm")
                fail(lineno, "method must be cg or frame-algorithm");
            cfg.method = value;
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }

    if (!have_experiment) throw std::invalid_argument("experiment key required");
    if (cfg.jitter >= cfg.delta / 2.0)
        throw std::invalid_argument("jitter must be < delta/2");
    for (double eta : cfg.jitters)
        if (eta < 0.0 || eta >= cfg.delta / 2.0)
            throw std::invalid_argument("jitter must be < delta/2");
    return cfg;
}

std::string config_keys_help() {
    return
        "config keys (key=value, one per line, '#' comments):\n"
        "  experiment     frame-bounds-sweep | balayage-curve | stft-roundtrip |\n"
        "                 semidiscrete-check | gabor-sweep | reconstruct (required)\n"
        "  out            output directory (default out)\n"
        "  seed           RNG seed, fully determines generated sets (default 1)\n"
        "  threads        concurrent sweep rows (default 1)\n"
        "  n              grid points per axis, even (default per experiment)\n"
        "  dx             grid spacing (default per experiment)\n"
        "  spectrum       box | ball (default box)\n"
        "  half_extent    box half-widths, comma list (default 0.5)\n"
        "  radius         ball radius (default 1)\n"
        "  epsilon        spectrum enlargement, >= 0 (default 0)\n"
        "  delta          sampling lattice spacing (default 1)\n"
        "  jitter         lattice jitter, must be < delta/2 (default 0)\n"
        "  jitters        sweep jitter list (default 0,.1,.2,.3,.4 x delta)\n"
        "  extent         lattice truncation radius (default 32)\n"
        "  symmetric      mirror the set so E = -E (default true)\n"
        "  grid_density   balayage rows per unit frequency (default 520)\n"
        "  regularization ridge weight; negative selects 1e-10*rows (default -1)\n"
        "  probe          atom positions of the probe measure (default 0.7)\n"
        "  curve_deltas   lattice spacings of the nested family (default 2,1,0.5)\n"
        "  mixtures       stft-roundtrip signal count (default 1)\n"
        "  num_signals    semidiscrete-check signal count (default 20)\n"
        "  ab_values      gabor-sweep lattice densities (default 0.25,0.5,2)\n"
        "  phase_jitters  gabor-sweep jitter rows at ab=0.5 (default 0.1)\n"
        "  tol            solver tolerance (default 1e-9)\n"
        "  max_iter       solver iteration cap (default 500)\n"
        "  method         cg | frame-algorithm (default cg)\n";
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    const auto t0 = std::chrono::steady_clock::now();

    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + cfg.out_dir);

    TableResult table;
    switch (cfg.experiment) {
        case Experiment::frame_bounds_sweep: table = run_frame_bounds_sweep(cfg); break;
        case Experiment::balayage_curve: table = run_balayage_curve(cfg); break;
        case Experiment::stft_roundtrip: table = run_stft_roundtrip(cfg); break;
        case Experiment::semidiscrete_check: table = run_semidiscrete_check(cfg); break;
        case Experiment::gabor_sweep: table = run_gabor_sweep(cfg); break;
        case Experiment::reconstruct: table = run_reconstruct(cfg); break;
    }

    const std::string csv_name = std::string(experiment_name(cfg.experiment)) + ".csv";
    write_table_csv((dir / csv_name).string(), table.header, table.rows);
    write_plot_script(dir, cfg.experiment);

    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0).count();
    std::ofstream manifest(dir / "manifest.txt");
    manifest << "version=" << version_string << "\n"
             << normalized_config(cfg) << "wall_ms=" << wall << "\n"
             << "status=" << table.status << "\n"
             << "note=" << table.message << "\n";

    return {table.status, table.message};
}

}  // namespace bf
