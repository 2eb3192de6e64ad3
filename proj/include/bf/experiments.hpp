#pragma once

// Reproducible experiment driver: plain key=value configs in, CSV tables
// plus a manifest and a plot script out. Identical config and seed give
// byte-identical CSV bodies (wall time lives only in the manifest).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bf {

enum class Experiment {
    frame_bounds_sweep,
    balayage_curve,
    stft_roundtrip,
    semidiscrete_check,
    gabor_sweep,
    reconstruct,
};

const char* experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(const std::string& name);

struct ExperimentConfig {
    Experiment experiment = Experiment::frame_bounds_sweep;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int threads = 1;

    // grid (0 means the experiment default)
    int n = 0;
    double dx = 0.0;

    // spectrum
    std::string spectrum = "box";
    std::vector<double> half_extent = {0.5};
    double radius = 1.0;
    double epsilon = 0.0;

    // sampling set
    double delta = 1.0;
    double jitter = 0.0;
    std::vector<double> jitters;  // sweep values; empty selects the default
    double extent = 32.0;
    bool symmetric = true;

    // balayage
    int grid_density = 520;
    double regularization = -1.0;
    std::vector<double> probe = {0.7};
    std::vector<double> curve_deltas = {2.0, 1.0, 0.5};

    // stft / gabor
    int mixtures = 1;
    int num_signals = 20;
    std::vector<double> ab_values = {0.25, 0.5, 2.0};
    std::vector<double> phase_jitters = {0.1};

    // solvers
    double tol = 1e-9;
    int max_iter = 500;
    std::string method = "cg";  // cg | frame-algorithm
};

// key=value lines, '#' comments; throws std::invalid_argument with the
// offending line number on unknown keys or invalid ranges
ExperimentConfig parse_config(const std::string& text);

// one line per config key, for --help
std::string config_keys_help();

struct RunResult {
    int status = 0;  // 0 ok, 2 numerical failure (unconverged / bound violated)
    std::string message;
};

RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace bf
