// balayage-frames: batch driver for the frame / balayage / STFT experiments.
//
//   balayage-frames <subcommand> --config <file> [--out <dir>] [--seed <n>]
//                   [--threads <n>]
//
// Subcommands mirror the experiment names; BF_THREADS is the fallback for
// --threads. Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bf/experiments.hpp"
#include "bf/version.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"balayage-frames: non-uniform sampling, Fourier frame and "
                 "STFT experiments"};
    app.set_version_flag("--version", bf::version_string);
    app.footer(bf::config_keys_help());
    app.require_subcommand(1);

    std::string config_path, out_override;
    int threads_override = 0;
    long long seed_override = -1;
    bool have_seed = false;

    std::vector<std::pair<CLI::App*, bf::Experiment>> subs;
    for (bf::Experiment e :
         {bf::Experiment::frame_bounds_sweep, bf::Experiment::balayage_curve,
          bf::Experiment::stft_roundtrip, bf::Experiment::semidiscrete_check,
          bf::Experiment::gabor_sweep, bf::Experiment::reconstruct}) {
        CLI::App* sub = app.add_subcommand(bf::experiment_name(e),
                                           "run the experiment of the same name");
        sub->add_option("--config", config_path, "key=value config file")
            ->required();
        sub->add_option("--out", out_override, "output directory override");
        sub->add_option("--seed", seed_override, "seed override")
            ->each([&](const std::string&) { have_seed = true; });
        sub->add_option("--threads", threads_override,
                        "concurrent sweep rows (fallback: BF_THREADS)");
        subs.emplace_back(sub, e);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        bf::ExperimentConfig cfg = bf::parse_config(read_file(config_path));

        // the subcommand decides what runs, regardless of the config's key
        for (const auto& [sub, e] : subs)
            if (sub->parsed()) cfg.experiment = e;

        if (!out_override.empty()) cfg.out_dir = out_override;
        if (have_seed) cfg.seed = static_cast<std::uint64_t>(seed_override);
        if (threads_override > 0) {
            cfg.threads = threads_override;
        } else if (const char* env = std::getenv("BF_THREADS")) {
            int t = std::atoi(env);
            if (t > 0) cfg.threads = t;
        }

        bf::RunResult res = bf::run_experiment(cfg);
        if (res.status != 0)
            std::fprintf(stderr, "numerical failure: %s\n", res.message.c_str());
        return res.status;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
}
