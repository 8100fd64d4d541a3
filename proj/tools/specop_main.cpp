#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "experiments.hpp"

namespace {

// exit codes: 0 all verdicts pass, 1 a verdict failed, 2 nothing ran or an
// I/O failure, 3 invalid config or hypothesis violation
constexpr int kExitPass = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitNothingRan = 2;
constexpr int kExitInvalid = 3;

const char* experiment_blurb(const std::string& name) {
    if (name == "heat-spectrum")
        return "spectrum and decay fit of the Gaussian-kernel Fourier operator";
    if (name == "fourier-spectrum")
        return "spectrum and decay fit of a modulated negative-order Fourier operator";
    if (name == "besov-equiv")
        return "wavelet sequence norm vs frequency-block norm over a fixed suite";
    if (name == "pseudo-bound")
        return "operator norm probes of an order-zero symbol across a grid ladder";
    if (name == "smoothing")
        return "time-scaled smoothing constants of the heat semigroup";
    if (name == "symbol-check")
        return "finite-difference check of a symbol's declared class bounds";
    if (name == "wavelet-transport")
        return "wavelet-basis matrix of an operator with decay diagnostics";
    return "";
}

int run_one(const std::string& experiment, const std::string& config_path,
            std::string out_dir, bool seed_given, unsigned long long seed) {
    try {
        specop::cli::Config cfg = specop::cli::load_config(config_path, experiment);
        const unsigned long long effective_seed =
            seed_given ? seed : cfg.get_u64("seed", 1);
        if (seed_given) cfg.resolved["seed"] = std::to_string(seed);
        if (out_dir.empty()) out_dir = cfg.get("out", "specop-out");

        specop::cli::ExperimentResult r =
            specop::cli::run_experiment(cfg, experiment, effective_seed);
        specop::cli::write_outputs(r, out_dir, cfg);
        specop::cli::print_verdicts(r);
        std::printf("wrote %s/%s.{report.csv,plot.csv,summary.json}\n", out_dir.c_str(),
                    r.name.c_str());
        return r.all_pass() ? kExitPass : kExitVerdictFail;
    } catch (const specop::cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return kExitInvalid;
    } catch (const specop::cli::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitNothingRan;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNothingRan;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"batch experiment runner for the specop operator library"};
    app.require_subcommand(1);

    struct SubArgs {
        std::string config;
        std::string out;
        unsigned long long seed = 0;
        CLI::App* sub = nullptr;
        CLI::Option* seed_opt = nullptr;
    };
    std::vector<SubArgs> subs(specop::cli::experiment_names().size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const std::string& name = specop::cli::experiment_names()[i];
        SubArgs& sa = subs[i];
        sa.sub = app.add_subcommand(name, experiment_blurb(name));
        sa.sub->add_option("--config", sa.config, "flat key = value config file")
            ->required();
        sa.sub->add_option("--out", sa.out, "output directory (default: config 'out' "
                                            "key, else specop-out)");
        sa.seed_opt = sa.sub->add_option("--seed", sa.seed,
                                         "override the config's probe-suite seed");
    }

    std::string report_dir;
    CLI::App* report = app.add_subcommand(
        "report", "summarize every *.summary.json under a directory");
    report->add_option("dir", report_dir, "directory of experiment outputs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInvalid;
    }

    if (report->parsed()) return specop::cli::report_directory(report_dir);
    for (const SubArgs& sa : subs)
        if (sa.sub->parsed())
            return run_one(sa.sub->get_name(), sa.config, sa.out,
                           sa.seed_opt->count() > 0, sa.seed);
    return kExitInvalid;
}
