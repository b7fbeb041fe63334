#include "gslearn/harness.hpp"

#include <CLI11.hpp>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-state learning toolkit"};

    std::string config_path;
    std::string task;
    std::string out_dir;
    std::vector<std::uint64_t> seeds;
    double eps = -1.0, delta = -1.0, kappa = -1.0;
    int threads = -1;
    int override_l = -1;
    double override_zeta = -1.0, override_eta = -1.0;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--task", task,
                   "sample | estimate | learn-hamiltonian | learn-graph | "
                   "learn-trace | verify-bounds | benchmark");
    app.add_option("--seed", seeds, "seed list (overrides config)");
    app.add_option("--eps", eps, "target precision");
    app.add_option("--delta", delta, "failure probability");
    app.add_option("--kappa", kappa, "interaction-strength floor");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker pool cap");
    app.add_option("--override-l", override_l, "override truncation radius");
    app.add_option("--override-zeta", override_zeta,
                   "override entrywise covariance precision");
    app.add_option("--override-eta", override_eta,
                   "override graph-learning threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        gslearn::ExperimentConfig config;
        if (!config_path.empty())
            config = gslearn::ExperimentConfig::from_json(
                gslearn::read_json_file(config_path));
        else if (task.empty()) {
            std::cerr << "either --config or --task is required\n";
            return 2;
        }
        if (!task.empty()) config.task = task;
        if (!seeds.empty()) config.seeds = seeds;
        if (eps > 0.0) config.eps = eps;
        if (delta > 0.0) config.delta = delta;
        if (kappa > 0.0) config.kappa = kappa;
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (threads > 0) config.threads = threads;
        if (override_l > 0) config.override_l = override_l;
        if (override_zeta >= 0.0) config.override_zeta = override_zeta;
        if (override_eta >= 0.0) config.override_eta = override_eta;
        return gslearn::run_experiment(config);
    } catch (const gslearn::InvalidRange& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const gslearn::Error& e) {
        std::cerr << "pipeline error: " << e.what() << '\n';
        return 1;
    }
}
