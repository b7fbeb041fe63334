#ifndef GSLEARN_HARNESS_HPP
#define GSLEARN_HARNESS_HPP

#include "gslearn/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gslearn {

/// The tridiagonal precision-matrix family: corner entry 1, remaining
/// diagonal 2, off-diagonal -1. Its inverse is integer-valued with the closed
/// form inv(i,j) = m + 1 - max(i,j) (1-based), and its condition number grows
/// quadratically in m, which makes it a stress fixture for dense inversion.
struct PrecisionFamily {
    Eigen::MatrixXi H;
    Eigen::MatrixXi H_inv;
    double condition_estimate; // |H|_inf-norm * |H_inv|_inf-norm
};

PrecisionFamily precision_family(int m);

/// Declarative description of one experiment run.
struct ExperimentConfig {
    std::string task; // sample | estimate | learn-hamiltonian | learn-graph
                      // | learn-trace | verify-bounds | benchmark
    int m = 2;
    InteractionGraph graph = InteractionGraph::empty(2);
    StateBounds bounds;
    double eps = 0.1;
    double delta = 0.1;
    double kappa = 0.1;
    long long N = 10000;
    std::vector<std::uint64_t> seeds = {1};
    std::string out_dir = ".";
    int threads = 1;
    // Optional overrides of theorem-derived parameters; negative means unset.
    int override_l = -1;
    double override_zeta = -1.0;
    double override_eta = -1.0;

    static ExperimentConfig from_json(const Json& j);
    Json to_json() const;
};

/// Run the configured task for every seed, writing one JSON report per seed
/// plus a CSV summary. Returns the process exit status: 0 on success, 1 on a
/// pipeline failure, 2 on a configuration failure.
int run_experiment(const ExperimentConfig& config);

} // namespace gslearn

#endif
