#ifndef GSLEARN_ESTIMATION_HPP
#define GSLEARN_ESTIMATION_HPP

#include "gslearn/locality.hpp"
#include "gslearn/sampling.hpp"

#include <optional>

namespace gslearn {

/// Empirical first and second moments of a sample batch, with an optional
/// projection of the raw covariance onto the bona fide set.
struct EstimationResult {
    Vec t_hat;
    Mat V_hat_raw;               // symmetric; may violate the bona fide cone
    std::optional<Mat> V_tilde;  // projected bona fide covariance
    double eps_used = 0.0;       // target entrywise precision
    long long N_used = 0;
};

/// t_hat = row mean, V_hat = second-moment matrix minus t_hat t_hat^T - I/2.
EstimationResult empirical_estimates(const SampleBatch& batch);

/// Number of heterodyne samples guaranteeing entrywise precision eps on both
/// t_hat and V_hat with failure probability delta:
///   N = ceil(2^8 C^2 (1 + t_max)^2 / eps^2 * ln((4m+1)/delta)),
///   C = 2 (sqrt(2 v_diag_bound + 1) + t_max)^2.
long long sample_size(double v_diag_bound, double t_max, double eps,
                      double delta, int m);

/// Options for the alternating-projection feasibility solvers.
struct ProjectionOptions {
    int max_iter = 10000;
    double proj_tol_scale = 1e-9; // tolerance = scale * (1 + |input|_max)
};

/// Find a bona fide covariance within eps entrywise of V_hat: feasibility of
///   |V - V_hat|_ij <= eps,  V + i Omega / 2 >= 0
/// by Dykstra alternating projections between the entrywise box and the
/// spectral cone.
Mat project_covariance(const Mat& V_hat, double eps,
                       const ProjectionOptions& opts = {},
                       const Tolerances& tols = default_tols());

/// Find H_tilde with H_tilde >= tau * I, entrywise within eps of H_hat, and
/// (optionally) supported exactly on the given interaction graph.
Mat project_hamiltonian(const Mat& H_hat, double eps, double tau,
                        const InteractionGraph* graph = nullptr,
                        const ProjectionOptions& opts = {},
                        const Tolerances& tols = default_tols());

} // namespace gslearn

#endif
