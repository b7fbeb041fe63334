#ifndef GSLEARN_GAUSSIAN_HPP
#define GSLEARN_GAUSSIAN_HPP

#include "gslearn/symplectic.hpp"

#include <cstdint>
#include <optional>

namespace gslearn {

struct InteractionGraph; // locality.hpp

/// An m-mode Gaussian state in its canonical representation: mean vector t
/// and covariance matrix V. Immutable value type.
struct GaussianState {
    int m = 0;
    Vec t;
    Mat V;
};

/// The symmetric positive definite matrix in the exponent of the Gibbs form
/// of a nondegenerate Gaussian state, with an optional cached normal form.
struct HamiltonianMatrix {
    Mat H;
    std::optional<WilliamsonForm> form;

    const WilliamsonForm& normal_form(const Tolerances& tols = default_tols());
};

/// A-priori parameter bounds on the class of states under consideration.
struct StateBounds {
    double s = 1.0;          // upper bound on |S|
    double beta_max = 1.0;   // upper bound on d_max
    double beta_min = 1.0;   // lower bound on d_min
    double t_max = 0.0;      // upper bound on max_i |t_i|
    int delta_deg = 0;       // degree bound of the interaction graph
    double kappa = 0.0;      // interaction-strength floor

    void validate(const char* op) const;
};

/// True iff V + (i/2) Omega >= -tol, i.e. V is the covariance matrix of some
/// quantum state.
bool is_bona_fide(const Mat& V, double tol,
                  const Tolerances& tols = default_tols());

/// True iff every symplectic eigenvalue of V exceeds 1/2 + purity_tol, so the
/// Gibbs-form Hamiltonian exists and is finite.
bool is_nondegenerate(const Mat& V, const Tolerances& tols = default_tols());

/// Covariance matrix of the Gaussian state with Hamiltonian H:
///   V = S (coth(D)/2) S^T  through the Williamson normal form.
Mat v_from_h(const Mat& H, const Tolerances& tols = default_tols());
Mat v_from_h(const WilliamsonForm& form);

/// Hamiltonian of the state with covariance V, through the Williamson route.
/// Requires all symplectic eigenvalues of V strictly above 1/2.
Mat h_from_v(const Mat& V, const Tolerances& tols = default_tols());

/// Same map evaluated independently as (1/2) log((2iOmegaV+I)/(2iOmegaV-I)) iOmega
/// through a dense complex eigendecomposition. Kept as a second route for
/// cross-validation; shares no code with the Williamson path.
Mat h_from_v_dense(const Mat& V, const Tolerances& tols = default_tols());

/// sqrt(det(V + i Omega / 2)) as a positive real.
double normalization(const Mat& V, const Tolerances& tols = default_tols());

/// Quantum relative entropy D(a||b) of two nondegenerate Gaussian states,
/// evaluated in closed form from (t, V, H) of both states.
double relative_entropy(const GaussianState& a, const Mat& Ha,
                        const GaussianState& b, const Mat& Hb,
                        const Tolerances& tols = default_tols());

/// A generated test instance: state, Hamiltonian and its normal form.
struct RandomStateResult {
    GaussianState state;
    HamiltonianMatrix hamiltonian;
    WilliamsonForm form;
};

struct RandomStateOptions {
    int max_rejections = 200;
};

/// Draw a random state whose Hamiltonian is supported exactly on the given
/// interaction graph and whose Williamson data respects the bounds.
/// Deterministic per seed.
RandomStateResult random_state(int m, const InteractionGraph& graph,
                               const StateBounds& bounds, std::uint64_t seed,
                               const RandomStateOptions& opts = {},
                               const Tolerances& tols = default_tols());

} // namespace gslearn

#endif
