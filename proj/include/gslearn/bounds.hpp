#ifndef GSLEARN_BOUNDS_HPP
#define GSLEARN_BOUNDS_HPP

#include "gslearn/gaussian.hpp"

#include <string>

namespace gslearn {

/// A machine-checkable inequality instance: the measured left-hand side, the
/// evaluated right-hand side, and whether the bound's hypothesis held. The
/// certificate is produced even when the hypothesis fails, flagged
/// non-contractual, so sweeps can report diagnostics.
struct BoundCertificate {
    std::string bound_name;
    bool hypothesis_ok = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin() const { return rhs - lhs; }
};

/// Perturbation of the Hamiltonian under a covariance perturbation.
/// Hypothesis: |V1 - V2| < a := e^{-2 d_max} / ((1 - e^{-2 d_max}) s^2),
/// evaluated from the Williamson data of V1. The lhs is the operator norm of
/// the difference of the two Hamiltonians, computed by the dense log route.
BoundCertificate bound_h_from_v(const Mat& V1, const Mat& V2,
                                const WilliamsonForm& form1,
                                const Tolerances& tols = default_tols());

/// Same perturbation expressed through K = 2 (2 i Omega V - I)^{-1}.
/// Hypothesis: |K1 - K2| < e^{-2 d_max} / s^2.
BoundCertificate bound_h_from_k(const Mat& V1, const Mat& V2,
                                const WilliamsonForm& form1,
                                const Tolerances& tols = default_tols());

/// Perturbation of the covariance under a Hamiltonian perturbation.
/// Hypothesis: |H1 - H2| <= (1/(4 s^6)) e^{-2 d_max - 1} (1 - e^{-2 d_min});
/// rhs = 4 s^8 e^{2 d_max + 1} |H1 - H2| / (1 - e^{-2 d_min})^2.
BoundCertificate bound_v_from_h(const Mat& H1, const Mat& H2,
                                const WilliamsonForm& form1,
                                const Tolerances& tols = default_tols());

/// Trace-distance upper bound from the Hamiltonian/covariance mismatch:
///   sqrt( sum_ij (Hb - Ha)_ij (Va - Vb)_ij + 2 T_ij (Ha + Hb)_ij ),
/// T = (ta - tb)(ta - tb)^T. Equals sqrt(2 D(a||b) + 2 D(b||a)).
double trace_bound(const GaussianState& a, const Mat& Ha,
                   const GaussianState& b, const Mat& Hb,
                   const Tolerances& tols = default_tols());

} // namespace gslearn

#endif
