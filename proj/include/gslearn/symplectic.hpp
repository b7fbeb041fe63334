#ifndef GSLEARN_SYMPLECTIC_HPP
#define GSLEARN_SYMPLECTIC_HPP

#include "gslearn/common.hpp"

namespace gslearn {

// Quadrature layout: mode i in {0..m-1} owns rows/columns 2i (position) and
// 2i+1 (momentum), i.e. R = (X_1, P_1, ..., X_m, P_m).

/// The symplectic form: m diagonal copies of [[0,1],[-1,0]].
Mat omega(int m);

/// Williamson normal form of a positive definite matrix H:
///   H = S^{-T} D S^{-1},  D = diag(d_1, d_1, ..., d_m, d_m),
/// with S symplectic and d_i > 0 sorted ascending.
struct WilliamsonForm {
    Mat S;
    Vec d; // length m, ascending

    double d_min() const { return d(0); }
    double d_max() const { return d(d.size() - 1); }
    double s_norm() const; // operator norm of S (cached on first use)

    Mat reconstruct() const; // S^{-T} D S^{-1}

private:
    mutable double s_norm_cache_ = -1.0;
};

WilliamsonForm williamson(const Mat& H,
                          const Tolerances& tols = default_tols());

/// Symplectic eigenvalues of a symmetric positive definite matrix: the sorted
/// moduli of spec(i Omega A), one per mode.
Vec symplectic_eigenvalues(const Mat& A,
                           const Tolerances& tols = default_tols());

/// Decomposition A = T D T^T with T symplectic (the congruence form natural
/// for covariance matrices). Shares all conventions with williamson(); the
/// two are related by T = S^{-T} up to gauge.
WilliamsonForm williamson_congruence(const Mat& A,
                                     const Tolerances& tols = default_tols());

/// Inverse of a symplectic matrix, computed exactly as -Omega S^T Omega.
Mat symplectic_inverse(const Mat& S);

/// Closed-form bounds on the singular values of the shifted matrices
/// 2 i Omega V + ((t-1)/(t+1)) I appearing in the integral representation of
/// the matrix logarithm, evaluated from (|S|, d_min, d_max). The bounds are
/// uniform in t >= 0.
struct SingularValueBounds {
    double norm_bound;      // upper bound on the operator norm
    double minsing_bound_1; // lower bound on the smallest singular value
    double minsing_bound_2; // same, for the Cayley-transformed matrix
};

SingularValueBounds singular_value_bounds(const WilliamsonForm& form,
                                          double t);

} // namespace gslearn

#endif
