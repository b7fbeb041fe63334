#include "gslearn/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gslearn {

double operator_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

double operator_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

double min_singular_value(const CMat& m) {
    auto sv = m.jacobiSvd().singularValues();
    return sv(sv.size() - 1);
}

void require_symmetric(const Mat& m, double tol, const char* module,
                       const char* op) {
    if (m.rows() != m.cols())
        throw DimensionMismatch(module, op, "matrix is not square");
    double dev = max_abs(Mat(m - m.transpose()));
    if (dev > tol * (1.0 + max_abs(m)))
        throw NotSymmetric(module, op,
                           "symmetry deviation " + std::to_string(dev));
}

Mat omega(int m) {
    if (m < 1)
        throw InvalidRange("symplectic_core", "omega", "m must be >= 1");
    Mat w = Mat::Zero(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        w(2 * i, 2 * i + 1) = 1.0;
        w(2 * i + 1, 2 * i) = -1.0;
    }
    return w;
}

double WilliamsonForm::s_norm() const {
    if (s_norm_cache_ < 0.0) s_norm_cache_ = operator_norm(S);
    return s_norm_cache_;
}

Mat WilliamsonForm::reconstruct() const {
    const int m = static_cast<int>(d.size());
    Vec ddiag(2 * m);
    for (int i = 0; i < m; ++i) ddiag(2 * i) = ddiag(2 * i + 1) = d(i);
    Mat Sinv = symplectic_inverse(S);
    return Sinv.transpose() * ddiag.asDiagonal() * Sinv;
}

Mat symplectic_inverse(const Mat& S) {
    const int m = static_cast<int>(S.rows()) / 2;
    Mat w = omega(m);
    return -w * S.transpose() * w;
}

namespace {

// True iff A is already in normal form: block diagonal with blocks c_i * I_2.
bool is_normal_form(const Mat& A, double tol) {
    const int n = static_cast<int>(A.rows());
    double scale = tol * (1.0 + max_abs(A));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (r == c) continue;
            if (std::abs(A(r, c)) > scale) return false;
        }
    for (int i = 0; i < n / 2; ++i)
        if (std::abs(A(2 * i, 2 * i) - A(2 * i + 1, 2 * i + 1)) > scale)
            return false;
    return true;
}

// Congruence diagonalization of a positive definite matrix A:
//   A = T (diag(lambda) x I_2) T^T,  T symplectic, lambda ascending.
// Built from the real Schur form of the antisymmetric matrix G Omega G with
// G = A^{1/2}; the Schur basis pairs conjugate eigenvectors into real 2x2
// rotation blocks, which we reorder and sign-fix to the (X,P) convention.
WilliamsonForm congruence_diagonalize(const Mat& A, const Tolerances& tols,
                                      const char* op) {
    require_symmetric(A, tols.sym_tol, "symplectic_core", op);
    const int n = static_cast<int>(A.rows());
    if (n % 2 != 0)
        throw DimensionMismatch("symplectic_core", op, "odd dimension");
    const int m = n / 2;

    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    if (es.eigenvalues()(0) <= tols.pd_tol)
        throw NotPositiveDefinite(
            "symplectic_core", op,
            "min eigenvalue " + std::to_string(es.eigenvalues()(0)));

    WilliamsonForm form;
    if (is_normal_form(A, tols.sym_tol)) {
        // Canonical gauge for inputs already in normal form.
        form.S = Mat::Identity(n, n);
        Vec lam(m);
        for (int i = 0; i < m; ++i) lam(i) = A(2 * i, 2 * i);
        std::vector<int> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return lam(a) < lam(b); });
        form.d = Vec(m);
        Mat P = Mat::Zero(n, n);
        for (int k = 0; k < m; ++k) {
            form.d(k) = lam(idx[k]);
            P(2 * idx[k], 2 * k) = 1.0;
            P(2 * idx[k] + 1, 2 * k + 1) = 1.0;
        }
        form.S = P; // mode permutation, trivially symplectic
        return form;
    }

    Mat G = es.operatorSqrt();
    Mat W = omega(m);
    Mat Askew = G * W * G; // antisymmetric, invertible

    Eigen::RealSchur<Mat> schur(Askew);
    Mat Q = schur.matrixU();
    Mat T = schur.matrixT();

    // The Schur form of an invertible antisymmetric matrix consists of 2x2
    // blocks [[0,b],[-b,0]] on the diagonal. Collect them.
    std::vector<double> lam(m);
    for (int k = 0; k < m; ++k) {
        double b = 0.5 * (T(2 * k, 2 * k + 1) - T(2 * k + 1, 2 * k));
        if (std::abs(b) <= tols.pd_tol)
            throw NumericalBreakdown("symplectic_core", op,
                                     "degenerate Schur block");
        if (b < 0) {
            Q.col(2 * k).swap(Q.col(2 * k + 1));
            b = -b;
        }
        lam[k] = b;
    }

    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return lam[a] < lam[b]; });

    Mat Qs(n, n);
    Vec d(m);
    for (int k = 0; k < m; ++k) {
        d(k) = lam[idx[k]];
        Qs.col(2 * k) = Q.col(2 * idx[k]);
        Qs.col(2 * k + 1) = Q.col(2 * idx[k] + 1);
    }

    Vec scale(n);
    for (int k = 0; k < m; ++k)
        scale(2 * k) = scale(2 * k + 1) = 1.0 / std::sqrt(d(k));
    form.S = G * Qs * scale.asDiagonal();
    form.d = d;

    double sympl_dev = max_abs(Mat(form.S * W * form.S.transpose() - W));
    if (sympl_dev > 1e2 * tols.symplectic_tol)
        throw NumericalBreakdown("symplectic_core", op,
                                 "symplecticity deviation " +
                                     std::to_string(sympl_dev));
    return form;
}

} // namespace

WilliamsonForm williamson_congruence(const Mat& A, const Tolerances& tols) {
    return congruence_diagonalize(A, tols, "williamson_congruence");
}

WilliamsonForm williamson(const Mat& H, const Tolerances& tols) {
    WilliamsonForm cong = congruence_diagonalize(H, tols, "williamson");
    // H = T D T^T  with T symplectic is H = S^{-T} D S^{-1} for S = -Omega T Omega.
    WilliamsonForm form;
    const int m = static_cast<int>(cong.d.size());
    Mat W = omega(m);
    form.S = -W * cong.S * W;
    form.d = cong.d;

    double err = max_abs(Mat(form.reconstruct() - H));
    if (err > tols.recon_rel_tol * (1.0 + max_abs(H)))
        throw NumericalBreakdown("symplectic_core", "williamson",
                                 "reconstruction error " + std::to_string(err));
    return form;
}

Vec symplectic_eigenvalues(const Mat& A, const Tolerances& tols) {
    require_symmetric(A, tols.sym_tol, "symplectic_core",
                      "symplectic_eigenvalues");
    const int n = static_cast<int>(A.rows());
    const int m = n / 2;
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    if (es.eigenvalues()(0) <= tols.pd_tol)
        throw NotPositiveDefinite(
            "symplectic_core", "symplectic_eigenvalues",
            "min eigenvalue " + std::to_string(es.eigenvalues()(0)));
    Mat G = es.operatorSqrt();
    // spec(i Omega A) = spec(i G Omega G), and the latter matrix is Hermitian.
    CMat K = Complex(0, 1) * (G * omega(m) * G).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMat> ks(K);
    Vec ev = ks.eigenvalues(); // ascending: -d_m..-d_1, d_1..d_m
    Vec d(m);
    for (int i = 0; i < m; ++i) d(i) = ev(m + i);
    return d;
}

SingularValueBounds singular_value_bounds(const WilliamsonForm& form,
                                          double /*t*/) {
    const double s2 = form.s_norm() * form.s_norm();
    const double dmin = form.d_min();
    const double dmax = form.d_max();
    SingularValueBounds b;
    b.norm_bound = s2 * 2.0 / (1.0 - std::exp(-2.0 * dmin));
    b.minsing_bound_1 =
        (2.0 / s2) * std::exp(-2.0 * dmax) / (1.0 - std::exp(-2.0 * dmax));
    b.minsing_bound_2 = std::exp(-2.0 * dmax) / s2;
    return b;
}

} // namespace gslearn
