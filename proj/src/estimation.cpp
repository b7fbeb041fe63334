#include "gslearn/estimation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>

namespace gslearn {

EstimationResult empirical_estimates(const SampleBatch& batch) {
    if (batch.N < 1)
        throw EmptyBatch("estimation", "empirical_estimates", "N < 1");
    const int n = 2 * batch.m;
    EstimationResult r;
    r.N_used = batch.N;
    r.t_hat = batch.data.colwise().mean().transpose();
    Mat second = (batch.data.transpose() * batch.data) /
                 static_cast<double>(batch.N);
    second = 0.5 * (second + second.transpose()).eval();
    r.V_hat_raw = second - r.t_hat * r.t_hat.transpose() -
                  0.5 * Mat::Identity(n, n);
    return r;
}

long long sample_size(double v_diag_bound, double t_max, double eps,
                      double delta, int m) {
    if (!(eps > 0.0 && eps < 0.5) || !(delta > 0.0 && delta < 1.0) || m < 1 ||
        v_diag_bound <= 0.0 || t_max < 0.0)
        throw InvalidRange("estimation", "sample_size",
                           "arguments out of range");
    double C = 2.0 * std::pow(std::sqrt(2.0 * v_diag_bound + 1.0) + t_max, 2);
    double N = 256.0 * C * C * (1.0 + t_max) * (1.0 + t_max) / (eps * eps) *
               std::log((4.0 * m + 1.0) / delta);
    return static_cast<long long>(std::ceil(N));
}

namespace {

// Dykstra alternating projections between an entrywise projection (exact,
// applied last so the output satisfies it exactly) and a spectral-cone
// projection (satisfied within proj_tol at convergence).
Mat dykstra(const Mat& start, const std::function<Mat(const Mat&)>& proj_box,
            const std::function<Mat(const Mat&)>& proj_cone,
            const std::function<double(const Mat&)>& cone_violation,
            const ProjectionOptions& opts, double proj_tol, const char* op) {
    Mat x = proj_box(start);
    Mat p = Mat::Zero(x.rows(), x.cols());
    Mat q = Mat::Zero(x.rows(), x.cols());
    double viol = cone_violation(x);
    for (int it = 0; it < opts.max_iter && viol > proj_tol; ++it) {
        Mat y = proj_cone(x + p);
        p = x + p - y;
        x = proj_box(y + q);
        q = y + q - x;
        viol = cone_violation(x);
    }
    if (viol > proj_tol)
        throw Infeasible("estimation", op,
                         "feasibility iteration stalled, residual " +
                             std::to_string(viol));
    return x;
}

Mat clamp_box(const Mat& x, const Mat& center, double eps) {
    return x.array()
        .max(center.array() - eps)
        .min(center.array() + eps)
        .matrix();
}

} // namespace

Mat project_covariance(const Mat& V_hat, double eps,
                       const ProjectionOptions& opts, const Tolerances& tols) {
    if (eps <= 0.0)
        throw InvalidRange("estimation", "project_covariance", "eps <= 0");
    require_symmetric(V_hat, tols.sym_tol, "estimation", "project_covariance");
    const int n = static_cast<int>(V_hat.rows());
    const int m = n / 2;
    CMat shift = Complex(0, 0.5) * omega(m).cast<Complex>();
    double proj_tol = opts.proj_tol_scale * (1.0 + max_abs(V_hat));

    // Work in the space of Hermitian matrices M = V + i Omega/2, where both
    // constraint sets admit exact projections: the PSD cone (eigenvalue
    // clipping) and the shifted box (take the real part -- the orthogonal
    // projection onto the real-symmetric subspace -- then clamp entrywise).
    auto proj_box = [&](const CMat& M) -> CMat {
        Mat v = (M - shift).real();
        v = 0.5 * (v + v.transpose()).eval();
        return clamp_box(v, V_hat, eps).cast<Complex>() + shift;
    };
    auto proj_cone = [&](const CMat& M) -> CMat {
        Eigen::SelfAdjointEigenSolver<CMat> es(
            CMat(0.5 * (M + M.adjoint())));
        Vec ev = es.eigenvalues().cwiseMax(0.0);
        return es.eigenvectors() * ev.asDiagonal() *
               es.eigenvectors().adjoint();
    };
    auto violation = [&](const CMat& M) -> double {
        Eigen::SelfAdjointEigenSolver<CMat> es(CMat(0.5 * (M + M.adjoint())),
                                               Eigen::EigenvaluesOnly);
        return std::max(0.0, -es.eigenvalues()(0));
    };

    CMat x = proj_box(V_hat.cast<Complex>() + shift);
    CMat p = CMat::Zero(n, n);
    CMat q = CMat::Zero(n, n);
    double viol = violation(x);
    for (int it = 0; it < opts.max_iter && viol > proj_tol; ++it) {
        CMat y = proj_cone(x + p);
        p = x + p - y;
        CMat xn = proj_box(y + q);
        q = y + q - xn;
        x = xn;
        viol = violation(x);
    }
    if (viol > proj_tol)
        throw Infeasible("estimation", "project_covariance",
                         "feasibility iteration stalled, residual " +
                             std::to_string(viol));
    Mat out = (x - shift).real();
    return 0.5 * (out + out.transpose()).eval();
}

Mat project_hamiltonian(const Mat& H_hat, double eps, double tau,
                        const InteractionGraph* graph,
                        const ProjectionOptions& opts, const Tolerances& tols) {
    if (eps <= 0.0 || tau <= 0.0)
        throw InvalidRange("estimation", "project_hamiltonian",
                           "eps and tau must be positive");
    require_symmetric(H_hat, tols.sym_tol, "estimation", "project_hamiltonian");
    const int n = static_cast<int>(H_hat.rows());
    const int m = n / 2;
    double proj_tol = opts.proj_tol_scale * (1.0 + max_abs(H_hat));

    Mat off_graph = Mat::Zero(n, n); // 1 where the entry must vanish
    if (graph) {
        if (graph->m != m)
            throw DimensionMismatch("estimation", "project_hamiltonian",
                                    "graph vertex count mismatch");
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j || graph->has_edge(i, j)) continue;
                off_graph.block<2, 2>(2 * i, 2 * j).setOnes();
                if (max_abs(Mat(H_hat.block<2, 2>(2 * i, 2 * j))) >
                    eps + proj_tol)
                    throw Infeasible("estimation", "project_hamiltonian",
                                     "off-graph entry of H_hat exceeds eps");
            }
    }

    // Box and support constraints are both entrywise, so their intersection
    // has a closed-form projection: clamp on-graph entries, zero the rest.
    auto proj_box = [&](const Mat& x) -> Mat {
        Mat b = clamp_box(x, H_hat, eps);
        if (graph) b = (b.array() * (1.0 - off_graph.array())).matrix();
        return 0.5 * (b + b.transpose()).eval();
    };
    auto proj_cone = [&](const Mat& x) -> Mat {
        Mat sym = 0.5 * (x + x.transpose());
        Eigen::SelfAdjointEigenSolver<Mat> es(sym);
        Vec ev = es.eigenvalues().cwiseMax(tau);
        return es.eigenvectors() * ev.asDiagonal() *
               es.eigenvectors().transpose();
    };
    auto violation = [&](const Mat& x) -> double {
        Eigen::SelfAdjointEigenSolver<Mat> es(x, Eigen::EigenvaluesOnly);
        return std::max(0.0, tau - es.eigenvalues()(0));
    };
    return dykstra(H_hat, proj_box, proj_cone, violation, opts, proj_tol,
                   "project_hamiltonian");
}

} // namespace gslearn
