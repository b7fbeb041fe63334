#include "gslearn/gaussian.hpp"
#include "gslearn/locality.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace gslearn {

const WilliamsonForm& HamiltonianMatrix::normal_form(const Tolerances& tols) {
    if (!form) form = williamson(H, tols);
    return *form;
}

void StateBounds::validate(const char* op) const {
    if (s < 1.0 || beta_min <= 0.0 || beta_max < beta_min || t_max < 0.0 ||
        delta_deg < 0 || kappa < 0.0)
        throw InvalidRange("gaussian_model", op, "invalid StateBounds");
}

namespace {

CMat hermitian_shift(const Mat& V) {
    const int m = static_cast<int>(V.rows()) / 2;
    return V.cast<Complex>() + Complex(0, 0.5) * omega(m).cast<Complex>();
}

// Discard the imaginary part of a complex matrix, refusing if it is not
// numerically negligible relative to the result.
Mat realify(const CMat& M, double rel_tol, const char* module,
            const char* op) {
    double imag_max = M.imag().cwiseAbs().maxCoeff();
    double scale = 1.0 + M.real().cwiseAbs().maxCoeff();
    if (imag_max > rel_tol * scale)
        throw NumericalBreakdown(module, op,
                                 "imaginary residue " +
                                     std::to_string(imag_max));
    return M.real();
}

} // namespace

bool is_bona_fide(const Mat& V, double tol, const Tolerances& tols) {
    require_symmetric(V, tols.sym_tol, "gaussian_model", "is_bona_fide");
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_shift(V),
                                           Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) >= -tol;
}

bool is_nondegenerate(const Mat& V, const Tolerances& tols) {
    Vec d = symplectic_eigenvalues(V, tols);
    return d(0) > 0.5 + tols.purity_tol;
}

Mat v_from_h(const WilliamsonForm& form) {
    const int m = static_cast<int>(form.d.size());
    Vec f(2 * m);
    for (int i = 0; i < m; ++i)
        f(2 * i) = f(2 * i + 1) = 0.5 / std::tanh(form.d(i));
    return form.S * f.asDiagonal() * form.S.transpose();
}

Mat v_from_h(const Mat& H, const Tolerances& tols) {
    return v_from_h(williamson(H, tols));
}

Mat h_from_v(const Mat& V, const Tolerances& tols) {
    WilliamsonForm cong = williamson_congruence(V, tols);
    const int m = static_cast<int>(cong.d.size());
    if (cong.d(0) <= 0.5 + tols.purity_tol)
        throw TooPure("gaussian_model", "h_from_v",
                      "symplectic eigenvalue " + std::to_string(cong.d(0)) +
                          " too close to 1/2");
    // V = T f(D) T^T with f(x) = coth(x)/2, so H = T^{-T} f^{-1}(D) T^{-1}.
    Vec g(2 * m);
    for (int i = 0; i < m; ++i) {
        double v = cong.d(i);
        g(2 * i) = g(2 * i + 1) = 0.5 * std::log((2.0 * v + 1.0) / (2.0 * v - 1.0));
    }
    Mat Tinv = symplectic_inverse(cong.S);
    Mat H = Tinv.transpose() * g.asDiagonal() * Tinv;
    return 0.5 * (H + H.transpose());
}

Mat h_from_v_dense(const Mat& V, const Tolerances& tols) {
    const int n = static_cast<int>(V.rows());
    const int m = n / 2;
    CMat iW = Complex(0, 1) * omega(m).cast<Complex>();
    CMat A = 2.0 * iW * V.cast<Complex>();
    CMat I = CMat::Identity(n, n);
    CMat F = (A + I) * (A - I).inverse();

    Eigen::ComplexEigenSolver<CMat> es(F);
    if (es.info() != Eigen::Success)
        throw NumericalBreakdown("gaussian_model", "h_from_v_dense",
                                 "eigendecomposition failed");
    CMat P = es.eigenvectors();
    auto sv = P.jacobiSvd().singularValues();
    if (sv(0) / sv(sv.size() - 1) > tols.eig_cond_max)
        throw NumericalBreakdown("gaussian_model", "h_from_v_dense",
                                 "ill-conditioned eigenbasis");
    CVec lam = es.eigenvalues();
    CVec loglam(n);
    for (int k = 0; k < n; ++k) {
        Complex z = lam(k);
        if (z.real() <= 0.0 && std::abs(z.imag()) < tols.log_tol)
            throw LogBranchFailure("gaussian_model", "h_from_v_dense",
                                   "eigenvalue on the log branch cut");
        loglam(k) = std::log(z);
    }
    CMat logF = P * loglam.asDiagonal() * P.inverse();
    CMat Hc = 0.5 * logF * iW;
    Mat H = realify(Hc, tols.realify_rel_tol, "gaussian_model",
                    "h_from_v_dense");
    return 0.5 * (H + H.transpose());
}

double normalization(const Mat& V, const Tolerances& tols) {
    Complex det = hermitian_shift(V).determinant();
    if (std::abs(det.imag()) > tols.det_tol * (1.0 + std::abs(det.real())))
        throw NumericalBreakdown("gaussian_model", "normalization",
                                 "non-real determinant");
    if (det.real() <= tols.det_tol)
        throw TooPure("gaussian_model", "normalization",
                      "det(V + i Omega/2) not positive");
    return std::sqrt(det.real());
}

double relative_entropy(const GaussianState& a, const Mat& Ha,
                        const GaussianState& b, const Mat& Hb,
                        const Tolerances& tols) {
    if (a.m != b.m)
        throw DimensionMismatch("gaussian_model", "relative_entropy",
                                "mode count mismatch");
    Vec dt = a.t - b.t;
    Mat T = dt * dt.transpose();
    double cross = (Hb.array() * (a.V + T).array()).sum();
    double self = (Ha.array() * a.V.array()).sum();
    double logdet =
        0.5 * (std::log(normalization(b.V, tols)) -
               std::log(normalization(a.V, tols))) * 2.0;
    double d = cross - self + logdet;
    if (d < -tols.rel_tol * (1.0 + std::abs(cross)))
        throw NumericalBreakdown("gaussian_model", "relative_entropy",
                                 "negative relative entropy " +
                                     std::to_string(d));
    return std::max(d, 0.0);
}

RandomStateResult random_state(int m, const InteractionGraph& graph,
                               const StateBounds& bounds, std::uint64_t seed,
                               const RandomStateOptions& opts,
                               const Tolerances& tols) {
    bounds.validate("random_state");
    if (graph.m != m)
        throw DimensionMismatch("gaussian_model", "random_state",
                                "graph vertex count mismatch");
    if (graph.max_degree() > bounds.delta_deg && bounds.delta_deg > 0)
        throw InvalidRange("gaussian_model", "random_state",
                           "graph degree exceeds bounds.delta_deg");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int n = 2 * m;
    const int deg = std::max(graph.max_degree(), 1);
    const double tau = 1.0;

    for (int attempt = 0; attempt < opts.max_rejections; ++attempt) {
        // Diagonal blocks tau*I + random PSD, edge blocks with spectral norm
        // at most tau/(2*deg): positive definite by diagonal dominance, and
        // supported exactly on the graph.
        Mat H = Mat::Zero(n, n);
        for (int i = 0; i < m; ++i) {
            Mat R(2, 2);
            R << unif(rng), unif(rng), unif(rng), unif(rng);
            Mat blk = tau * Mat::Identity(2, 2) + 0.5 * R.transpose() * R;
            H.block<2, 2>(2 * i, 2 * i) = blk;
        }
        for (auto [i, j] : graph.edges) {
            Mat B(2, 2);
            B << unif(rng), unif(rng), unif(rng), unif(rng);
            double nb = operator_norm(B);
            double target = (0.25 + 0.5 * std::abs(unif(rng))) * tau / (2.0 * deg);
            if (nb > 1e-12) B *= target / nb;
            H.block<2, 2>(2 * i, 2 * j) = B;
            H.block<2, 2>(2 * j, 2 * i) = B.transpose();
        }

        WilliamsonForm form;
        try {
            form = williamson(H, tols);
        } catch (const Error&) {
            continue;
        }
        if (form.d_max() / form.d_min() > bounds.beta_max / bounds.beta_min)
            continue;
        // Rescaling H scales the d_i linearly and leaves S unchanged; place
        // the spectrum inside [beta_min, beta_max].
        double c_lo = bounds.beta_min / form.d_min();
        double c_hi = bounds.beta_max / form.d_max();
        double c = std::sqrt(c_lo * c_hi);
        H *= c;
        form.d *= c;
        if (form.s_norm() > bounds.s) continue;

        RandomStateResult out;
        out.hamiltonian.H = H;
        out.hamiltonian.form = form;
        out.form = form;
        out.state.m = m;
        out.state.V = v_from_h(form);
        out.state.t = Vec(n);
        for (int k = 0; k < n; ++k)
            out.state.t(k) = bounds.t_max * unif(rng);
        return out;
    }
    throw GenerationFailed("gaussian_model", "random_state",
                           "no admissible draw after " +
                               std::to_string(opts.max_rejections) +
                               " attempts");
}

} // namespace gslearn
