#include "gslearn/bounds.hpp"

#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

namespace gslearn {

namespace {

CMat i_omega(int m) { return Complex(0, 1) * omega(m).cast<Complex>(); }

// Dense evaluation of the covariance from the Hamiltonian through the
// hyperbolic-cotangent relation 2 i Omega V = coth(i H Omega). Shares no code
// with the Williamson route, so it can serve as its verifier.
Mat v_from_h_dense(const Mat& H, const Tolerances& tols) {
    const int n = static_cast<int>(H.rows());
    const int m = n / 2;
    CMat X = H.cast<Complex>() * i_omega(m);
    CMat E = CMat((-2.0 * X).exp());
    CMat I = CMat::Identity(n, n);
    CMat coth = (I + E) * (I - E).inverse();
    CMat Vc = 0.5 * i_omega(m) * coth;
    double imag_max = Vc.imag().cwiseAbs().maxCoeff();
    if (imag_max > tols.realify_rel_tol * (1.0 + Vc.real().cwiseAbs().maxCoeff()))
        throw NumericalBreakdown("bounds", "v_from_h_dense",
                                 "imaginary residue " +
                                     std::to_string(imag_max));
    Mat V = Vc.real();
    return 0.5 * (V + V.transpose());
}

CMat k_matrix(const Mat& V) {
    const int n = static_cast<int>(V.rows());
    const int m = n / 2;
    CMat A = 2.0 * i_omega(m) * V.cast<Complex>() - CMat::Identity(n, n);
    return 2.0 * A.inverse();
}

} // namespace

BoundCertificate bound_h_from_v(const Mat& V1, const Mat& V2,
                                const WilliamsonForm& form1,
                                const Tolerances& tols) {
    BoundCertificate c;
    c.bound_name = "hamiltonian_vs_covariance";
    const double s2 = form1.s_norm() * form1.s_norm();
    const double dmax = form1.d_max();
    const double a = std::exp(-2.0 * dmax) / (1.0 - std::exp(-2.0 * dmax)) / s2;
    const double dv = operator_norm(Mat(V1 - V2));
    c.hypothesis_ok = dv < a;
    c.lhs = operator_norm(Mat(h_from_v_dense(V1, tols) -
                              h_from_v_dense(V2, tols)));
    if (dv < a)
        c.rhs = 2.0 * dv / (2.0 * a * (2.0 * a - 2.0 * dv));
    else
        c.rhs = std::numeric_limits<double>::infinity();
    return c;
}

BoundCertificate bound_h_from_k(const Mat& V1, const Mat& V2,
                                const WilliamsonForm& form1,
                                const Tolerances& tols) {
    BoundCertificate c;
    c.bound_name = "hamiltonian_vs_resolvent";
    const double s2 = form1.s_norm() * form1.s_norm();
    const double dmax = form1.d_max();
    const double cap = std::exp(-2.0 * dmax) / s2;
    const double dk = operator_norm(CMat(k_matrix(V1) - k_matrix(V2)));
    c.hypothesis_ok = dk < cap;
    c.lhs = operator_norm(Mat(h_from_v_dense(V1, tols) -
                              h_from_v_dense(V2, tols)));
    if (dk < cap) {
        double e2d = std::exp(2.0 * dmax);
        c.rhs = 0.5 * e2d * s2 * dk *
                (1.0 + (e2d * s2 * (1.0 - std::exp(-2.0 * dmax)) + dk) /
                           (cap - dk));
    } else {
        c.rhs = std::numeric_limits<double>::infinity();
    }
    return c;
}

BoundCertificate bound_v_from_h(const Mat& H1, const Mat& H2,
                                const WilliamsonForm& form1,
                                const Tolerances& tols) {
    BoundCertificate c;
    c.bound_name = "covariance_vs_hamiltonian";
    const double s = form1.s_norm();
    const double dmax = form1.d_max();
    const double dmin = form1.d_min();
    const double emin = 1.0 - std::exp(-2.0 * dmin);
    const double dh = operator_norm(Mat(H1 - H2));
    const double cap =
        std::exp(-2.0 * dmax - 1.0) * emin / (4.0 * std::pow(s, 6));
    c.hypothesis_ok = dh <= cap;
    c.lhs = operator_norm(
        Mat(v_from_h_dense(H1, tols) - v_from_h_dense(H2, tols)));
    c.rhs = 4.0 * std::pow(s, 8) * std::exp(2.0 * dmax + 1.0) * dh /
            (emin * emin);
    return c;
}

double trace_bound(const GaussianState& a, const Mat& Ha,
                   const GaussianState& b, const Mat& Hb,
                   const Tolerances& tols) {
    if (a.m != b.m)
        throw DimensionMismatch("bounds", "trace_bound",
                                "mode count mismatch");
    Vec dt = a.t - b.t;
    Mat T = dt * dt.transpose();
    // Bracket of the symmetrized relative entropy, exactly
    // 2 D(a||b) + 2 D(b||a) in the V = (1/2)<{.,.}> convention.
    double bracket = 2.0 * ((Hb - Ha).array() * (a.V - b.V).array()).sum() +
                     2.0 * (T.array() * (Ha + Hb).array()).sum();
    if (bracket < -tols.rel_tol * (1.0 + std::abs(bracket)))
        throw NumericalBreakdown("bounds", "trace_bound",
                                 "negative bracket " +
                                     std::to_string(bracket));
    return std::sqrt(std::max(bracket, 0.0));
}

} // namespace gslearn
