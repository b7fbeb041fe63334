#include "gslearn/learning.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace gslearn {

void HamLearnParams::validate(const char* op) const {
    if (l < 1 || zeta < 0.0 || eps_prime < 0.0 || eta < 0.0)
        throw InvalidRange("learning", op, "invalid HamLearnParams");
}

namespace {

CMat i_omega(int m) { return Complex(0, 1) * omega(m).cast<Complex>(); }

// Principal matrix logarithm via complex eigendecomposition, with branch-cut
// and conditioning guards.
CMat matrix_log_eig(const CMat& A, const Tolerances& tols, const char* op) {
    const int n = static_cast<int>(A.rows());
    Eigen::ComplexEigenSolver<CMat> es(A);
    if (es.info() != Eigen::Success)
        throw NumericalBreakdown("learning", op, "eigendecomposition failed");
    CMat P = es.eigenvectors();
    auto sv = P.jacobiSvd().singularValues();
    if (sv(0) / sv(sv.size() - 1) > tols.eig_cond_max)
        throw NumericalBreakdown("learning", op, "ill-conditioned eigenbasis");
    CVec loglam(n);
    for (int k = 0; k < n; ++k) {
        Complex z = es.eigenvalues()(k);
        if (z.real() <= 0.0 && std::abs(z.imag()) < tols.log_tol)
            throw LogBranchFailure("learning", op,
                                   "eigenvalue on the log branch cut");
        loglam(k) = std::log(z);
    }
    return P * loglam.asDiagonal() * P.inverse();
}

// The imaginary residue of the recovered Hamiltonian scales with the error
// of the supplied approximate inverse (truncation plus entrywise noise), so
// the guard only rejects residues beyond any admissible error budget; tight
// exactness checks belong to the callers that know their budget.
constexpr double kLocalInverseRealifyTol = 5e-2;

Mat realify_sym(const CMat& M, double rel_tol, const char* op) {
    double imag_max = M.imag().cwiseAbs().maxCoeff();
    if (imag_max > rel_tol * (1.0 + M.real().cwiseAbs().maxCoeff()))
        throw NumericalBreakdown("learning", op,
                                 "imaginary residue " +
                                     std::to_string(imag_max));
    Mat R = M.real();
    return 0.5 * (R + R.transpose());
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform_pm1(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(mix64(seed) ^ (a * 0x9e3779b97f4a7c15ULL + b));
    return 2.0 * (static_cast<double>(h >> 11) * 0x1.0p-53) - 1.0;
}

double binomial_count(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

// Visit k-subsets of `pool` in lexicographic order; stop when f returns true.
bool for_each_subset(const std::vector<int>& pool, int k,
                     const std::function<bool(const std::vector<int>&)>& f) {
    const int n = static_cast<int>(pool.size());
    if (k > n || k < 0) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<int> subset(k);
    while (true) {
        for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
        if (f(subset)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

Mat h_from_local_inverse(const CMat& LI, const Tolerances& tols) {
    const int n = static_cast<int>(LI.rows());
    const int m = n / 2;
    CMat iW = i_omega(m);
    CMat A = CMat::Identity(n, n) + 2.0 * LI * iW;
    CMat H = 0.5 * matrix_log_eig(A, tols, "h_from_local_inverse") * iW;
    return realify_sym(H, kLocalInverseRealifyTol, "h_from_local_inverse");
}

Mat h_from_local_inverse_quadrature(const CMat& LI, int panels,
                                    const Tolerances& tols) {
    if (panels < 1)
        throw InvalidRange("learning", "h_from_local_inverse_quadrature",
                           "panels must be >= 1");
    const int n = static_cast<int>(LI.rows());
    const int m = n / 2;
    CMat iW = i_omega(m);
    CMat K = 2.0 * LI * iW;
    CMat I = CMat::Identity(n, n);
    // 4-point Gauss-Legendre nodes/weights on [0,1].
    static const double gx[4] = {0.069431844202973712, 0.33000947820757187,
                                 0.66999052179242813, 0.93056815579702629};
    static const double gw[4] = {0.17392742256872693, 0.32607257743127307,
                                 0.32607257743127307, 0.17392742256872693};
    CMat integral = CMat::Zero(n, n);
    double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p)
        for (int q = 0; q < 4; ++q) {
            double u = (p + gx[q]) * h;
            integral += gw[q] * h * (I + u * K).inverse();
        }
    CMat H = 0.5 * K * integral * iW;
    return realify_sym(H, kLocalInverseRealifyTol,
                       "h_from_local_inverse_quadrature");
}

HamLearnParams select_params_bounded_degree(double eps, int m,
                                            const StateBounds& bounds) {
    if (!(eps > 0.0 && eps < 1.0) || m < 1)
        throw InvalidRange("learning", "select_params_bounded_degree",
                           "eps must lie in (0,1) and m >= 1");
    bounds.validate("select_params_bounded_degree");
    const double s = bounds.s, bmax = bounds.beta_max, bmin = bounds.beta_min;
    const double s2 = s * s;
    const double emax = 1.0 - std::exp(-2.0 * bmax);
    const double emin = 1.0 - std::exp(-2.0 * bmin);
    const double delta_deg = std::max(bounds.delta_deg, 1);
    const double C = 2.0 * std::pow(s, 6) * std::exp(4.0 * bmax) * emax / emin;
    const double Cp =
        2.0 * std::pow(s, 4) * std::exp(4.0 * bmax) * emax * emax;

    HamLearnParams p;
    p.eps_prime = eps * std::exp(-2.0 * bmax) / (8.0 * s2) /
                  (1.0 + std::exp(4.0 * bmax) * s2 * s2 * emax);
    double l_real = 4.0 * delta_deg * bmax * std::exp(2.0) +
                    std::log(std::exp(1.0) * C / p.eps_prime) / std::log(2.0);
    p.l = std::max(1, std::min(m, static_cast<int>(std::floor(l_real))));
    double dl = std::pow(delta_deg, p.l);
    p.zeta = std::min(p.eps_prime / (Cp * dl * dl),
                      std::exp(-2.0 * bmax) / (2.0 * dl * s2));
    p.constants = {{"C", C}, {"C_prime", Cp}, {"l_uncapped", l_real}};
    p.validate("select_params_bounded_degree");
    return p;
}

HamLearnParams select_params_poly_growth(double eps, double g, double r,
                                         const StateBounds& bounds) {
    if (!(eps > 0.0 && eps < 1.0) || g < 1.0 || r < 1.0)
        throw InvalidRange("learning", "select_params_poly_growth",
                           "require eps in (0,1) and g, r >= 1");
    bounds.validate("select_params_poly_growth");
    const double s = bounds.s, bmax = bounds.beta_max, bmin = bounds.beta_min;
    const double s2 = s * s;
    const double emax = 1.0 - std::exp(-2.0 * bmax);
    const double emin = 1.0 - std::exp(-2.0 * bmin);
    const double C1 =
        std::exp(4.0 * bmax) * std::pow(s, 6) / 2.0 * emax / emin;
    const double C2 = std::exp(2.0 * bmax) * s2 / 2.0;
    const double C3 = 2.0 * std::pow(s, 4) * std::exp(4.0 * bmax) * emax * emax;
    const double C4 = C1 * std::exp(-2.0 * bmax) / (8.0 * s2) /
                      (1.0 + std::exp(4.0 * bmax) * s2 * s2 * emax);

    HamLearnParams p;
    p.eps_prime =
        std::min(eps * std::exp(-2.0 * bmax) / (8.0 * s2) /
                     (1.0 + std::exp(4.0 * bmax) * s2 * s2 * emax),
                 std::exp(-2.0 * bmax) / (8.0 * s2));
    double lr = 2.0 * g *
                (r + 2.0 * std::exp(1.0) * bmax +
                 std::log(C1 / (std::sqrt(2.0 * M_PI) * p.eps_prime)));
    p.l = std::max(1, static_cast<int>(std::ceil(lr)));
    double xi_l = g * std::pow(lr, 2.0 * r);
    p.zeta = p.eps_prime / (C3 * std::max(xi_l, 1.0));
    p.constants = {{"C1", C1}, {"C2", C2}, {"C3", C3},
                   {"C4", C4}, {"xi_l", xi_l}};
    p.validate("select_params_poly_growth");
    return p;
}

HamLearnParams select_params_graph(double kappa, int m,
                                   const StateBounds& bounds) {
    if (kappa <= 0.0 || m < 1)
        throw InvalidRange("learning", "select_params_graph",
                           "kappa must be positive and m >= 1");
    bounds.validate("select_params_graph");
    const double s = bounds.s, bmax = bounds.beta_max, bmin = bounds.beta_min;
    const double s2 = s * s;
    const double emax = 1.0 - std::exp(-2.0 * bmax);
    const double emin = 1.0 - std::exp(-2.0 * bmin);
    const double delta_deg = std::max(bounds.delta_deg, 1);
    const double C = 18.0 * std::pow(s, 10) * std::exp(6.0 * bmax) *
                     (emax / emin) * (emax / emin);
    const double Cp = 2.0 * std::pow(s, 4) * std::exp(4.0 * bmax);

    HamLearnParams p;
    p.eps_prime =
        std::min(kappa * std::exp(-2.0 * bmax) / (16.0 * s2) /
                     (1.0 + std::exp(4.0 * bmax) * s2 * s2 * emax),
                 std::exp(-2.0 * bmax) / (8.0 * s2));
    double l_real = 4.0 * delta_deg * delta_deg * bmax * std::exp(2.0) +
                    std::log(C / p.eps_prime);
    p.l = std::max(1, std::min(m, static_cast<int>(std::floor(l_real))));
    double dl = std::pow(delta_deg, p.l);
    p.zeta = std::min(p.eps_prime / (Cp * dl * dl),
                      p.eps_prime * std::exp(-4.0 * bmax) * emin /
                          (72.0 * dl * dl * dl * std::pow(s, 6) * emax));
    p.eta = p.eps_prime / (36.0 * std::exp(2.0 * bmax) * dl * dl * s2 * s2) *
            emin / emax;
    if (p.eta > 1.0)
        throw InvalidRange("learning", "select_params_graph",
                           "derived eta exceeds 1");
    p.constants = {{"C", C}, {"C_prime", Cp}, {"l_uncapped", l_real}};
    p.validate("select_params_graph");
    return p;
}

namespace {

LearnReport run_hamiltonian_pipeline(const Mat& V_hat, const Vec& t_hat,
                                     long long N,
                                     const InteractionGraph& graph,
                                     const HamLearnParams& params,
                                     const RandomStateResult* truth,
                                     const Tolerances& tols) {
    params.validate("learn_hamiltonian");
    const int m = graph.m;
    NeighborhoodStructure nbhd = l_neighborhoods(graph, params.l);
    CMat N_mat = 2.0 * V_hat.cast<Complex>() -
                 Complex(0, 1) * omega(m).cast<Complex>();
    CMat LI = local_inverse(N_mat, nbhd, tols);

    LearnReport rep;
    rep.H_hat = h_from_local_inverse(LI, tols);
    rep.V_used = V_hat;
    rep.t_hat = t_hat;
    rep.N = N;
    rep.params = params;
    if (truth) {
        rep.err_h = operator_norm(Mat(rep.H_hat - truth->hamiltonian.H));
        rep.err_t =
            (t_hat - truth->state.t).cwiseAbs().maxCoeff();
    }
    return rep;
}

} // namespace

LearnReport learn_hamiltonian(const SampleBatch& batch,
                              const InteractionGraph& graph,
                              const HamLearnParams& params,
                              const RandomStateResult* truth,
                              const Tolerances& tols) {
    EstimationResult est = empirical_estimates(batch);
    return run_hamiltonian_pipeline(est.V_hat_raw, est.t_hat, batch.N, graph,
                                    params, truth, tols);
}

Mat inject_symmetric_noise(const Mat& V, double zeta, std::uint64_t seed) {
    const int n = static_cast<int>(V.rows());
    Mat V_hat = V;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double nz = zeta * uniform_pm1(seed, i, j);
            V_hat(i, j) += nz;
            if (j != i) V_hat(j, i) += nz;
        }
    return V_hat;
}

LearnReport learn_hamiltonian_noise(const Mat& V, const Vec& t,
                                    const InteractionGraph& graph,
                                    const HamLearnParams& params,
                                    std::uint64_t noise_seed,
                                    const RandomStateResult* truth,
                                    const Tolerances& tols) {
    const int n = static_cast<int>(V.rows());
    Mat V_hat = inject_symmetric_noise(V, params.zeta, noise_seed);
    Vec t_hat = t;
    for (int i = 0; i < n; ++i)
        t_hat(i) += params.zeta * uniform_pm1(noise_seed ^ 0x51ed270b, i, 0);
    return run_hamiltonian_pipeline(V_hat, t_hat, 0, graph, params, truth,
                                    tols);
}

LearnReport learn_graph(const Mat& V_hat, int xi_l, double eta, double kappa,
                        const GraphLearnOptions& opts, const Tolerances& tols) {
    const int m = static_cast<int>(V_hat.rows()) / 2;
    if (xi_l < 1 || eta <= 0.0 || kappa <= 0.0)
        throw InvalidRange("learning", "learn_graph",
                           "require xi_l >= 1, eta > 0, kappa > 0");
    const int xi = std::min(xi_l, m);
    if (binomial_count(m, xi) > static_cast<double>(opts.search_budget))
        throw SearchBudgetExceeded("learning", "learn_graph",
                                   "candidate neighborhood count exceeds "
                                   "search budget");

    CMat N_mat = 2.0 * V_hat.cast<Complex>() -
                 Complex(0, 1) * omega(m).cast<Complex>();

    LearnReport rep;
    rep.V_used = V_hat;
    std::vector<std::vector<int>> hat_nbhd(m);
    std::vector<int> all(m);
    for (int v = 0; v < m; ++v) all[v] = v;

    for (int i = 0; i < m; ++i) {
        std::vector<int> others;
        for (int v = 0; v < m; ++v)
            if (v != i) others.push_back(v);
        bool accepted = false;
        // Candidates are the size-xi subsets containing i, lexicographic;
        // first candidate whose every enlargement sweep stays below the
        // threshold wins.
        for_each_subset(others, xi - 1, [&](const std::vector<int>& rest) {
            std::vector<int> cand = rest;
            cand.push_back(i);
            std::sort(cand.begin(), cand.end());
            std::vector<int> complement;
            for (int v : all)
                if (!std::binary_search(cand.begin(), cand.end(), v))
                    complement.push_back(v);
            double worst = 0.0;
            bool numerical_failure = false;
            for_each_subset(
                complement, std::min(xi, static_cast<int>(complement.size())),
                [&](const std::vector<int>& enlarge) {
                    std::vector<int> uni = cand;
                    uni.insert(uni.end(), enlarge.begin(), enlarge.end());
                    std::sort(uni.begin(), uni.end());
                    ++rep.search_loop_count;
                    CMat inv;
                    try {
                        inv = submatrix_inverse(N_mat, uni, tols);
                    } catch (const Error&) {
                        numerical_failure = true;
                        return true;
                    }
                    auto pos = [&](int v) {
                        return static_cast<int>(
                            std::lower_bound(uni.begin(), uni.end(), v) -
                            uni.begin());
                    };
                    int pi = pos(i);
                    for (int j : enlarge) {
                        int pj = pos(j);
                        worst = std::max(
                            worst, inv.block<2, 2>(2 * pi, 2 * pj)
                                       .cwiseAbs()
                                       .maxCoeff());
                    }
                    return worst > 3.0 * eta; // early exit: candidate failed
                });
            if (!numerical_failure && worst <= 3.0 * eta) {
                hat_nbhd[i] = cand;
                accepted = true;
                return true;
            }
            return false;
        });
        if (!accepted)
            throw NoNeighborhoodAccepted(
                "learning", "learn_graph",
                "no candidate neighborhood passed the threshold for vertex " +
                    std::to_string(i));
    }

    // Symmetrization: drop j from N_i when i is not in N_j.
    NeighborhoodStructure nbhd;
    nbhd.sets.resize(m);
    for (int i = 0; i < m; ++i)
        for (int j : hat_nbhd[i]) {
            if (j == i ||
                std::binary_search(hat_nbhd[j].begin(), hat_nbhd[j].end(), i))
                nbhd.sets[i].push_back(j);
        }
    nbhd.validate("learn_graph");

    CMat LI = local_inverse(N_mat, nbhd, tols);
    rep.H_hat = h_from_local_inverse(LI, tols);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (max_abs(Mat(rep.H_hat.block<2, 2>(2 * i, 2 * j))) >=
                0.5 * kappa)
                rep.edges.emplace_back(i, j);
    return rep;
}

double achievable_entry_precision(long long N, double v_diag_bound,
                                  double t_max, double delta, int m) {
    if (N < 1 || !(delta > 0.0 && delta < 1.0) || m < 1 ||
        v_diag_bound <= 0.0 || t_max < 0.0)
        throw InvalidRange("learning", "achievable_entry_precision",
                           "arguments out of range");
    double C = 2.0 * std::pow(std::sqrt(2.0 * v_diag_bound + 1.0) + t_max, 2);
    return std::sqrt(256.0 * C * C * (1.0 + t_max) * (1.0 + t_max) *
                     std::log((4.0 * m + 1.0) / delta) /
                     static_cast<double>(N));
}

double trace_distance_bound_value(double eps_entry, int m,
                                  const StateBounds& bounds) {
    const double s2 = bounds.s * bounds.s;
    const double e2b = std::exp(2.0 * bounds.beta_max) - 1.0;
    return m * eps_entry *
           std::sqrt(12.0 * m * e2b * e2b * s2 * s2 +
                     16.0 * s2 * bounds.beta_max);
}

LearnReport learn_trace_distance(const SampleBatch& batch, double eps,
                                 double delta, const StateBounds& bounds,
                                 const Tolerances& tols) {
    if (eps <= 0.0)
        throw InvalidRange("learning", "learn_trace_distance", "eps <= 0");
    bounds.validate("learn_trace_distance");
    const int m = batch.m;
    const double emin = 1.0 - std::exp(-2.0 * bounds.beta_min);
    const double v_diag = bounds.s * bounds.s / emin;

    EstimationResult est = empirical_estimates(batch);
    double eps_entry = achievable_entry_precision(batch.N, v_diag,
                                                  bounds.t_max, delta, m);
    Mat V_tilde = project_covariance(est.V_hat_raw, eps_entry, {}, tols);

    LearnReport rep;
    rep.V_used = V_tilde;
    rep.t_hat = est.t_hat;
    rep.N = batch.N;
    rep.H_hat = h_from_v(V_tilde, tols);
    // The projection moves at most eps_entry past the estimate, so the final
    // entrywise error against the truth is at most 2 eps_entry when the
    // statistical premise held.
    rep.trace_bound_value = trace_distance_bound_value(2.0 * eps_entry, m,
                                                       bounds);
    const double s2 = bounds.s * bounds.s;
    const double emax = 1.0 - std::exp(-2.0 * bounds.beta_max);
    double hyp_cap = std::exp(-2.0 * bounds.beta_max) / (emax * s2);
    // Operator norm is at most (2m) times the entrywise bound.
    bool hypothesis = 2.0 * (2.0 * m) * (2.0 * eps_entry) < hyp_cap;
    rep.certificate_ok = hypothesis && rep.trace_bound_value <= eps;
    return rep;
}

} // namespace gslearn
