#include "gslearn/locality.hpp"
#include "gslearn/symplectic.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <queue>

namespace gslearn {

InteractionGraph InteractionGraph::path(int m) {
    InteractionGraph g{m, {}};
    for (int i = 0; i + 1 < m; ++i) g.add_edge(i, i + 1);
    return g;
}

InteractionGraph InteractionGraph::cycle(int m) {
    InteractionGraph g = path(m);
    if (m > 2) g.add_edge(0, m - 1);
    return g;
}

void InteractionGraph::add_edge(int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= m || j >= m)
        throw InvalidRange("locality", "add_edge", "bad vertex pair");
    if (i > j) std::swap(i, j);
    edges.insert({i, j});
}

bool InteractionGraph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return edges.count({i, j}) > 0;
}

int InteractionGraph::degree(int v) const {
    int d = 0;
    for (auto& [i, j] : edges)
        if (i == v || j == v) ++d;
    return d;
}

int InteractionGraph::max_degree() const {
    int best = 0;
    for (int v = 0; v < m; ++v) best = std::max(best, degree(v));
    return best;
}

std::vector<int> InteractionGraph::neighbors(int v) const {
    std::vector<int> out;
    for (auto& [i, j] : edges) {
        if (i == v) out.push_back(j);
        if (j == v) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int NeighborhoodStructure::xi() const {
    std::size_t best = 0;
    for (auto& s : sets) best = std::max(best, s.size());
    return static_cast<int>(best);
}

bool NeighborhoodStructure::contains(int i, int j) const {
    const auto& s = sets[i];
    return std::binary_search(s.begin(), s.end(), j);
}

void NeighborhoodStructure::validate(const char* op) const {
    const int n = m();
    for (int i = 0; i < n; ++i) {
        const auto& s = sets[i];
        if (!std::is_sorted(s.begin(), s.end()))
            throw InvalidRange("locality", op, "neighborhood not sorted");
        if (!contains(i, i))
            throw InvalidRange("locality", op, "neighborhood not reflexive");
        for (int j : s) {
            if (j < 0 || j >= n)
                throw InvalidRange("locality", op, "mode index out of range");
            if (!contains(j, i))
                throw InvalidRange("locality", op, "neighborhood not symmetric");
        }
    }
}

NeighborhoodStructure NeighborhoodStructure::full(int m) {
    NeighborhoodStructure n;
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    n.sets.assign(m, all);
    return n;
}

NeighborhoodStructure NeighborhoodStructure::singletons(int m) {
    NeighborhoodStructure n;
    n.sets.resize(m);
    for (int i = 0; i < m; ++i) n.sets[i] = {i};
    return n;
}

InteractionGraph graph_of_hamiltonian(const Mat& H, double zero_tol) {
    const int m = static_cast<int>(H.rows()) / 2;
    InteractionGraph g{m, {}};
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (H.block<2, 2>(2 * i, 2 * j).cwiseAbs().maxCoeff() > zero_tol)
                g.add_edge(i, j);
    return g;
}

NeighborhoodStructure l_neighborhoods(const InteractionGraph& graph, int l) {
    if (l < 0)
        throw InvalidRange("locality", "l_neighborhoods", "l must be >= 0");
    NeighborhoodStructure n;
    n.sets.resize(graph.m);
    for (int v = 0; v < graph.m; ++v) {
        std::vector<int> dist(graph.m, -1);
        std::queue<int> q;
        dist[v] = 0;
        q.push(v);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (dist[u] == l) continue;
            for (int w : graph.neighbors(u))
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
        for (int w = 0; w < graph.m; ++w)
            if (dist[w] >= 0) n.sets[v].push_back(w);
    }
    return n;
}

CMat localize(const CMat& M, const NeighborhoodStructure& nbhd) {
    const int m = nbhd.m();
    if (M.rows() != 2 * m || M.cols() != 2 * m)
        throw DimensionMismatch("locality", "localize", "size mismatch");
    CMat out = CMat::Zero(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j : nbhd.sets[i])
            out.block<2, 2>(2 * i, 2 * j) = M.block<2, 2>(2 * i, 2 * j);
    return out;
}

CMat submatrix_inverse(const CMat& N_mat, const std::vector<int>& modes,
                       const Tolerances& tols) {
    const int k = static_cast<int>(modes.size());
    CMat sub(2 * k, 2 * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            sub.block<2, 2>(2 * a, 2 * b) =
                N_mat.block<2, 2>(2 * modes[a], 2 * modes[b]);
    Eigen::FullPivLU<CMat> lu(sub);
    if (!lu.isInvertible() ||
        min_singular_value(sub) <= tols.pd_tol * (1.0 + operator_norm(sub)))
        throw SingularBlock("locality", "submatrix_inverse",
                            "principal submatrix is numerically singular");
    return lu.inverse();
}

CMat local_inverse(const CMat& N_mat, const NeighborhoodStructure& nbhd,
                   const Tolerances& tols) {
    nbhd.validate("local_inverse");
    const int m = nbhd.m();
    if (N_mat.rows() != 2 * m || N_mat.cols() != 2 * m)
        throw DimensionMismatch("locality", "local_inverse", "size mismatch");

    std::vector<CMat> inv(m);
    for (int i = 0; i < m; ++i)
        inv[i] = submatrix_inverse(N_mat, nbhd.sets[i], tols);

    auto block_of = [&](int i, int j) -> CMat {
        // 2x2 block (i,j) of the inverse of the neighborhood-i submatrix; zero
        // when j is outside N_i.
        const auto& s = nbhd.sets[i];
        auto ai = std::lower_bound(s.begin(), s.end(), i) - s.begin();
        auto aj = std::lower_bound(s.begin(), s.end(), j) - s.begin();
        if (aj == static_cast<long>(s.size()) || s[aj] != j)
            return CMat::Zero(2, 2);
        return inv[i].block<2, 2>(2 * ai, 2 * aj);
    };

    CMat out = CMat::Zero(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (!nbhd.contains(i, j) && !nbhd.contains(j, i)) continue;
            CMat bi = block_of(i, j);
            CMat bj = block_of(j, i).adjoint();
            out.block<2, 2>(2 * i, 2 * j) = 0.5 * (bi + bj);
        }
    return out;
}

CMat truncated_inverse_series(const Mat& H, int l) {
    if (l < 0)
        throw InvalidRange("locality", "truncated_inverse_series",
                           "l must be >= 0");
    const int n = static_cast<int>(H.rows());
    const int m = n / 2;
    CMat iW = Complex(0, 1) * omega(m).cast<Complex>();
    CMat X = 2.0 * H.cast<Complex>() * iW;
    CMat term = CMat::Identity(n, n);
    CMat sum = CMat::Zero(n, n);
    for (int k = 1; k <= l; ++k) {
        term = term * X / static_cast<double>(k);
        sum += term;
    }
    return 0.5 * sum * iW;
}

double series_tail_bound(double s_norm, double d_max, int l) {
    double x = 2.0 * d_max;
    double term = 1.0;
    for (int k = 1; k <= l + 1; ++k) term *= x / k;
    return 0.5 * s_norm * s_norm * term * std::exp(x);
}

double block_inverse_row_bound(const CMat& M,
                               const std::vector<int>& block_modes, int row,
                               const Tolerances& tols) {
    const int m = static_cast<int>(M.rows()) / 2;
    std::vector<bool> in_block(m, false);
    for (int v : block_modes) in_block[v] = true;
    double row_norm_sq = 0.0;
    for (int j = 0; j < m; ++j)
        if (!in_block[j])
            for (int c = 0; c < 2; ++c)
                row_norm_sq += std::norm(M(row, 2 * j + c));
    double nm = operator_norm(M);
    double ninv = 1.0 / std::max(min_singular_value(M), tols.pd_tol);
    return std::sqrt(row_norm_sq) * ninv * nm;
}

double local_inversion_error_bound(const LocalInversionBoundParams& p, int xi_l,
                                   int l, double zeta) {
    if (zeta >= local_inversion_zeta_cap(p, xi_l))
        throw HypothesisViolated("locality", "local_inversion_error_bound",
                                 "zeta exceeds the admissible cap");
    const double s2 = p.s_norm * p.s_norm;
    const double emin = 1.0 - std::exp(-2.0 * p.d_min);
    const double emax = 1.0 - std::exp(-2.0 * p.d_max);
    const double xi = static_cast<double>(xi_l);

    double x = 2.0 * p.d_max;
    double fact = 1.0; // x^{l+1}/(l+1)!
    for (int k = 1; k <= l + 1; ++k) fact *= x / k;

    double term1 = xi * (s2 * s2 * s2 / 2.0) * fact *
                   std::exp(4.0 * p.d_max) * emax / emin;
    double term2 = (2.0 * xi + 1.0) * (s2 / 2.0) * fact * std::exp(x);
    double term3 = 2.0 * s2 * s2 * std::exp(4.0 * p.d_max) * emax * emax * xi *
                   xi * zeta;
    return term1 + term2 + term3;
}

double local_inversion_zeta_cap(const LocalInversionBoundParams& p, int xi_l) {
    const double s2 = p.s_norm * p.s_norm;
    const double emax = 1.0 - std::exp(-2.0 * p.d_max);
    return (1.0 / (2.0 * xi_l)) * std::exp(-2.0 * p.d_max) / (s2 * emax);
}

} // namespace gslearn
