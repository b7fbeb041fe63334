#ifndef GSLEARN_LOCALITY_HPP
#define GSLEARN_LOCALITY_HPP

#include "gslearn/common.hpp"

#include <set>
#include <utility>
#include <vector>

namespace gslearn {

/// Undirected simple graph on modes; edge (i,j) present iff the 2x2 block
/// H[2i..2i+1, 2j..2j+1] is nonzero.
struct InteractionGraph {
    int m = 0;
    std::set<std::pair<int, int>> edges; // i < j, no self-loops

    static InteractionGraph empty(int m) { return {m, {}}; }
    static InteractionGraph path(int m);
    static InteractionGraph cycle(int m);

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;
    int degree(int v) const;
    int max_degree() const;
    std::vector<int> neighbors(int v) const;
};

/// A reflexive, symmetric family of mode index sets {N_i}.
struct NeighborhoodStructure {
    std::vector<std::vector<int>> sets; // sorted, i in sets[i]

    int m() const { return static_cast<int>(sets.size()); }
    int xi() const; // max_i |N_i|
    bool contains(int i, int j) const;
    void validate(const char* op) const;

    static NeighborhoodStructure full(int m);
    static NeighborhoodStructure singletons(int m);
};

/// Interaction graph of a Hamiltonian: edge iff the corresponding 2x2 block
/// has an entry of modulus above zero_tol.
InteractionGraph graph_of_hamiltonian(const Mat& H, double zero_tol = 1e-12);

/// All modes at graph distance <= l from each vertex (BFS).
NeighborhoodStructure l_neighborhoods(const InteractionGraph& graph, int l);

/// Keep the 2x2 mode blocks (i,j) with j in N_i, zero the rest.
CMat localize(const CMat& M, const NeighborhoodStructure& nbhd);

/// Approximate inverse of a Hermitian positive definite matrix, stitched from
/// the inverses of its neighborhood-restricted principal submatrices.
CMat local_inverse(const CMat& N_mat, const NeighborhoodStructure& nbhd,
                   const Tolerances& tols = default_tols());

/// Inverse of the principal submatrix of N_mat on the given modes, as a dense
/// 2|modes| x 2|modes| matrix. Building block of local_inverse and of the
/// graph-learning probe loop.
CMat submatrix_inverse(const CMat& N_mat, const std::vector<int>& modes,
                       const Tolerances& tols = default_tols());

/// Partial sum (1/2) sum_{n=1..l} (2 H i Omega)^n / n! (i Omega) of the series
/// for (2V - i Omega)^{-1}. Its (i,j) block is exactly zero when the graph
/// distance of i and j exceeds l.
CMat truncated_inverse_series(const Mat& H, int l);

/// Upper bound on the operator norm of the series tail:
///   (s^2/2) (2 d_max)^{l+1} e^{2 d_max} / (l+1)!.
double series_tail_bound(double s_norm, double d_max, int l);

/// Bound on how much zeroing the designated row of the off-diagonal block
/// perturbs the Schur complement of a partitioned Hermitian PD matrix:
///   |row of B|_2 * |M^{-1}| * |M|.
/// `block_modes` lists the modes forming the upper-left block; `row` is the
/// global row index mapped to the first position of that block.
double block_inverse_row_bound(const CMat& M,
                               const std::vector<int>& block_modes, int row,
                               const Tolerances& tols = default_tols());

/// Right-hand side of the local-inversion error bound: series-tail terms plus
/// the entrywise-noise term, evaluated at (s, d_min, d_max, xi(l), l, zeta).
struct LocalInversionBoundParams {
    double s_norm;
    double d_max;
    double d_min;
};

double local_inversion_error_bound(const LocalInversionBoundParams& p,
                                   int xi_l, int l, double zeta);

/// Hypothesis on zeta required for the bound above to be contractual.
double local_inversion_zeta_cap(const LocalInversionBoundParams& p, int xi_l);

} // namespace gslearn

#endif
