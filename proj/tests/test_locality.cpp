#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gslearn/learning.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace gslearn;

TEST_CASE("path and cycle graph fixtures") {
    InteractionGraph p = InteractionGraph::path(5);
    CHECK(p.edges.size() == 4);
    CHECK(p.has_edge(0, 1));
    CHECK(p.has_edge(3, 4));
    CHECK_FALSE(p.has_edge(0, 2));
    CHECK(p.degree(0) == 1);
    CHECK(p.degree(2) == 2);
    CHECK(p.max_degree() == 2);
    CHECK(p.neighbors(2) == std::vector<int>{1, 3});

    InteractionGraph c = InteractionGraph::cycle(5);
    CHECK(c.edges.size() == 5);
    CHECK(c.has_edge(0, 4));
    CHECK(c.max_degree() == 2);

    CHECK_THROWS_AS(p.add_edge(2, 2), InvalidRange);
    CHECK_THROWS_AS(p.add_edge(0, 7), InvalidRange);
}

TEST_CASE("distance-l neighborhoods on a path are index windows") {
    InteractionGraph p = InteractionGraph::path(7);
    for (int l = 0; l <= 3; ++l) {
        NeighborhoodStructure n = l_neighborhoods(p, l);
        n.validate("test");
        for (int i = 0; i < 7; ++i) {
            std::vector<int> expected;
            for (int j = std::max(0, i - l); j <= std::min(6, i + l); ++j)
                expected.push_back(j);
            CHECK(n.sets[i] == expected);
        }
    }
    CHECK(l_neighborhoods(p, 0).sets == NeighborhoodStructure::singletons(7).sets);
    CHECK(l_neighborhoods(p, 6).sets == NeighborhoodStructure::full(7).sets);
    CHECK_THROWS_AS(l_neighborhoods(p, -1), InvalidRange);
}

TEST_CASE("neighborhood structure validation rejects malformed families") {
    NeighborhoodStructure bad;
    bad.sets = {{0, 1}, {1}}; // 1's set omits 0: not symmetric
    CHECK_THROWS_AS(bad.validate("test"), InvalidRange);
    NeighborhoodStructure irr;
    irr.sets = {{1}, {0, 1}}; // 0's set omits 0: not reflexive
    CHECK_THROWS_AS(irr.validate("test"), InvalidRange);
    NeighborhoodStructure ok;
    ok.sets = {{0, 1}, {0, 1}};
    CHECK_NOTHROW(ok.validate("test"));
    CHECK(ok.xi() == 2);
    CHECK(ok.contains(0, 1));
}

TEST_CASE("localize keeps exactly the supported blocks") {
    std::mt19937_64 rng(3);
    int m = 5;
    Mat Hr = test::random_hamiltonian(m, rng, 0.3, 1.0);
    CMat M = Hr.cast<Complex>();
    NeighborhoodStructure n = l_neighborhoods(InteractionGraph::path(m), 1);
    CMat L = localize(M, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            CMat diff = L.block<2, 2>(2 * i, 2 * j) -
                        (n.contains(i, j) ? CMat(M.block<2, 2>(2 * i, 2 * j))
                                          : CMat(CMat::Zero(2, 2)));
            CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
        }
    // Idempotent, and identity on fully supported input.
    CHECK((localize(L, n) - L).cwiseAbs().maxCoeff() == 0.0);
    CHECK((localize(M, NeighborhoodStructure::full(m)) - M)
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("submatrix inverse against the dense oracle") {
    std::mt19937_64 rng(5);
    int m = 4;
    Mat H = test::random_hamiltonian(m, rng, 0.4, 1.0);
    CMat N = H.cast<Complex>();

    // Full mode set: plain inverse.
    std::vector<int> all{0, 1, 2, 3};
    CMat inv = submatrix_inverse(N, all, default_tols());
    CHECK((inv * N - CMat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);

    // Proper subset: compare against an independently extracted block inverse.
    std::vector<int> sub{1, 3};
    CMat expect(4, 4);
    expect.block<2, 2>(0, 0) = N.block<2, 2>(2, 2);
    expect.block<2, 2>(0, 2) = N.block<2, 2>(2, 6);
    expect.block<2, 2>(2, 0) = N.block<2, 2>(6, 2);
    expect.block<2, 2>(2, 2) = N.block<2, 2>(6, 6);
    CMat got = submatrix_inverse(N, sub, default_tols());
    CHECK((got - expect.inverse()).cwiseAbs().maxCoeff() < 1e-10);

    CMat singular = CMat::Zero(8, 8);
    CHECK_THROWS_AS(submatrix_inverse(singular, sub, default_tols()),
                    SingularBlock);
}

TEST_CASE("local inverse with full neighborhoods is the dense inverse") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 2 + trial % 4;
        Mat H = test::random_hamiltonian(m, rng, 0.3, 1.2);
        Mat V = v_from_h(H);
        CMat iW = Complex(0, 1) * omega(m).cast<Complex>();
        CMat N = 2.0 * V.cast<Complex>() - iW;
        CMat li = local_inverse(N, NeighborhoodStructure::full(m));
        CHECK((li * N - CMat::Identity(2 * m, 2 * m)).cwiseAbs().maxCoeff() <
              1e-9);
        // Output is Hermitian by construction of the stitching.
        CHECK((li - li.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("truncated series: support pattern and tail bound") {
    std::mt19937_64 rng(11);
    StateBounds bounds{2.2, 1.1, 0.3, 0.0, 2, 0.0};
    for (int trial = 0; trial < 12; ++trial) {
        int m = 5 + trial % 3;
        InteractionGraph g =
            (trial % 2 == 0) ? InteractionGraph::path(m)
                             : InteractionGraph::cycle(m);
        RandomStateResult r =
            random_state(m, g, bounds, 1000 + static_cast<std::uint64_t>(trial));
        const Mat& H = r.hamiltonian.H;
        Mat V = r.state.V;
        CMat iW = Complex(0, 1) * omega(m).cast<Complex>();
        CMat dense = (2.0 * V.cast<Complex>() - iW).inverse();
        NeighborhoodStructure dist = l_neighborhoods(g, 0); // placeholder
        for (int l = 1; l <= 8; ++l) {
            CMat trunc = truncated_inverse_series(H, l);
            // Blocks beyond graph distance l vanish exactly.
            dist = l_neighborhoods(g, l);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (!dist.contains(i, j))
                        CHECK(trunc.block<2, 2>(2 * i, 2 * j)
                                  .cwiseAbs()
                                  .maxCoeff() == 0.0);
            // Tail bound dominates the dense-oracle error.
            double err = operator_norm(CMat(dense - trunc));
            double bound =
                series_tail_bound(r.form.s_norm(), r.form.d_max(), l);
            CHECK(err <= bound * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("series tail bound closed form") {
    // l = 3, s = 2, d_max = 1/2: (s^2/2) * 1/4! * e = e/12.
    CHECK(series_tail_bound(2.0, 0.5, 3) ==
          doctest::Approx(2.0 * std::exp(1.0) / 24.0).epsilon(1e-14));
}

TEST_CASE("row-perturbation bound matches its defining expression") {
    std::mt19937_64 rng(13);
    Mat H = test::random_hamiltonian(3, rng, 0.4, 1.0);
    CMat M = H.cast<Complex>();
    std::vector<int> block{0};
    int row = 0;
    double got = block_inverse_row_bound(M, block, row);
    // Independent evaluation: 2-norm of the off-block part of the row times
    // the condition number of M.
    double rn = std::sqrt(std::norm(M(0, 2)) + std::norm(M(0, 3)) +
                          std::norm(M(0, 4)) + std::norm(M(0, 5)));
    Eigen::JacobiSVD<CMat> svd(M);
    double cond = svd.singularValues()(0) /
                  svd.singularValues()(svd.singularValues().size() - 1);
    CHECK(got == doctest::Approx(rn * cond).epsilon(1e-10));
}

TEST_CASE("local inversion error stays below the certified bound") {
    std::mt19937_64 seeder(17);
    StateBounds bounds{2.2, 1.0, 0.3, 0.0, 2, 0.0};
    int instances = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int m = 5 + trial % 4;
        InteractionGraph g;
        switch (trial % 3) {
        case 0: g = InteractionGraph::path(m); break;
        case 1: g = InteractionGraph::cycle(m); break;
        default: g = test::random_graph(m, 2, seeder); break;
        }
        RandomStateResult r =
            random_state(m, g, bounds, 5000 + static_cast<std::uint64_t>(trial));
        Mat V = r.state.V;
        int l = 2 + trial % 2;
        NeighborhoodStructure nbhd = l_neighborhoods(g, l);
        int xi = nbhd.xi();
        LocalInversionBoundParams p{r.form.s_norm(), r.form.d_max(),
                                    r.form.d_min()};
        double cap = local_inversion_zeta_cap(p, xi);
        double zeta = std::min(1e-6, 0.25 * cap);

        Mat V_noisy = inject_symmetric_noise(
            V, zeta, 9000 + static_cast<std::uint64_t>(trial));
        CHECK(max_abs(Mat(V_noisy - V)) <= zeta * (1.0 + 1e-12));

        CMat iW = Complex(0, 1) * omega(m).cast<Complex>();
        CMat N_true = 2.0 * V.cast<Complex>() - iW;
        CMat N_noisy = 2.0 * V_noisy.cast<Complex>() - iW;
        CMat li = local_inverse(N_noisy, nbhd);
        double err = operator_norm(CMat(li - N_true.inverse()));
        double bound = local_inversion_error_bound(p, xi, l, 2.0 * zeta);
        CHECK(err <= bound * (1.0 + 1e-10));
        ++instances;

        CHECK_THROWS_AS(local_inversion_error_bound(p, xi, l, 2.0 * cap),
                        HypothesisViolated);
    }
    CHECK(instances == 30);
}
