#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gslearn/estimation.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace gslearn;

TEST_CASE("moment estimates on tiny hand-checked batches") {
    // Two single-mode samples (1, 0) and (1, 0): mean (1, 0), zero scatter,
    // so V_hat = -I/2 after the heterodyne correction.
    SampleBatch b;
    b.m = 1;
    b.N = 2;
    b.data = Mat(2, 2);
    b.data << 1.0, 0.0, 1.0, 0.0;
    EstimationResult r = empirical_estimates(b);
    CHECK(r.t_hat(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.t_hat(1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(max_abs(Mat(r.V_hat_raw + 0.5 * Mat::Identity(2, 2))) < 1e-15);
    CHECK(r.N_used == 2);

    // Samples (+1, 0) and (-1, 0): zero mean, scatter diag(1, 0),
    // V_hat = diag(1, 0) - I/2 = diag(1/2, -1/2).
    b.data << 1.0, 0.0, -1.0, 0.0;
    r = empirical_estimates(b);
    CHECK(r.t_hat.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(r.V_hat_raw(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.V_hat_raw(1, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(std::abs(r.V_hat_raw(0, 1)) < 1e-15);

    SampleBatch empty;
    empty.m = 1;
    empty.N = 0;
    empty.data = Mat(0, 2);
    CHECK_THROWS_AS(empirical_estimates(empty), EmptyBatch);
}

TEST_CASE("estimator is equivariant under shifts") {
    GaussianState s{2, Vec::Zero(4), Mat::Identity(4, 4)};
    Vec t(4);
    t << 0.7, -0.2, 1.1, 0.4;
    GaussianState st{2, t, s.V};
    SampleBatch a = heterodyne_sample(s, 5000, 17, 0);
    SampleBatch b = heterodyne_sample(st, 5000, 17, 0);
    EstimationResult ra = empirical_estimates(a);
    EstimationResult rb = empirical_estimates(b);
    CHECK(max_abs(Mat((rb.t_hat - ra.t_hat - t).transpose())) < 1e-12);
    CHECK(max_abs(Mat(rb.V_hat_raw - ra.V_hat_raw)) < 1e-11);
}

TEST_CASE("sample size closed form and scaling") {
    // v_diag = 1, t_max = 1, eps = 0.1, delta = 0.1, m = 1:
    // C = 2 (sqrt(3) + 1)^2, N = ceil(2^8 C^2 * 4 / 0.01 * ln(50)).
    double C = 2.0 * std::pow(std::sqrt(3.0) + 1.0, 2.0);
    long long expected = static_cast<long long>(
        std::ceil(256.0 * C * C * 4.0 / 0.01 * std::log(50.0)));
    CHECK(sample_size(1.0, 1.0, 0.1, 0.1, 1) == expected);

    // Halving eps quadruples N (up to rounding).
    long long n1 = sample_size(2.0, 0.5, 0.02, 0.05, 4);
    long long n2 = sample_size(2.0, 0.5, 0.01, 0.05, 4);
    CHECK(std::abs(static_cast<double>(n2) / static_cast<double>(n1) - 4.0) <
          1e-6);

    // Monotone in m through the log factor only.
    CHECK(sample_size(1.0, 0.0, 0.1, 0.1, 8) >
          sample_size(1.0, 0.0, 0.1, 0.1, 1));

    CHECK_THROWS_AS(sample_size(1.0, 0.0, 0.0, 0.1, 1), InvalidRange);
    CHECK_THROWS_AS(sample_size(1.0, 0.0, 0.1, 0.0, 1), InvalidRange);
}

TEST_CASE("covariance projection returns a bona fide matrix in the box") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 1 + trial % 3;
        Mat V = v_from_h(test::random_hamiltonian(m, rng, 0.3, 1.0));
        // Corrupt with noise large enough to break the bona fide condition.
        Mat E(2 * m, 2 * m);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 2 * m; ++i)
            for (int j = 0; j <= i; ++j) E(i, j) = E(j, i) = 0.4 * u(rng);
        Mat V_hat = V + E;
        // Truth is feasible with slack, so the intersection has interior and
        // the alternating projections converge at a linear rate.
        double eps = 1.5 * max_abs(E);
        Mat V_t = project_covariance(V_hat, eps);
        CHECK(is_bona_fide(V_t, 1e-7));
        CHECK(max_abs(Mat(V_t - V_hat)) <= eps * (1.0 + 1e-9));
        // Idempotence: projecting an already feasible point returns it.
        Mat again = project_covariance(V_t, eps);
        CHECK(max_abs(Mat(again - V_t)) <= eps * (1.0 + 1e-9));
    }
}

TEST_CASE("covariance projection is the identity on feasible input") {
    Mat V = Mat::Identity(4, 4);
    Mat out = project_covariance(V, 0.01);
    CHECK(max_abs(Mat(out - V)) < 1e-9);
}

TEST_CASE("hamiltonian projection: floor, box, and exact graph support") {
    std::mt19937_64 rng(29);
    StateBounds bounds{2.0, 1.0, 0.3, 0.0, 2, 0.0};
    for (int trial = 0; trial < 12; ++trial) {
        int m = 4 + trial % 3;
        InteractionGraph g = InteractionGraph::path(m);
        RandomStateResult r =
            random_state(m, g, bounds, 100 + static_cast<std::uint64_t>(trial));
        Mat H = r.hamiltonian.H;
        Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
        double tau = 0.5 * es.eigenvalues()(0);

        Mat E(2 * m, 2 * m);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 2 * m; ++i)
            for (int j = 0; j <= i; ++j) E(i, j) = E(j, i) = 0.05 * u(rng);
        // Keep the corruption on-graph so the support constraint stays
        // feasible at radius eps.
        Mat mask = Mat::Zero(2 * m, 2 * m);
        for (int i = 0; i < m; ++i) {
            mask.block<2, 2>(2 * i, 2 * i).setOnes();
            for (int j : g.neighbors(i))
                mask.block<2, 2>(2 * i, 2 * j).setOnes();
        }
        E = E.cwiseProduct(mask);
        Mat H_hat = H + E;
        double eps = max_abs(E) + 1e-9;

        Mat H_t = project_hamiltonian(H_hat, eps, tau, &g);
        Eigen::SelfAdjointEigenSolver<Mat> es2(H_t, Eigen::EigenvaluesOnly);
        CHECK(es2.eigenvalues()(0) >= tau - 1e-7);
        CHECK(max_abs(Mat(H_t - H_hat)) <= eps * (1.0 + 1e-9));
        // Off-graph blocks are exactly zero.
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j && !g.has_edge(i, j))
                    CHECK(H_t.block<2, 2>(2 * i, 2 * j)
                              .cwiseAbs()
                              .maxCoeff() == 0.0);
    }
}

TEST_CASE("hamiltonian projection rejects infeasible support constraints") {
    // Large off-graph entries cannot be zeroed within the box radius.
    Mat H = Mat::Identity(4, 4);
    H(0, 2) = H(2, 0) = 0.5;
    InteractionGraph g = InteractionGraph::empty(2);
    CHECK_THROWS_AS(project_hamiltonian(H, 0.1, 0.1, &g), Infeasible);
}
