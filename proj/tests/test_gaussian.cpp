#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"

#include <cmath>

using namespace gslearn;

TEST_CASE("bona fide check on hand-computable matrices") {
    Mat I2 = Mat::Identity(2, 2);
    CHECK(is_bona_fide(I2, 1e-12));
    CHECK_FALSE(is_bona_fide(Mat(0.25 * I2), 1e-12));
    CHECK(is_bona_fide(Mat(0.5 * I2), 1e-9)); // vacuum: boundary case
    CHECK_FALSE(is_nondegenerate(Mat(0.5 * I2)));
    CHECK(is_nondegenerate(I2));
    Mat asym(2, 2);
    asym << 1.0, 0.3, -0.3, 1.0;
    CHECK_THROWS_AS(is_bona_fide(asym, 1e-12), NotSymmetric);
}

TEST_CASE("single-mode analytic identities") {
    // H = (ln 3 / 2) I maps to V = I since coth(ln 3 / 2) = 2.
    double h = 0.5 * std::log(3.0);
    Mat H = h * Mat::Identity(2, 2);
    Mat V = v_from_h(H);
    CHECK(max_abs(Mat(V - Mat::Identity(2, 2))) < 1e-12);
    Mat Hb = h_from_v(Mat(Mat::Identity(2, 2)));
    CHECK(max_abs(Mat(Hb - H)) < 1e-10);
    // Vacuum has no finite Hamiltonian.
    CHECK_THROWS_AS(h_from_v(Mat(0.5 * Mat::Identity(2, 2))), TooPure);
}

TEST_CASE("thermal covariance decreases monotonically to the vacuum") {
    double prev = 1e300;
    for (double d = 0.2; d < 6.0; d += 0.2) {
        Mat V = v_from_h(Mat(d * Mat::Identity(2, 2)));
        CHECK(V(0, 0) < prev);
        CHECK(V(0, 0) > 0.5);
        prev = V(0, 0);
    }
}

TEST_CASE("round trip h -> v -> h on random states") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 1 + trial % 4;
        Mat H = test::random_hamiltonian(m, rng, 0.3, 1.5);
        Mat H2 = h_from_v(v_from_h(H));
        CHECK(max_abs(Mat(H2 - H)) < 1e-8 * (1.0 + max_abs(H)));
    }
}

TEST_CASE("williamson route and dense log route agree") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + trial % 3;
        Mat H = test::random_hamiltonian(m, rng, 0.3, 1.2);
        Mat V = v_from_h(H);
        Mat Hw = h_from_v(V);
        Mat Hd = h_from_v_dense(V);
        CHECK(max_abs(Mat(Hw - Hd)) < 1e-8 * (1.0 + max_abs(Hw)));
    }
}

TEST_CASE("normalization closed forms") {
    CHECK(normalization(Mat(Mat::Identity(2, 2))) ==
          doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(normalization(Mat(Mat::Identity(4, 4))) ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK_THROWS_AS(normalization(Mat(0.5 * Mat::Identity(2, 2))), TooPure);
}

TEST_CASE("normalization consistent with symplectic spectrum") {
    // det(V + i Omega / 2) = prod_i (v_i^2 - 1/4) with v_i the symplectic
    // eigenvalues of V: an independent scalar route.
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 1 + trial % 3;
        Mat V = v_from_h(test::random_hamiltonian(m, rng, 0.3, 1.2));
        Vec v = symplectic_eigenvalues(V);
        double prod = 1.0;
        for (int i = 0; i < m; ++i) prod *= v(i) * v(i) - 0.25;
        CHECK(normalization(V) ==
              doctest::Approx(std::sqrt(prod)).epsilon(1e-8));
    }
}

TEST_CASE("relative entropy: identity, positivity, scalar closed form") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 1 + trial % 3;
        Mat Ha = test::random_hamiltonian(m, rng, 0.3, 1.2);
        Mat Hb = test::random_hamiltonian(m, rng, 0.3, 1.2);
        GaussianState a{m, Vec::Zero(2 * m), v_from_h(Ha)};
        GaussianState b{m, Vec::Zero(2 * m), v_from_h(Hb)};
        CHECK(relative_entropy(a, Ha, a, Ha) < 1e-12);
        CHECK(relative_entropy(a, Ha, b, Hb) >= 0.0);
    }

    // Scalar thermal pair: D = (h_b - h_a) v_a + (ln Z_b - ln Z_a) per
    // quadrature pair, evaluated by hand from the closed forms.
    double da = 0.5, db = 0.8;
    Mat Ha = da * Mat::Identity(2, 2);
    Mat Hb = db * Mat::Identity(2, 2);
    double va = 0.5 / std::tanh(da), vb = 0.5 / std::tanh(db);
    GaussianState a{1, Vec::Zero(2), va * Mat::Identity(2, 2)};
    GaussianState b{1, Vec::Zero(2), vb * Mat::Identity(2, 2)};
    double expected = 2.0 * (db - da) * va +
                      0.5 * std::log((vb * vb - 0.25) / (va * va - 0.25));
    CHECK(relative_entropy(a, Ha, b, Hb) ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("random_state respects graph support and declared bounds") {
    StateBounds bounds{2.0, 1.2, 0.3, 0.5, 2, 0.0};
    std::mt19937_64 seeder(1);
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        int m = 2 + static_cast<int>(seed % 5);
        InteractionGraph g = test::random_graph(m, 2, seeder);
        RandomStateResult r = random_state(m, g, bounds, seed);
        ++checked;
        // Exact support recovery.
        InteractionGraph rec = graph_of_hamiltonian(r.hamiltonian.H);
        CHECK(rec.edges == g.edges);
        // Declared bounds.
        CHECK(r.form.s_norm() <= bounds.s + 1e-9);
        CHECK(r.form.d_min() >= bounds.beta_min - 1e-9);
        CHECK(r.form.d_max() <= bounds.beta_max + 1e-9);
        CHECK(r.state.t.cwiseAbs().maxCoeff() <= bounds.t_max + 1e-12);
        CHECK(is_bona_fide(r.state.V, 1e-9));
        // Determinism.
        RandomStateResult r2 = random_state(m, g, bounds, seed);
        CHECK(max_abs(Mat(r2.hamiltonian.H - r.hamiltonian.H)) == 0.0);
    }
    CHECK(checked == 100);
}

TEST_CASE("interlacing of symplectic and ordinary eigenvalues") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        int m = 1 + trial % 4;
        Mat H = test::random_hamiltonian(m, rng, 0.3, 1.5);
        Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
        WilliamsonForm f = williamson(H);
        CHECK(es.eigenvalues()(0) <= f.d_min() + 1e-10);
        CHECK(f.d_max() <= es.eigenvalues()(2 * m - 1) + 1e-10);
    }
}
