#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvr/gaussian.hpp"
#include "cvr/graph.hpp"
#include "cvr/rng.hpp"
#include "cvr/unitaries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace cvr;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_pure_covariance(int n, Rng& rng, double nu_min = 1.0, double nu_max = 1.0) {
    const auto basis = gellmann_basis(n);
    VectorXd e1(n * n), e2(n * n);
    for (int i = 0; i < n * n; ++i) {
        e1[i] = rng.uniform(-1.0, 1.0);
        e2[i] = rng.uniform(-1.0, 1.0);
    }
    VectorXd d(2 * n), th(2 * n);
    for (int i = 0; i < n; ++i) {
        const double di = rng.uniform(1.0, 2.0);
        d[i] = di;
        d[n + i] = 1.0 / di;
        const double nui = rng.uniform(nu_min, nu_max);
        th[i] = nui;
        th[n + i] = nui;
    }
    const MatrixXd s = unitary_to_symplectic(to_unitary(basis, e1)) * d.asDiagonal() *
                       unitary_to_symplectic(to_unitary(basis, e2));
    return s * th.asDiagonal() * s.transpose();
}

Graph ladder_graph(int n) {
    TopologySpec sp;
    sp.kind = Topology::grid;
    sp.n = n;
    return generate(sp);
}

}  // namespace

TEST_CASE("omega squares to minus the identity") {
    const MatrixXd o = omega(3);
    CHECK((o * o + MatrixXd::Identity(6, 6)).norm() == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK(o(0, 3) == 1.0);
    CHECK(o(3, 0) == -1.0);
}

TEST_CASE("symmetric square root reproduces the matrix") {
    Rng rng(1);
    MatrixXd m = MatrixXd::Zero(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m(i, j) = rng.gauss();
    m = (m * m.transpose()).eval();
    m += MatrixXd::Identity(5, 5) * 0.1;
    const MatrixXd r = symmetric_sqrt(m);
    CHECK((r * r - m).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r - r.transpose()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("squeezing block values at s = 10") {
    Squeezing sq{10.0};
    CHECK(sq.lambda() == doctest::Approx(5.05));
    CHECK(sq.mu() == doctest::Approx(4.95));
}

TEST_CASE("cluster symplectic is symplectic") {
    Graph g = ladder_graph(6);
    const MatrixXd s = cluster_symplectic(g.adj);
    const MatrixXd o = omega(6);
    CHECK((s * o * s.transpose() - o).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(cluster_symplectic(MatrixXd::Zero(3, 3)).isIdentity(1e-14));
}

TEST_CASE("two linked nodes form the routed pair state") {
    MatrixXd adj = MatrixXd::Zero(2, 2);
    adj(0, 1) = adj(1, 0) = 1.0;
    const MatrixXd cov = cluster_covariance(adj, 10.0);
    CHECK((cov - two_mode_squeezed_target(10.0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pair target layout") {
    const MatrixXd t = two_mode_squeezed_target(10.0);
    CHECK(t(0, 0) == doctest::Approx(5.05));
    CHECK(t(0, 3) == doctest::Approx(4.95));
    CHECK(t(1, 2) == doctest::Approx(4.95));
    CHECK(t(2, 2) == doctest::Approx(5.05));
    CHECK(t(0, 1) == 0.0);
    CHECK(t(0, 2) == 0.0);
}

TEST_CASE("symplectic eigenvalues of simple states") {
    CHECK((symplectic_eigenvalues(MatrixXd::Identity(6, 6)) - VectorXd::Ones(3)).cwiseAbs().maxCoeff() <
          1e-12);
    VectorXd d(4);
    d << 4.0, 1.0, 4.0, 1.0;  // two thermal modes
    const VectorXd nu = symplectic_eigenvalues(MatrixXd(d.asDiagonal()));
    CHECK(nu[0] == doctest::Approx(4.0));
    CHECK(nu[1] == doctest::Approx(1.0));
    VectorXd sq(2);
    sq << 9.0, 1.0 / 9.0;  // squeezed vacuum stays pure
    CHECK(symplectic_eigenvalues(MatrixXd(sq.asDiagonal()))[0] == doctest::Approx(1.0));
}

TEST_CASE("three-rung ladder half spectrum") {
    Graph g = ladder_graph(6);
    const MatrixXd cov = cluster_covariance(g.adj, 10.0);
    const VectorXd nu = symplectic_eigenvalues(reduce(cov, g.provider(0)));
    REQUIRE(nu.size() == 3);
    CHECK(nu[0] == doctest::Approx(5.05).epsilon(1e-9));
    CHECK(nu[1] == doctest::Approx(3.640226641).epsilon(1e-8));
    CHECK(nu[2] == doctest::Approx(3.640226641).epsilon(1e-8));
}

TEST_CASE("complete-graph half spectrum carries unit values") {
    TopologySpec sp;
    sp.kind = Topology::complete;
    sp.n = 6;
    Graph g = generate(sp);
    const MatrixXd cov = cluster_covariance(g.adj, 10.0);
    const VectorXd nu = symplectic_eigenvalues(reduce(cov, g.provider(0)));
    CHECK(nu[0] == doctest::Approx(4.238310).epsilon(1e-5));
    CHECK(std::abs(nu[1] - 1.0) < 1e-9);
    CHECK(std::abs(nu[2] - 1.0) < 1e-9);
}

TEST_CASE("williamson reconstructs the covariance with a symplectic factor") {
    Graph g = ladder_graph(6);
    const MatrixXd cov = reduce(cluster_covariance(g.adj, 10.0), g.provider(0));
    WilliamsonResult w = williamson(cov);
    VectorXd nu2(6);
    nu2 << w.nu, w.nu;
    CHECK((w.S * nu2.asDiagonal() * w.S.transpose() - cov).cwiseAbs().maxCoeff() < 1e-10);
    const MatrixXd o = omega(3);
    CHECK((w.S * o * w.S.transpose() - o).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i + 1 < w.nu.size(); ++i) CHECK(w.nu[i] >= w.nu[i + 1]);
}

TEST_CASE("williamson handles many random states") {
    Rng rng(3);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + rng.below(5);
        const MatrixXd cov = random_pure_covariance(n, rng, 1.0, 3.0);
        WilliamsonResult w = williamson(cov);
        VectorXd nu2(2 * n);
        nu2 << w.nu, w.nu;
        worst = std::max(worst, (w.S * nu2.asDiagonal() * w.S.transpose() - cov).norm() / cov.norm());
        CHECK(w.nu.minCoeff() > 1.0 - 1e-10);
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("bloch messiah factors and squeezing values on the ladder half") {
    Graph g = ladder_graph(6);
    const MatrixXd cov = reduce(cluster_covariance(g.adj, 10.0), g.provider(0));
    WilliamsonResult w = williamson(cov);
    BlochMessiahResult bm = bloch_messiah(w.S);
    const int n = 3;
    VectorXd dd(2 * n);
    dd << bm.d, bm.d.cwiseInverse();
    CHECK((bm.O1 * dd.asDiagonal() * bm.O2 - w.S).cwiseAbs().maxCoeff() < 1e-9);
    const MatrixXd o = omega(n);
    for (const MatrixXd& q : {bm.O1, bm.O2}) {
        CHECK((q * q.transpose()).isIdentity(1e-10));
        CHECK((q * o * q.transpose() - o).cwiseAbs().maxCoeff() < 1e-10);
    }
    VectorXd sorted = bm.d;
    std::sort(sorted.data(), sorted.data() + n);
    CHECK(sorted[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sorted[1] == doctest::Approx(1.532581).epsilon(1e-5));
    CHECK(sorted[2] == doctest::Approx(1.532581).epsilon(1e-5));
}

TEST_CASE("bloch messiah on the complete-graph half exposes root-s squeezers") {
    TopologySpec sp;
    sp.kind = Topology::complete;
    sp.n = 6;
    Graph g = generate(sp);
    const MatrixXd cov = reduce(cluster_covariance(g.adj, 10.0), g.provider(0));
    BlochMessiahResult bm = bloch_messiah(williamson(cov).S);
    VectorXd sorted = bm.d;
    std::sort(sorted.data(), sorted.data() + 3);
    CHECK(sorted[2] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-8));
    CHECK(sorted[1] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-8));
}

TEST_CASE("bloch messiah survives random symplectic inputs") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + rng.below(4);
        const auto basis = gellmann_basis(n);
        VectorXd e1(n * n), e2(n * n), d(2 * n);
        for (int i = 0; i < n * n; ++i) {
            e1[i] = rng.uniform(-1.5, 1.5);
            e2[i] = rng.uniform(-1.5, 1.5);
        }
        for (int i = 0; i < n; ++i) {
            const double di = rng.uniform(1.0, 3.0);
            d[i] = di;
            d[n + i] = 1.0 / di;
        }
        const MatrixXd s = unitary_to_symplectic(to_unitary(basis, e1)) * d.asDiagonal() *
                           unitary_to_symplectic(to_unitary(basis, e2));
        BlochMessiahResult bm = bloch_messiah(s);
        VectorXd dd(2 * n);
        dd << bm.d, bm.d.cwiseInverse();
        CHECK((bm.O1 * dd.asDiagonal() * bm.O2 - s).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("reduce keeps the requested modes in the requested order") {
    VectorXd d(8);
    d << 1.0, 2.0, 3.0, 4.0, 10.0, 20.0, 30.0, 40.0;
    const MatrixXd cov = d.asDiagonal();
    const MatrixXd r = reduce(cov, {2, 0});
    REQUIRE(r.rows() == 4);
    CHECK(r(0, 0) == 3.0);
    CHECK(r(1, 1) == 1.0);
    CHECK(r(2, 2) == 30.0);
    CHECK(r(3, 3) == 10.0);
}

TEST_CASE("purity of pure and thermal states") {
    Graph g = ladder_graph(8);
    CHECK(purity(cluster_covariance(g.adj, 10.0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(purity(MatrixXd::Identity(4, 4) * 2.0) == doctest::Approx(0.25));
    MatrixXd bad = MatrixXd::Identity(2, 2);
    bad(1, 1) = -1.0;
    CHECK_THROWS_AS(purity(bad), std::domain_error);
}

TEST_CASE("entropy of a thermal mode and its invariance") {
    MatrixXd one = MatrixXd::Identity(2, 2) * 5.05;
    CHECK(von_neumann_entropy(one) == doctest::Approx(2.769437).epsilon(1e-5));
    CHECK(von_neumann_entropy(MatrixXd::Identity(4, 4)) == doctest::Approx(0.0).scale(1).epsilon(1e-12));

    Rng rng(5);
    const MatrixXd cov = random_pure_covariance(3, rng, 1.2, 2.5);
    const auto basis = gellmann_basis(3);
    VectorXd e(9);
    for (int i = 0; i < 9; ++i) e[i] = rng.uniform(-1.0, 1.0);
    const MatrixXd o = unitary_to_symplectic(to_unitary(basis, e));
    const double h1 = von_neumann_entropy(cov);
    const double h2 = von_neumann_entropy(o * cov * o.transpose());
    CHECK(std::abs(h1 - h2) < 1e-9);

    MatrixXd sub = MatrixXd::Identity(2, 2) * 0.9;
    CHECK_THROWS_AS(von_neumann_entropy(sub), std::domain_error);
}

TEST_CASE("nullifier covariance matches the closed form on random graphs") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 * (2 + rng.below(14));  // up to 30 vertices
        Rng sub = rng.sub(trial);
        const MatrixXd adj = erdos_renyi_adjacency(n, 0.3, sub);
        const double s = rng.uniform(2.0, 20.0);
        const MatrixXd nc = nullifier_covariance(cluster_covariance(adj, s), adj);
        const MatrixXd expect = (MatrixXd::Identity(n, n) + adj * adj) / s;
        CHECK((nc - expect).cwiseAbs().maxCoeff() < 1e-9);
        for (int i = 0; i < n; ++i) {
            const double norm = 1.0 + adj.row(i).squaredNorm();
            CHECK(std::abs(nc(i, i) / norm - 1.0 / s) < 1e-9);
        }
    }
}

TEST_CASE("append vacuum pads with identity and keeps the original block") {
    MatrixXd adj = MatrixXd::Zero(2, 2);
    adj(0, 1) = adj(1, 0) = 1.0;
    const MatrixXd cov = cluster_covariance(adj, 10.0);
    const MatrixXd big = append_vacuum(cov, 2);
    REQUIRE(big.rows() == 8);
    CHECK((reduce(big, {0, 1}) - cov).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((reduce(big, {2, 3}) - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("embedded mode transforms act only on their modes") {
    VectorXd local_d(2);
    local_d << 2.0, 0.5;
    const MatrixXd local = local_d.asDiagonal();
    const MatrixXd big = embed_mode_transform(3, {1}, local);
    REQUIRE(big.rows() == 6);
    CHECK(big(1, 1) == 2.0);
    CHECK(big(4, 4) == 0.5);
    CHECK(big(0, 0) == 1.0);
    CHECK(big(3, 3) == 1.0);
    const MatrixXd o = omega(3);
    CHECK((big * o * big.transpose() - o).cwiseAbs().maxCoeff() < 1e-14);
}
