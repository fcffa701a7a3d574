#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvr/gaussian.hpp"
#include "cvr/rng.hpp"
#include "cvr/unitaries.hpp"

#include <cmath>
#include <complex>

using namespace cvr;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using namespace std::complex_literals;

TEST_CASE("generator basis size and hermiticity") {
    for (int n : {2, 3, 5}) {
        const auto basis = gellmann_basis(n);
        REQUIRE(static_cast<int>(basis.size()) == n * n);
        for (const auto& m : basis) {
            CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("generators are trace-orthogonal") {
    const auto basis = gellmann_basis(3);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            CHECK(std::abs((basis[i] * basis[j]).trace()) < 1e-12);
        }
    }
    // traceless members normalized to trace(G^2) = 2, identity last
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) {
        CHECK((basis[i] * basis[i]).trace().real() == doctest::Approx(2.0));
        CHECK(std::abs(basis[i].trace()) < 1e-14);
    }
    CHECK(basis.back().isIdentity(1e-14));
}

TEST_CASE("two-mode basis matches the pauli set") {
    const auto basis = gellmann_basis(2);
    MatrixXcd sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, -1i, 1i, 0;
    sz << 1, 0, 0, -1;
    CHECK((basis[0] - sx).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((basis[1] - sy).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((basis[2] - sz).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("a quarter-turn along the swap generator gives i times the swap") {
    const auto basis = gellmann_basis(2);
    VectorXd eps = VectorXd::Zero(4);
    eps[0] = M_PI / 2;
    const MatrixXcd u = to_unitary(basis, eps);
    MatrixXcd want(2, 2);
    want << 0, 1i, 1i, 0;
    CHECK((u - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("identity component only adds a global phase") {
    const auto basis = gellmann_basis(3);
    VectorXd eps = VectorXd::Zero(9);
    eps[8] = 0.7;
    const MatrixXcd u = to_unitary(basis, eps);
    CHECK((u - std::exp(0.7i) * MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("parametrized exponentials are unitary") {
    Rng rng(13);
    for (int n : {2, 3, 4}) {
        const auto basis = gellmann_basis(n);
        for (int trial = 0; trial < 20; ++trial) {
            VectorXd eps(n * n);
            for (int i = 0; i < n * n; ++i) eps[i] = rng.uniform(-2.0, 2.0);
            const MatrixXcd u = to_unitary(basis, eps);
            CHECK((u * u.adjoint() - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("hermitian assembly is linear in the parameters") {
    const auto basis = gellmann_basis(2);
    VectorXd eps(4);
    eps << 0.1, -0.2, 0.3, 0.4;
    const MatrixXcd h = hermitian_from_params(basis, eps);
    MatrixXcd want = 0.1 * basis[0] - 0.2 * basis[1] + 0.3 * basis[2] + 0.4 * basis[3];
    CHECK((h - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("balanced beam splitter matrix") {
    const MatrixXcd bs = beam_splitter(M_PI / 4, 0.0, 0.0, 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(bs(0, 0).real() == doctest::Approx(r));
    CHECK(bs(0, 1).real() == doctest::Approx(-r));
    CHECK(bs(1, 0).real() == doctest::Approx(r));
    CHECK(bs(1, 1).real() == doctest::Approx(r));
    CHECK(bs.imag().cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("beam splitter stays unitary and places its phases") {
    Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const double th = rng.uniform(0.0, 2 * M_PI);
        const double p1 = rng.uniform(0.0, 2 * M_PI);
        const double p2 = rng.uniform(0.0, 2 * M_PI);
        const double p3 = rng.uniform(0.0, 2 * M_PI);
        const MatrixXcd bs = beam_splitter(th, p1, p2, p3);
        CHECK((bs * bs.adjoint() - MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(std::abs(bs(0, 0) - std::exp(1i * p2) * std::cos(th)) < 1e-13);
        CHECK(std::abs(bs(1, 0) - std::exp(1i * p3) * std::sin(th)) < 1e-13);
    }
}

TEST_CASE("quadrature action of a passive unitary is orthogonal symplectic") {
    Rng rng(29);
    const auto basis = gellmann_basis(3);
    VectorXd eps(9);
    for (int i = 0; i < 9; ++i) eps[i] = rng.uniform(-1.0, 1.0);
    const MatrixXd s = unitary_to_symplectic(to_unitary(basis, eps));
    const MatrixXd o = omega(3);
    CHECK((s * s.transpose()).isIdentity(1e-12));
    CHECK((s * o * s.transpose() - o).cwiseAbs().maxCoeff() < 1e-12);
    // vacuum stays vacuum under any passive transform
    CHECK((s * s.transpose() - MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("block layout of the quadrature action") {
    MatrixXcd u(2, 2);
    u << 1i, 0, 0, -1i;
    const MatrixXd s = unitary_to_symplectic(u);
    REQUIRE(s.rows() == 4);
    CHECK(s(0, 0) == 0.0);
    CHECK(s(0, 2) == -1.0);  // -Im upper right
    CHECK(s(2, 0) == 1.0);   // +Im lower left
    CHECK(s(3, 1) == -1.0);
}

TEST_CASE("placing a unitary touches only the selected rows and columns") {
    MatrixXcd global = MatrixXcd::Identity(4, 4);
    MatrixXcd u(2, 2);
    u << 0, 1, 1, 0;
    place_unitary(global, {0, 2}, u);
    CHECK(global(0, 2) == 1.0 + 0i);
    CHECK(global(2, 0) == 1.0 + 0i);
    CHECK(global(0, 0) == 0.0 + 0i);
    CHECK(global(1, 1) == 1.0 + 0i);
    CHECK(global(3, 3) == 1.0 + 0i);
    CHECK((global * global.adjoint()).isIdentity(1e-14));
}
