#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cvr {

// Quadrature ordering everywhere: (Q_1..Q_n, P_1..P_n), vacuum variance 1.

// Squeezing strength s > 1; lambda/mu are the pair-block variance and covariance.
struct Squeezing {
    double s = 10.0;
    double lambda() const { return 0.5 * (s + 1.0 / s); }
    double mu() const { return 0.5 * (s - 1.0 / s); }
};

Eigen::MatrixXd omega(int n);  // [[0, I], [-I, 0]]

// Symmetric positive-semidefinite square root.
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& m);

// Passive part of the cluster preparation: [[X, -Y], [Y, X]] with
// X = (I + A^2)^{-1/2}, Y = A (I + A^2)^{-1/2}.
Eigen::MatrixXd cluster_symplectic(const Eigen::MatrixXd& adj);

// Covariance of the finitely squeezed cluster state on the given graph.
Eigen::MatrixXd cluster_covariance(const Eigen::MatrixXd& adj, double s);

// Symplectic eigenvalues, descending; input must be symmetric positive definite.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

struct WilliamsonResult {
    Eigen::VectorXd nu;  // descending
    Eigen::MatrixXd S;   // symplectic, cov = S diag(nu, nu) S^T
};
WilliamsonResult williamson(const Eigen::MatrixXd& cov);

struct BlochMessiahResult {
    Eigen::MatrixXd O1;  // orthogonal symplectic
    Eigen::VectorXd d;   // per-mode squeezing factors, d_i >= 0
    Eigen::MatrixXd O2;  // orthogonal symplectic, S = O1 diag(d, 1/d) O2
};
BlochMessiahResult bloch_messiah(const Eigen::MatrixXd& S);

// Reduced covariance of the selected modes, re-ordered to (Q, P) of that subset.
Eigen::MatrixXd reduce(const Eigen::MatrixXd& cov, const std::vector<int>& modes);

// 1/sqrt(det cov); throws on a non-positive-definite input.
double purity(const Eigen::MatrixXd& cov);

// Von Neumann entropy in bits; throws if any symplectic eigenvalue < 1 - 1e-6.
double von_neumann_entropy(const Eigen::MatrixXd& cov);

// Covariance of the nullifier combinations P - A Q under the given state.
Eigen::MatrixXd nullifier_covariance(const Eigen::MatrixXd& cov, const Eigen::MatrixXd& adj);

// Ideal routed pair block in (Q_a, Q_b, P_a, P_b) ordering.
Eigen::MatrixXd two_mode_squeezed_target(double s);

// Appends `extra` vacuum modes after the existing ones.
Eigen::MatrixXd append_vacuum(const Eigen::MatrixXd& cov, int extra);

// Embeds a local 2k x 2k phase-space transform acting on the listed modes into
// the 2n x 2n identity, both in (Q, P) ordering.
Eigen::MatrixXd embed_mode_transform(int n, const std::vector<int>& modes,
                                     const Eigen::MatrixXd& local);

}  // namespace cvr
