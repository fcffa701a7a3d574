#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cvr {

// Hermitian generator basis of u(n), n^2 matrices: symmetric pair terms (j < k,
// lexicographic), antisymmetric pair terms, diagonal terms, identity last.
std::vector<Eigen::MatrixXcd> gellmann_basis(int n);

// H = sum_i eps_i basis_i; requires eps.size() == basis.size().
Eigen::MatrixXcd hermitian_from_params(const std::vector<Eigen::MatrixXcd>& basis,
                                       const Eigen::VectorXd& eps);

// exp(i H) for the parametrized Hermitian H.
Eigen::MatrixXcd to_unitary(const std::vector<Eigen::MatrixXcd>& basis, const Eigen::VectorXd& eps);

// Two-port beam splitter with mixing angle theta and phases (phi1, phi2, phi3).
Eigen::MatrixXcd beam_splitter(double theta, double phi1, double phi2, double phi3);

// Quadrature action of a passive mode unitary: [[Re U, -Im U], [Im U, Re U]].
Eigen::MatrixXd unitary_to_symplectic(const Eigen::MatrixXcd& u);

// Writes u into the rows/columns of `global` selected by `positions`.
void place_unitary(Eigen::MatrixXcd& global, const std::vector<int>& positions,
                   const Eigen::MatrixXcd& u);

}  // namespace cvr
