#include "cvr/unitaries.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace cvr {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<MatrixXcd> gellmann_basis(int n) {
    if (n < 1) throw std::invalid_argument("gellmann_basis: n must be positive");
    const std::complex<double> im(0.0, 1.0);
    std::vector<MatrixXcd> basis;
    basis.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            MatrixXcd m = MatrixXcd::Zero(n, n);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            basis.push_back(m);
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            MatrixXcd m = MatrixXcd::Zero(n, n);
            m(j, k) = -im;
            m(k, j) = im;
            basis.push_back(m);
        }
    }
    for (int l = 1; l < n; ++l) {
        MatrixXcd m = MatrixXcd::Zero(n, n);
        const double coef = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) m(j, j) = coef;
        m(l, l) = -coef * l;
        basis.push_back(m);
    }
    basis.push_back(MatrixXcd::Identity(n, n));
    return basis;
}

MatrixXcd hermitian_from_params(const std::vector<MatrixXcd>& basis, const VectorXd& eps) {
    if (basis.empty()) throw std::invalid_argument("hermitian_from_params: empty basis");
    if (static_cast<std::size_t>(eps.size()) != basis.size())
        throw std::invalid_argument("hermitian_from_params: parameter count mismatch");
    MatrixXcd h = MatrixXcd::Zero(basis[0].rows(), basis[0].cols());
    for (std::size_t i = 0; i < basis.size(); ++i) h += eps[static_cast<int>(i)] * basis[i];
    return h;
}

MatrixXcd to_unitary(const std::vector<MatrixXcd>& basis, const VectorXd& eps) {
    const MatrixXcd h = hermitian_from_params(basis, eps);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    const std::complex<double> im(0.0, 1.0);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (int i = 0; i < phases.size(); ++i) phases[i] = std::exp(im * es.eigenvalues()[i]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd beam_splitter(double theta, double phi1, double phi2, double phi3) {
    const std::complex<double> im(0.0, 1.0);
    MatrixXcd u(2, 2);
    u(0, 0) = std::exp(im * phi2) * std::cos(theta);
    u(0, 1) = -std::exp(im * (phi1 + phi2)) * std::sin(theta);
    u(1, 0) = std::exp(im * phi3) * std::sin(theta);
    u(1, 1) = std::exp(im * (phi1 + phi3)) * std::cos(theta);
    return u;
}

MatrixXd unitary_to_symplectic(const MatrixXcd& u) {
    const int n = static_cast<int>(u.rows());
    if (u.cols() != n) throw std::invalid_argument("unitary_to_symplectic: square input expected");
    MatrixXd s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = u.real();
    s.topRightCorner(n, n) = -u.imag();
    s.bottomLeftCorner(n, n) = u.imag();
    s.bottomRightCorner(n, n) = u.real();
    return s;
}

void place_unitary(MatrixXcd& global, const std::vector<int>& positions, const MatrixXcd& u) {
    const int k = static_cast<int>(positions.size());
    if (u.rows() != k || u.cols() != k)
        throw std::invalid_argument("place_unitary: block size does not match position count");
    for (int r = 0; r < k; ++r) {
        if (positions[r] < 0 || positions[r] >= global.rows())
            throw std::invalid_argument("place_unitary: position out of range");
        for (int c = 0; c < k; ++c) global(positions[r], positions[c]) = u(r, c);
    }
}

}  // namespace cvr
