#include "cvr/gaussian.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace cvr {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_even_square(const MatrixXd& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw std::invalid_argument(std::string(what) + ": expected a 2n x 2n matrix");
}

}  // namespace

MatrixXd omega(int n) {
    MatrixXd o = MatrixXd::Zero(2 * n, 2 * n);
    o.topRightCorner(n, n) = MatrixXd::Identity(n, n);
    o.bottomLeftCorner(n, n) = -MatrixXd::Identity(n, n);
    return o;
}

MatrixXd symmetric_sqrt(const MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    VectorXd w = es.eigenvalues();
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] < -1e-12) throw std::domain_error("symmetric_sqrt: negative eigenvalue");
        w[i] = std::sqrt(std::max(w[i], 0.0));
    }
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

MatrixXd cluster_symplectic(const MatrixXd& adj) {
    const int n = static_cast<int>(adj.rows());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(adj);
    const VectorXd w = es.eigenvalues();
    const MatrixXd& q = es.eigenvectors();
    VectorXd fx(n), fy(n);
    for (int i = 0; i < n; ++i) {
        const double c = 1.0 / std::sqrt(1.0 + w[i] * w[i]);
        fx[i] = c;
        fy[i] = w[i] * c;
    }
    const MatrixXd x = q * fx.asDiagonal() * q.transpose();
    const MatrixXd y = q * fy.asDiagonal() * q.transpose();
    MatrixXd s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = x;
    s.topRightCorner(n, n) = -y;
    s.bottomLeftCorner(n, n) = y;
    s.bottomRightCorner(n, n) = x;
    return s;
}

MatrixXd cluster_covariance(const MatrixXd& adj, double s) {
    if (s <= 0.0) throw std::invalid_argument("squeezing strength must be positive");
    const int n = static_cast<int>(adj.rows());
    const MatrixXd sp = cluster_symplectic(adj);
    VectorXd g(2 * n);
    g.head(n).setConstant(s);
    g.tail(n).setConstant(1.0 / s);
    return sp * g.asDiagonal() * sp.transpose();
}

VectorXd symplectic_eigenvalues(const MatrixXd& cov) {
    require_even_square(cov, "symplectic_eigenvalues");
    const int n = static_cast<int>(cov.rows()) / 2;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("covariance matrix is not positive definite");
    VectorXd sq = es.eigenvalues().array().sqrt().matrix();
    const MatrixXd gh = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
    const MatrixXcd h = std::complex<double>(0.0, 1.0) * (gh * omega(n) * gh);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> hes(h);
    const VectorXd ev = hes.eigenvalues();  // ascending, symmetric about zero
    VectorXd nu(n);
    for (int j = 0; j < n; ++j) nu[j] = -ev[j];  // descending
    return nu;
}

WilliamsonResult williamson(const MatrixXd& cov) {
    require_even_square(cov, "williamson");
    const int n = static_cast<int>(cov.rows()) / 2;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::domain_error("covariance matrix is not positive definite");
    VectorXd sq = es.eigenvalues().array().sqrt().matrix();
    const MatrixXd gh = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
    const MatrixXcd h = std::complex<double>(0.0, 1.0) * (gh * omega(n) * gh);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> hes(h);
    const VectorXd ev = hes.eigenvalues();
    const MatrixXcd& w = hes.eigenvectors();
    WilliamsonResult out;
    out.nu.resize(n);
    MatrixXd u = MatrixXd::Zero(2 * n, 2 * n);
    const double r2 = std::sqrt(2.0);
    for (int j = 0; j < n; ++j) {
        out.nu[j] = -ev[j];
        u.col(j) = r2 * w.col(j).real();
        u.col(n + j) = r2 * w.col(j).imag();
    }
    VectorXd scale(2 * n);
    for (int j = 0; j < n; ++j) {
        const double f = 1.0 / std::sqrt(out.nu[j]);
        scale[j] = f;
        scale[n + j] = f;
    }
    out.S = gh * (u * scale.asDiagonal());
    return out;
}

BlochMessiahResult bloch_messiah(const MatrixXd& S) {
    require_even_square(S, "bloch_messiah");
    const int n = static_cast<int>(S.rows()) / 2;
    const MatrixXd ss = S * S.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(ss);
    VectorXd sq = es.eigenvalues().array().sqrt().matrix();
    const MatrixXd p = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();

    const MatrixXd pa = p.topLeftCorner(n, n);
    const MatrixXd pb = p.topRightCorner(n, n);
    const MatrixXd pc = p.bottomLeftCorner(n, n);
    const MatrixXd pd = p.bottomRightCorner(n, n);
    const std::complex<double> im(0.0, 1.0);
    const MatrixXcd ch = 0.5 * ((pa + pd).cast<std::complex<double>>() + im * (pc - pb).cast<std::complex<double>>());
    const MatrixXcd sh = 0.5 * ((pa - pd).cast<std::complex<double>>() + im * (pc + pb).cast<std::complex<double>>());

    Eigen::SelfAdjointEigenSolver<MatrixXcd> ces(ch);
    const VectorXd cw = ces.eigenvalues();
    const MatrixXcd v = ces.eigenvectors();
    const MatrixXcd st = v.adjoint() * sh * v.conjugate();

    // per-cluster Takagi factorization of the remaining complex-symmetric blocks
    MatrixXcd w = MatrixXcd::Zero(n, n);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && std::abs(cw[j + 1] - cw[i]) < 1e-8 * std::max(1.0, cw[i])) ++j;
        const int m = j - i + 1;
        const MatrixXcd blk = st.block(i, i, m, m);
        MatrixXcd wb;
        if (blk.cwiseAbs().maxCoeff() < 1e-10) {
            wb = MatrixXcd::Identity(m, m);
        } else {
            MatrixXd tb(2 * m, 2 * m);
            tb.topLeftCorner(m, m) = blk.real();
            tb.topRightCorner(m, m) = blk.imag();
            tb.bottomLeftCorner(m, m) = blk.imag();
            tb.bottomRightCorner(m, m) = -blk.real();
            Eigen::SelfAdjointEigenSolver<MatrixXd> tes(tb);
            // eigenvalues ascending; the top m carry the Takagi vectors u = x + i y
            wb.resize(m, m);
            for (int col = 0; col < m; ++col) {
                const int idx = 2 * m - 1 - col;
                wb.col(col) = tes.eigenvectors().col(idx).head(m).cast<std::complex<double>>() +
                              im * tes.eigenvectors().col(idx).tail(m).cast<std::complex<double>>();
            }
        }
        w.block(i, i, m, m) = wb;
        i = j + 1;
    }

    const MatrixXcd wt = v * w;
    BlochMessiahResult out;
    out.O1.resize(2 * n, 2 * n);
    out.O1.topLeftCorner(n, n) = wt.real();
    out.O1.topRightCorner(n, n) = -wt.imag();
    out.O1.bottomLeftCorner(n, n) = wt.imag();
    out.O1.bottomRightCorner(n, n) = wt.real();

    const MatrixXd m1 = out.O1.transpose() * p * out.O1;
    out.d = m1.diagonal().head(n);
    VectorXd inv(2 * n);
    for (int k = 0; k < n; ++k) {
        inv[k] = 1.0 / out.d[k];
        inv[n + k] = out.d[k];
    }
    out.O2 = inv.asDiagonal() * out.O1.transpose() * S;
    return out;
}

MatrixXd reduce(const MatrixXd& cov, const std::vector<int>& modes) {
    require_even_square(cov, "reduce");
    const int n = static_cast<int>(cov.rows()) / 2;
    const int k = static_cast<int>(modes.size());
    std::vector<int> idx(2 * k);
    for (int i = 0; i < k; ++i) {
        if (modes[i] < 0 || modes[i] >= n) throw std::invalid_argument("reduce: mode out of range");
        idx[i] = modes[i];
        idx[k + i] = modes[i] + n;
    }
    MatrixXd out(2 * k, 2 * k);
    for (int r = 0; r < 2 * k; ++r)
        for (int c = 0; c < 2 * k; ++c) out(r, c) = cov(idx[r], idx[c]);
    return out;
}

double purity(const MatrixXd& cov) {
    require_even_square(cov, "purity");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
    double logdet = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double w = es.eigenvalues()[i];
        if (w <= 0.0) throw std::domain_error("purity: covariance determinant is not positive");
        logdet += std::log(w);
    }
    return std::exp(-0.5 * logdet);
}

double von_neumann_entropy(const MatrixXd& cov) {
    const VectorXd nu = symplectic_eigenvalues(cov);
    double total = 0.0;
    for (int i = 0; i < nu.size(); ++i) {
        if (nu[i] < 1.0 - 1e-6)
            throw std::domain_error("von_neumann_entropy: symplectic eigenvalue below 1");
        const double x = std::max(0.0, 0.5 * (nu[i] - 1.0));
        if (x > 0.0) total += (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
    }
    return total;
}

MatrixXd nullifier_covariance(const MatrixXd& cov, const MatrixXd& adj) {
    require_even_square(cov, "nullifier_covariance");
    const int n = static_cast<int>(adj.rows());
    if (cov.rows() != 2 * n) throw std::invalid_argument("nullifier_covariance: size mismatch");
    MatrixXd b(n, 2 * n);
    b.leftCols(n) = -adj;
    b.rightCols(n) = MatrixXd::Identity(n, n);
    return b * cov * b.transpose();
}

MatrixXd two_mode_squeezed_target(double s) {
    const Squeezing sq{s};
    const double l = sq.lambda(), m = sq.mu();
    MatrixXd t(4, 4);
    t << l, 0, 0, m,
         0, l, m, 0,
         0, m, l, 0,
         m, 0, 0, l;
    return t;
}

MatrixXd embed_mode_transform(int n, const std::vector<int>& modes, const MatrixXd& local) {
    const int k = static_cast<int>(modes.size());
    if (local.rows() != 2 * k || local.cols() != 2 * k)
        throw std::invalid_argument("embed_mode_transform: local size mismatch");
    MatrixXd out = MatrixXd::Identity(2 * n, 2 * n);
    for (int i = 0; i < k; ++i) {
        const int gi = modes[i];
        if (gi < 0 || gi >= n) throw std::invalid_argument("embed_mode_transform: mode out of range");
        for (int j = 0; j < k; ++j) {
            const int gj = modes[j];
            out(gi, gj) = local(i, j);
            out(gi, n + gj) = local(i, k + j);
            out(n + gi, gj) = local(k + i, j);
            out(n + gi, n + gj) = local(k + i, k + j);
        }
    }
    return out;
}

MatrixXd append_vacuum(const MatrixXd& cov, int extra) {
    require_even_square(cov, "append_vacuum");
    if (extra < 0) throw std::invalid_argument("append_vacuum: negative count");
    const int n = static_cast<int>(cov.rows()) / 2;
    const int m = n + extra;
    MatrixXd out = MatrixXd::Identity(2 * m, 2 * m);
    out.block(0, 0, n, n) = cov.topLeftCorner(n, n);
    out.block(0, m, n, n) = cov.topRightCorner(n, n);
    out.block(m, 0, n, n) = cov.bottomLeftCorner(n, n);
    out.block(m, m, n, n) = cov.bottomRightCorner(n, n);
    return out;
}

}  // namespace cvr
