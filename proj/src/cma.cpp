#include "cvr/cma.hpp"

#include "cvr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace cvr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

CmaParams::CmaParams(int dim) {
    if (dim < 1) throw std::invalid_argument("cma: dimension must be positive");
    lambda = std::max(4, static_cast<int>(std::llround(4.0 + std::log(static_cast<double>(dim)))));
    mu = lambda / 2;
    w.resize(mu);
    for (int k = 0; k < mu; ++k) w[k] = std::log((mu + 1.0) / (k + 1.0));
    w /= w.sum();
    mu_eff = 1.0 / w.squaredNorm();
    c_c = 4.0 / (dim + 4.0);
    c_cov = 2.0 / ((dim + std::sqrt(2.0)) * (dim + std::sqrt(2.0)));
    c_sigma = (mu_eff + 2.0) / (dim + mu_eff + 3.0);
    d_sigma = 1.0 + c_sigma;
    chi_n = std::sqrt(static_cast<double>(dim)) *
            (1.0 - 1.0 / (4.0 * dim) + 1.0 / (21.0 * dim * dim));
}

const char* cma_stop_name(CmaStop stop) {
    switch (stop) {
        case CmaStop::target: return "target";
        case CmaStop::stagnation: return "stagnation";
        case CmaStop::budget: return "budget";
    }
    return "unknown";
}

namespace {

void evaluate_population(const std::function<double(const VectorXd&)>& f, const MatrixXd& xs,
                         VectorXd& fs, int n_threads) {
    const int lambda = static_cast<int>(xs.rows());
    if (n_threads <= 1) {
        for (int k = 0; k < lambda; ++k) fs[k] = f(xs.row(k).transpose());
        return;
    }
    const int workers = std::min(n_threads, lambda);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (int k = t; k < lambda; k += workers) fs[k] = f(xs.row(k).transpose());
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

CmaResult cma_minimize(const std::function<double(const VectorXd&)>& f, int dim,
                       const CmaConfig& cfg, const VectorXd& x0) {
    const CmaParams par(dim);
    Rng rng(cfg.seed);

    VectorXd xmean = x0.size() == 0 ? VectorXd::Zero(dim) : VectorXd(x0);
    if (xmean.size() != dim) throw std::invalid_argument("cma: x0 dimension mismatch");
    double sigma = cfg.sigma0;
    MatrixXd C = MatrixXd::Identity(dim, dim);
    VectorXd p_c = VectorXd::Zero(dim);
    VectorXd p_s = VectorXd::Zero(dim);

    CmaResult out;
    out.best_f = std::numeric_limits<double>::infinity();
    out.best_x = xmean;
    out.stop = CmaStop::budget;
    out.history.reserve(std::min(cfg.max_generations, 1 << 20));

    MatrixXd Z(par.lambda, dim), X(par.lambda, dim);
    VectorXd fs(par.lambda);
    std::vector<int> order(par.lambda);
    double last_best = std::numeric_limits<double>::infinity();
    int last_improve_gen = 0;

    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (C + C.transpose()));
        VectorXd ew = es.eigenvalues().cwiseMax(1e-300);
        const MatrixXd& R = es.eigenvectors();
        const MatrixXd BD = R * ew.cwiseSqrt().asDiagonal();

        for (int k = 0; k < par.lambda; ++k)
            for (int i = 0; i < dim; ++i) Z(k, i) = rng.gauss();
        X = (Z * BD.transpose()) * sigma;
        X.rowwise() += xmean.transpose();

        evaluate_population(f, X, fs, cfg.n_threads);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&fs](int a, int b) { return fs[a] < fs[b]; });

        MatrixXd zsel(par.mu, dim), xsel(par.mu, dim);
        for (int k = 0; k < par.mu; ++k) {
            zsel.row(k) = Z.row(order[k]);
            xsel.row(k) = X.row(order[k]);
        }
        const VectorXd zmean = zsel.transpose() * par.w;
        xmean = xsel.transpose() * par.w;

        p_c = (1.0 - par.c_c) * p_c +
              std::sqrt(par.c_c * (2.0 - par.c_c) * par.mu_eff) * (BD * zmean);
        const MatrixXd bdz = BD * zsel.transpose();  // dim x mu
        const MatrixXd rank_mu = (bdz * par.w.asDiagonal()) * bdz.transpose();
        C = (1.0 - par.c_cov) * C + (par.c_cov / par.mu_eff) * (p_c * p_c.transpose()) +
            par.c_cov * (1.0 - 1.0 / par.mu_eff) * rank_mu;
        p_s = (1.0 - par.c_sigma) * p_s +
              std::sqrt(par.c_sigma * (2.0 - par.c_sigma) * par.mu_eff) * (R * zmean);
        sigma *= std::exp((par.c_sigma / par.d_sigma) * (p_s.norm() / par.chi_n - 1.0));

        const double gen_best = fs[order[0]];
        if (gen_best < out.best_f) {
            out.best_f = gen_best;
            out.best_x = X.row(order[0]).transpose();
        }
        out.history.push_back({gen, out.best_f, sigma});
        if (out.best_f <= cfg.f_target) {
            out.stop = CmaStop::target;
            break;
        }
        if (last_best - out.best_f > cfg.stall_tolerance) {
            last_best = out.best_f;
            last_improve_gen = gen;
        } else if (gen - last_improve_gen >= cfg.stall_generations) {
            out.stop = CmaStop::stagnation;
            break;
        }
    }
    out.generations = static_cast<int>(out.history.size());
    return out;
}

}  // namespace cvr
