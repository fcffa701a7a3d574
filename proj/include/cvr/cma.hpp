#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace cvr {

struct CmaConfig {
    int max_generations = 3000;
    double sigma0 = 0.5;
    double f_target = 1e-12;
    int stall_generations = 2000;   // stop after this many generations without
    double stall_tolerance = 1e-12; // an improvement larger than stall_tolerance
    std::uint64_t seed = 1;
    int n_threads = 1;              // offspring evaluations run in parallel if > 1
};

// Population size and recombination constants for dimension D.
struct CmaParams {
    int lambda;          // offspring per generation, max(4, round(4 + ln D))
    int mu;              // parents, lambda / 2
    Eigen::VectorXd w;   // log-decreasing recombination weights, sum 1
    double mu_eff;
    double c_c, c_cov, c_sigma, d_sigma, chi_n;
    explicit CmaParams(int dim);
};

struct CmaHistoryEntry {
    int generation;
    double best_f;
    double sigma;
};

enum class CmaStop { target, stagnation, budget };

struct CmaResult {
    Eigen::VectorXd best_x;
    double best_f;
    std::vector<CmaHistoryEntry> history;  // one entry per generation
    int generations;
    CmaStop stop;
};

// Minimizes f over R^dim starting from x0 (zero vector if empty).
CmaResult cma_minimize(const std::function<double(const Eigen::VectorXd&)>& f, int dim,
                       const CmaConfig& cfg, const Eigen::VectorXd& x0 = Eigen::VectorXd());

const char* cma_stop_name(CmaStop stop);

}  // namespace cvr
