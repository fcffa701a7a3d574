#pragma once

#include <Eigen/Dense>

#include <array>
#include <utility>
#include <vector>

#include "cvr/gaussian.hpp"
#include "cvr/graph.hpp"

namespace cvr {

// Relative tolerance for locating spectrum values in the go/no-go verdicts.
inline constexpr double kSpectralTol = 1e-9;
// Absolute tolerance for ensemble fraction counting.
inline constexpr double kEnsembleTol = 1e-6;

struct SpectrumReport {
    Eigen::VectorXd spectrum_a;  // provider-A symplectic spectrum, descending
    Eigen::VectorXd spectrum_b;
    double lambda;
    int unit_count_a;     // values with |nu - 1| <= kSpectralTol
    int lambda_count_a;   // values with |nu - lambda| <= kSpectralTol * lambda
    bool bipartite_possible;  // lambda present in the provider-A spectrum
    bool internal_possible;   // at least two unit values in the provider-A spectrum
};
SpectrumReport spectrum_report(const Graph& g, double s);

// Phase normalization of a 4x4 pair block in (Q_a, Q_b, P_a, P_b) ordering:
// per-mode rotations make each within-mode block diagonal with Var(Q) <= Var(P),
// leave the Q-Q cross covariance non-negative, and make the Q-P cross covariance
// non-negative. Deterministic and idempotent.
struct PhaseFix {
    Eigen::MatrixXd block;  // fixed 4x4 block
    double alpha_a;         // rotation applied to mode a
    double alpha_b;
};
PhaseFix fix_pair_phases(const Eigen::MatrixXd& block);

struct ConstructiveResult {
    Eigen::MatrixXd routed;     // 4x4 phase-fixed pair block, (Q_a, Q_b, P_a, P_b)
    Eigen::MatrixXd transform;  // full 2n x 2n symplectic realizing the route
    double residual;            // max abs deviation of routed from the pair target
    bool ambiguous;             // more than the needed spectrum values matched
};
// Deterministic routing through Williamson + Bloch-Messiah factors. Throws when
// the corresponding spectrum verdict is a no-go.
ConstructiveResult constructive_route(const Graph& g, double s, int mode_a, int mode_b);

struct HistogramResult {
    std::vector<double> edges;  // bin boundaries, bins + 1 values
    std::vector<long> counts;
    long total = 0;
    double frac_unit = 0.0;    // |nu - 1| <= kEnsembleTol
    double frac_lambda = 0.0;  // |nu - lambda| <= kEnsembleTol
    double frac_ge99 = 0.0;    // nu >= 0.99 * lambda
};
// Pools the provider-A symplectic spectra of `graph_count` sampled topologies,
// drawn with seeds spec.seed, spec.seed + 1, ...
HistogramResult spectral_histogram(const TopologySpec& spec, int graph_count, double s, int bins);

// Four-node ring network, closed forms. Per-provider interleaved ordering
// (X_A1, X_A2, P_A1, P_A2, X_B1, X_B2, P_B1, P_B2).
Eigen::MatrixXd square_covariance(double s);
// State after one beam splitter per provider; angles are (theta, phi1, phi2, phi3).
Eigen::MatrixXd square_oracle(double s, const std::array<double, 4>& bs_a,
                              const std::array<double, 4>& bs_b);
// Kept-pair block (A-mode i, B-mode j, 0-based) in (X_a, X_b, P_a, P_b) ordering.
Eigen::MatrixXd square_kept_block(const Eigen::MatrixXd& g8, int i, int j);
// Target for the kept pair: diag(l-, l-, l+, l+) plus mu' cross terms.
Eigen::MatrixXd square_routed_target(double s);
double square_lambda_minus(double s);
double square_lambda_plus(double s);
double square_mu(double s);
// Beam-splitter settings that reach the target exactly.
std::array<double, 4> square_hand_solution_a();
std::array<double, 4> square_hand_solution_b();
// Stationarity angle for the single-provider variance condition.
double square_theta_condition(double phi1);
// Residuals (Var - lambda, Cov) of the best single-provider attempt at (phi1, phi2).
std::pair<double, double> square_residuals(double s, double phi1, double phi2);
struct ScanResult {
    double min_of_max;
    double phi1, phi2;
};
// Exhaustive scan of max(|r1|, |r2|) over an inclusive [0, 2pi]^2 angle grid.
ScanResult square_scan(double s, int grid_points);

}  // namespace cvr
