#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "cvr/cma.hpp"
#include "cvr/graph.hpp"

namespace cvr {

// Passive-routing search instance: a cluster state on `g`, provider-local mode
// unitaries parametrized by Hermitian generator coefficients, and a target pair
// (mode_a, mode_b) to be steered into the two-mode squeezed form.
struct RoutingProblem {
    int n = 0;
    double s = 10.0;
    Eigen::MatrixXd cov;  // initial cluster covariance
    std::vector<int> part_a, part_b;
    int mode_a = 0, mode_b = 0;
    std::vector<Eigen::MatrixXcd> basis_a, basis_b;
    std::array<int, 4> rows{};   // (mode_a, mode_b, mode_a + n, mode_b + n)
    Eigen::MatrixXd ideal;       // 4 x 2n target rows

    static RoutingProblem make(const Graph& g, double s, int mode_a, int mode_b);

    int dim() const {
        const int na = static_cast<int>(part_a.size());
        const int nb = static_cast<int>(part_b.size());
        return na * na + nb * nb;
    }

    Eigen::MatrixXd global_symplectic(const Eigen::VectorXd& eps) const;

    struct Eval {
        double f;                // frob + 0.5 (1 - gamma)
        double frob;             // Frobenius distance of the routed rows to the target rows
        double gamma;            // routed-block purity, clipped to [0, 1]
        Eigen::MatrixXd block;   // 4x4 routed block, (Q_a, Q_b, P_a, P_b)
    };
    Eval evaluate(const Eigen::VectorXd& eps) const;
    double objective(const Eigen::VectorXd& eps) const;
};

enum class RouteClass { ideal, imperfect, failed };

RouteClass classify_route(double f, double gamma);
const char* route_class_name(RouteClass cls);

struct RouteResult {
    CmaResult cma;
    RoutingProblem::Eval final_eval;
    RouteClass cls;
};

// Runs the optimizer on the problem and classifies the outcome.
RouteResult route(const RoutingProblem& prob, const CmaConfig& cfg);

}  // namespace cvr
