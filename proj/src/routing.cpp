#include "cvr/routing.hpp"

#include "cvr/gaussian.hpp"
#include "cvr/unitaries.hpp"

#include <cmath>
#include <stdexcept>

namespace cvr {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

RoutingProblem RoutingProblem::make(const Graph& g, double s, int mode_a, int mode_b) {
    if (mode_a < 0 || mode_b < 0 || mode_a >= g.n || mode_b >= g.n || mode_a == mode_b)
        throw std::invalid_argument("routing: invalid mode pair");
    if (static_cast<int>(g.part.size()) != g.n)
        throw std::invalid_argument("routing: graph has no provider partition");
    if (g.part[mode_a] != 0 || g.part[mode_b] != 1)
        throw std::invalid_argument("routing: mode_a must sit on provider A and mode_b on provider B");
    RoutingProblem p;
    p.n = g.n;
    p.s = s;
    p.cov = cluster_covariance(g.adj, s);
    p.part_a = g.provider(0);
    p.part_b = g.provider(1);
    if (p.part_a.empty() || p.part_b.empty())
        throw std::invalid_argument("routing: both providers need at least one mode");
    p.mode_a = mode_a;
    p.mode_b = mode_b;
    p.basis_a = gellmann_basis(static_cast<int>(p.part_a.size()));
    p.basis_b = gellmann_basis(static_cast<int>(p.part_b.size()));
    p.rows = {mode_a, mode_b, mode_a + g.n, mode_b + g.n};
    p.ideal = MatrixXd::Zero(4, 2 * g.n);
    const MatrixXd pair = two_mode_squeezed_target(s);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) p.ideal(r, p.rows[static_cast<std::size_t>(c)]) = pair(r, c);
    return p;
}

MatrixXd RoutingProblem::global_symplectic(const VectorXd& eps) const {
    const int na = static_cast<int>(part_a.size());
    const int nb = static_cast<int>(part_b.size());
    if (eps.size() != dim()) throw std::invalid_argument("routing: parameter size mismatch");
    const MatrixXcd ua = to_unitary(basis_a, eps.head(na * na));
    const MatrixXcd ub = to_unitary(basis_b, eps.tail(nb * nb));
    MatrixXcd u = MatrixXcd::Zero(n, n);
    place_unitary(u, part_a, ua);
    place_unitary(u, part_b, ub);
    return unitary_to_symplectic(u);
}

RoutingProblem::Eval RoutingProblem::evaluate(const VectorXd& eps) const {
    const MatrixXd sp = global_symplectic(eps);
    MatrixXd srows(4, 2 * n);
    for (int r = 0; r < 4; ++r) srows.row(r) = sp.row(rows[static_cast<std::size_t>(r)]);
    const MatrixXd m = srows * cov * sp.transpose();  // routed rows of S cov S^T
    Eval out;
    out.frob = (m - ideal).norm();
    out.block.resize(4, 4);
    for (int c = 0; c < 4; ++c) out.block.col(c) = m.col(rows[static_cast<std::size_t>(c)]);
    const double det = out.block.determinant();
    out.gamma = det > 0.0 ? std::min(1.0 / std::sqrt(det), 1.0) : 0.0;
    out.f = out.frob + 0.5 * (1.0 - out.gamma);
    return out;
}

double RoutingProblem::objective(const VectorXd& eps) const { return evaluate(eps).f; }

RouteClass classify_route(double f, double gamma) {
    if (f <= 1e-5) return RouteClass::ideal;
    if (gamma >= 1.0 - 1e-3) return RouteClass::imperfect;
    return RouteClass::failed;
}

const char* route_class_name(RouteClass cls) {
    switch (cls) {
        case RouteClass::ideal: return "ideal";
        case RouteClass::imperfect: return "imperfect";
        case RouteClass::failed: return "failed";
    }
    return "unknown";
}

RouteResult route(const RoutingProblem& prob, const CmaConfig& cfg) {
    RouteResult out;
    out.cma = cma_minimize([&prob](const VectorXd& x) { return prob.objective(x); }, prob.dim(), cfg);
    out.final_eval = prob.evaluate(out.cma.best_x);
    out.cls = classify_route(out.final_eval.f, out.final_eval.gamma);
    return out;
}

}  // namespace cvr
