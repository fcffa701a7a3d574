#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvr/criteria.hpp"
#include "cvr/gaussian.hpp"
#include "cvr/graph.hpp"
#include "cvr/routing.hpp"
#include "cvr/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

using namespace cvr;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

Graph ladder_graph(int n) {
    TopologySpec sp;
    sp.kind = Topology::grid;
    sp.n = n;
    return generate(sp);
}

}  // namespace

TEST_CASE("problem assembly wires the pair rows and the target") {
    Graph g = ladder_graph(6);
    RoutingProblem prob = RoutingProblem::make(g, 10.0, 1, 3);
    CHECK(prob.n == 6);
    CHECK(prob.dim() == 18);
    CHECK(prob.rows == std::array<int, 4>{1, 3, 7, 9});
    REQUIRE(prob.ideal.rows() == 4);
    REQUIRE(prob.ideal.cols() == 12);
    CHECK(prob.ideal(0, 1) == doctest::Approx(5.05));
    CHECK(prob.ideal(0, 9) == doctest::Approx(4.95));
    CHECK(prob.ideal(1, 3) == doctest::Approx(5.05));
    CHECK(prob.ideal(1, 7) == doctest::Approx(4.95));
    CHECK(prob.ideal(2, 7) == doctest::Approx(5.05));
    CHECK(prob.ideal(2, 3) == doctest::Approx(4.95));
    CHECK(prob.ideal(0, 0) == 0.0);
    CHECK(prob.ideal(0, 3) == 0.0);
}

TEST_CASE("problem assembly validates the pair") {
    Graph g = ladder_graph(6);
    CHECK_THROWS_AS(RoutingProblem::make(g, 10.0, 0, 1), std::invalid_argument);  // same side
    CHECK_THROWS_AS(RoutingProblem::make(g, 10.0, 3, 1), std::invalid_argument);  // sides swapped
    CHECK_THROWS_AS(RoutingProblem::make(g, 10.0, -1, 3), std::invalid_argument);
    CHECK_THROWS_AS(RoutingProblem::make(g, 10.0, 1, 6), std::invalid_argument);
}

TEST_CASE("zero parameters give the identity transform") {
    Graph g = ladder_graph(6);
    RoutingProblem prob = RoutingProblem::make(g, 10.0, 1, 3);
    const MatrixXd s = prob.global_symplectic(VectorXd::Zero(prob.dim()));
    CHECK(s.isIdentity(1e-12));
    const auto ev = prob.evaluate(VectorXd::Zero(prob.dim()));
    const MatrixXd want = reduce(prob.cov, {1, 3});
    CHECK((ev.block - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("parametrized transforms stay symplectic and provider-local") {
    Graph g = ladder_graph(6);
    RoutingProblem prob = RoutingProblem::make(g, 10.0, 1, 3);
    Rng rng(2);
    VectorXd eps(prob.dim());
    for (int i = 0; i < eps.size(); ++i) eps[i] = rng.uniform(-1.0, 1.0);
    const MatrixXd s = prob.global_symplectic(eps);
    const MatrixXd o = omega(6);
    CHECK((s * o * s.transpose() - o).cwiseAbs().maxCoeff() < 1e-11);
    // no quadrature mixing between providers
    for (int i : {0, 1, 2, 6, 7, 8}) {
        for (int j : {3, 4, 5, 9, 10, 11}) {
            CHECK(s(i, j) == 0.0);
            CHECK(s(j, i) == 0.0);
        }
    }
}

TEST_CASE("objective equals the evaluation breakdown") {
    Graph g = ladder_graph(6);
    RoutingProblem prob = RoutingProblem::make(g, 10.0, 1, 3);
    Rng rng(8);
    VectorXd eps(prob.dim());
    for (int i = 0; i < eps.size(); ++i) eps[i] = rng.uniform(-0.5, 0.5);
    const auto ev = prob.evaluate(eps);
    CHECK(prob.objective(eps) == doctest::Approx(ev.f).epsilon(1e-14));
    CHECK(ev.f == doctest::Approx(ev.frob + 0.5 * (1.0 - ev.gamma)).epsilon(1e-14));
    CHECK(ev.gamma >= 0.0);
    CHECK(ev.gamma <= 1.0);
}

TEST_CASE("route classification thresholds") {
    CHECK(classify_route(1e-6, 0.5) == RouteClass::ideal);
    CHECK(classify_route(9.9e-6, 0.0) == RouteClass::ideal);
    CHECK(classify_route(0.1, 0.9995) == RouteClass::imperfect);
    CHECK(classify_route(0.1, 0.9) == RouteClass::failed);
    CHECK(std::string(route_class_name(RouteClass::ideal)) == "ideal");
    CHECK(std::string(route_class_name(RouteClass::imperfect)) == "imperfect");
    CHECK(std::string(route_class_name(RouteClass::failed)) == "failed");
}

TEST_CASE("odd ladder route converges to the pair state") {
    Graph g = ladder_graph(6);
    RoutingProblem prob = RoutingProblem::make(g, 10.0, 1, 3);
    CmaConfig cfg;
    cfg.f_target = 1e-6;
    cfg.seed = 1;
    RouteResult rr = route(prob, cfg);
    CHECK(rr.cls == RouteClass::ideal);
    CHECK(rr.cma.generations == 876);
    CHECK(rr.final_eval.f < 1e-6);
    CHECK(rr.final_eval.gamma == doctest::Approx(1.0).epsilon(1e-6));
    const PhaseFix fx = fix_pair_phases(rr.final_eval.block);
    CHECK((fx.block - two_mode_squeezed_target(10.0)).cwiseAbs().maxCoeff() < 1e-3);
    CHECK(rr.cma.history.size() == static_cast<std::size_t>(rr.cma.generations));
}
