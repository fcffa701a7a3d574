#include <CLI11.hpp>

#include "cvr/cma.hpp"
#include "cvr/criteria.hpp"
#include "cvr/gaussian.hpp"
#include "cvr/graph.hpp"
#include "cvr/io.hpp"
#include "cvr/routing.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

using namespace cvr;
using nlohmann::json;

namespace {

// Options shared by every subcommand; presence flags let the precedence rules
// (flag > CVROUTER_SEED > config file > default) apply per field.
struct Common {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    double s = 0.0;
    bool has_config = false, has_out = false, has_seed = false, has_threads = false, has_s = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "JSON run configuration; flags override its fields")
        ->check(CLI::ExistingFile)
        ->each([&c](const std::string&) { c.has_config = true; });
    sub->add_option("-o,--out", c.out_dir, "output directory (created if missing)")
        ->each([&c](const std::string&) { c.has_out = true; });
    sub->add_option("--seed", c.seed, "master seed for topology and optimizer streams")
        ->each([&c](const std::string&) { c.has_seed = true; });
    sub->add_option("--threads", c.threads, "worker threads for offspring evaluation")
        ->each([&c](const std::string&) { c.has_threads = true; });
    sub->add_option("-s,--squeezing", c.s, "squeezing parameter s > 1")
        ->each([&c](const std::string&) { c.has_s = true; });
}

RunConfig resolve(const Common& c) {
    RunConfig cfg;
    bool config_has_threads = false;
    if (c.has_config) {
        const json j = json::parse(read_file(c.config_path));
        cfg = run_config_from_json(j);
        config_has_threads = j.contains("cma") && j["cma"].contains("threads");
    }
    if (const char* env = std::getenv("CVROUTER_SEED")) {
        const std::uint64_t s = std::stoull(env);
        cfg.topology.seed = s;
        cfg.cma.seed = s;
    }
    if (c.has_seed) {
        cfg.topology.seed = c.seed;
        cfg.cma.seed = c.seed;
    }
    if (c.has_s) cfg.s = c.s;
    if (cfg.s <= 1.0) throw std::invalid_argument("squeezing must satisfy s > 1");
    if (c.has_threads) {
        cfg.cma.n_threads = c.threads;
    } else if (!config_has_threads) {
        cfg.cma.n_threads = std::max(1u, std::thread::hardware_concurrency());
    }
    if (cfg.cma.n_threads < 1) throw std::invalid_argument("threads must be positive");
    if (c.has_out) cfg.out_dir = c.out_dir;
    if (cfg.out_dir.empty()) cfg.out_dir = ".";
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_json(const std::string& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

// Topology flags shared by generate/route/histogram.
struct TopoFlags {
    std::string kind;
    int n = 0;
    int m = 0;
    double p = 0.0;
    int rows = 0, cols = 0;
    std::vector<std::string> edge_specs;
    bool has_kind = false, has_n = false, has_m = false, has_p = false, has_shape = false;
};

void add_topology(CLI::App* sub, TopoFlags& t) {
    sub->add_option("--topology", t.kind,
                    "grid | complete | ba | as | dd | explicit (long names accepted)")
        ->each([&t](const std::string&) { t.has_kind = true; });
    sub->add_option("-n,--nodes", t.n, "vertex count")->each([&t](const std::string&) {
        t.has_n = true;
    });
    sub->add_option("-m,--attach", t.m, "attachment count for the ba model")
        ->each([&t](const std::string&) { t.has_m = true; });
    sub->add_option("-p,--retention", t.p, "edge retention probability for the dd model")
        ->each([&t](const std::string&) { t.has_p = true; });
    sub->add_option("--rows", t.rows, "grid rows (with --cols; default two-column ladder)")
        ->each([&t](const std::string&) { t.has_shape = true; });
    sub->add_option("--cols", t.cols, "grid columns")->each([&t](const std::string&) {
        t.has_shape = true;
    });
    sub->add_option("--edge", t.edge_specs, "explicit edge i,j (repeatable)");
}

void apply_topology(const TopoFlags& t, TopologySpec& spec) {
    if (t.has_kind) spec.kind = topology_from_name(t.kind);
    if (t.has_n) spec.n = t.n;
    if (t.has_m) spec.ba_m = t.m;
    if (t.has_p) spec.dd_p = t.p;
    if (t.has_shape) {
        spec.grid_rows = t.rows;
        spec.grid_cols = t.cols;
    }
    if (!t.edge_specs.empty()) {
        spec.edges.clear();
        for (const std::string& e : t.edge_specs) {
            const auto comma = e.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("edge must be given as i,j: " + e);
            spec.edges.emplace_back(std::stoi(e.substr(0, comma)), std::stoi(e.substr(comma + 1)));
        }
    }
    if (spec.n < 2) throw std::invalid_argument("topology needs at least two vertices");
}

Graph build_graph(const RunConfig& cfg) {
    Graph g = generate(cfg.topology);
    if (!cfg.partition_a.empty()) bipartition_explicit(g, cfg.partition_a);
    return g;
}

json pair_block_json(const Eigen::MatrixXd& block) {
    json rows = json::array();
    for (int i = 0; i < block.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < block.cols(); ++j) row.push_back(block(i, j));
        rows.push_back(row);
    }
    return rows;
}

int cmd_generate(const RunConfig& cfg) {
    const Graph g = build_graph(cfg);
    const std::string graph_file = out_path(cfg, "graph.json");
    write_json(graph_file, graph_to_json(g));
    write_file(out_path(cfg, "covariance.csv"), covariance_to_csv(cluster_covariance(g.adj, cfg.s)));
    std::printf("%s n=%d edges=%d provider_a=%zu regenerations=%d -> %s\n",
                topology_name(cfg.topology.kind).c_str(), g.n, g.edge_count(), g.provider(0).size(),
                g.regen_count, graph_file.c_str());
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& graph_file) {
    const Graph g = graph_from_json(json::parse(read_file(graph_file)));
    const SpectrumReport rep = spectrum_report(g, cfg.s);
    json j;
    j["n"] = g.n;
    j["s"] = cfg.s;
    j["lambda"] = rep.lambda;
    j["spectrum_a"] = std::vector<double>(rep.spectrum_a.data(), rep.spectrum_a.data() + rep.spectrum_a.size());
    j["spectrum_b"] = std::vector<double>(rep.spectrum_b.data(), rep.spectrum_b.data() + rep.spectrum_b.size());
    j["count_one"] = rep.unit_count_a;
    j["count_lambda"] = rep.lambda_count_a;
    j["contains_lambda"] = rep.bipartite_possible;
    j["bipartite_possible"] = rep.bipartite_possible;
    j["internal_possible"] = rep.internal_possible;
    const bool possible = rep.bipartite_possible || rep.internal_possible;
    j["verdict"] = possible ? "possible" : "impossible";
    write_json(out_path(cfg, "spectrum.json"), j);
    std::printf("verdict=%s count_one=%d contains_lambda=%s\n", possible ? "possible" : "impossible",
                rep.unit_count_a, rep.bipartite_possible ? "true" : "false");
    return possible ? 0 : 2;
}

std::pair<int, int> resolve_pair(const RunConfig& cfg, const Graph& g) {
    if (cfg.scenario != 0) return scenario_pair(g, cfg.scenario);
    if (cfg.mode_a < 0 || cfg.mode_b < 0)
        throw std::invalid_argument("route needs --scenario or an explicit --pair");
    return {cfg.mode_a, cfg.mode_b};
}

int cmd_route(const RunConfig& cfg, const std::string& method) {
    const Graph g = build_graph(cfg);
    const auto [ma, mb] = resolve_pair(cfg, g);
    json j;
    j["method"] = method;
    j["n"] = g.n;
    j["s"] = cfg.s;
    j["pair"] = {ma, mb};
    j["seed"] = cfg.cma.seed;

    if (method == "constructive") {
        ConstructiveResult cr;
        try {
            cr = constructive_route(g, cfg.s, ma, mb);
        } catch (const std::runtime_error& e) {
            std::fprintf(stderr, "no-go: %s\n", e.what());
            return 2;
        }
        const RouteClass cls = cr.residual <= 1e-5 ? RouteClass::ideal : RouteClass::imperfect;
        j["class"] = route_class_name(cls);
        j["residual"] = cr.residual;
        j["ambiguous"] = cr.ambiguous;
        j["block"] = pair_block_json(cr.routed);
        write_json(out_path(cfg, "route.json"), j);
        const Eigen::MatrixXd routed_cov =
            cr.transform * cluster_covariance(g.adj, cfg.s) * cr.transform.transpose();
        write_file(out_path(cfg, "routed_covariance.csv"), covariance_to_csv(routed_cov));
        std::printf("constructive pair (%d,%d): residual=%.3e class=%s\n", ma, mb, cr.residual,
                    route_class_name(cls));
        return cls == RouteClass::ideal ? 0 : 3;
    }

    const RoutingProblem prob = RoutingProblem::make(g, cfg.s, ma, mb);
    const RouteResult rr = route(prob, cfg.cma);
    const PhaseFix fx = fix_pair_phases(rr.final_eval.block);
    j["class"] = route_class_name(rr.cls);
    j["f"] = rr.final_eval.f;
    j["frobenius"] = rr.final_eval.frob;
    j["purity"] = rr.final_eval.gamma;
    j["generations"] = rr.cma.generations;
    j["stop"] = cma_stop_name(rr.cma.stop);
    j["block"] = pair_block_json(rr.final_eval.block);
    j["fixed_block"] = pair_block_json(fx.block);
    j["phase_a"] = fx.alpha_a;
    j["phase_b"] = fx.alpha_b;
    write_json(out_path(cfg, "route.json"), j);
    write_file(out_path(cfg, "history.csv"), history_to_csv(rr.cma.history));
    const Eigen::MatrixXd transform = prob.global_symplectic(rr.cma.best_x);
    write_file(out_path(cfg, "routed_covariance.csv"),
               covariance_to_csv(transform * prob.cov * transform.transpose()));
    std::printf("pair (%d,%d): f=%.6e purity=%.6f class=%s generations=%d stop=%s\n", ma, mb,
                rr.final_eval.f, rr.final_eval.gamma, route_class_name(rr.cls),
                rr.cma.generations, cma_stop_name(rr.cma.stop));
    return rr.cls == RouteClass::ideal ? 0 : 3;
}

int cmd_histogram(const RunConfig& cfg) {
    const HistogramResult h = spectral_histogram(cfg.topology, cfg.graphs, cfg.s, cfg.bins);
    write_file(out_path(cfg, "histogram.csv"), histogram_to_csv(h));
    json j = histogram_summary(h);
    j["kind"] = topology_name(cfg.topology.kind);
    j["graphs"] = cfg.graphs;
    j["n"] = cfg.topology.n;
    j["s"] = cfg.s;
    j["lambda"] = Squeezing{cfg.s}.lambda();
    write_json(out_path(cfg, "summary.json"), j);
    std::printf("%d graphs, %ld values: one=%.2f%% lambda=%.2f%% ge99=%.2f%%\n", cfg.graphs,
                h.total, 100.0 * h.frac_unit, 100.0 * h.frac_lambda, 100.0 * h.frac_ge99);
    return 0;
}

int cmd_square(const RunConfig& cfg, int scan_points) {
    const double s = cfg.s;
    json j;
    j["s"] = s;
    j["lambda"] = Squeezing{s}.lambda();
    j["mu"] = Squeezing{s}.mu();
    j["pair_lambda_minus"] = square_lambda_minus(s);
    j["pair_lambda_plus"] = square_lambda_plus(s);
    j["pair_mu"] = square_mu(s);
    const auto a = square_hand_solution_a();
    const auto b = square_hand_solution_b();
    const Eigen::MatrixXd kept = square_kept_block(square_oracle(s, a, b), 0, 0);
    const double resid = (kept - square_routed_target(s)).cwiseAbs().maxCoeff();
    j["hand_solution"] = {{"a", {a[0], a[1], a[2], a[3]}},
                          {"b", {b[0], b[1], b[2], b[3]}},
                          {"block_residual", resid},
                          {"purity", purity(kept)}};
    std::optional<ScanResult> sr;
    if (scan_points > 0) {
        sr = square_scan(s, scan_points);
        j["scan"] = {{"grid", scan_points},
                     {"min_of_max", sr->min_of_max},
                     {"phi1", sr->phi1},
                     {"phi2", sr->phi2}};
    }
    write_json(out_path(cfg, "square.json"), j);
    std::printf("pair values: l-=%.8f l+=%.8f mu=%.8f hand residual=%.3e\n",
                square_lambda_minus(s), square_lambda_plus(s), square_mu(s), resid);
    if (sr)
        std::printf("scan %dx%d: min of max residual %.6f\n", scan_points, scan_points,
                    sr->min_of_max);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian cluster-state routing toolkit"};
    app.require_subcommand(1);

    Common c_gen, c_spec, c_route, c_hist, c_sq;
    TopoFlags t_gen, t_route, t_hist;
    std::string graph_file, method = "optimizer", pair_spec;
    int scenario = 0, graphs = 0, bins = 0, scan_points = 0;
    bool has_scenario = false, has_graphs = false, has_bins = false;

    CLI::App* gen = app.add_subcommand("generate", "build a network and write graph + state files");
    add_common(gen, c_gen);
    add_topology(gen, t_gen);

    CLI::App* spec = app.add_subcommand("spectrum", "half-spectrum report and routing verdict");
    add_common(spec, c_spec);
    spec->add_option("--graph", graph_file, "graph JSON file")->required()->check(CLI::ExistingFile);

    CLI::App* route_cmd = app.add_subcommand("route", "steer a mode pair into the two-mode squeezed state");
    add_common(route_cmd, c_route);
    add_topology(route_cmd, t_route);
    route_cmd->add_option("--method", method, "optimizer | constructive")
        ->check(CLI::IsMember({"optimizer", "constructive"}));
    route_cmd->add_option("--scenario", scenario, "pair choice: 1 hub/leaf, 2 max distance, 3 leaf/leaf")
        ->check(CLI::Range(1, 3))
        ->each([&has_scenario](const std::string&) { has_scenario = true; });
    route_cmd->add_option("--pair", pair_spec, "explicit mode pair a,b");

    CLI::App* hist = app.add_subcommand("histogram", "pooled half-spectrum histogram over an ensemble");
    add_common(hist, c_hist);
    add_topology(hist, t_hist);
    hist->add_option("--graphs", graphs, "ensemble size")->each([&has_graphs](const std::string&) {
        has_graphs = true;
    });
    hist->add_option("--bins", bins, "histogram bins")->each([&has_bins](const std::string&) {
        has_bins = true;
    });

    CLI::App* sq = app.add_subcommand("square-oracle", "closed forms for the four-node ring");
    add_common(sq, c_sq);
    sq->add_option("--scan", scan_points, "angle grid points for the one-sided scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*gen) {
            RunConfig cfg = resolve(c_gen);
            apply_topology(t_gen, cfg.topology);
            return cmd_generate(cfg);
        }
        if (*spec) {
            return cmd_spectrum(resolve(c_spec), graph_file);
        }
        if (*route_cmd) {
            RunConfig cfg = resolve(c_route);
            apply_topology(t_route, cfg.topology);
            if (has_scenario) cfg.scenario = scenario;
            if (!pair_spec.empty()) {
                const auto comma = pair_spec.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("pair must be given as a,b");
                cfg.scenario = has_scenario ? cfg.scenario : 0;
                cfg.mode_a = std::stoi(pair_spec.substr(0, comma));
                cfg.mode_b = std::stoi(pair_spec.substr(comma + 1));
                if (!has_scenario) cfg.scenario = 0;
            }
            return cmd_route(cfg, method);
        }
        if (*hist) {
            RunConfig cfg = resolve(c_hist);
            apply_topology(t_hist, cfg.topology);
            if (has_graphs) cfg.graphs = graphs;
            if (has_bins) cfg.bins = bins;
            return cmd_histogram(cfg);
        }
        if (*sq) {
            return cmd_square(resolve(c_sq), scan_points);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
