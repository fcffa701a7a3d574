#include "cvr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cvr {

using nlohmann::json;

json graph_to_json(const Graph& g) {
    json j;
    j["n"] = g.n;
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back(json::array({a, b}));
    j["edges"] = edges;
    j["partition_a"] = g.provider(0);
    return j;
}

Graph graph_from_json(const json& j) {
    Graph g;
    g.n = j.at("n").get<int>();
    if (g.n < 1) throw std::invalid_argument("graph json: n must be positive");
    g.adj = Eigen::MatrixXd::Zero(g.n, g.n);
    for (const auto& e : j.at("edges")) {
        const int a = e.at(0).get<int>();
        const int b = e.at(1).get<int>();
        if (a < 0 || b < 0 || a >= g.n || b >= g.n || a == b)
            throw std::invalid_argument("graph json: bad edge");
        g.adj(a, b) = g.adj(b, a) = 1.0;
    }
    std::vector<int> a_side;
    if (j.contains("partition_a")) a_side = j.at("partition_a").get<std::vector<int>>();
    if (a_side.empty() && g.n % 2 == 0) {
        bipartition_half(g);
    } else {
        bipartition_explicit(g, a_side);
    }
    return g;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string covariance_to_csv(const Eigen::MatrixXd& cov) {
    if (cov.rows() != cov.cols() || cov.rows() % 2 != 0)
        throw std::invalid_argument("covariance_to_csv: expected a 2n x 2n matrix");
    std::ostringstream out;
    out << "# modes=" << cov.rows() / 2 << " ordering=QP\n";
    for (int r = 0; r < cov.rows(); ++r) {
        for (int c = 0; c < cov.cols(); ++c) {
            if (c) out << ',';
            out << format_double(cov(r, c));
        }
        out << '\n';
    }
    return out.str();
}

Eigen::MatrixXd covariance_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("covariance_from_csv: no data rows");
    const int d = static_cast<int>(rows.size());
    Eigen::MatrixXd cov(d, d);
    for (int r = 0; r < d; ++r) {
        if (static_cast<int>(rows[r].size()) != d)
            throw std::invalid_argument("covariance_from_csv: ragged rows");
        for (int c = 0; c < d; ++c) cov(r, c) = rows[r][c];
    }
    return cov;
}

std::string histogram_to_csv(const HistogramResult& h) {
    std::ostringstream out;
    out << "bin_low,bin_high,count\n";
    for (std::size_t b = 0; b + 1 < h.edges.size(); ++b)
        out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ','
            << h.counts[b] << '\n';
    return out.str();
}

json histogram_summary(const HistogramResult& h) {
    json j;
    j["total"] = h.total;
    j["value_one_pct"] = 100.0 * h.frac_unit;
    j["value_lambda_pct"] = 100.0 * h.frac_lambda;
    j["ge_99_lambda_pct"] = 100.0 * h.frac_ge99;
    return j;
}

std::string history_to_csv(const std::vector<CmaHistoryEntry>& history) {
    std::ostringstream out;
    out << "generation,best_f,sigma\n";
    for (const auto& e : history)
        out << e.generation << ',' << format_double(e.best_f) << ',' << format_double(e.sigma)
            << '\n';
    return out.str();
}

json topology_to_json(const TopologySpec& spec) {
    json j;
    j["kind"] = topology_name(spec.kind);
    j["n"] = spec.n;
    j["seed"] = spec.seed;
    switch (spec.kind) {
        case Topology::grid:
            if (spec.grid_rows || spec.grid_cols) {
                j["rows"] = spec.grid_rows;
                j["cols"] = spec.grid_cols;
            }
            break;
        case Topology::barabasi_albert:
            j["m"] = spec.ba_m;
            break;
        case Topology::duplication_divergence:
            j["p"] = spec.dd_p;
            break;
        case Topology::explicit_edges: {
            json edges = json::array();
            for (auto [a, b] : spec.edges) edges.push_back(json::array({a, b}));
            j["edges"] = edges;
            break;
        }
        default:
            break;
    }
    return j;
}

TopologySpec topology_from_json(const json& j) {
    TopologySpec spec;
    spec.kind = topology_from_name(j.at("kind").get<std::string>());
    spec.n = j.value("n", 0);
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.grid_rows = j.value("rows", 0);
    spec.grid_cols = j.value("cols", 0);
    spec.ba_m = j.value("m", 2);
    spec.dd_p = j.value("p", 0.4);
    if (j.contains("edges"))
        for (const auto& e : j.at("edges"))
            spec.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return spec;
}

json run_config_to_json(const RunConfig& cfg) {
    json j;
    j["topology"] = topology_to_json(cfg.topology);
    j["s"] = cfg.s;
    if (!cfg.partition_a.empty()) j["partition_a"] = cfg.partition_a;
    if (cfg.scenario) j["scenario"] = cfg.scenario;
    if (cfg.mode_a >= 0) j["pair"] = json::array({cfg.mode_a, cfg.mode_b});
    j["cma"] = {{"max_generations", cfg.cma.max_generations},
                {"sigma0", cfg.cma.sigma0},
                {"f_target", cfg.cma.f_target},
                {"stall_generations", cfg.cma.stall_generations},
                {"stall_tolerance", cfg.cma.stall_tolerance},
                {"seed", cfg.cma.seed},
                {"threads", cfg.cma.n_threads}};
    j["graphs"] = cfg.graphs;
    j["bins"] = cfg.bins;
    if (!cfg.out_dir.empty()) j["out_dir"] = cfg.out_dir;
    return j;
}

RunConfig run_config_from_json(const json& j) {
    RunConfig cfg;
    if (j.contains("topology")) cfg.topology = topology_from_json(j.at("topology"));
    cfg.s = j.value("s", 10.0);
    if (j.contains("partition_a")) cfg.partition_a = j.at("partition_a").get<std::vector<int>>();
    cfg.scenario = j.value("scenario", 0);
    if (j.contains("pair")) {
        cfg.mode_a = j.at("pair").at(0).get<int>();
        cfg.mode_b = j.at("pair").at(1).get<int>();
    }
    if (j.contains("cma")) {
        const json& c = j.at("cma");
        cfg.cma.max_generations = c.value("max_generations", cfg.cma.max_generations);
        cfg.cma.sigma0 = c.value("sigma0", cfg.cma.sigma0);
        cfg.cma.f_target = c.value("f_target", cfg.cma.f_target);
        cfg.cma.stall_generations = c.value("stall_generations", cfg.cma.stall_generations);
        cfg.cma.stall_tolerance = c.value("stall_tolerance", cfg.cma.stall_tolerance);
        cfg.cma.seed = c.value("seed", cfg.cma.seed);
        cfg.cma.n_threads = c.value("threads", cfg.cma.n_threads);
    }
    cfg.graphs = j.value("graphs", cfg.graphs);
    cfg.bins = j.value("bins", cfg.bins);
    cfg.out_dir = j.value("out_dir", std::string());
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace cvr
