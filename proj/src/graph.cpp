#include "cvr/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace cvr {

std::vector<int> Graph::provider(int which) const {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (part[v] == which) out.push_back(v);
    return out;
}

int Graph::degree(int v) const {
    return static_cast<int>(std::lround(adj.row(v).sum()));
}

int Graph::edge_count() const {
    return static_cast<int>(std::lround(adj.sum() / 2.0));
}

bool Graph::connected() const {
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
            if (adj(v, w) != 0.0 && !seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adj(i, j) != 0.0) out.emplace_back(i, j);
    return out;
}

std::string topology_name(Topology k) {
    switch (k) {
        case Topology::grid: return "grid";
        case Topology::complete: return "complete";
        case Topology::barabasi_albert: return "barabasi_albert";
        case Topology::internet_as: return "internet_as";
        case Topology::duplication_divergence: return "duplication_divergence";
        case Topology::explicit_edges: return "explicit";
    }
    throw std::logic_error("unknown topology kind");
}

Topology topology_from_name(const std::string& name) {
    if (name == "grid") return Topology::grid;
    if (name == "complete") return Topology::complete;
    if (name == "barabasi_albert" || name == "ba") return Topology::barabasi_albert;
    if (name == "internet_as" || name == "as") return Topology::internet_as;
    if (name == "duplication_divergence" || name == "dd" || name == "pp")
        return Topology::duplication_divergence;
    if (name == "explicit") return Topology::explicit_edges;
    throw std::invalid_argument("unknown topology name: " + name);
}

Eigen::MatrixXd grid_adjacency(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
    const int n = rows * cols;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    auto id = [rows](int r, int c) { return c * rows + r; };
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) {
            if (r + 1 < rows) {
                a(id(r, c), id(r + 1, c)) = 1.0;
                a(id(r + 1, c), id(r, c)) = 1.0;
            }
            if (c + 1 < cols) {
                a(id(r, c), id(r, c + 1)) = 1.0;
                a(id(r, c + 1), id(r, c)) = 1.0;
            }
        }
    }
    return a;
}

Eigen::MatrixXd ladder_adjacency(int k) { return grid_adjacency(k, 2); }

Eigen::MatrixXd complete_adjacency(int n) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
    a.diagonal().setZero();
    return a;
}

Eigen::MatrixXd barabasi_albert_adjacency(int n, int m, Rng& rng) {
    if (m < 1 || m >= n) throw std::invalid_argument("barabasi_albert needs 1 <= m < n");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    // seed clique on the first m vertices, then degree-proportional attachment
    std::vector<int> repeated;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            a(i, j) = a(j, i) = 1.0;
            repeated.push_back(i);
            repeated.push_back(j);
        }
    }
    for (int v = m; v < n; ++v) {
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < m) {
            int t;
            if (repeated.empty())
                t = rng.below(v);
            else
                t = repeated[rng.below(static_cast<int>(repeated.size()))];
            targets.insert(t);
        }
        for (int t : targets) {
            a(v, t) = a(t, v) = 1.0;
            repeated.push_back(t);
            repeated.push_back(v);
        }
    }
    return a;
}

Eigen::MatrixXd erdos_renyi_adjacency(int n, double p, Rng& rng) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) a(i, j) = a(j, i) = 1.0;
    return a;
}

Eigen::MatrixXd duplication_divergence_adjacency(int n, double p, Rng& rng) {
    if (n < 2) throw std::invalid_argument("duplication_divergence needs n >= 2");
    if (p <= 0.0 || p > 1.0) throw std::invalid_argument("retention probability must be in (0, 1]");
    std::vector<std::set<int>> adj(n);
    adj[0].insert(1);
    adj[1].insert(0);
    int i = 2;
    long safety = 0;
    while (i < n) {
        if (++safety > 100000000L) throw std::runtime_error("duplication_divergence failed to grow");
        const int u = rng.below(i);
        std::vector<int> kept;
        for (int w : adj[u])
            if (rng.uniform() < p) kept.push_back(w);
        if (kept.empty()) continue;  // replica retained no edge, redraw
        for (int w : kept) {
            adj[i].insert(w);
            adj[w].insert(i);
        }
        ++i;
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v)
        for (int w : adj[v]) a(v, w) = 1.0;
    return a;
}

namespace {

// Integer draw whose expectation equals avg, supported on {floor(a)..} near avg.
int uniform_int_from_avg(int a, double avg, Rng& rng) {
    const double b = 2.0 * avg - a;
    const double fb = std::floor(b);
    const double p = (b - fb) / 2.0;
    const int x1 = static_cast<int>(std::llround(rng.uniform() * (fb - a) + a));
    const int x2 = rng.uniform() < p ? 1 : 0;
    return x1 + x2;
}

int choose_pref_attach(const std::vector<int>& keys, const std::vector<double>& weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total == 0.0) return keys[rng.below(static_cast<int>(keys.size()))];
    const double v = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        acc += weights[k];
        if (v <= acc) return keys[k];
    }
    return keys.back();
}

// Three-tier transit/peering topology builder: tier-1 transit mesh, mid-level
// providers, content providers, customer leaves, grouped into 5 regions.
class AsBuilder {
public:
    AsBuilder(int n, Rng& rng) : rng_(rng), n_(n) {
        n_t_ = std::min(n, static_cast<int>(std::llround(rng_.uniform() * 2.0 + 4.0)));
        n_m_ = static_cast<int>(std::llround(0.15 * n));
        n_cp_ = static_cast<int>(std::llround(0.05 * n));
        n_c_ = std::max(0, n - n_t_ - n_m_ - n_cp_);
        d_m_ = 2.0 + (2.5 * n) / 10000.0;
        d_cp_ = 2.0 + (1.5 * n) / 10000.0;
        d_c_ = 1.0 + (5.0 * n) / 100000.0;
        p_m_m_ = 1.0 + (2.0 * n) / 10000.0;
        p_cp_m_ = 0.2 + (2.0 * n) / 10000.0;
        p_cp_cp_ = 0.05 + (2.0 * n) / 100000.0;
    }

    Eigen::MatrixXd build() {
        const int total = n_t_ + n_m_ + n_cp_ + n_c_;
        adj_.assign(total, {});
        deg_.assign(total, 0);
        peers_.assign(total, 0);
        customers_.assign(total, {});
        providers_.assign(total, {});

        for (int i = 0; i < n_t_; ++i) {
            for (auto& r : regions_) r.insert(i);
            nodes_t_.push_back(i);
            for (int j = 0; j < i; ++j) {
                link(i, j);
                peers_[i] += 1;
                peers_[j] += 1;
            }
        }

        int i = n_t_;
        for (int k = 0; k < n_m_; ++k) add_node(i++, Kind::M, 0.2, d_m_, 0.375);
        for (int k = 0; k < n_cp_; ++k) add_node(i++, Kind::CP, 0.05, d_cp_, 0.375);
        for (int k = 0; k < n_c_; ++k) add_node(i++, Kind::C, 0.0, d_c_, 0.125);

        add_peering_links(Kind::M, Kind::M);
        add_peering_links(Kind::CP, Kind::M);
        add_peering_links(Kind::CP, Kind::CP);

        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(total, total);
        for (int v = 0; v < total; ++v)
            for (int w : adj_[v]) a(v, w) = 1.0;
        return a;
    }

private:
    enum class Kind { T, M, CP, C };

    void link(int i, int j) {
        adj_[i].insert(j);
        adj_[j].insert(i);
        deg_[i] += 1;
        deg_[j] += 1;
    }

    void add_customer(int i, int j) {
        customers_[j].insert(i);
        providers_[i].insert(j);
        for (int z : providers_[j]) {
            customers_[z].insert(i);
            providers_[i].insert(z);
        }
    }

    void add_node(int i, Kind kind, double reg2prob, double avg_deg, double t_edge_prob) {
        const int regs = rng_.uniform() < reg2prob ? 2 : 1;
        node_list(kind).push_back(i);
        std::set<int> options;
        int r1 = rng_.below(5);
        int r2 = r1;
        if (regs == 2)
            while (r2 == r1) r2 = rng_.below(5);
        for (int r : {r1, r2}) {
            options.insert(regions_[r].begin(), regions_[r].end());
            regions_[r].insert(i);
            if (regs == 1) break;
        }
        const int edge_num = uniform_int_from_avg(1, avg_deg, rng_);
        std::vector<int> t_options, m_options;
        for (int v : options) {
            if (is_kind(v, Kind::T)) t_options.push_back(v);
            if (is_kind(v, Kind::M) && v != i) m_options.push_back(v);
        }
        int d = 0;
        while (d < edge_num && (!t_options.empty() || !m_options.empty())) {
            std::vector<int>* pool;
            if (m_options.empty() || (!t_options.empty() && rng_.uniform() < t_edge_prob))
                pool = &t_options;
            else
                pool = &m_options;
            std::vector<double> w;
            for (int v : *pool) w.push_back(static_cast<double>(deg_[v]));
            const int j = choose_pref_attach(*pool, w, rng_);
            pool->erase(std::find(pool->begin(), pool->end(), j));
            link(i, j);
            add_customer(i, j);
            ++d;
        }
    }

    void add_m_peering_link(int m) {
        std::vector<int> opts;
        for (int v : nodes_m_) {
            if (v == m) continue;
            if (customers_[m].count(v) || providers_[m].count(v) || adj_[m].count(v)) continue;
            opts.push_back(v);
        }
        if (opts.empty()) return;
        std::vector<double> w;
        for (int v : opts) w.push_back(static_cast<double>(peers_[v]));
        const int j = choose_pref_attach(opts, w, rng_);
        link(m, j);
        peers_[m] += 1;
        peers_[j] += 1;
    }

    void add_cp_peering_link(int cp, Kind to_kind) {
        std::set<int> shared;
        for (const auto& r : regions_)
            if (r.count(cp)) shared.insert(r.begin(), r.end());
        std::vector<int> opts;
        for (int v : shared) {
            if (v == cp || !is_kind(v, to_kind)) continue;
            if (providers_[cp].count(v) || adj_[cp].count(v)) continue;
            opts.push_back(v);
        }
        if (opts.empty()) return;
        const int j = opts[rng_.below(static_cast<int>(opts.size()))];
        link(cp, j);
        peers_[cp] += 1;
        peers_[j] += 1;
    }

    void add_peering_links(Kind from, Kind to) {
        double avg;
        if (from == Kind::M)
            avg = p_m_m_;
        else if (to == Kind::M)
            avg = p_cp_m_;
        else
            avg = p_cp_cp_;
        for (int i : node_list(from)) {
            const int num = uniform_int_from_avg(0, avg, rng_);
            for (int k = 0; k < num; ++k) {
                if (from == Kind::M)
                    add_m_peering_link(i);
                else
                    add_cp_peering_link(i, to);
            }
        }
    }

    std::vector<int>& node_list(Kind k) {
        switch (k) {
            case Kind::T: return nodes_t_;
            case Kind::M: return nodes_m_;
            case Kind::CP: return nodes_cp_;
            case Kind::C: return nodes_c_;
        }
        throw std::logic_error("bad kind");
    }

    bool is_kind(int v, Kind k) {
        const auto& lst = node_list(k);
        return std::binary_search(lst.begin(), lst.end(), v);  // ids assigned in ascending order
    }

    Rng& rng_;
    int n_, n_t_, n_m_, n_cp_, n_c_;
    double d_m_, d_cp_, d_c_, p_m_m_, p_cp_m_, p_cp_cp_;
    std::array<std::set<int>, 5> regions_;
    std::vector<std::set<int>> adj_, customers_, providers_;
    std::vector<int> deg_, peers_;
    std::vector<int> nodes_t_, nodes_m_, nodes_cp_, nodes_c_;
};

}  // namespace

Eigen::MatrixXd internet_as_adjacency(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("internet_as needs n >= 1");
    return AsBuilder(n, rng).build();
}

void bipartition_half(Graph& g) {
    g.part.assign(g.n, 1);
    for (int v = 0; v < g.n / 2; ++v) g.part[v] = 0;
}

void bipartition_explicit(Graph& g, const std::vector<int>& a_side) {
    g.part.assign(g.n, 1);
    for (int v : a_side) {
        if (v < 0 || v >= g.n) throw std::invalid_argument("partition vertex out of range");
        g.part[v] = 0;
    }
}

Graph generate(const TopologySpec& spec) {
    if (spec.n % 2 != 0) throw std::invalid_argument("provider split needs an even vertex count");
    Graph g;
    const bool stochastic = spec.kind == Topology::barabasi_albert ||
                            spec.kind == Topology::internet_as ||
                            spec.kind == Topology::duplication_divergence;
    switch (spec.kind) {
        case Topology::grid: {
            int rows = spec.grid_rows, cols = spec.grid_cols;
            if (rows == 0 && cols == 0) {
                if (spec.n < 4 || spec.n % 2 != 0)
                    throw std::invalid_argument("default grid needs even n >= 4");
                rows = spec.n / 2;
                cols = 2;
            }
            if (spec.n != 0 && rows * cols != spec.n)
                throw std::invalid_argument("grid dimensions do not match n");
            g.adj = grid_adjacency(rows, cols);
            break;
        }
        case Topology::complete:
            if (spec.n < 2) throw std::invalid_argument("complete needs n >= 2");
            g.adj = complete_adjacency(spec.n);
            break;
        case Topology::explicit_edges: {
            if (spec.n < 1) throw std::invalid_argument("explicit needs n >= 1");
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(spec.n, spec.n);
            for (auto [i, j] : spec.edges) {
                if (i < 0 || j < 0 || i >= spec.n || j >= spec.n || i == j)
                    throw std::invalid_argument("bad explicit edge");
                a(i, j) = a(j, i) = 1.0;
            }
            g.adj = a;
            break;
        }
        default:
            break;
    }
    if (stochastic) {
        const int max_attempts = 100;
        Rng master(spec.seed);
        for (int attempt = 0;; ++attempt) {
            if (attempt >= max_attempts)
                throw std::runtime_error("failed to generate a connected graph after 100 attempts");
            Rng r = master.sub(static_cast<std::uint64_t>(attempt));
            Eigen::MatrixXd a;
            switch (spec.kind) {
                case Topology::barabasi_albert:
                    a = barabasi_albert_adjacency(spec.n, spec.ba_m, r);
                    break;
                case Topology::internet_as:
                    a = internet_as_adjacency(spec.n, r);
                    break;
                default:
                    a = duplication_divergence_adjacency(spec.n, spec.dd_p, r);
                    break;
            }
            g.adj = a;
            g.n = static_cast<int>(a.rows());
            if (g.connected()) {
                g.regen_count = attempt;
                break;
            }
        }
    } else {
        g.n = static_cast<int>(g.adj.rows());
        // explicit graphs pass through untouched; the generated lattices are connected by shape
        if (spec.kind != Topology::explicit_edges && !g.connected())
            throw std::invalid_argument("requested topology is disconnected");
    }
    bipartition_half(g);
    return g;
}

Eigen::MatrixXi hop_distances(const Graph& g) {
    Eigen::MatrixXi d = Eigen::MatrixXi::Constant(g.n, g.n, -1);
    for (int src = 0; src < g.n; ++src) {
        d(src, src) = 0;
        std::queue<int> q;
        q.push(src);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int w = 0; w < g.n; ++w) {
                if (g.adj(v, w) != 0.0 && d(src, w) < 0) {
                    d(src, w) = d(src, v) + 1;
                    q.push(w);
                }
            }
        }
    }
    return d;
}

std::pair<int, int> scenario_pair(const Graph& g, int scenario) {
    const std::vector<int> a = g.provider(0);
    const std::vector<int> b = g.provider(1);
    if (a.empty() || b.empty()) throw std::invalid_argument("both providers need at least one vertex");
    auto pick = [&](const std::vector<int>& side, bool want_max) {
        int best = side[0];
        for (int v : side) {
            const int dv = g.degree(v), db = g.degree(best);
            if (want_max ? dv > db : dv < db) best = v;
        }
        return best;
    };
    switch (scenario) {
        case 1:
            return {pick(a, true), pick(b, false)};
        case 3:
            return {pick(a, false), pick(b, false)};
        case 2: {
            const Eigen::MatrixXi d = hop_distances(g);
            int best_a = -1, best_b = -1, best_d = -1;
            for (int va : a) {
                for (int vb : b) {
                    if (d(va, vb) < 0) throw std::runtime_error("graph is disconnected");
                    if (d(va, vb) > best_d) {
                        best_d = d(va, vb);
                        best_a = va;
                        best_b = vb;
                    }
                }
            }
            return {best_a, best_b};
        }
        default:
            throw std::invalid_argument("scenario must be 1, 2, or 3");
    }
}

}  // namespace cvr
