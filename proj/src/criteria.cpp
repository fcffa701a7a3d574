#include "cvr/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cvr {

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

SpectrumReport spectrum_report(const Graph& g, double s) {
    const Squeezing sq{s};
    SpectrumReport rep;
    rep.lambda = sq.lambda();
    const MatrixXd cov = cluster_covariance(g.adj, s);
    rep.spectrum_a = symplectic_eigenvalues(reduce(cov, g.provider(0)));
    rep.spectrum_b = symplectic_eigenvalues(reduce(cov, g.provider(1)));
    rep.unit_count_a = 0;
    rep.lambda_count_a = 0;
    for (int i = 0; i < rep.spectrum_a.size(); ++i) {
        const double nu = rep.spectrum_a[i];
        if (std::abs(nu - 1.0) <= kSpectralTol) ++rep.unit_count_a;
        if (std::abs(nu - rep.lambda) <= kSpectralTol * rep.lambda) ++rep.lambda_count_a;
    }
    rep.bipartite_possible = rep.lambda_count_a > 0;
    rep.internal_possible = rep.unit_count_a >= 2;
    return rep;
}

namespace {

Matrix2d rot2(double a) {
    Matrix2d r;
    r << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
    return r;
}

// 4x4 rotation in (Q_a, Q_b, P_a, P_b) ordering: R(alpha_a) on mode a, R(alpha_b) on b.
MatrixXd rot4(double alpha_a, double alpha_b) {
    MatrixXd r = MatrixXd::Zero(4, 4);
    const Matrix2d ra = rot2(alpha_a), rb = rot2(alpha_b);
    r(0, 0) = ra(0, 0); r(0, 2) = ra(0, 1); r(2, 0) = ra(1, 0); r(2, 2) = ra(1, 1);
    r(1, 1) = rb(0, 0); r(1, 3) = rb(0, 1); r(3, 1) = rb(1, 0); r(3, 3) = rb(1, 1);
    return r;
}

double wrap_angle(double a) {
    const double two_pi = 2.0 * M_PI;
    a = std::fmod(a, two_pi);
    if (a <= -M_PI) a += two_pi;
    if (a > M_PI) a -= two_pi;
    return a;
}

}  // namespace

PhaseFix fix_pair_phases(const MatrixXd& block) {
    if (block.rows() != 4 || block.cols() != 4)
        throw std::invalid_argument("fix_pair_phases: expected a 4x4 block");
    // per-mode rows in (Qa, Qb, Pa, Pb): mode a -> (0, 2), mode b -> (1, 3)
    auto within = [](const MatrixXd& b, int q, int p) {
        Matrix2d w;
        w << b(q, q), b(q, p), b(q, p), b(p, p);
        return w;
    };
    auto pinned_angle = [](const Matrix2d& w, bool& free_side) {
        const double vq = w(0, 0), vp = w(1, 1), c = w(0, 1);
        const double scale = std::max(1.0, std::abs(vq) + std::abs(vp));
        free_side = std::abs(vq - vp) <= 1e-9 * scale && std::abs(c) <= 1e-9 * scale;
        if (free_side) return 0.0;
        // diagonalize with the smaller variance on Q
        return 0.5 * std::atan2(2.0 * c, vq - vp) + 0.5 * M_PI;
    };
    bool free_a = false, free_b = false;
    double alpha_a = pinned_angle(within(block, 0, 2), free_a);
    double alpha_b = pinned_angle(within(block, 1, 3), free_b);

    auto apply = [&block](double aa, double ab) {
        const MatrixXd r = rot4(aa, ab);
        return MatrixXd(r * block * r.transpose());
    };
    MatrixXd b1 = apply(alpha_a, alpha_b);

    // cross block, rows (Qa, Pa) x cols (Qb, Pb)
    auto cross = [](const MatrixXd& b) {
        Matrix2d c;
        c << b(0, 1), b(0, 3), b(2, 1), b(2, 3);
        return c;
    };
    if (free_a) {
        const Matrix2d c = cross(b1);
        alpha_a += -std::atan2(c(0, 0), c(0, 1));  // zero the Q-Q cross, Q-P cross positive
        b1 = apply(alpha_a, alpha_b);
    } else if (free_b) {
        const Matrix2d c = cross(b1);
        alpha_b += std::atan2(-c(0, 0), c(0, 1));
        b1 = apply(alpha_a, alpha_b);
    }
    if (b1(0, 3) < 0.0) {  // pi flip preserves the within-mode blocks, flips all crosses
        alpha_a += M_PI;
        b1 = apply(alpha_a, alpha_b);
    }
    PhaseFix out;
    out.alpha_a = wrap_angle(alpha_a);
    out.alpha_b = wrap_angle(alpha_b);
    out.block = apply(out.alpha_a, out.alpha_b);
    return out;
}

namespace {

// permutation matrix with p(to[i], from[i]) = 1, remaining slots filled in order
MatrixXd mode_permutation(int k, const std::vector<int>& from, const std::vector<int>& to) {
    MatrixXd p = MatrixXd::Zero(k, k);
    std::vector<char> from_used(k, 0), to_used(k, 0);
    for (std::size_t i = 0; i < from.size(); ++i) {
        p(to[i], from[i]) = 1.0;
        from_used[from[i]] = 1;
        to_used[to[i]] = 1;
    }
    std::vector<int> rest_from, rest_to;
    for (int i = 0; i < k; ++i) {
        if (!from_used[i]) rest_from.push_back(i);
        if (!to_used[i]) rest_to.push_back(i);
    }
    for (std::size_t i = 0; i < rest_from.size(); ++i) p(rest_to[i], rest_from[i]) = 1.0;
    return p;
}

// symplectic action of a real mode permutation: block diag(p, p)
MatrixXd permutation_symplectic(const MatrixXd& p) {
    const int k = static_cast<int>(p.rows());
    MatrixXd s = MatrixXd::Zero(2 * k, 2 * k);
    s.topLeftCorner(k, k) = p;
    s.bottomRightCorner(k, k) = p;
    return s;
}

int index_in(const std::vector<int>& list, int value) {
    const auto it = std::find(list.begin(), list.end(), value);
    if (it == list.end()) throw std::logic_error("vertex not in provider list");
    return static_cast<int>(it - list.begin());
}

}  // namespace

ConstructiveResult constructive_route(const Graph& g, double s, int mode_a, int mode_b) {
    if (mode_a < 0 || mode_b < 0 || mode_a >= g.n || mode_b >= g.n || mode_a == mode_b)
        throw std::invalid_argument("constructive_route: invalid mode pair");
    const Squeezing sq{s};
    const double lam = sq.lambda();
    const MatrixXd cov = cluster_covariance(g.adj, s);
    const int n = g.n;
    ConstructiveResult out;
    out.ambiguous = false;
    MatrixXd total = MatrixXd::Identity(2 * n, 2 * n);

    if (g.part[mode_a] != g.part[mode_b]) {
        // cross-provider pair: route the shared lambda mode on each side
        auto side = [&](int vertex) {
            const std::vector<int> plist = g.provider(g.part[vertex]);
            const int k = static_cast<int>(plist.size());
            const WilliamsonResult wil = williamson(reduce(cov, plist));
            int star = 0;
            int matches = 0;
            for (int i = 0; i < k; ++i) {
                if (std::abs(wil.nu[i] - lam) < std::abs(wil.nu[star] - lam)) star = i;
                if (std::abs(wil.nu[i] - lam) <= kSpectralTol * lam) ++matches;
            }
            if (matches == 0)
                throw std::runtime_error("constructive_route: no shared spectrum value on one side");
            if (matches > 1) out.ambiguous = true;
            const BlochMessiahResult bm = bloch_messiah(wil.S);
            MatrixXd local = bm.O1.transpose();
            const MatrixXd perm =
                mode_permutation(k, std::vector<int>{star}, std::vector<int>{index_in(plist, vertex)});
            local = permutation_symplectic(perm) * local;
            total = embed_mode_transform(n, plist, local) * total;
        };
        side(mode_a);
        side(mode_b);
    } else {
        // same-provider pair: couple two unit modes of that provider's block
        const std::vector<int> plist = g.provider(g.part[mode_a]);
        const int k = static_cast<int>(plist.size());
        if (k < 2) throw std::invalid_argument("constructive_route: provider too small");
        const WilliamsonResult wil = williamson(reduce(cov, plist));
        std::vector<int> units;
        for (int i = 0; i < k; ++i)
            if (std::abs(wil.nu[i] - 1.0) <= kSpectralTol) units.push_back(i);
        if (units.size() < 2)
            throw std::runtime_error("constructive_route: fewer than two unit spectrum values");
        if (units.size() > 2) out.ambiguous = true;
        const BlochMessiahResult bm = bloch_messiah(wil.S);
        MatrixXd local = bm.O1.transpose();
        MatrixXd pair_adj(2, 2);
        pair_adj << 0.0, 1.0, 1.0, 0.0;
        const MatrixXd coupler =
            embed_mode_transform(k, {units[0], units[1]}, cluster_symplectic(pair_adj));
        local = coupler * local;
        const MatrixXd perm = mode_permutation(
            k, {units[0], units[1]}, {index_in(plist, mode_a), index_in(plist, mode_b)});
        local = permutation_symplectic(perm) * local;
        total = embed_mode_transform(n, plist, local) * total;
    }

    const MatrixXd routed_cov = total * cov * total.transpose();
    const MatrixXd block = reduce(routed_cov, {mode_a, mode_b});
    const PhaseFix fix = fix_pair_phases(block);
    total = embed_mode_transform(n, {mode_a, mode_b}, rot4(fix.alpha_a, fix.alpha_b)) * total;
    out.routed = fix.block;
    out.transform = total;
    out.residual = (fix.block - two_mode_squeezed_target(s)).cwiseAbs().maxCoeff();
    return out;
}

HistogramResult spectral_histogram(const TopologySpec& spec, int graph_count, double s, int bins) {
    if (graph_count < 1) throw std::invalid_argument("spectral_histogram: need at least one graph");
    if (bins < 1) throw std::invalid_argument("spectral_histogram: need at least one bin");
    const Squeezing sq{s};
    const double lam = sq.lambda();
    std::vector<double> pool;
    for (int gidx = 0; gidx < graph_count; ++gidx) {
        TopologySpec sp = spec;
        sp.seed = spec.seed + static_cast<std::uint64_t>(gidx);
        const Graph gr = generate(sp);
        const MatrixXd cov = cluster_covariance(gr.adj, s);
        const VectorXd nu = symplectic_eigenvalues(reduce(cov, gr.provider(0)));
        for (int i = 0; i < nu.size(); ++i) pool.push_back(nu[i]);
    }
    HistogramResult out;
    out.total = static_cast<long>(pool.size());
    const auto [mn, mx] = std::minmax_element(pool.begin(), pool.end());
    const double lo = std::min(1.0, *mn);
    const double hi = std::max(lam, *mx) + 1e-12;
    out.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) out.edges[b] = lo + (hi - lo) * b / bins;
    out.counts.assign(bins, 0);
    long unit = 0, lam_count = 0, ge99 = 0;
    for (double v : pool) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++out.counts[b];
        if (std::abs(v - 1.0) <= kEnsembleTol) ++unit;
        if (std::abs(v - lam) <= kEnsembleTol) ++lam_count;
        if (v >= 0.99 * lam) ++ge99;
    }
    out.frac_unit = static_cast<double>(unit) / out.total;
    out.frac_lambda = static_cast<double>(lam_count) / out.total;
    out.frac_ge99 = static_cast<double>(ge99) / out.total;
    return out;
}

double square_lambda_minus(double s) { return Squeezing{s}.lambda() - Squeezing{s}.mu() / std::sqrt(5.0); }
double square_lambda_plus(double s) { return Squeezing{s}.lambda() + Squeezing{s}.mu() / std::sqrt(5.0); }
double square_mu(double s) { return (s * s - 1.0) / (std::sqrt(5.0) * s); }

MatrixXd square_covariance(double s) {
    const double a = 3.0 * s / 5.0 + 2.0 / (5.0 * s);
    const double b = (s * s - 1.0) / (5.0 * s);
    const double c = 2.0 * (s * s - 1.0) / (5.0 * s);
    const double d = 2.0 * s / 5.0 + 3.0 / (5.0 * s);
    MatrixXd g(8, 8);
    g << a, 0, 0, b, 0, -c, b, 0,
         0, a, b, 0, -c, 0, 0, b,
         0, b, d, 0, b, 0, 0, c,
         b, 0, 0, d, 0, b, c, 0,
         0, -c, b, 0, a, 0, 0, b,
         -c, 0, 0, b, 0, a, b, 0,
         b, 0, 0, c, 0, b, d, 0,
         0, b, c, 0, b, 0, 0, d;
    return g;
}

namespace {

Eigen::MatrixXcd bs_matrix(const std::array<double, 4>& p) {
    const std::complex<double> im(0.0, 1.0);
    const double th = p[0], p1 = p[1], p2 = p[2], p3 = p[3];
    Eigen::MatrixXcd u(2, 2);
    u(0, 0) = std::exp(im * p2) * std::cos(th);
    u(0, 1) = -std::exp(im * (p1 + p2)) * std::sin(th);
    u(1, 0) = std::exp(im * p3) * std::sin(th);
    u(1, 1) = std::exp(im * (p1 + p3)) * std::cos(th);
    return u;
}

MatrixXd interleaved_symplectic(const Eigen::MatrixXcd& u) {
    MatrixXd s(4, 4);
    s.topLeftCorner(2, 2) = u.real();
    s.topRightCorner(2, 2) = -u.imag();
    s.bottomLeftCorner(2, 2) = u.imag();
    s.bottomRightCorner(2, 2) = u.real();
    return s;
}

}  // namespace

MatrixXd square_oracle(double s, const std::array<double, 4>& bs_a, const std::array<double, 4>& bs_b) {
    MatrixXd sp = MatrixXd::Zero(8, 8);
    sp.topLeftCorner(4, 4) = interleaved_symplectic(bs_matrix(bs_a));
    sp.bottomRightCorner(4, 4) = interleaved_symplectic(bs_matrix(bs_b));
    const MatrixXd g = square_covariance(s);
    return sp * g * sp.transpose();
}

MatrixXd square_kept_block(const MatrixXd& g8, int i, int j) {
    if (g8.rows() != 8 || g8.cols() != 8) throw std::invalid_argument("square_kept_block: 8x8 expected");
    if (i < 0 || i > 1 || j < 0 || j > 1) throw std::invalid_argument("square_kept_block: mode index");
    const std::array<int, 4> idx{i, 4 + j, i + 2, 6 + j};
    MatrixXd out(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = g8(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    return out;
}

MatrixXd square_routed_target(double s) {
    const double lm = square_lambda_minus(s);
    const double lp = square_lambda_plus(s);
    const double m = square_mu(s);
    MatrixXd t(4, 4);
    t << lm, 0, 0, m,
         0, lm, m, 0,
         0, m, lp, 0,
         m, 0, 0, lp;
    return t;
}

std::array<double, 4> square_hand_solution_a() {
    return {0.25 * M_PI, 0.0, 0.5 * (M_PI + std::atan(2.0)), 0.0};
}

std::array<double, 4> square_hand_solution_b() {
    return {0.25 * M_PI, 0.0, 0.5 * (M_PI + std::atan(2.0)) + M_PI, 0.0};
}

double square_theta_condition(double phi1) { return 0.5 * std::atan2(2.0, -std::sin(phi1)); }

std::pair<double, double> square_residuals(double s, double phi1, double phi2) {
    const Squeezing sq{s};
    const double lam = sq.lambda();
    const double a = 3.0 * s / 5.0 + 2.0 / (5.0 * s);
    const double b = (s * s - 1.0) / (5.0 * s);
    const double d = 2.0 * s / 5.0 + 3.0 / (5.0 * s);
    MatrixXd ga(4, 4);
    ga << a, 0, 0, b,
          0, a, b, 0,
          0, b, d, 0,
          b, 0, 0, d;
    const double th = square_theta_condition(phi1);
    const double ct = std::cos(th), st = std::sin(th);
    Eigen::Vector4d vx, vp;
    vx << ct * std::cos(phi2), -st * std::cos(phi1 + phi2),
          -ct * std::sin(phi2), st * std::sin(phi1 + phi2);
    vp << ct * std::sin(phi2), -st * std::sin(phi1 + phi2),
          ct * std::cos(phi2), -st * std::cos(phi1 + phi2);
    const double r1 = vx.dot(ga * vx) - lam;
    const double r2 = vx.dot(ga * vp);
    return {r1, r2};
}

ScanResult square_scan(double s, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("square_scan: need at least two grid points");
    ScanResult best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (int i = 0; i < grid_points; ++i) {
        const double p1 = 2.0 * M_PI * i / (grid_points - 1);
        for (int j = 0; j < grid_points; ++j) {
            const double p2 = 2.0 * M_PI * j / (grid_points - 1);
            const auto [r1, r2] = square_residuals(s, p1, p2);
            const double m = std::max(std::abs(r1), std::abs(r2));
            if (m < best.min_of_max) best = {m, p1, p2};
        }
    }
    return best;
}

}  // namespace cvr
