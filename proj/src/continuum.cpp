#include "dbp/continuum.hpp"
#include "dbp/counter_rng.hpp"
#include "dbp/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dbp {

namespace {

struct Tree {
    std::vector<int> parent;   // parent[0] = -1
    std::vector<int> order;    // root-first topological order
    std::vector<std::pair<int, int>> nontree; // pairs (i < j) not linked in the tree
};

Tree make_tree(std::vector<int> parent) {
    int n = static_cast<int>(parent.size());
    Tree t;
    t.parent = std::move(parent);
    // Root-first order: repeatedly admit vertices whose parent is admitted.
    std::vector<char> placed(static_cast<size_t>(n), 0);
    t.order.push_back(0);
    placed[0] = 1;
    while (static_cast<int>(t.order.size()) < n)
        for (int v = 1; v < n; ++v)
            if (!placed[static_cast<size_t>(v)] && placed[static_cast<size_t>(t.parent[static_cast<size_t>(v)])]) {
                placed[static_cast<size_t>(v)] = 1;
                t.order.push_back(v);
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (t.parent[static_cast<size_t>(i)] != j && t.parent[static_cast<size_t>(j)] != i)
                t.nontree.emplace_back(i, j);
    return t;
}

// Decode a Pruefer sequence over {0..n-1} into parent pointers toward root 0.
std::vector<int> pruefer_to_parents(const std::vector<int>& seq, int n) {
    std::vector<int> degree(static_cast<size_t>(n), 1);
    for (int v : seq) ++degree[static_cast<size_t>(v)];
    std::vector<std::pair<int, int>> edges;
    std::vector<char> used(static_cast<size_t>(n), 0);
    std::vector<int> deg = degree;
    for (int v : seq) {
        for (int leaf = 0; leaf < n; ++leaf)
            if (deg[static_cast<size_t>(leaf)] == 1 && !used[static_cast<size_t>(leaf)]) {
                edges.emplace_back(leaf, v);
                used[static_cast<size_t>(leaf)] = 1;
                --deg[static_cast<size_t>(v)];
                break;
            }
    }
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (!used[static_cast<size_t>(v)]) rest.push_back(v);
    edges.emplace_back(rest[0], rest[1]);
    // Orient toward 0.
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (auto [a, b] : edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    std::vector<int> parent(static_cast<size_t>(n), -1);
    std::vector<int> stack{0};
    std::vector<char> seen(static_cast<size_t>(n), 0);
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<size_t>(v)])
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                parent[static_cast<size_t>(w)] = v;
                stack.push_back(w);
            }
    }
    return parent;
}

double link_height(Shape shape, double x) {
    return shape == Shape::diamond ? 1.0 - std::fabs(x) : std::sqrt(std::max(0.0, 1.0 - x * x));
}

// The diamond's flat faces let a monomer slide along the surface of a
// non-linked one, so exact contact (|dt| + |dx| = 1) happens on sets of
// positive measure. A sharp step function miscounts those sets; the model is
// defined as the limit of smoothed steps, under which a contact factor
// averages to 1/2 (or the appropriate correlated value when several contacts
// share a link). The Monte Carlo therefore evaluates the mollified weight
// with a tiny logistic spread on each link height; the remaining bias is
// O(kMollify), far below the statistical error. The ball's strictly convex
// surface admits no positive-measure contacts, so for it (and for the sharp
// quadrature path below, used only where contacts are absent) this reduces
// to the plain indicator.
constexpr double kMollify = 1e-6;

double config_weight_soft(Shape shape, const Tree& tree, const double* xi, const double* noise) {
    int n = static_cast<int>(tree.parent.size());
    std::array<double, 8> x{}, t{};
    for (int k = 1; k < n; ++k) {
        int v = tree.order[static_cast<size_t>(k)];
        int p = tree.parent[static_cast<size_t>(v)];
        double off = xi[v - 1];
        x[static_cast<size_t>(v)] = x[static_cast<size_t>(p)] + off;
        t[static_cast<size_t>(v)] =
            t[static_cast<size_t>(p)] + link_height(shape, off) + kMollify * noise[v - 1];
    }
    double w = 1;
    for (auto [i, j] : tree.nontree) {
        double dt = t[static_cast<size_t>(i)] - t[static_cast<size_t>(j)];
        double dx = x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)];
        double arg = shape == Shape::diamond ? std::fabs(dt) + std::fabs(dx) - 1.0
                                             : dt * dt + dx * dx - 1.0;
        double s = arg / kMollify;
        if (s < -40) return 0.0;
        if (s < 40) w *= 1.0 / (1.0 + std::exp(-s));
    }
    return w;
}

// Product of U over non-tree pairs for given link offsets; 0 or 1.
int config_weight(Shape shape, const Tree& tree, const double* xi) {
    int n = static_cast<int>(tree.parent.size());
    std::array<double, 8> x{}, t{};
    for (int k = 1; k < n; ++k) {
        int v = tree.order[static_cast<size_t>(k)];
        int p = tree.parent[static_cast<size_t>(v)];
        double off = xi[v - 1];
        x[static_cast<size_t>(v)] = x[static_cast<size_t>(p)] + off;
        t[static_cast<size_t>(v)] = t[static_cast<size_t>(p)] + link_height(shape, off);
    }
    for (auto [i, j] : tree.nontree) {
        double dt = t[static_cast<size_t>(i)] - t[static_cast<size_t>(j)];
        double dx = x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)];
        bool outside = shape == Shape::diamond ? std::fabs(dt) + std::fabs(dx) >= 1.0
                                               : dt * dt + dx * dx >= 1.0;
        if (!outside) return 0;
    }
    return 1;
}

// ---- adaptive quadrature over [-1,1]^dim of the 0/1 integrand ----

struct CellIntegrator {
    Shape shape;
    const Tree* tree;
    int dim;
    int max_depth;
    double value = 0;
    double err = 0;
    long cells = 0;

    static constexpr int kMinDepth = 5;

    void run() {
        double lo[2] = {-1.0, -1.0};
        cell(lo, 2.0, 0);
    }

    void cell(const double* lo, double size, int depth) {
        ++cells;
        // Sample corners, center and a 3-point Gauss grid.
        static const double g[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
        int ones = 0, total = 0;
        double pt[2];
        auto probe = [&](double a, double b) {
            pt[0] = a;
            pt[1] = b;
            ones += config_weight(shape, *tree, pt);
            ++total;
        };
        if (dim == 1) {
            for (double f : {0.0, 1.0}) probe(lo[0] + f * size, 0);
            for (double f : g) probe(lo[0] + f * size, 0);
        } else {
            for (double fa : {0.0, 1.0})
                for (double fb : {0.0, 1.0}) probe(lo[0] + fa * size, lo[1] + fb * size);
            for (double fa : g)
                for (double fb : g) probe(lo[0] + fa * size, lo[1] + fb * size);
        }
        double vol = dim == 1 ? size : size * size;
        if (depth >= kMinDepth && (ones == 0 || ones == total)) {
            value += vol * (ones ? 1.0 : 0.0);
            return;
        }
        if (depth >= max_depth) {
            value += vol * double(ones) / double(total);
            err += vol / 2;
            return;
        }
        double h = size / 2;
        if (dim == 1) {
            for (int i = 0; i < 2; ++i) {
                double nlo[2] = {lo[0] + i * h, 0};
                cell(nlo, h, depth + 1);
            }
        } else {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    double nlo[2] = {lo[0] + i * h, lo[1] + j * h};
                    cell(nlo, h, depth + 1);
                }
        }
    }
};

} // namespace

Shape shape_from_name(const std::string& name) {
    if (name == "diamond") return Shape::diamond;
    if (name == "ball") return Shape::ball;
    throw std::invalid_argument("unknown shape: " + name + " (expected diamond or ball)");
}

std::vector<std::vector<int>> rooted_trees(int N) {
    if (N < 1 || N > 6) throw std::invalid_argument("tree enumeration supports 1 <= N <= 6");
    if (N == 1) return {{-1}};
    if (N == 2) return {{-1, 0}};
    std::vector<std::vector<int>> out;
    std::vector<int> seq(static_cast<size_t>(N - 2), 0);
    for (;;) {
        out.push_back(pruefer_to_parents(seq, N));
        int i = N - 3;
        while (i >= 0 && seq[static_cast<size_t>(i)] == N - 1) seq[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++seq[static_cast<size_t>(i)];
    }
    return out;
}

QuadratureResult coefficient_quadrature(Shape shape, int N, double tol) {
    if (N < 1 || N > 3) throw std::invalid_argument("quadrature supports 1 <= N <= 3");
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (N == 1) return {1.0, 0.0, 0};

    auto parents = rooted_trees(N);
    std::vector<Tree> trees;
    for (auto& p : parents) trees.push_back(make_tree(std::move(p)));
    double fact = N == 3 ? 2.0 : 1.0; // (N-1)!

    for (int max_depth = 8; max_depth <= 22; max_depth += 2) {
        QuadratureResult r;
        for (const Tree& t : trees) {
            CellIntegrator ci{shape, &t, N - 1, max_depth};
            ci.run();
            r.value += ci.value / fact;
            r.error_bound += ci.err / fact;
            r.cells += ci.cells;
        }
        if (r.error_bound <= tol) return r;
    }
    throw std::runtime_error("quadrature tolerance not reached within subdivision budget");
}

McResult coefficient_mc(Shape shape, int N, std::uint64_t samples, std::uint64_t seed,
                        bool parallel) {
    if (N < 2 || N > 6) throw std::invalid_argument("Monte Carlo supports 2 <= N <= 6");
    if (samples == 0) throw std::invalid_argument("sample count must be positive");

    auto parents = rooted_trees(N);
    std::vector<Tree> trees;
    for (auto& p : parents) trees.push_back(make_tree(std::move(p)));
    const int ntree = static_cast<int>(trees.size());

    constexpr std::uint64_t kBlock = 1 << 16;
    std::uint64_t nblocks = (samples + kBlock - 1) / kBlock;
    long ntask = static_cast<long>(nblocks) * ntree;
    std::vector<double> wsum(static_cast<size_t>(ntask), 0);
    std::vector<double> wsq(static_cast<size_t>(ntask), 0);

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long task = 0; task < ntask; ++task) {
        int ti = static_cast<int>(task % ntree);
        std::uint64_t b = static_cast<std::uint64_t>(task) / static_cast<std::uint64_t>(ntree);
        std::uint64_t beg = b * kBlock, end = std::min(samples, beg + kBlock);
        const Tree& t = trees[static_cast<size_t>(ti)];
        double acc = 0, acc2 = 0;
        double xi[5], noise[5];
        for (std::uint64_t s = beg; s < end; ++s) {
            for (int k = 0; k < N - 1; ++k) {
                xi[k] = counter_uniform_pm1(seed, static_cast<std::uint64_t>(ti), s,
                                            static_cast<std::uint64_t>(k));
                // Logistic spread for the mollified links (slots 8+).
                double v = 0.5 + 0.5 * counter_uniform_pm1(seed, static_cast<std::uint64_t>(ti),
                                                           s, static_cast<std::uint64_t>(8 + k));
                v = std::min(std::max(v, 1e-12), 1.0 - 1e-12);
                noise[k] = std::log(v / (1.0 - v));
            }
            double w = config_weight_soft(shape, t, xi, noise);
            acc += w;
            acc2 += w * w;
        }
        wsum[static_cast<size_t>(task)] = acc;
        wsq[static_cast<size_t>(task)] = acc2;
    }

    // Fixed-order per-tree reduction keeps the result schedule-independent.
    std::vector<double> tree_sum(static_cast<size_t>(ntree), 0);
    std::vector<double> tree_sq(static_cast<size_t>(ntree), 0);
    for (long task = 0; task < ntask; ++task) {
        tree_sum[static_cast<size_t>(task % ntree)] += wsum[static_cast<size_t>(task)];
        tree_sq[static_cast<size_t>(task % ntree)] += wsq[static_cast<size_t>(task)];
    }

    double fact = 1;
    for (int k = 2; k < N; ++k) fact *= k;
    double cube = std::pow(2.0, N - 1);
    McResult r;
    r.samples_per_tree = samples;
    r.trees = ntree;
    double var = 0;
    for (int ti = 0; ti < ntree; ++ti) {
        double mean = tree_sum[static_cast<size_t>(ti)] / double(samples);
        double m2 = tree_sq[static_cast<size_t>(ti)] / double(samples);
        r.estimate += cube * mean / fact;
        var += std::max(0.0, m2 - mean * mean) / double(samples);
    }
    r.stderror = cube / fact * std::sqrt(var);
    return r;
}

} // namespace dbp
