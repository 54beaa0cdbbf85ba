#include "dbp/forest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dbp {

namespace {

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(static_cast<size_t>(n)) {
        std::iota(up.begin(), up.end(), 0);
    }
    int find(int v) { return up[static_cast<size_t>(v)] == v ? v : up[static_cast<size_t>(v)] = find(up[static_cast<size_t>(v)]); }
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        up[static_cast<size_t>(a)] = b;
        return true;
    }
};

// Gauss-Laguerre nodes and weights (weight e^{-x} on [0, inf)), cached per
// order. Newton iteration with the stepping initial guesses from Numerical
// Recipes' gaulag.
const std::pair<std::vector<double>, std::vector<double>>& laguerre_rule(int m) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<double> x(static_cast<size_t>(m)), w(static_cast<size_t>(m));
    double z = 0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * m);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * m);
        else
            z += (z - x[static_cast<size_t>(i - 2)]) * (1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1));
        double p1 = 0, p0 = 0;
        for (int iter = 0; iter < 100; ++iter) {
            p1 = 1;
            p0 = 0;
            for (int k = 0; k < m; ++k) {
                double p2 = p0;
                p0 = p1;
                p1 = ((2 * k + 1 - z) * p0 - k * p2) / (k + 1);
            }
            double dp = m * (p1 - p0) / z; // x L_m' = m (L_m - L_{m-1})
            double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-14 * std::max(1.0, z)) break;
        }
        x[static_cast<size_t>(i)] = z;
        double dp = m * (p1 - p0) / z;
        w[static_cast<size_t>(i)] = -1.0 / (m * dp * p0);
    }
    return cache.emplace(m, std::make_pair(std::move(x), std::move(w))).first->second;
}

// Integral over one ordering cone of the derivative integrand. Each increment
// u_k carries total linear decay rate lambda_k, so substituting u_k =
// y_k / lambda_k turns the linear part of the exponent into the Laguerre
// weight exactly; the leftover factor (the Gaussian and the root prefactors)
// is entire and tensor Gauss-Laguerre converges spectrally.
double cone_integral(const TestFunction& f, const RootedForest& fr, const std::vector<int>& perm,
                     int m) {
    const int n = fr.n;
    const auto& [gx, gw] = laguerre_rule(m);
    std::vector<int> rank(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) rank[static_cast<size_t>(perm[static_cast<size_t>(k)])] = k;

    // Decay rate of the exponent along each increment direction.
    std::vector<double> lambda(static_cast<size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
        double l = 0;
        for (int i = 0; i < n; ++i)
            if (rank[static_cast<size_t>(i)] >= k) l += f.a[static_cast<size_t>(i)];
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int lo = std::min(rank[static_cast<size_t>(i)], rank[static_cast<size_t>(j)]);
                int hi = std::max(rank[static_cast<size_t>(i)], rank[static_cast<size_t>(j)]);
                if (lo < k && k <= hi) l += f.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
        lambda[static_cast<size_t>(k)] = l;
    }

    double edge_rates = 1;
    for (auto [c, p] : fr.edges) {
        int i = std::min(c, p), j = std::max(c, p);
        edge_rates *= f.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    const bool quad = f.family == TestFunction::Family::quadratic_exponential;
    const double c = quad ? f.curvature : 0.0;

    std::vector<int> idx(static_cast<size_t>(n), 0);
    std::vector<double> t(static_cast<size_t>(n));
    double total = 0;
    for (;;) {
        double jac = 1, u_acc = 0, ysum = 0;
        for (int k = 0; k < n; ++k) {
            double y = gx[static_cast<size_t>(idx[static_cast<size_t>(k)])];
            ysum += y;
            u_acc += y / lambda[static_cast<size_t>(k)];
            t[static_cast<size_t>(perm[static_cast<size_t>(k)])] = u_acc;
            jac *= gw[static_cast<size_t>(idx[static_cast<size_t>(k)])] / lambda[static_cast<size_t>(k)];
        }
        double expo = -ysum; // the Laguerre weight already carries e^{-ysum}
        for (int i = 0; i < n; ++i) expo += f.a[static_cast<size_t>(i)] * t[static_cast<size_t>(i)];
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                expo += f.b[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                        std::fabs(t[static_cast<size_t>(i)] - t[static_cast<size_t>(j)]);
        if (quad)
            for (int i = 0; i < n; ++i) expo += c * t[static_cast<size_t>(i)] * t[static_cast<size_t>(i)];
        double pref = edge_rates;
        for (int r : fr.roots) pref *= f.a[static_cast<size_t>(r)] + 2 * c * t[static_cast<size_t>(r)];
        total += jac * pref * std::exp(-expo);

        int k = n - 1;
        while (k >= 0 && ++idx[static_cast<size_t>(k)] == m) idx[static_cast<size_t>(k--)] = 0;
        if (k < 0) break;
    }
    return total;
}

} // namespace

std::vector<RootedForest> enumerate_forests(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("forest enumeration supports 1 <= n <= 6");
    std::vector<std::pair<int, int>> all_edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
    std::vector<RootedForest> out;

    for (std::uint32_t sub = 0; sub < (1u << all_edges.size()); ++sub) {
        UnionFind uf(n);
        bool acyclic = true;
        std::vector<std::pair<int, int>> edges;
        for (size_t e = 0; e < all_edges.size(); ++e)
            if (sub & (1u << e)) {
                if (!uf.join(all_edges[e].first, all_edges[e].second)) {
                    acyclic = false;
                    break;
                }
                edges.push_back(all_edges[e]);
            }
        if (!acyclic) continue;

        std::vector<std::vector<int>> comps;
        {
            std::map<int, std::vector<int>> by_rep;
            for (int v = 0; v < n; ++v) by_rep[uf.find(v)].push_back(v);
            for (auto& [rep, vs] : by_rep) comps.push_back(vs);
        }
        // One root per component, all combinations in lexicographic order.
        std::vector<size_t> choice(comps.size(), 0);
        for (;;) {
            RootedForest fr;
            fr.n = n;
            for (size_t ci = 0; ci < comps.size(); ++ci) fr.roots.push_back(comps[ci][choice[ci]]);
            std::sort(fr.roots.begin(), fr.roots.end());
            // Orient edges toward the roots.
            std::vector<std::vector<int>> adj(static_cast<size_t>(n));
            for (auto [a, b] : edges) {
                adj[static_cast<size_t>(a)].push_back(b);
                adj[static_cast<size_t>(b)].push_back(a);
            }
            std::vector<int> stack = fr.roots;
            std::vector<char> seen(static_cast<size_t>(n), 0);
            for (int r : fr.roots) seen[static_cast<size_t>(r)] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj[static_cast<size_t>(v)])
                    if (!seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        fr.edges.emplace_back(w, v);
                        stack.push_back(w);
                    }
            }
            std::sort(fr.edges.begin(), fr.edges.end());
            out.push_back(std::move(fr));

            size_t ci = comps.size();
            while (ci > 0 && ++choice[ci - 1] == comps[ci - 1].size()) choice[--ci] = 0;
            if (ci == 0) break;
        }
    }
    return out;
}

TestFunction TestFunction::random(Family family, int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> rate(0.5, 2.0);
    TestFunction f;
    f.family = family;
    f.a.resize(static_cast<size_t>(n));
    f.b.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) f.a[static_cast<size_t>(i)] = rate(gen);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            f.b[static_cast<size_t>(i)][static_cast<size_t>(j)] = f.b[static_cast<size_t>(j)][static_cast<size_t>(i)] = rate(gen);
    if (family == Family::quadratic_exponential) {
        std::uniform_real_distribution<double> curv(0.25, 1.0);
        f.curvature = curv(gen);
    }
    return f;
}

void TestFunction::validate(int n) const {
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("test function rate vectors do not match n");
    for (double ai : a)
        if (!(ai > 0)) throw std::invalid_argument("vertex rates must be positive");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !(b[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0))
                throw std::invalid_argument("pair rates must be positive");
    if (curvature < 0) throw std::invalid_argument("curvature must be nonnegative");
}

double term_integral(const TestFunction& f, const RootedForest& fr, double tol) {
    f.validate(fr.n);
    const int n = fr.n;
    // Orderings of t consistent with the forest's partial order.
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<int> rank(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) rank[static_cast<size_t>(perm[static_cast<size_t>(k)])] = k;
        bool ok = true;
        for (auto [c, p] : fr.edges)
            if (rank[static_cast<size_t>(p)] > rank[static_cast<size_t>(c)]) {
                ok = false;
                break;
            }
        if (ok) perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    double prev = 0;
    bool have_prev = false;
    for (int m = 8; m <= 128; m *= 2) {
        double val = 0;
        for (const auto& p : perms) val += cone_integral(f, fr, p, m);
        if (have_prev && std::fabs(val - prev) <= tol * std::max(1.0, std::fabs(val))) return val;
        prev = val;
        have_prev = true;
    }
    throw std::runtime_error("term integral did not converge within the quadrature budget");
}

ForestCheckReport check_formula(const TestFunction& f, int n, double tol, bool parallel) {
    if (n < 1 || n > 4) throw std::invalid_argument("check_formula supports 1 <= n <= 4");
    f.validate(n);
    auto forests = enumerate_forests(n);
    ForestCheckReport rep;
    rep.n = n;
    rep.terms.assign(forests.size(), 0);

    double nfact = 1;
    for (int k = 2; k <= n; ++k) nfact *= k;
    double per_term_tol = tol * nfact / double(forests.size());
    // Exceptions must not escape the parallel region; collect and rethrow.
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < static_cast<long>(forests.size()); ++i) {
        try {
            rep.terms[static_cast<size_t>(i)] =
                term_integral(f, forests[static_cast<size_t>(i)], per_term_tol);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    // Fixed-order reduction for reproducibility.
    for (double v : rep.terms) rep.sum += v;
    rep.residual = std::fabs(rep.sum - 1.0);
    rep.tolerance = nfact * tol;
    rep.pass = rep.residual <= rep.tolerance;
    return rep;
}

} // namespace dbp
