#include "dbp/dbp_enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dbp {

namespace {

// Per-task counters. Tree counts at desk-scale orders fit comfortably in
// 64 bits; overflow is checked and reported rather than wrapped.
struct Accum {
    std::vector<unsigned long long> d; // site configurations == weighted count
    std::vector<unsigned long long> u; // embedded trees == sum of prod n_v
    bool overflow = false;

    explicit Accum(int K) : d(static_cast<size_t>(K)), u(static_cast<size_t>(K)) {}

    void record(int n, unsigned long long prod) {
        size_t i = static_cast<size_t>(n) - 1;
        if (__builtin_add_overflow(d[i], 1ULL, &d[i])) overflow = true;
        if (__builtin_add_overflow(u[i], prod, &u[i])) overflow = true;
    }

    void merge_into(DbpCounts& out) const {
        for (size_t i = 0; i < d.size(); ++i) {
            out.weighted[i] += d[i];
            out.unweighted[i] += u[i];
        }
    }
};

// Pending continuation of the canonical DFS: the completed previous level,
// the partially built current level, and the next candidate index.
struct Task {
    std::vector<Offset> prev;
    std::vector<Offset> cur;
    size_t cand_start;
    int n;
    unsigned long long prod;
};

struct Walker {
    const LatticeModel& model;
    int K;
    ScanOrder order;
    Accum acc;
    int split_depth = -1; // emit tasks instead of recursing once n reaches this
    std::vector<Task>* tasks = nullptr;

    Walker(const LatticeModel& m, int k, ScanOrder o) : model(m), K(k), order(o), acc(k) {}

    // Candidate positions for the level above `level`, in scan order, with the
    // number of in-I sites of `level` below each candidate.
    void candidates(const std::vector<Offset>& level, std::vector<Offset>& cands,
                    std::vector<int>& nv) const {
        cands.clear();
        for (const Offset& s : level)
            for (const Offset& o : model.neighbors) cands.push_back(s + o);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        if (order == ScanOrder::reverse_lex) std::reverse(cands.begin(), cands.end());
        nv.assign(cands.size(), 0);
        for (size_t i = 0; i < cands.size(); ++i)
            for (const Offset& s : level)
                if (model.contains(cands[i] - s)) ++nv[i];
    }

    bool excluded(const Offset& c, const std::vector<Offset>& cur) const {
        for (const Offset& s : cur)
            if (model.contains(c - s)) return true;
        return false;
    }

    void expand(const std::vector<Offset>& level, int n, unsigned long long prod) {
        std::vector<Offset> cands;
        std::vector<int> nv;
        candidates(level, cands, nv);
        std::vector<Offset> cur;
        subsets(level, cands, nv, 0, cur, n, prod);
    }

    void subsets(const std::vector<Offset>& prev, const std::vector<Offset>& cands,
                 const std::vector<int>& nv, size_t start, std::vector<Offset>& cur, int n,
                 unsigned long long prod) {
        for (size_t i = start; i < cands.size(); ++i) {
            if (excluded(cands[i], cur)) continue;
            unsigned long long p1;
            if (__builtin_mul_overflow(prod, static_cast<unsigned long long>(nv[i]), &p1)) {
                acc.overflow = true;
                continue;
            }
            int n1 = n + 1;
            acc.record(n1, p1);
            if (n1 >= K) continue;
            cur.push_back(cands[i]);
            if (n1 == split_depth) {
                tasks->push_back(Task{prev, cur, i + 1, n1, p1});
            } else {
                subsets(prev, cands, nv, i + 1, cur, n1, p1);
                expand(cur, n1, p1);
            }
            cur.pop_back();
        }
    }

    void resume(const Task& t) {
        std::vector<Offset> cands;
        std::vector<int> nv;
        candidates(t.prev, cands, nv);
        std::vector<Offset> cur = t.cur;
        subsets(t.prev, cands, nv, t.cand_start, cur, t.n, t.prod);
        expand(cur, t.n, t.prod);
    }
};

void check_args(const LatticeModel& model, int K, bool force) {
    if (K < 1) throw std::invalid_argument("enumeration order must be >= 1");
    if (!force && K > model.default_budget())
        throw std::invalid_argument("order " + std::to_string(K) + " exceeds enumeration budget " +
                                    std::to_string(model.default_budget()) + " for model " +
                                    model.name + "; pass --force to override");
}

DbpCounts fresh_counts(int K) {
    return DbpCounts{std::vector<Rational>(static_cast<size_t>(K)),
                     std::vector<BigInt>(static_cast<size_t>(K))};
}

} // namespace

DbpCounts enumerate_dbp_serial(const LatticeModel& model, int K, bool force, ScanOrder order) {
    check_args(model, K, force);
    Walker w(model, K, order);
    w.acc.record(1, 1); // the root alone
    if (K > 1) w.expand({{0, 0}}, 1, 1);
    if (w.acc.overflow) throw std::overflow_error("enumeration counter overflow; reduce order");
    DbpCounts out = fresh_counts(K);
    w.acc.merge_into(out);
    return out;
}

DbpCounts enumerate_dbp(const LatticeModel& model, int K, bool force) {
    check_args(model, K, force);
    const int split = 4;
    if (K <= split + 1) return enumerate_dbp_serial(model, K, force);

    // Serial prefix pass: counts up to the split depth, plus one task per
    // canonical DFS subtree below it.
    std::vector<Task> tasks;
    Walker prefix(model, K, ScanOrder::lex);
    prefix.split_depth = split;
    prefix.tasks = &tasks;
    prefix.acc.record(1, 1);
    prefix.expand({{0, 0}}, 1, 1);

    DbpCounts out = fresh_counts(K);
    prefix.acc.merge_into(out);

    std::atomic<bool> overflow{prefix.acc.overflow};
#pragma omp parallel
    {
        Walker local(model, K, ScanOrder::lex);
#pragma omp for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(tasks.size()); ++i)
            local.resume(tasks[static_cast<size_t>(i)]);
        if (local.acc.overflow) overflow = true;
#pragma omp critical
        local.acc.merge_into(out);
    }
    if (overflow) throw std::overflow_error("enumeration counter overflow; reduce order");
    return out;
}

Rational polymer_weight(const DirectedPolymer& p, const LatticeModel& model) {
    size_t n = p.sites.size();
    if (n == 0 || p.parent.size() != n)
        throw std::invalid_argument("polymer must have matching sites and parent arrays");
    if (p.sites[0].level != 0 || !(p.sites[0].pos == Offset{0, 0}) || p.parent[0] != -1)
        throw std::invalid_argument("monomer 0 must be the root at level 0, position 0");
    for (size_t i = 1; i < n; ++i) {
        int par = p.parent[i];
        if (par < 0 || static_cast<size_t>(par) >= i)
            throw std::invalid_argument("parent map must point to an earlier monomer");
        if (p.sites[i].level != p.sites[static_cast<size_t>(par)].level + 1)
            throw std::invalid_argument("each monomer must sit one level above its parent");
        if (!model.contains(p.sites[i].pos - p.sites[static_cast<size_t>(par)].pos))
            throw std::invalid_argument("link offset must lie in the neighbor set");
    }
    // Same-level exclusion.
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (p.sites[i].level == p.sites[j].level &&
                model.contains(p.sites[i].pos - p.sites[j].pos))
                return Rational(0);
    Rational w = 1;
    for (size_t i = 1; i < n; ++i) {
        int nv = 0;
        for (size_t j = 0; j < n; ++j)
            if (p.sites[j].level == p.sites[i].level - 1 &&
                model.contains(p.sites[i].pos - p.sites[j].pos))
                ++nv;
        w /= nv; // nv >= 1: the parent always counts
    }
    return w;
}

} // namespace dbp
