#include "dbp/gas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dbp {

namespace {

using u128 = unsigned __int128;

BigInt to_bigint(u128 v) {
    BigInt hi = static_cast<std::uint64_t>(v >> 64);
    return (hi << 64) + static_cast<std::uint64_t>(v);
}

// Local inverse of a series with unit constant term (general series division
// is deliberately not part of series-core).
Series inverse_unit(const Series& a) {
    if (a[0] != 1) throw std::invalid_argument("series inverse requires constant term 1");
    Series b(a.order());
    b.set(0, 1);
    for (int n = 1; n <= a.order(); ++n) {
        Rational s = 0;
        for (int k = 1; k <= n; ++k) s += a[k] * b[n - k];
        b.set(n, -s);
    }
    return b;
}

struct RowSpace {
    int width;        // sites per row: 1 for the chain, W for the 2-d tori
    int rows;         // rows around the torus
    GasLattice kind;
    std::uint32_t mask;
    std::vector<std::uint32_t> states; // intra-row admissible patterns

    std::uint32_t rotl(std::uint32_t s) const {
        if (width == 1) return s;
        return ((s << 1) | (s >> (width - 1))) & mask;
    }
    std::uint32_t rotr(std::uint32_t s) const {
        if (width == 1) return s;
        return ((s >> 1) | ((s & 1u) << (width - 1))) & mask;
    }
    // Bits of the next row excluded by occupancy pattern s in this row.
    std::uint32_t forbid(std::uint32_t s) const {
        return kind == GasLattice::triangular_torus ? (s | rotr(s)) : s;
    }
};

RowSpace make_rowspace(const GasModel& model, int W) {
    RowSpace rs;
    rs.kind = model.lattice;
    if (model.lattice == GasLattice::chain) {
        rs.width = 1;
        rs.rows = W;
        rs.mask = 1;
        rs.states = {0, 1};
        return rs;
    }
    rs.width = W;
    rs.rows = W;
    rs.mask = (W == 32) ? 0xffffffffu : ((1u << W) - 1);
    for (std::uint32_t s = 0; s <= rs.mask; ++s)
        if ((s & rs.rotl(s)) == 0) rs.states.push_back(s);
    return rs;
}

int popcount(std::uint32_t s) { return __builtin_popcount(s); }

void check_torus_args(const GasModel& model, int W, int K, const TorusOptions& opt) {
    if (!model.on_lattice())
        throw std::invalid_argument("transfer matrix requires a lattice gas model");
    if (W < 2) throw std::invalid_argument("torus width must be >= 2");
    if (K < 0) throw std::invalid_argument("order must be >= 0");
    if (W > opt.width_budget)
        throw std::invalid_argument("torus width " + std::to_string(W) +
                                    " exceeds width budget " + std::to_string(opt.width_budget));
    // Partition coefficients are bounded by C(sites, K); keep them inside u128.
    double lg = 0;
    long sites = torus_site_count(model, W);
    for (int k = 0; k < K; ++k) lg += std::log2(double(sites - k)) - std::log2(double(k + 1));
    if (lg > 120) throw std::invalid_argument("requested order overflows the coefficient type");
}

} // namespace

GasModel GasModel::preset(std::string_view name) {
    if (name == "dimer") return {GasLattice::chain, "dimer"};
    if (name == "hard-square") return {GasLattice::square_torus, "hard-square"};
    if (name == "hard-hexagon") return {GasLattice::triangular_torus, "hard-hexagon"};
    if (name == "hard-rod") return {GasLattice::continuum_rod, "hard-rod"};
    throw std::invalid_argument("unknown gas model: " + std::string(name) +
                                " (expected dimer, hard-square, hard-hexagon or hard-rod)");
}

GasModel GasModel::partner_of(const LatticeModel& m) {
    if (m.name == "line3") return preset("dimer");
    if (m.name == "square5") return preset("hard-square");
    if (m.name == "tri7") return preset("hard-hexagon");
    throw std::invalid_argument("no gas partner registered for lattice model " + m.name);
}

Series hard_rod_density_series(int K) {
    if (K < 1) throw std::invalid_argument("order must be >= 1");
    Series rho(K);
    for (int n = 1; n <= K; ++n) {
        Rational c(BigInt(boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n))),
                   factorial(static_cast<unsigned>(n)));
        rho.set(n, (n % 2 == 0) ? -c : c);
    }
    return rho;
}

Series hard_rod_pressure_series(int K) {
    if (K < 1) throw std::invalid_argument("order must be >= 1");
    Series p(K);
    for (int n = 1; n <= K; ++n) {
        Rational c(BigInt(boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n - 1))),
                   factorial(static_cast<unsigned>(n)));
        p.set(n, (n % 2 == 0) ? -c : c);
    }
    return p;
}

Series dimer_pressure_series(int K) {
    if (K < 1) throw std::invalid_argument("order must be >= 1");
    Series a(K); // 1 + 4z
    a.set(0, 1);
    a.set(1, 4);
    Series half = Series::constant(Rational(1, 2), K);
    return log(half + half * sqrt(a));
}

long torus_site_count(const GasModel& model, int W) {
    return model.lattice == GasLattice::chain ? W : long(W) * W;
}

Series torus_partition_polynomial(const GasModel& model, int W, int K, const TorusOptions& opt) {
    check_torus_args(model, W, K, opt);
    RowSpace rs = make_rowspace(model, W);
    const int nstate = static_cast<int>(rs.states.size());
    const int len = K + 1;

    // Per-row deletion masks.
    std::vector<std::uint32_t> del(static_cast<size_t>(rs.rows), 0);
    for (auto [r, c] : opt.deleted) {
        int rr = ((r % rs.rows) + rs.rows) % rs.rows;
        int cc = ((c % rs.width) + rs.width) % rs.width;
        del[static_cast<size_t>(rr)] |= (1u << cc);
    }

    // Compatibility lists s -> {s' : s' avoids forbid(s)}.
    std::vector<std::vector<int>> compat(static_cast<size_t>(nstate));
    for (int i = 0; i < nstate; ++i) {
        std::uint32_t f = rs.forbid(rs.states[static_cast<size_t>(i)]);
        for (int j = 0; j < nstate; ++j)
            if ((rs.states[static_cast<size_t>(j)] & f) == 0) compat[static_cast<size_t>(i)].push_back(j);
    }
    std::vector<int> occ(static_cast<size_t>(nstate));
    for (int i = 0; i < nstate; ++i) occ[static_cast<size_t>(i)] = popcount(rs.states[static_cast<size_t>(i)]);

    // Start states, folded by row rotation when the torus is unbroken.
    const bool use_orbits = opt.deleted.empty() && rs.width > 1;
    std::vector<std::pair<int, long>> starts; // (state index, multiplicity)
    {
        std::vector<int> index(rs.mask + 1u, -1);
        for (int i = 0; i < nstate; ++i) index[rs.states[static_cast<size_t>(i)]] = i;
        if (use_orbits) {
            std::vector<char> seen(static_cast<size_t>(nstate), 0);
            for (int i = 0; i < nstate; ++i) {
                if (seen[static_cast<size_t>(i)]) continue;
                long size = 0;
                std::uint32_t t = rs.states[static_cast<size_t>(i)];
                for (int k = 0; k < rs.width; ++k) {
                    t = rs.rotl(t);
                    int j = index[t];
                    if (!seen[static_cast<size_t>(j)]) {
                        seen[static_cast<size_t>(j)] = 1;
                        ++size;
                    }
                }
                starts.emplace_back(i, size);
            }
        } else {
            for (int i = 0; i < nstate; ++i)
                if ((rs.states[static_cast<size_t>(i)] & del[0]) == 0) starts.emplace_back(i, 1);
        }
    }

    std::vector<u128> total(static_cast<size_t>(len), 0);

#pragma omp parallel if (opt.parallel)
    {
        std::vector<u128> ztot(static_cast<size_t>(len), 0);
        std::vector<u128> v, vn;
#pragma omp for schedule(dynamic)
        for (long si = 0; si < static_cast<long>(starts.size()); ++si) {
            auto [s0, mult] = starts[static_cast<size_t>(si)];
            v.assign(static_cast<size_t>(nstate) * len, 0);
            int k0 = occ[static_cast<size_t>(s0)];
            if (k0 <= K) v[static_cast<size_t>(s0) * len + k0] = 1;
            for (int r = 1; r < rs.rows; ++r) {
                vn.assign(static_cast<size_t>(nstate) * len, 0);
                for (int s = 0; s < nstate; ++s) {
                    const u128* src = &v[static_cast<size_t>(s) * len];
                    int lo = 0;
                    while (lo <= K && src[lo] == 0) ++lo;
                    if (lo > K) continue;
                    for (int t : compat[static_cast<size_t>(s)]) {
                        if (rs.states[static_cast<size_t>(t)] & del[static_cast<size_t>(r)]) continue;
                        int kt = occ[static_cast<size_t>(t)];
                        if (lo + kt > K) continue;
                        u128* dst = &vn[static_cast<size_t>(t) * len + kt];
                        for (int k = lo; k + kt <= K; ++k) dst[k] += src[k];
                    }
                }
                v.swap(vn);
            }
            // Close the cycle back onto s0.
            for (int s = 0; s < nstate; ++s) {
                std::uint32_t f = rs.forbid(rs.states[static_cast<size_t>(s)]);
                if (rs.states[static_cast<size_t>(s0)] & f) continue;
                const u128* src = &v[static_cast<size_t>(s) * len];
                for (int k = 0; k <= K; ++k) ztot[static_cast<size_t>(k)] += u128(mult) * src[k];
            }
        }
#pragma omp critical
        for (int k = 0; k <= K; ++k) total[static_cast<size_t>(k)] += ztot[static_cast<size_t>(k)];
    }

    Series Z(K);
    for (int k = 0; k <= K; ++k) Z.set(k, Rational(to_bigint(total[static_cast<size_t>(k)])));
    return Z;
}

Series density_series_tm(const GasModel& model, int K, const TorusOptions& opt) {
    if (K < 1) throw std::invalid_argument("order must be >= 1");
    int W = K + 2;
    Series Z = torus_partition_polynomial(model, W, K, opt);
    Series p = log(Z);
    Rational vol(torus_site_count(model, W));
    Series scaled(K);
    for (int n = 0; n <= K; ++n) scaled.set(n, p[n] / vol);
    return zddz(scaled);
}

Series density_via_occupancy(const GasModel& model, int W, int K, const TorusOptions& opt) {
    if (K < 1) throw std::invalid_argument("order must be >= 1");
    if (W < K + 2)
        throw std::invalid_argument("torus width " + std::to_string(W) +
                                    " too small for order " + std::to_string(K) +
                                    " (need W >= K+2)");
    TorusOptions full = opt;
    full.deleted.clear();
    Series Z = torus_partition_polynomial(model, W, K, full);

    // Remove the closed exclusion neighborhood of the origin.
    TorusOptions cut = opt;
    cut.deleted.clear();
    cut.deleted.emplace_back(0, 0);
    switch (model.lattice) {
    case GasLattice::chain:
        cut.deleted.emplace_back(1, 0);
        cut.deleted.emplace_back(-1, 0);
        break;
    case GasLattice::square_torus:
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
            cut.deleted.emplace_back(dy, dx);
        break;
    case GasLattice::triangular_torus:
        for (auto [dx, dy] :
             {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}})
            cut.deleted.emplace_back(dy, dx);
        break;
    case GasLattice::continuum_rod:
        throw std::invalid_argument("occupancy method requires a lattice gas model");
    }
    Series Zdel = torus_partition_polynomial(model, W, K, cut);

    Series ratio = Zdel * inverse_unit(Z);
    Series rho(K);
    for (int n = 1; n <= K; ++n) rho.set(n, ratio[n - 1]);
    return rho;
}

} // namespace dbp
