#ifndef DBP_DBP_ENUMERATE_HPP
#define DBP_DBP_ENUMERATE_HPP

#include "dbp/lattice.hpp"
#include "dbp/rational.hpp"

#include <vector>

namespace dbp {

struct Site {
    int level = 0;
    Offset pos;
};

// An embedded rooted tree: sites[0] is the root at level 0, position 0.
// parent[i] indexes an earlier monomer one level below; parent[0] == -1.
struct DirectedPolymer {
    std::vector<Site> sites;
    std::vector<int> parent;
};

// prod 1/n_v over non-root monomers, where n_v counts the monomers on the
// level below v within I. Returns 0 when a same-level exclusion is violated;
// throws on a structurally malformed polymer.
Rational polymer_weight(const DirectedPolymer& p, const LatticeModel& model);

// Counts for N = 1..K; weighted[N-1] = d_N, unweighted[N-1] = raw tree count.
struct DbpCounts {
    std::vector<Rational> weighted;
    std::vector<BigInt> unweighted;
};

enum class ScanOrder { lex, reverse_lex };

// Serial reference enumeration over embedded rooted trees in canonical
// generation order (level by level, positions lexicographic within a level).
DbpCounts enumerate_dbp_serial(const LatticeModel& model, int K, bool force = false,
                               ScanOrder order = ScanOrder::lex);

// OpenMP enumeration: the canonical DFS is split into prefix tasks that are
// processed independently and combined by exact addition.
DbpCounts enumerate_dbp(const LatticeModel& model, int K, bool force = false);

} // namespace dbp

#endif
