#ifndef DBP_LATTICE_HPP
#define DBP_LATTICE_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace dbp {

// Integer spatial offset, D <= 2. The triangular lattice uses oblique
// coordinates (basis vectors at 60 degrees), so everything stays integral.
struct Offset {
    int x = 0;
    int y = 0;
    auto operator<=>(const Offset&) const = default;
    Offset operator-() const { return {-x, -y}; }
    Offset operator+(Offset o) const { return {x + o.x, y + o.y}; }
    Offset operator-(Offset o) const { return {x - o.x, y - o.y}; }
};

// A DBP lattice model: spatial dimension D and the neighbor set I. I must be
// symmetric and contain the origin. The associated D-dimensional gas excludes
// pairs whose separation lies in I \ {0}.
struct LatticeModel {
    std::string name;
    int dimension = 1;
    std::vector<Offset> neighbors; // sorted, deduped

    static LatticeModel line3();   // chain, I = {-1, 0, +1}
    static LatticeModel square5(); // square lattice, I = {0, +-e1, +-e2}
    static LatticeModel tri7();    // triangular lattice in oblique coordinates
    static LatticeModel preset(std::string_view name);
    static LatticeModel custom(int dimension, std::vector<Offset> neighbors,
                               std::string name = "custom");

    bool contains(Offset o) const;

    // Default enumeration budget (maximum order K without --force).
    int default_budget() const;
};

} // namespace dbp

#endif
