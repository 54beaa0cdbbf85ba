#include "dbp/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbp {

LatticeModel LatticeModel::line3() {
    return custom(1, {{-1, 0}, {0, 0}, {1, 0}}, "line3");
}

LatticeModel LatticeModel::square5() {
    return custom(2, {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}, "square5");
}

LatticeModel LatticeModel::tri7() {
    return custom(2, {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}, "tri7");
}

LatticeModel LatticeModel::preset(std::string_view name) {
    if (name == "line3") return line3();
    if (name == "square5") return square5();
    if (name == "tri7") return tri7();
    throw std::invalid_argument("unknown lattice model: " + std::string(name) +
                                " (expected line3, square5 or tri7)");
}

LatticeModel LatticeModel::custom(int dimension, std::vector<Offset> neighbors, std::string name) {
    if (dimension < 1 || dimension > 2)
        throw std::invalid_argument("lattice dimension must be 1 or 2");
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    LatticeModel m{std::move(name), dimension, std::move(neighbors)};
    if (!m.contains({0, 0}))
        throw std::invalid_argument("neighbor set must contain the origin");
    for (const Offset& o : m.neighbors) {
        if (dimension == 1 && o.y != 0)
            throw std::invalid_argument("1-d neighbor set must have zero second coordinate");
        if (!m.contains(-o))
            throw std::invalid_argument("neighbor set must be symmetric");
    }
    return m;
}

bool LatticeModel::contains(Offset o) const {
    return std::binary_search(neighbors.begin(), neighbors.end(), o);
}

int LatticeModel::default_budget() const {
    size_t n = neighbors.size();
    if (n >= 7) return 10;
    if (n >= 5) return 12;
    return 14;
}

} // namespace dbp
