#ifndef DBP_CONTINUUM_HPP
#define DBP_CONTINUUM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dbp {

// Continuum monomer shapes in D = 1:
//   diamond: U(t,x) = step(t + |x| - 1), link surface t = 1 - |x|
//   ball:    U(t,x) = step(t^2 + x^2 - 1), link surface t = sqrt(1 - x^2)
// In both cases the link measure reduces to dx on [-1, 1] with unit weight.
enum class Shape { diamond, ball };

Shape shape_from_name(const std::string& name);

// Labeled trees on {0..N-1} rooted at 0, as parent arrays (parent[0] = -1).
std::vector<std::vector<int>> rooted_trees(int N);

struct QuadratureResult {
    double value = 0;
    double error_bound = 0;
    long cells = 0;
};

// d_N by adaptive cell subdivision over the link offsets, N <= 3.
QuadratureResult coefficient_quadrature(Shape shape, int N, double tol);

struct McResult {
    double estimate = 0;
    double stderror = 0;
    std::uint64_t samples_per_tree = 0;
    int trees = 0;
};

// d_N by stratified Monte Carlo over (tree, link offsets), N <= 6.
// Deterministic for a fixed seed regardless of thread count.
McResult coefficient_mc(Shape shape, int N, std::uint64_t samples, std::uint64_t seed,
                        bool parallel = true);

} // namespace dbp

#endif
