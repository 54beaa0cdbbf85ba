#ifndef DBP_FOREST_HPP
#define DBP_FOREST_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dbp {

// A forest on {0..n-1} with exactly one root per tree. Edges are stored as
// (child, parent) with the parent one step closer to its tree's root.
struct RootedForest {
    int n = 0;
    std::vector<int> roots;
    std::vector<std::pair<int, int>> edges;
};

// All (F, R) pairs; there are (n+1)^{n-1} of them. n <= 6.
std::vector<RootedForest> enumerate_forests(int n);

// Test functions f(t_1..t_n, t_{ij}) for the interpolation identity:
//   pure-exponential:      exp(-sum a_i t_i - sum b_ij t_ij)
//   quadratic-exponential: the same times exp(-c sum t_i^2)
// with t_{ij} arguments evaluated at |t_i - t_j|. All rates positive.
struct TestFunction {
    enum class Family { pure_exponential, quadratic_exponential };
    Family family = Family::pure_exponential;
    std::vector<double> a;              // size n
    std::vector<std::vector<double>> b; // symmetric n x n, diagonal ignored
    double curvature = 0;               // c >= 0, used by the quadratic family

    static TestFunction random(Family family, int n, std::uint64_t seed);
    void validate(int n) const;
};

// One term of the forest-root sum, evaluated by ordering decomposition and
// tensor Gauss-Laguerre quadrature with order doubling until successive
// refinements agree within tol.
double term_integral(const TestFunction& f, const RootedForest& fr, double tol);

struct ForestCheckReport {
    int n = 0;
    std::vector<double> terms; // aligned with enumerate_forests(n)
    double sum = 0;
    double residual = 0; // |sum - f(0)| with f(0) = 1
    double tolerance = 0;
    bool pass = false;
};

ForestCheckReport check_formula(const TestFunction& f, int n, double tol, bool parallel = true);

} // namespace dbp

#endif
