#ifndef DBP_ANALYSIS_HPP
#define DBP_ANALYSIS_HPP

#include "dbp/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dbp {

struct IdentityRow {
    int n = 0;
    Rational d;          // DBP side
    Rational gas;        // (-1)^{N+1} [z^N] rho
    bool exact = true;   // exact comparison (lattice) vs numeric (continuum)
    double gap = 0;      // |d - gas| for numeric comparisons
    bool equal = false;
};

struct IdentityReport {
    std::string pair;
    int order = 0;
    std::vector<IdentityRow> rows;
    bool pass = false;
};

// Order-by-order check of rho_HC(z) = -Z_DBP(-z) for a partner pair:
// line3:dimer, square5:hard-square, tri7:hard-hexagon,
// diamond:hard-rod, ball:hard-rod. tol applies to continuum pairs only.
IdentityReport verify_identity(const std::string& pair, int K, double tol = 1e-3,
                               bool force = false);

// (2N-1)!! 2^{N-1} / N!, the line3 closed form.
Rational closed_form_line3(int N);

struct GrowthEstimate {
    std::vector<double> ratios;      // r_N = d_N / d_{N-1}, N = 2..
    std::vector<double> accelerated; // deepest stable Aitken column
    double mu_hat = 0;
    double err = 0; // spread of the last accelerated values
};

// Growth constant by the ratio method with iterated Aitken acceleration.
GrowthEstimate estimate_growth(const std::vector<Rational>& d);

struct ThetaEstimate {
    double theta_hat = 0;
    int window_lo = 0, window_hi = 0;
    std::vector<double> theta_seq;
    std::string method; // "slope-fit" or "ratio-of-ratios"
};

// Power-law exponent in d_N ~ mu^N N^{-theta}. With mu supplied, fits the
// slope of ln(d_N mu^{-N}) against ln N over the tail window; otherwise uses
// the mu-free sequence theta_N = N(N+1)(r_{N+1}/r_N - 1), Aitken-accelerated.
ThetaEstimate estimate_theta(const std::vector<Rational>& d, std::optional<double> mu);

struct ExponentReport {
    double theta = 0;
    int dims = 0;     // D+1
    double gamma = 0; // 2 - theta
    double alpha = 0; // gamma(D+1) = alpha(D)
    double sigma = 0; // alpha - 1
};

ExponentReport exponent_table(double theta, int d_plus_1);

} // namespace dbp

#endif
