#include "dbp/analysis.hpp"

#include "dbp/continuum.hpp"
#include "dbp/dbp_enumerate.hpp"
#include "dbp/gas.hpp"
#include "dbp/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dbp {

namespace {

std::vector<double> aitken(const std::vector<double>& s) {
    std::vector<double> out;
    for (size_t i = 0; i + 2 < s.size(); ++i) {
        double d1 = s[i + 1] - s[i];
        double d2 = s[i + 2] - s[i + 1];
        double den = d2 - d1;
        if (std::fabs(den) < 1e-13 * std::max(1.0, std::fabs(s[i + 2])))
            out.push_back(s[i + 2]);
        else
            out.push_back(s[i + 2] - d2 * d2 / den);
    }
    return out;
}

std::vector<double> iterate_aitken(std::vector<double> s) {
    while (s.size() >= 3) {
        auto next = aitken(s);
        if (next.empty()) break;
        s = std::move(next);
    }
    return s;
}

Rational signed_gas_coeff(const Series& rho, int n) {
    return (n % 2 == 0) ? -rho[n] : rho[n];
}

} // namespace

Rational closed_form_line3(int N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return Rational(odd_double_factorial(static_cast<unsigned>(N)) *
                        boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(N - 1)),
                    factorial(static_cast<unsigned>(N)));
}

IdentityReport verify_identity(const std::string& pair, int K, double tol, bool force) {
    auto colon = pair.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("pair must be written lattice:gas, e.g. line3:dimer");
    std::string left = pair.substr(0, colon);
    std::string right = pair.substr(colon + 1);

    IdentityReport rep;
    rep.pair = pair;
    rep.order = K;

    if (left == "diamond" || left == "ball") {
        if (right != "hard-rod")
            throw std::invalid_argument("continuum shapes pair with hard-rod");
        if (K > 3) throw std::invalid_argument("continuum quadrature supports order <= 3");
        Series rho = hard_rod_density_series(K);
        Shape shape = shape_from_name(left);
        bool all = true;
        for (int n = 1; n <= K; ++n) {
            auto q = coefficient_quadrature(shape, n, tol);
            IdentityRow row;
            row.n = n;
            row.gas = signed_gas_coeff(rho, n);
            row.exact = false;
            row.gap = std::fabs(q.value - row.gas.convert_to<double>());
            row.equal = row.gap <= tol + q.error_bound;
            all = all && row.equal;
            rep.rows.push_back(row);
        }
        rep.pass = all;
        return rep;
    }

    LatticeModel lattice = LatticeModel::preset(left);
    GasModel gas = GasModel::preset(right);
    if (GasModel::partner_of(lattice).name != gas.name)
        throw std::invalid_argument(pair + " is not a partner pair");
    DbpCounts counts = enumerate_dbp(lattice, K, force);
    Series rho = density_series_tm(gas, K);
    bool all = true;
    for (int n = 1; n <= K; ++n) {
        IdentityRow row;
        row.n = n;
        row.d = counts.weighted[static_cast<size_t>(n - 1)];
        row.gas = signed_gas_coeff(rho, n);
        row.equal = row.d == row.gas;
        all = all && row.equal;
        rep.rows.push_back(row);
    }
    rep.pass = all;
    return rep;
}

GrowthEstimate estimate_growth(const std::vector<Rational>& d) {
    if (d.size() < 6) throw std::invalid_argument("growth estimation needs at least 6 terms");
    GrowthEstimate g;
    for (size_t i = 1; i < d.size(); ++i)
        g.ratios.push_back((d[i] / d[i - 1]).convert_to<double>());
    g.accelerated = iterate_aitken(g.ratios);
    g.mu_hat = g.accelerated.back();
    size_t m = g.accelerated.size();
    if (m >= 3) {
        double lo = *std::min_element(g.accelerated.end() - 3, g.accelerated.end());
        double hi = *std::max_element(g.accelerated.end() - 3, g.accelerated.end());
        g.err = hi - lo;
    }
    return g;
}

ThetaEstimate estimate_theta(const std::vector<Rational>& d, std::optional<double> mu) {
    if (d.size() < 8) throw std::invalid_argument("theta estimation needs at least 8 terms");
    ThetaEstimate t;
    int n = static_cast<int>(d.size());
    if (mu) {
        // Least-squares slope of ln(d_N mu^{-N}) against ln N over the tail.
        t.method = "slope-fit";
        t.window_lo = std::max(2, n / 2);
        t.window_hi = n;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        double lmu = std::log(*mu);
        for (int N = t.window_lo; N <= t.window_hi; ++N) {
            double x = std::log(double(N));
            double y = std::log(d[static_cast<size_t>(N - 1)].convert_to<double>()) - N * lmu;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        t.theta_hat = -slope;
        return t;
    }
    t.method = "ratio-of-ratios";
    std::vector<double> r;
    for (size_t i = 1; i < d.size(); ++i) r.push_back((d[i] / d[i - 1]).convert_to<double>());
    for (size_t k = 0; k + 1 < r.size(); ++k) {
        double N = double(k + 2);
        t.theta_seq.push_back(N * (N + 1) * (r[k + 1] / r[k] - 1));
    }
    t.window_lo = 2;
    t.window_hi = n - 1;
    t.theta_hat = iterate_aitken(t.theta_seq).back();
    return t;
}

ExponentReport exponent_table(double theta, int d_plus_1) {
    ExponentReport r;
    r.theta = theta;
    r.dims = d_plus_1;
    r.gamma = 2 - theta;
    r.alpha = r.gamma; // gamma(D+1) = alpha(D)
    r.sigma = r.alpha - 1;
    return r;
}

} // namespace dbp
