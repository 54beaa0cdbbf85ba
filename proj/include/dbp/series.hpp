#ifndef DBP_SERIES_HPP
#define DBP_SERIES_HPP

#include "dbp/rational.hpp"

#include <vector>

namespace dbp {

// Truncated power series in the activity z with exact rational coefficients,
// representing sum c_n z^n mod z^{K+1}. The truncation order is part of the
// value: mixed-order arithmetic truncates to the smaller order, and equality
// compares orders as well as coefficients.
class Series {
public:
    explicit Series(int order) : coeffs_(static_cast<size_t>(check_order(order)) + 1) {}

    static Series constant(const Rational& c, int order) {
        Series s(order);
        s.coeffs_[0] = c;
        return s;
    }
    static Series variable(int order) {
        Series s(order);
        if (order >= 1) s.coeffs_[1] = 1;
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& operator[](int n) const { return coeffs_.at(static_cast<size_t>(n)); }
    void set(int n, const Rational& v) { coeffs_.at(static_cast<size_t>(n)) = v; }

    bool operator==(const Series&) const = default;

    Series truncated(int order) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series operator-() const;

private:
    static int check_order(int order);
    std::vector<Rational> coeffs_;
};

// ln(a); requires a[0] == 1.
Series log(const Series& a);

// b with b*b == a mod z^{K+1} and b[0] == +1; requires a[0] == 1.
Series sqrt(const Series& a);

// z d/dz: c_n -> n c_n.
Series zddz(const Series& a);

} // namespace dbp

#endif
