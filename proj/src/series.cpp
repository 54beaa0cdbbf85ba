#include "dbp/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbp {

int Series::check_order(int order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    return order;
}

Series Series::truncated(int order) const {
    if (order > this->order())
        throw std::invalid_argument("cannot truncate to a higher order: coefficients are unknown");
    Series r(order);
    for (int n = 0; n <= r.order(); ++n) r.coeffs_[static_cast<size_t>(n)] = coeffs_[static_cast<size_t>(n)];
    return r;
}

Series operator+(const Series& a, const Series& b) {
    Series r(std::min(a.order(), b.order()));
    for (int n = 0; n <= r.order(); ++n)
        r.coeffs_[static_cast<size_t>(n)] = a[n] + b[n];
    return r;
}

Series operator-(const Series& a, const Series& b) {
    Series r(std::min(a.order(), b.order()));
    for (int n = 0; n <= r.order(); ++n)
        r.coeffs_[static_cast<size_t>(n)] = a[n] - b[n];
    return r;
}

Series Series::operator-() const {
    Series r(order());
    for (int n = 0; n <= order(); ++n) r.coeffs_[static_cast<size_t>(n)] = -coeffs_[static_cast<size_t>(n)];
    return r;
}

Series operator*(const Series& a, const Series& b) {
    Series r(std::min(a.order(), b.order()));
    for (int n = 0; n <= r.order(); ++n) {
        Rational c = 0;
        for (int k = 0; k <= n; ++k) c += a[k] * b[n - k];
        r.coeffs_[static_cast<size_t>(n)] = c;
    }
    return r;
}

// ln(a) via the recurrence from (ln a)' = a'/a:
//   n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
Series log(const Series& a) {
    if (a[0] != 1) throw std::invalid_argument("series log requires constant term 1");
    Series l(a.order());
    for (int n = 1; n <= a.order(); ++n) {
        Rational s = Rational(n) * a[n];
        for (int k = 1; k < n; ++k) s -= Rational(k) * l[k] * a[n - k];
        l.set(n, s / n);
    }
    return l;
}

// sqrt(a) coefficient by coefficient: b_n = (a_n - sum_{k=1}^{n-1} b_k b_{n-k}) / 2
Series sqrt(const Series& a) {
    if (a[0] != 1) throw std::invalid_argument("series sqrt requires constant term 1");
    Series b(a.order());
    b.set(0, 1);
    for (int n = 1; n <= a.order(); ++n) {
        Rational s = a[n];
        for (int k = 1; k < n; ++k) s -= b[k] * b[n - k];
        b.set(n, s / 2);
    }
    return b;
}

Series zddz(const Series& a) {
    Series r(a.order());
    for (int n = 1; n <= a.order(); ++n) r.set(n, Rational(n) * a[n]);
    return r;
}

} // namespace dbp
