#include "dbp/series.hpp"

#include <doctest.h>

#include <random>

using namespace dbp;

namespace {

Series random_series(std::mt19937_64& gen, int order, bool unit_constant = false) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    Series s(order);
    for (int n = 0; n <= order; ++n) s.set(n, Rational(num(gen), den(gen)));
    if (unit_constant) s.set(0, 1);
    return s;
}

// Direct convolution, independent of Series::operator*.
Series naive_product(const Series& a, const Series& b) {
    int K = std::min(a.order(), b.order());
    Series c(K);
    for (int n = 0; n <= K; ++n) {
        Rational acc = 0;
        for (int k = 0; k <= n; ++k) acc += a[k] * b[n - k];
        c.set(n, acc);
    }
    return c;
}

} // namespace

TEST_SUITE("series") {

TEST_CASE("construction and accessors") {
    Series s(3);
    CHECK(s.order() == 3);
    for (int n = 0; n <= 3; ++n) CHECK(s[n] == 0);
    s.set(2, Rational(5, 3));
    CHECK(s[2] == Rational(5, 3));
    CHECK(Series::variable(4)[1] == 1);
    CHECK(Series::constant(Rational(7), 2)[0] == 7);
    CHECK_THROWS_AS(Series(-1), std::invalid_argument);
}

TEST_CASE("multiplication matches direct convolution") {
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 20; ++rep) {
        Series a = random_series(gen, 8), b = random_series(gen, 8);
        CHECK(a * b == naive_product(a, b));
    }
}

TEST_CASE("ring identities on random series") {
    std::mt19937_64 gen(22);
    for (int rep = 0; rep < 10; ++rep) {
        Series a = random_series(gen, 6), b = random_series(gen, 6), c = random_series(gen, 6);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Series(6));
        CHECK(-(-a) == a);
    }
}

TEST_CASE("mixed orders truncate to the smaller, equality sees order") {
    Series a(5), b(3);
    a.set(1, 1);
    b.set(1, 1);
    CHECK((a + b).order() == 3);
    CHECK((a * b).order() == 3);
    CHECK(a != b);              // same coefficients, different order
    CHECK(a.truncated(3) == b);
    CHECK_THROWS_AS(a.truncated(6), std::invalid_argument);
}

TEST_CASE("log of 1+z") {
    Series a(6);
    a.set(0, 1);
    a.set(1, 1);
    Series l = log(a);
    for (int n = 1; n <= 6; ++n)
        CHECK(l[n] == Rational(n % 2 == 0 ? -1 : 1, n));
}

TEST_CASE("log turns products into sums") {
    std::mt19937_64 gen(33);
    for (int rep = 0; rep < 10; ++rep) {
        Series a = random_series(gen, 7, true), b = random_series(gen, 7, true);
        CHECK(log(a * b) == log(a) + log(b));
    }
}

TEST_CASE("sqrt round trip and known expansion") {
    Series a(4);
    a.set(0, 1);
    a.set(1, 4);
    Series r = sqrt(a); // sqrt(1+4z) = 1 + 2z - 2z^2 + 4z^3 - 10z^4
    CHECK(r[0] == 1);
    CHECK(r[1] == 2);
    CHECK(r[2] == -2);
    CHECK(r[3] == 4);
    CHECK(r[4] == -10);
    std::mt19937_64 gen(44);
    for (int rep = 0; rep < 10; ++rep) {
        Series s = random_series(gen, 6, true);
        Series root = sqrt(s);
        CHECK(root * root == s);
    }
}

TEST_CASE("log and sqrt demand a unit constant term") {
    Series a(3);
    a.set(0, 2);
    CHECK_THROWS_AS(log(a), std::invalid_argument);
    CHECK_THROWS_AS(sqrt(a), std::invalid_argument);
}

TEST_CASE("zddz scales the n-th coefficient by n") {
    std::mt19937_64 gen(55);
    Series a = random_series(gen, 5);
    Series d = zddz(a);
    for (int n = 0; n <= 5; ++n) CHECK(d[n] == Rational(n) * a[n]);
}

} // TEST_SUITE
