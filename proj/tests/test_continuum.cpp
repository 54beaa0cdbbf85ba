#include "dbp/continuum.hpp"
#include "dbp/counter_rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

using namespace dbp;

TEST_SUITE("continuum") {

TEST_CASE("rng is a pure function of its counters") {
    CHECK(counter_rng(1, 2, 3, 4) == counter_rng(1, 2, 3, 4));
    CHECK(counter_rng(1, 2, 3, 4) != counter_rng(1, 2, 3, 5));
    CHECK(counter_rng(1, 2, 3, 4) != counter_rng(2, 2, 3, 4));
    for (int i = 0; i < 100; ++i) {
        double u = counter_uniform_pm1(9, 0, static_cast<std::uint64_t>(i), 0);
        CHECK(u >= -1.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("rooted tree enumeration sizes (Cayley)") {
    CHECK(rooted_trees(1).size() == 1);
    CHECK(rooted_trees(2).size() == 1);
    CHECK(rooted_trees(3).size() == 3);
    CHECK(rooted_trees(4).size() == 16);
    CHECK(rooted_trees(5).size() == 125);
    CHECK(rooted_trees(6).size() == 1296);
    CHECK_THROWS_AS(rooted_trees(7), std::invalid_argument);
}

TEST_CASE("rooted trees are distinct well-formed parent arrays") {
    auto trees = rooted_trees(5);
    std::set<std::vector<int>> distinct(trees.begin(), trees.end());
    CHECK(distinct.size() == trees.size());
    for (const auto& p : trees) {
        CHECK(p[0] == -1);
        for (size_t v = 1; v < p.size(); ++v) {
            // Walking up from any vertex must reach the root.
            int u = static_cast<int>(v), steps = 0;
            while (u != 0 && steps++ < 5) u = p[static_cast<size_t>(u)];
            CHECK(u == 0);
        }
    }
}

TEST_CASE("quadrature reproduces the exact low orders") {
    for (Shape s : {Shape::diamond, Shape::ball}) {
        CHECK(coefficient_quadrature(s, 1, 1e-3).value == doctest::Approx(1.0).epsilon(1e-9));
        auto q2 = coefficient_quadrature(s, 2, 1e-3);
        CHECK(std::fabs(q2.value - 2.0) <= 1e-3 + q2.error_bound);
        auto q3 = coefficient_quadrature(s, 3, 1e-3);
        CHECK(std::fabs(q3.value - 4.5) <= 1e-3 + q3.error_bound);
    }
    CHECK_THROWS_AS(coefficient_quadrature(Shape::ball, 4, 1e-3), std::invalid_argument);
}

TEST_CASE("monte carlo is deterministic and schedule independent") {
    McResult a = coefficient_mc(Shape::diamond, 3, 200000, 42);
    McResult b = coefficient_mc(Shape::diamond, 3, 200000, 42);
    McResult c = coefficient_mc(Shape::diamond, 3, 200000, 42, /*parallel=*/false);
    CHECK(a.estimate == b.estimate);
    CHECK(a.estimate == c.estimate);
    CHECK(a.stderror == c.stderror);
    McResult d = coefficient_mc(Shape::diamond, 3, 200000, 43);
    CHECK(a.estimate != d.estimate);
}

TEST_CASE("monte carlo agrees with known coefficients") {
    for (Shape s : {Shape::diamond, Shape::ball}) {
        McResult r2 = coefficient_mc(s, 2, 200000, 7);
        CHECK(std::fabs(r2.estimate - 2.0) <= 5 * r2.stderror);
        McResult r3 = coefficient_mc(s, 3, 200000, 7);
        CHECK(std::fabs(r3.estimate - 4.5) <= 5 * r3.stderror);
    }
}

TEST_CASE("shape names") {
    CHECK(shape_from_name("diamond") == Shape::diamond);
    CHECK(shape_from_name("ball") == Shape::ball);
    CHECK_THROWS_AS(shape_from_name("cube"), std::invalid_argument);
}

} // TEST_SUITE
