#include "dbp/lattice.hpp"

#include <doctest.h>

#include <algorithm>

using namespace dbp;

namespace {

bool is_symmetric(const LatticeModel& m) {
    return std::all_of(m.neighbors.begin(), m.neighbors.end(),
                       [&](Offset o) { return m.contains(-o); });
}

} // namespace

TEST_SUITE("lattice") {

TEST_CASE("presets have the advertised sizes") {
    CHECK(LatticeModel::line3().neighbors.size() == 3);
    CHECK(LatticeModel::square5().neighbors.size() == 5);
    CHECK(LatticeModel::tri7().neighbors.size() == 7);
    CHECK(LatticeModel::line3().dimension == 1);
    CHECK(LatticeModel::square5().dimension == 2);
    CHECK(LatticeModel::tri7().dimension == 2);
}

TEST_CASE("presets are symmetric and contain the origin") {
    for (const char* name : {"line3", "square5", "tri7"}) {
        LatticeModel m = LatticeModel::preset(name);
        CHECK(m.contains({0, 0}));
        CHECK(is_symmetric(m));
        CHECK(std::is_sorted(m.neighbors.begin(), m.neighbors.end()));
    }
}

TEST_CASE("tri7 pairs opposite oblique directions") {
    LatticeModel m = LatticeModel::tri7();
    CHECK(m.contains({1, 0}));
    CHECK(m.contains({0, 1}));
    CHECK(m.contains({1, -1}));
    CHECK(m.contains({-1, 1}));
    CHECK_FALSE(m.contains({1, 1}));
}

TEST_CASE("preset rejects unknown names") {
    CHECK_THROWS_AS(LatticeModel::preset("hex"), std::invalid_argument);
}

TEST_CASE("custom validates its input") {
    CHECK_NOTHROW(LatticeModel::custom(1, {{-2, 0}, {0, 0}, {2, 0}}));
    // Missing origin.
    CHECK_THROWS_AS(LatticeModel::custom(1, {{-1, 0}, {1, 0}}), std::invalid_argument);
    // Not symmetric.
    CHECK_THROWS_AS(LatticeModel::custom(1, {{0, 0}, {1, 0}}), std::invalid_argument);
    // 1-d model with a transverse component.
    CHECK_THROWS_AS(LatticeModel::custom(1, {{0, -1}, {0, 0}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(LatticeModel::custom(3, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("offset arithmetic") {
    Offset a{2, -1}, b{-1, 3};
    CHECK(a + b == Offset{1, 2});
    CHECK(a - b == Offset{3, -4});
    CHECK(-a == Offset{-2, 1});
    CHECK(a < Offset{3, 0});
}

TEST_CASE("budgets shrink as the neighbor set grows") {
    CHECK(LatticeModel::line3().default_budget() >= 10);
    CHECK(LatticeModel::square5().default_budget() >= LatticeModel::tri7().default_budget());
    CHECK(LatticeModel::tri7().default_budget() >= 7);
}

} // TEST_SUITE
