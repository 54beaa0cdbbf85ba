#include "dbp/dbp_enumerate.hpp"

#include <doctest.h>

using namespace dbp;

TEST_SUITE("enumerate") {

TEST_CASE("polymer weights by hand") {
    LatticeModel line = LatticeModel::line3();

    DirectedPolymer root_only{{{0, {0, 0}}}, {-1}};
    CHECK(polymer_weight(root_only, line) == 1);

    // Root plus one child: a single parent candidate.
    DirectedPolymer pair{{{0, {0, 0}}, {1, {1, 0}}}, {-1, 0}};
    CHECK(polymer_weight(pair, line) == 1);

    // Two first-level sites at -1 and +1 (allowed: distance 2), then a site
    // at 0 on level 2 that sees both -- weight 1/2.
    DirectedPolymer diamond{
        {{0, {0, 0}}, {1, {-1, 0}}, {1, {1, 0}}, {2, {0, 0}}}, {-1, 0, 0, 1}};
    CHECK(polymer_weight(diamond, line) == Rational(1, 2));

    // Same-level exclusion: two level-1 sites within the neighbor set.
    DirectedPolymer clash{{{0, {0, 0}}, {1, {0, 0}}, {1, {1, 0}}}, {-1, 0, 0}};
    CHECK(polymer_weight(clash, line) == 0);

    // Malformed: root with a parent, child below its parent's level.
    DirectedPolymer bad_root{{{0, {0, 0}}}, {0}};
    CHECK_THROWS_AS(polymer_weight(bad_root, line), std::invalid_argument);
    DirectedPolymer bad_level{{{0, {0, 0}}, {2, {1, 0}}}, {-1, 0}};
    CHECK_THROWS_AS(polymer_weight(bad_level, line), std::invalid_argument);
}

TEST_CASE("line3 matches the central binomial closed form") {
    DbpCounts c = enumerate_dbp(LatticeModel::line3(), 8);
    for (int N = 1; N <= 8; ++N)
        CHECK(c.weighted[static_cast<size_t>(N - 1)] ==
              Rational(binomial(2 * static_cast<unsigned>(N), static_cast<unsigned>(N)), 2));
}

TEST_CASE("hand-counted small values") {
    DbpCounts line = enumerate_dbp_serial(LatticeModel::line3(), 4);
    CHECK(line.weighted == std::vector<Rational>{1, 3, 10, 35});
    // Raw tree counts: the first multi-parent configuration appears at N = 4.
    CHECK(line.unweighted == std::vector<BigInt>{1, 3, 10, 36});

    CHECK(enumerate_dbp_serial(LatticeModel::square5(), 2).weighted ==
          std::vector<Rational>{1, 5});
    CHECK(enumerate_dbp_serial(LatticeModel::tri7(), 3).weighted ==
          std::vector<Rational>{1, 7, 58});
}

TEST_CASE("second coefficient equals the neighbor count") {
    for (const char* name : {"line3", "square5", "tri7"}) {
        LatticeModel m = LatticeModel::preset(name);
        DbpCounts c = enumerate_dbp_serial(m, 2);
        CHECK(c.weighted[1] == Rational(m.neighbors.size()));
    }
}

TEST_CASE("scan order does not change the counts") {
    for (const char* name : {"line3", "square5", "tri7"}) {
        LatticeModel m = LatticeModel::preset(name);
        DbpCounts lex = enumerate_dbp_serial(m, 5, false, ScanOrder::lex);
        DbpCounts rev = enumerate_dbp_serial(m, 5, false, ScanOrder::reverse_lex);
        CHECK(lex.weighted == rev.weighted);
        CHECK(lex.unweighted == rev.unweighted);
    }
}

TEST_CASE("parallel enumeration equals the serial reference") {
    struct Case { const char* name; int K; };
    for (Case c : {Case{"line3", 8}, Case{"square5", 6}, Case{"tri7", 5}}) {
        LatticeModel m = LatticeModel::preset(c.name);
        DbpCounts serial = enumerate_dbp_serial(m, c.K);
        DbpCounts parallel = enumerate_dbp(m, c.K);
        CHECK(serial.weighted == parallel.weighted);
        CHECK(serial.unweighted == parallel.unweighted);
    }
}

TEST_CASE("budget guard") {
    LatticeModel m = LatticeModel::tri7();
    CHECK_THROWS_AS(enumerate_dbp(m, m.default_budget() + 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_dbp_serial(m, m.default_budget() + 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_dbp(m, 0), std::invalid_argument);
}

TEST_CASE("custom model: a sparser chain still collapses to site counts") {
    // Neighbor set {-2, 0, +2}: isomorphic to line3 after rescaling, so the
    // coefficients must coincide.
    LatticeModel wide = LatticeModel::custom(1, {{-2, 0}, {0, 0}, {2, 0}}, "line3x2");
    CHECK(enumerate_dbp_serial(wide, 5).weighted ==
          enumerate_dbp_serial(LatticeModel::line3(), 5).weighted);
}

} // TEST_SUITE
