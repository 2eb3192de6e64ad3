#include "doctest.h"

#include <cmath>

#include "bf/sampling.hpp"
#include "oracles.hpp"

using namespace bf;

TEST_CASE("is_separated examples") {
    CHECK(is_separated(make_separated_set(1, {{0.0}, {0.5}, {1.2}}), 0.5));
    CHECK_FALSE(is_separated(make_separated_set(1, {{0.0}, {0.1}, {1.0}}), 0.5));
    CHECK(is_separated(make_separated_set(1, {{0.0}}), 7.0));  // vacuous
    CHECK(is_separated(make_separated_set(1, {}), 1.0));
    CHECK_THROWS_AS(is_separated(make_separated_set(1, {{0.0}}), 0.0),
                    std::invalid_argument);
}

TEST_CASE("jittered_lattice: zero jitter is the lattice") {
    SeparatedSet E = jittered_lattice(1, 1.0, 0.0, 3.0, true, 42);
    REQUIRE(E.points.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(E.points[i][0] == double(i - 3));
    CHECK(E.separation == doctest::Approx(1.0));
}

TEST_CASE("jittered_lattice keeps the separation guarantee") {
    for (std::uint64_t seed : {1ULL, 2ULL, 9ULL}) {
        SeparatedSet E = jittered_lattice(1, 1.0, 0.2, 32.0, true, seed);
        CHECK(is_separated(E, 0.6));  // r >= delta - 2 eta
        SeparatedSet F = jittered_lattice(1, 1.0, 0.2, 32.0, false, seed);
        CHECK(is_separated(F, 0.6));
    }
    SeparatedSet E2 = jittered_lattice(2, 1.0, 0.25, 4.0, true, 5);
    CHECK(is_separated(E2, 0.5));
}

TEST_CASE("jittered_lattice symmetric output is exactly mirrored") {
    SeparatedSet E = jittered_lattice(2, 1.0, 0.25, 2.0, true, 11);
    CHECK(E.points.size() == 13);  // ||k|| <= 2 in Z^2
    CHECK(is_symmetric(E));
    SeparatedSet F = jittered_lattice(1, 1.0, 0.3, 8.0, true, 11);
    CHECK(is_symmetric(F));
}

TEST_CASE("jittered_lattice rejects eta >= delta/2") {
    CHECK_THROWS_WITH_AS(jittered_lattice(1, 1.0, 0.6, 3.0, true, 1),
                         doctest::Contains("jitter must be < delta/2"),
                         std::invalid_argument);
    CHECK_THROWS_AS(jittered_lattice(1, 1.0, 0.5, 3.0, true, 1),
                    std::invalid_argument);
}

TEST_CASE("jittered_lattice is deterministic and scales with eta") {
    SeparatedSet a = jittered_lattice(1, 1.0, 0.2, 8.0, true, 123);
    SeparatedSet b = jittered_lattice(1, 1.0, 0.2, 8.0, true, 123);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i)
        CHECK(a.points[i][0] == b.points[i][0]);

    SeparatedSet c = jittered_lattice(1, 1.0, 0.1, 8.0, true, 123);
    REQUIRE(c.points.size() == a.points.size());
    // common random numbers: displacement at eta=0.2 is twice eta=0.1
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        double lat = std::round(a.points[i][0]);
        CHECK(a.points[i][0] - lat ==
              doctest::Approx(2.0 * (c.points[i][0] - lat)).epsilon(1e-14));
    }
}

TEST_CASE("covering_radius lattice and singleton") {
    std::vector<std::vector<double>> pts;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) pts.push_back({double(i), double(j)});
    SeparatedSet E = make_separated_set(2, pts);
    Region reg{{-1.5, -1.5}, {1.5, 1.5}};
    double r = covering_radius(E, reg);
    CHECK(std::abs(r - std::sqrt(2.0) / 2.0) <= 0.125 + 1e-9);

    SeparatedSet one = make_separated_set(1, {{0.0}});
    double r1 = covering_radius(one, Region{{-1.0}, {1.0}});
    CHECK(r1 == doctest::Approx(1.0));
}

TEST_CASE("covering_radius of a jittered lattice") {
    SeparatedSet E = jittered_lattice(1, 1.0, 0.2, 3.0, true, 3);
    Region reg{{-2.0}, {2.0}};
    double coarse = covering_radius(E, reg);
    double fine = covering_radius(E, reg, E.separation / 64.0);  // brute oracle
    CHECK(std::abs(coarse - fine) <= E.separation / 8.0);
    CHECK(fine >= 0.5);
    CHECK(fine <= 0.9);
}

TEST_CASE("covering_radius monotone under point insertion") {
    SeparatedSet small = make_separated_set(1, {{-1.0}, {1.0}});
    SeparatedSet big = make_separated_set(1, {{-1.0}, {0.25}, {1.0}});
    Region reg{{-1.0}, {1.0}};
    CHECK(covering_radius(big, reg, 0.01) <= covering_radius(small, reg, 0.01) + 1e-12);
}

TEST_CASE("covering_radius errors") {
    CHECK_THROWS_AS(covering_radius(make_separated_set(1, {}), Region{{-1.0}, {1.0}}),
                    std::invalid_argument);
    SeparatedSet one = make_separated_set(1, {{0.0}});
    CHECK_THROWS_AS(covering_radius(one, Region{{1.0}, {-1.0}}), std::invalid_argument);
}

TEST_CASE("is_symmetric detects asymmetry") {
    CHECK_FALSE(is_symmetric(make_separated_set(1, {{0.0}, {1.0}})));
    CHECK(is_symmetric(make_separated_set(1, {{-1.0}, {0.0}, {1.0}})));
}
