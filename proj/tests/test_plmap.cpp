#include "solenoidlab/plmap.hpp"

#include "solenoidlab/errors.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace slab;

TEST_CASE("eval basics") {
    PLMap tent = PLMap::tent();
    CHECK(tent.eval(Rational(1, 2)) == Rational(1));
    CHECK(tent.eval(Rational(1, 3)) == Rational(2, 3));
    CHECK(tent.eval(Rational(0)) == Rational(0));
    CHECK(tent.eval(Rational(1)) == Rational(0));
    PLMap id = PLMap::identity();
    CHECK(id.eval(Rational(17, 23)) == Rational(17, 23));
    CHECK_THROWS_AS(tent.eval(Rational(3, 2)), precondition_error);
}

TEST_CASE("validation rejects malformed maps") {
    CHECK_THROWS_AS(PLMap({Rational(0)}, {Rational(0)}), malformed_input_error);
    CHECK_THROWS_AS(PLMap({Rational(0), Rational(1, 2)}, {Rational(0), Rational(1)}),
                    malformed_input_error);
    CHECK_THROWS_AS(PLMap({Rational(0), Rational(0), Rational(1)},
                          {Rational(0), Rational(1), Rational(0)}),
                    malformed_input_error);
    CHECK_THROWS_AS(PLMap({Rational(0), Rational(1)}, {Rational(0), Rational(2)}),
                    malformed_input_error);
}

TEST_CASE("power materializes exact iterates") {
    PLMap tent = PLMap::tent();
    PLMap t2 = tent.power(2);
    std::vector<Rational> expect_bp{Rational(0), Rational(1, 4), Rational(1, 2),
                                    Rational(3, 4), Rational(1)};
    std::vector<Rational> expect_val{Rational(0), Rational(1), Rational(0), Rational(1),
                                     Rational(0)};
    CHECK(t2.breakpoints() == expect_bp);
    CHECK(t2.values() == expect_val);

    CHECK(tent.power(1) == tent);
    CHECK(PLMap::identity().power(5) == PLMap::identity());
}

TEST_CASE("power agrees with composed eval on random probes") {
    std::mt19937_64 rng(23);
    std::vector<PLMap> maps{PLMap::tent(), testgen::trident(), testgen::random_plmap(rng)};
    for (const auto& f : maps) {
        for (unsigned K : {2u, 3u}) {
            PLMap fk = f.power(K);
            for (int i = 0; i < 350; ++i) {
                Rational x = testgen::random_unit_rational(rng, 997);
                CHECK(fk.eval(x) == f.iterate(x, K));
            }
        }
    }
}

TEST_CASE("power respects the piece cap") {
    CHECK_THROWS_AS(testgen::trident().power(8, 100), resource_error);
}

TEST_CASE("image_interval frozen examples and grid oracle") {
    PLMap tent = PLMap::tent();
    CHECK(tent.image_interval(Interval(Rational(0), Rational(1, 2))) ==
          Interval(Rational(0), Rational(1)));
    CHECK(tent.image_interval(Interval(Rational(1, 4), Rational(3, 8))) ==
          Interval(Rational(1, 2), Rational(3, 4)));
    PLMap c = PLMap::constant(Rational(2, 7));
    CHECK(c.image_interval(Interval(Rational(1, 8), Rational(7, 8))) ==
          Interval(Rational(2, 7), Rational(2, 7)));

    // grid hull bounds the exact image from inside
    std::mt19937_64 rng(5);
    PLMap f = testgen::random_plmap(rng, 5);
    Interval dom(Rational(1, 10), Rational(9, 10));
    Interval img = f.image_interval(dom);
    Rational lo = f.eval(dom.lo), hi = lo;
    const long grid = 10000;
    for (long i = 0; i <= grid; ++i) {
        Rational x = dom.lo + (dom.hi - dom.lo) * Rational(i, grid);
        Rational y = f.eval(x);
        lo = Rational::min(lo, y);
        hi = Rational::max(hi, y);
    }
    CHECK(img.lo <= lo);
    CHECK(img.hi >= hi);
}

TEST_CASE("sup_distance frozen examples") {
    PLMap tent = PLMap::tent();
    CHECK(PLMap::sup_distance(tent, tent) == Rational(0));
    CHECK(PLMap::sup_distance(tent, PLMap::identity()) == Rational(1));
    CHECK(PLMap::sup_distance(PLMap::constant(Rational(0)), PLMap::constant(Rational(1, 4))) ==
          Rational(1, 4));
}

TEST_CASE("sup_distance dominates pointwise distances") {
    std::mt19937_64 rng(31);
    PLMap f = testgen::random_plmap(rng, 4);
    PLMap g = testgen::random_plmap(rng, 6);
    Rational sup = PLMap::sup_distance(f, g);
    bool attained = false;
    for (int i = 0; i < 500; ++i) {
        Rational x = testgen::random_unit_rational(rng, 499);
        CHECK((f.eval(x) - g.eval(x)).abs() <= sup);
    }
    for (const auto& x : f.breakpoints())
        attained = attained || (f.eval(x) - g.eval(x)).abs() == sup;
    for (const auto& x : g.breakpoints())
        attained = attained || (f.eval(x) - g.eval(x)).abs() == sup;
    CHECK(attained);
}

TEST_CASE("fixed points of powers, with scan oracle") {
    PLMap tent = PLMap::tent();
    PointSet f1 = tent.fixed_points_of_power(1);
    CHECK(f1 == PointSet{Rational(0), Rational(2, 3)});
    PointSet f2 = tent.fixed_points_of_power(2);
    CHECK(f2 == PointSet{Rational(0), Rational(2, 5), Rational(2, 3), Rational(4, 5)});

    for (unsigned K : {1u, 2u, 3u}) {
        PointSet roots = tent.fixed_points_of_power(K);
        auto brackets = testgen::fixed_point_scan(tent, K, 10000);
        // every root is inside some bracket, and every bracket holds a root
        for (const auto& r : roots) {
            bool found = false;
            for (const auto& b : brackets) found = found || b.contains(r);
            CHECK(found);
        }
        for (const auto& b : brackets) {
            bool holds = false;
            for (const auto& r : roots) holds = holds || b.contains(r);
            CHECK(holds);
        }
    }
}

TEST_CASE("fixed point solving rejects diagonal pieces") {
    CHECK_THROWS_AS(PLMap::identity().fixed_points_of_power(1), construction_error);
}

TEST_CASE("restricted fixed point search") {
    PLMap tent = PLMap::tent();
    PointSet in = tent.fixed_points_of_power_in(2, Interval(Rational(1, 3), Rational(7, 10)));
    CHECK(in == PointSet{Rational(2, 5), Rational(2, 3)});
}

TEST_CASE("critical points and slopes") {
    PLMap tent = PLMap::tent();
    CHECK(tent.critical_points() == PointSet{Rational(1, 2)});
    CHECK(tent.max_slope() == Rational(2));
    CHECK(tent.min_abs_slope() == Rational(2));

    PLMap tri = testgen::trident();
    CHECK(tri.critical_points() == PointSet{Rational(1, 3), Rational(2, 3)});
    CHECK(tri.max_slope() == Rational(3));

    PLMap mono({Rational(0), Rational(1)}, {Rational(1, 4), Rational(3, 4)});
    CHECK(mono.critical_points().empty());
}

TEST_CASE("prime periods") {
    PLMap tent = PLMap::tent();
    CHECK(tent.prime_period(Rational(2, 3), 4) == 1);
    CHECK(tent.prime_period(Rational(2, 5), 2) == 2);
    CHECK(tent.prime_period(Rational(0), 1) == 1);
    CHECK_THROWS_AS(tent.prime_period(Rational(1, 7), 2), precondition_error);
}

TEST_CASE("add_scaled_clamped inserts crossing breakpoints") {
    PLMap base = PLMap::constant(Rational(7, 8));
    PLMap bump({Rational(0), Rational(1, 2), Rational(1)},
               {Rational(0), Rational(1), Rational(0)});
    PLMap sum = PLMap::add_scaled_clamped(base, Rational(1, 2), bump);
    // 7/8 + tent/2 crosses 1 at x = 1/8 and x = 7/8
    CHECK(sum.eval(Rational(1, 8)) == Rational(1));
    CHECK(sum.eval(Rational(1, 2)) == Rational(1));
    CHECK(sum.eval(Rational(0)) == Rational(7, 8));
    CHECK(sum.eval(Rational(1, 16)) == Rational(15, 16));
    for (const auto& v : sum.values()) CHECK(v <= Rational(1));
}

TEST_CASE("point set hausdorff") {
    PointSet a{Rational(0), Rational(1, 2)};
    PointSet b{Rational(1, 4)};
    CHECK(point_set_hausdorff(a, b) == Rational(1, 4));
}
