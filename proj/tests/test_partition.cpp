#include "solenoidlab/partition.hpp"

#include "solenoidlab/errors.hpp"

#include <doctest.h>

using namespace slab;

TEST_CASE("level 1 blocks match the closed formulas") {
    Partition P = partition_build(1);
    CHECK(P.M == 2);
    CHECK(P.eta == Rational(1, 16));
    CHECK(P.center(1) == Rational(1, 4));
    CHECK(P.center(2) == Rational(3, 4));
    CHECK(P.e_block(1) == Interval(Rational(1, 16), Rational(7, 16)));
    CHECK(P.f_block(1) == Interval(Rational(3, 16), Rational(5, 16)));
    CHECK(P.h_block(1) == Interval(Rational(7, 16), Rational(9, 16)));
    CHECK(P.h_block(0) == Interval(Rational(0), Rational(1, 16)));
    CHECK(P.h_block(2) == Interval(Rational(15, 16), Rational(1)));
    CHECK(P.h_boundary_half_open(0));
    CHECK_FALSE(P.h_boundary_half_open(1));
}

TEST_CASE("level 2 diameters") {
    Partition P = partition_build(2);
    CHECK(P.eta == Rational(1, 4096));
    for (long i = 1; i <= P.M; ++i) {
        CHECK(P.e_block(i).diam() == Rational(511, 2048));
        CHECK(P.f_block(i).diam() == Rational(1, 2048));
    }
    // diam E^i + diam H^i = 1/M, interior cells
    for (long i = 1; i < P.M; ++i)
        CHECK(P.e_block(i).diam() + P.h_block(i).diam() == Rational(1, 4));
}

TEST_CASE("all six properties hold for m = 1..6") {
    for (unsigned m = 1; m <= 6; ++m) {
        Partition P = partition_build(m);
        PartitionReport rep = partition_verify(P);
        CAPTURE(m);
        CHECK(rep.tiling);
        CHECK(rep.block_inclusions);
        CHECK(rep.h_diam_bounds);
        CHECK(rep.f_diam_bounds);
        CHECK(rep.fine_level_components);
        CHECK(rep.parity_disjoint);
        CHECK(rep.diam_identity);
        CHECK(rep.all());
    }
}

TEST_CASE("property 5 across explicit level pairs") {
    Partition P1 = partition_build(1);
    CHECK(partition_verify_property5(P1, 4));
    CHECK(partition_verify_property5(P1, 7));
    // below the threshold the property is not claimed
    CHECK_FALSE(partition_verify_property5(P1, 3));
}

TEST_CASE("lebesgue mass of E and H blocks fills the interval") {
    for (unsigned m = 1; m <= 6; ++m) {
        Partition P = partition_build(m);
        Rational total(0);
        for (const auto& e : P.E) total += e.diam();
        for (const auto& h : P.H) total += h.diam();
        CHECK(total == Rational(1));
    }
}

TEST_CASE("parity splits centers between G and D") {
    Partition P = partition_build(3);
    for (long i = 1; i <= P.M; ++i) {
        if (i % 2 == 1) {
            CHECK(P.G.contains_point(P.center(i)));
            CHECK_FALSE(P.D.contains_point(P.center(i)));
        } else {
            CHECK(P.D.contains_point(P.center(i)));
            CHECK_FALSE(P.G.contains_point(P.center(i)));
        }
    }
}

TEST_CASE("classification picks the innermost block") {
    Partition P = partition_build(1);
    auto c = partition_classify(P, Rational(1, 4));
    CHECK(c.kind == BlockRef::Center);
    CHECK(c.index == 1);
    auto h = partition_classify(P, Rational(1, 2));
    CHECK(h.kind == BlockRef::HBlock);
    CHECK(h.index == 1);
    auto h0 = partition_classify(P, Rational(0));
    CHECK(h0.kind == BlockRef::HBlock);
    CHECK(h0.index == 0);
    auto f = partition_classify(P, Rational(2, 10));
    CHECK(f.kind == BlockRef::FBlock);
    CHECK(f.index == 1);
    auto e = partition_classify(P, Rational(1, 16));
    CHECK(e.kind == BlockRef::EBlock);
    CHECK(e.index == 1);
    auto hM = partition_classify(P, Rational(1));
    CHECK(hM.kind == BlockRef::HBlock);
    CHECK(hM.index == 2);
}

TEST_CASE("level cap raises a resource error") {
    CHECK_THROWS_AS(partition_build(9), resource_error);
    CHECK_THROWS_AS(partition_build(kMaxPartitionLevel + 1, 30), resource_error);
}

TEST_CASE("cache returns one shared build per level") {
    auto p1 = partition_cached(2);
    auto p2 = partition_cached(2);
    CHECK(p1.get() == p2.get());
}
