#include "solenoidlab/symbolic.hpp"

#include "solenoidlab/errors.hpp"

#include <doctest.h>

#include <random>

using namespace slab;

namespace {

// Independent oracle: count matches by scanning a materialized prefix.
BigInt scan_count(const BlockPlan& plan, const std::string& v, long N, long offset = 0) {
    std::string s = xc_prefix(plan, static_cast<size_t>(offset + N + v.size()));
    long hits = 0;
    for (long j = offset; j < offset + N; ++j)
        if (s.compare(static_cast<size_t>(j), v.size(), v) == 0) ++hits;
    return BigInt(hits);
}

} // namespace

TEST_CASE("word order starts 0, 1, 00, 01, 10, 11, 000") {
    CHECK(word_at(0) == "0");
    CHECK(word_at(1) == "1");
    CHECK(word_at(2) == "00");
    CHECK(word_at(3) == "01");
    CHECK(word_at(4) == "10");
    CHECK(word_at(5) == "11");
    CHECK(word_at(6) == "000");
    CHECK(word_at(13) == "111");
}

TEST_CASE("k, a, b milestones") {
    CHECK(k_of(0) == BigInt(4));
    CHECK(k_of(1) == BigInt(16));
    CHECK(k_of(2) == BigInt(256));
    CHECK(k_of(3) == BigInt(65536));
    CHECK(a_of(1) == BigInt(276));
    CHECK(b_of(0) == BigInt(20));
    CHECK(b_of(1) == BigInt(65812));
    CHECK(a_of(2) == BigInt("4295033108"));
}

TEST_CASE("prefixes assemble the blocks") {
    CHECK(xc_prefix(BlockPlan::all_ones(), 276) == std::string(276, '0'));
    CHECK(xc_prefix(BlockPlan::all_zeros(), 20) == "0000" + std::string(15, '1') + "0");
    CHECK(xc_prefix(BlockPlan::parse("01|1*"), 4) == "0000");
    CHECK_THROWS_AS(xc_prefix(BlockPlan::all_ones(), kPrefixCap + 1), resource_error);
}

TEST_CASE("plan parsing round trips") {
    CHECK(BlockPlan::parse("1*").to_string() == "1*");
    CHECK(BlockPlan::parse("01|0*").to_string() == "01|0*");
    CHECK(BlockPlan::parse("0*").b_block_is_ones(0)); // w_0 = "0" matches
    CHECK_FALSE(BlockPlan::parse("1*").b_block_is_ones(0));
    CHECK(BlockPlan::parse("1*").b_block_is_ones(1)); // w_1 = "1"
    CHECK_THROWS_AS(BlockPlan::parse("2*"), malformed_input_error);
    CHECK_THROWS_AS(BlockPlan::parse("01|x*"), malformed_input_error);
}

TEST_CASE("frozen counting examples") {
    CHECK(count_occurrences(BlockPlan::all_ones(), "1", a_of(1)) == BigInt(0));
    CHECK(count_occurrences(BlockPlan::parse("01|1*"), "0", BigInt(4)) == BigInt(4));
    CHECK(count_occurrences(BlockPlan::all_zeros(), "1", b_of(0)) == BigInt(15));
}

TEST_CASE("closed-form counting agrees with the scan oracle") {
    std::vector<BlockPlan> plans{BlockPlan::all_ones(), BlockPlan::all_zeros(),
                                 BlockPlan::parse("01|1*")};
    std::vector<std::string> words{"0", "1", "01", "10", "11", "011", "0110", "1001"};
    std::vector<long> horizons{1, 7, 20, 276, 1000, 65812, 1000000};
    std::vector<long> offsets{0, 5, 20};
    for (const auto& plan : plans)
        for (const auto& v : words)
            for (long N : horizons)
                for (long off : offsets) {
                    CAPTURE(plan.to_string());
                    CAPTURE(v);
                    CAPTURE(N);
                    CAPTURE(off);
                    CHECK(count_occurrences(plan, v, BigInt(N), BigInt(off)) ==
                          scan_count(plan, v, N, off));
                }
}

TEST_CASE("symbol frequencies of length one partition every horizon") {
    BlockPlan plan = BlockPlan::parse("10|0*");
    for (long N : {20L, 276L, 65812L, 123456L}) {
        BigInt z = count_occurrences(plan, "0", BigInt(N));
        BigInt o = count_occurrences(plan, "1", BigInt(N));
        CHECK(z + o == BigInt(N));
    }
}

TEST_CASE("frequency schedules match the displayed bounds") {
    auto f1 = frequency_schedule(BlockPlan::all_ones(), "0", {a_of(1), a_of(2)});
    CHECK(f1[0] == Rational(1));
    CHECK(f1[0] >= Rational(255, 276));
    CHECK(f1[1] >= Rational(255, 276));

    auto f2 = frequency_schedule(BlockPlan::all_zeros(), "1", {b_of(0)});
    CHECK(f2[0] == Rational(3, 4));
}

TEST_CASE("estimate E1") {
    auto r1 = verify_E1(1);
    CHECK(r1.a_ratio == Rational(69, 64));
    CHECK(r1.a_in_envelope);
    CHECK(r1.b_in_envelope);
    auto r0 = verify_E1(0);
    CHECK(r0.b_ratio == Rational(5, 4));
    auto r2 = verify_E1(2);
    CHECK(r2.a_ratio == Rational(BigInt("4295033108"), BigInt("4294967296")));
    CHECK(r2.a_in_envelope);
    for (unsigned n = 1; n <= 4; ++n) {
        auto r = verify_E1(n);
        CHECK(r.a_in_envelope);
        CHECK(r.b_in_envelope);
    }
}

TEST_CASE("estimate E2") {
    auto r1 = verify_E2(1);
    CHECK(r1.ratio == Rational(4, 69));
    CHECK(r1.within_bound);
    auto r2 = verify_E2(2);
    CHECK(r2.ratio == Rational(BigInt(65552), BigInt("4295033108")));
    CHECK(r2.within_bound);
    for (unsigned n = 1; n <= 4; ++n) CHECK(verify_E2(n).within_bound);
}

TEST_CASE("lemma-level counting bounds, exactly") {
    for (const auto& plan :
         {BlockPlan::all_ones(), BlockPlan::all_zeros(), BlockPlan::parse("110|1*")}) {
        for (unsigned n = 1; n <= 4; ++n) {
            BigInt an = a_of(n);
            for (unsigned K = 1; K <= 2; ++K) {
                BigInt cnt = count_occurrences(plan, std::string(K, '0'), an);
                CHECK(cnt >= k_of(2 * n) - BigInt(K));
            }
            BigInt ones = count_occurrences(plan, "1", an);
            BigInt bound(0);
            for (unsigned i = 0; i < n; ++i) bound += k_of(2 * i + 1);
            CHECK(ones <= bound);
            // shifted windows carry at most `offset` extra visits
            for (long off : {5L, 20L}) {
                BigInt shifted = count_occurrences(plan, "1", an, BigInt(off));
                CHECK(shifted <= bound + BigInt(off));
            }
        }
    }
}

TEST_CASE("sigma_symbolic verdict") {
    auto rep = sigma_symbolic(BlockPlan::parse("1*"), 2, 3);
    CHECK(rep.verdict);
    CHECK(!rep.rows.empty());
    auto rep0 = sigma_symbolic(BlockPlan::all_zeros(), 2, 3);
    CHECK(rep0.verdict);
    auto rep_k1 = sigma_symbolic(BlockPlan::parse("01|1*"), 1, 3);
    CHECK(rep_k1.verdict);
}

TEST_CASE("essential_symbolic separates [1] from [0]") {
    std::vector<std::pair<BlockPlan, BigInt>> family{
        {BlockPlan::all_ones(), BigInt(0)},
        {BlockPlan::all_ones(), BigInt(5)},
        {BlockPlan::all_zeros(), BigInt(20)},
    };
    auto not_ess = essential_symbolic(family, "1", 4);
    CHECK(not_ess.bounds_hold);
    CHECK(not_ess.vanishing);

    auto ess = essential_symbolic(family, "0", 4);
    CHECK_FALSE(ess.vanishing);
    CHECK(ess.max_frequency.back() > Rational(9, 10));
}

TEST_CASE("statistical-but-not-physical behavior of [11] at match levels") {
    // for the all-ones parameter the block B_1 is a 1-run; along b_1 the
    // [11] frequency stays bounded below
    BigInt cnt = count_occurrences(BlockPlan::all_ones(), "11", b_of(1));
    CHECK(cnt >= k_of(3) - BigInt(1) - BigInt(2));
    CHECK(Rational(cnt, b_of(1)) > Rational(9, 10));
}

TEST_CASE("tent itineraries") {
    CHECK(tent_itinerary(Rational(2, 3), 8) == "11111111");
    CHECK(tent_itinerary(Rational(0), 4) == "0000");
    CHECK(tent_itinerary(Rational(1, 2), 3) == "010"); // boundary codes as 0, then 1 -> 0
    CHECK_THROWS_AS(tent_itinerary(Rational(3, 2), 2), precondition_error);
}

TEST_CASE("cylinders pull back to exact dyadic intervals") {
    CHECK(cylinder_to_interval("0") == Interval(Rational(0), Rational(1, 2)));
    CHECK(cylinder_to_interval("1") == Interval(Rational(1, 2), Rational(1)));
    CHECK(cylinder_to_interval("11") == Interval(Rational(1, 2), Rational(3, 4)));
    CHECK_THROWS_AS(cylinder_to_interval("02"), malformed_input_error);

    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned len = 1 + static_cast<unsigned>(rng() % 12);
        std::string w;
        for (unsigned i = 0; i < len; ++i) w += (rng() & 1) ? '1' : '0';
        Interval cyl = cylinder_to_interval(w);
        CHECK(cyl.diam() == Rational::pow2(-static_cast<long>(len)));
        CHECK(tent_itinerary(cyl.midpoint(), len) == w);
    }
}
