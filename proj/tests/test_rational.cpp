#include "solenoidlab/rational.hpp"

#include "solenoidlab/errors.hpp"

#include <doctest.h>

using namespace slab;

TEST_CASE("rational parse and print") {
    CHECK(Rational::parse("3/4").to_string() == "3/4");
    CHECK(Rational::parse("-6/8").to_string() == "-3/4");
    CHECK(Rational::parse("5").to_string() == "5");
    CHECK(Rational::parse("0/7") == Rational(0));
    CHECK_THROWS_AS(Rational::parse("1/0"), malformed_input_error);
    CHECK_THROWS_AS(Rational::parse("x"), malformed_input_error);
    CHECK_THROWS_AS(Rational::parse(""), malformed_input_error);
}

TEST_CASE("rational arithmetic stays canonical") {
    Rational a(1, 6), b(1, 3);
    CHECK((a + b) == Rational(1, 2));
    CHECK((b - a) == a);
    CHECK((a * b) == Rational(1, 18));
    CHECK((a / b) == Rational(1, 2));
    CHECK((-a).to_string() == "-1/6");
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK_THROWS_AS(a / Rational(0), precondition_error);
}

TEST_CASE("pow2 and floors") {
    CHECK(Rational::pow2(4) == Rational(16));
    CHECK(Rational::pow2(-4) == Rational(1, 16));
    CHECK(Rational::pow2(0) == Rational(1));
    CHECK(Rational(7, 3).floor() == BigInt(2));
    CHECK(Rational(7, 3).floor_scaled(3) == 7);
    CHECK(Rational(1, 3).floor_scaled(1024) == 341);
}

TEST_CASE("round_to_dyadic") {
    Rational x(1, 3);
    Rational r = x.round_to_dyadic(8);
    CHECK(r == Rational(85, 256));
    CHECK((x - r).abs() <= Rational(1, 512));
    CHECK(Rational(1, 2).round_to_dyadic(4) == Rational(1, 2));
}

TEST_CASE("bigint powers of two match the k_n table") {
    CHECK(BigInt::pow2(2).to_string() == "4");
    CHECK(BigInt::pow2(4).to_string() == "16");
    CHECK(BigInt::pow2(8).to_string() == "256");
    CHECK(BigInt::pow2(16).to_string() == "65536");
    CHECK(BigInt::pow2(512).bit_size() == 513);
    CHECK(BigInt::fdiv(BigInt(7), BigInt(2)) == BigInt(3));
    CHECK(BigInt::fdiv(BigInt(-7), BigInt(2)) == BigInt(-4));
}

TEST_CASE("pow2 values compare by exponent") {
    Pow2 a{Rational(-9)};
    Pow2 b{Rational(-9, 10)};
    CHECK(a < b);
    CHECK(a.to_rational() == Rational(1, 512));
    CHECK_THROWS_AS(b.to_rational(), precondition_error);
    CHECK(b.to_double() == doctest::Approx(0.5358867312));
}
