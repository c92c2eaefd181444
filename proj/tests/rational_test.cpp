#include <doctest.h>

#include "xci/errors.hpp"
#include "xci/rational.hpp"

using namespace xci;

TEST_CASE("parse_rat accepts integers and fractions") {
    CHECK(parse_rat("0") == Rat(0));
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat("+3") == Rat(3));
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-3/4") == Rat(-3, 4));
    CHECK(parse_rat("6/8") == Rat(3, 4));
    CHECK(parse_rat("123456789012345678901234567890/3") ==
          Rat(Int("123456789012345678901234567890"), 3));
}

TEST_CASE("parse_rat rejects malformed input") {
    CHECK_THROWS_AS(parse_rat(""), InputFormatError);
    CHECK_THROWS_AS(parse_rat("abc"), InputFormatError);
    CHECK_THROWS_AS(parse_rat("1.5"), InputFormatError);
    CHECK_THROWS_AS(parse_rat("1/0"), InputFormatError);
    CHECK_THROWS_AS(parse_rat("1/-2"), InputFormatError);
    CHECK_THROWS_AS(parse_rat("1/"), InputFormatError);
    CHECK_THROWS_AS(parse_rat("/2"), InputFormatError);
    CHECK_THROWS_AS(parse_rat(" 1"), InputFormatError);
    CHECK_THROWS_AS(parse_rat("1 "), InputFormatError);
    CHECK_THROWS_AS(parse_rat("1/2/3"), InputFormatError);
    CHECK_THROWS_AS(parse_rat("--1"), InputFormatError);
}

TEST_CASE("rat_str formats canonically") {
    CHECK(rat_str(Rat(0)) == "0");
    CHECK(rat_str(Rat(5)) == "5");
    CHECK(rat_str(Rat(3, 4)) == "3/4");
    CHECK(rat_str(Rat(-3, 4)) == "-3/4");
    CHECK(rat_str(Rat(8, 4)) == "2");
}

TEST_CASE("rat_str round-trips through parse_rat") {
    for (const char* text : {"0", "1", "-1", "3/4", "-3/4", "22/7", "1000000007/2"}) {
        const Rat value = parse_rat(text);
        CHECK(parse_rat(rat_str(value)) == value);
        CHECK(rat_str(value) == text);
    }
}
