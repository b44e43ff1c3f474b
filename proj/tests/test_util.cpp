#include "doctest.h"
#include "hyreach/util.hpp"

using namespace hyreach;

TEST_CASE("round-trip formatting re-reads to the identical double") {
    for (double v : {1.0 / 3.0, 0.1, 6.590909090909091, -0.07, 1e-17, 12345.678901234567}) {
        std::string s = format_roundtrip(v);
        CHECK(parse_double(s, "test") == v);
    }
    CHECK(format_roundtrip(0.5) == "0.5");
    CHECK(format_roundtrip(-1.0) == "-1");
}

TEST_CASE("fixed formatting") {
    CHECK(format_fixed(104.6984, 2) == "104.70");
    CHECK(format_fixed(0.5, 3) == "0.500");
}

TEST_CASE("strict parsing rejects trailing garbage and locales") {
    CHECK(parse_double("0.25", "x") == 0.25);
    CHECK_THROWS_AS(parse_double("0,25", "x"), ConfigError);
    CHECK_THROWS_AS(parse_double("1.0 extra", "x"), ConfigError);
    CHECK_THROWS_AS(parse_double("", "x"), ConfigError);
    CHECK(parse_long("42", "n") == 42);
    CHECK_THROWS_AS(parse_long("42.5", "n"), ConfigError);
}

TEST_CASE("trim and split") {
    CHECK(trim("  a b \t") == "a b");
    auto parts = split("a,b,,c", ',');
    REQUIRE(parts.size() == 4);
    CHECK(parts[2] == "");
}
