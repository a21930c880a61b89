#include "doctest.h"

#include <string>

#include "qwg/cli_config.hpp"

using namespace qwg;
using namespace qwg::cli;

TEST_SUITE("cli_config") {

TEST_CASE("minimal soliton config gets documented defaults") {
    auto j = strict_parse(R"({"equation":"nls","init":{"profile":"sech","a":1}})");
    auto c = soliton_config_from_json(j);
    CHECK(c.equation == "nls");
    CHECK(c.a == 1.0);
    CHECK(c.v == 0.0);
    CHECK(c.n == 2048);
    CHECK(c.dt == 1e-4);
    CHECK(c.eps == 1e-8);
    CHECK(!c.include_rest);
}

TEST_CASE("unknown keys are rejected by name") {
    auto j = strict_parse(R"({"equation":"nls","wavelength":3})");
    CHECK_THROWS_WITH_AS(soliton_config_from_json(j), doctest::Contains("wavelength"),
                         config_error);
    auto j2 = strict_parse(R"({"init":{"profile":"sech","amp":2}})");
    CHECK_THROWS_WITH_AS(soliton_config_from_json(j2), doctest::Contains("init.amp"),
                         config_error);
}

TEST_CASE("type mismatches name the path and expected type") {
    auto j = strict_parse(R"({"dt":"fast"})");
    CHECK_THROWS_WITH_AS(soliton_config_from_json(j), doctest::Contains("'dt' must be a number"),
                         config_error);
    auto j2 = strict_parse(R"({"include_rest":1})");
    CHECK_THROWS_WITH_AS(soliton_config_from_json(j2), doctest::Contains("boolean"), config_error);
}

TEST_CASE("duplicate keys fail at parse time") {
    CHECK_THROWS_WITH_AS(strict_parse(R"({"a":1,"a":2})"), doctest::Contains("duplicate key"),
                         config_error);
    CHECK_THROWS_WITH_AS(strict_parse(R"({"o":{"x":1,"x":2}})"), doctest::Contains("duplicate"),
                         config_error);
    // same key in sibling objects is fine
    CHECK_NOTHROW(strict_parse(R"({"a":{"x":1},"b":{"x":2}})"));
}

TEST_CASE("malformed json carries a position") {
    CHECK_THROWS_WITH_AS(strict_parse("{\"a\": }"), doctest::Contains("parse error"), config_error);
}

TEST_CASE("resolved config round trip is hash-idempotent") {
    auto j = strict_parse(R"({"equation":"gp","g":-1.0,"init":{"profile":"sech","a":1,"v":0.5}})");
    auto c = soliton_config_from_json(j);
    const auto h1 = c.config_hash();
    auto c2 = soliton_config_from_json(c.resolved());
    CHECK(c2.config_hash() == h1);
}

TEST_CASE("potential specs round trip") {
    for (const char* text :
         {R"({"type":"free"})", R"({"type":"harmonic","omega":2.0,"center":0.5})",
          R"({"type":"linear_ramp","force":0.25})",
          R"({"type":"piecewise","segments":[{"z0":-1,"z1":0,"V":0},{"z0":0,"z1":1,"V":2}]})"}) {
        auto p = potential_from_json(strict_parse(text));
        auto p2 = potential_from_json(potential_to_json(p));
        for (double z : {-0.9, -0.3, 0.0, 0.4, 0.9})
            CHECK(p(z) == doctest::Approx(p2(z)).epsilon(1e-12));
    }
    CHECK_THROWS_WITH_AS(potential_from_json(strict_parse(R"({"type":"coulomb"})")),
                         doctest::Contains("unknown value"), config_error);
}

} // TEST_SUITE
