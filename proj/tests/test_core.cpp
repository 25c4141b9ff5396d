#include <string>
#include <vector>

#include "doctest.h"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/tuple.hpp"
#include "tuplevo/core/tuple_io.hpp"
#include "tuplevo/dsl/parser.hpp"
#include "tuplevo/dsl/transform.hpp"

using namespace tuplevo;

TEST_SUITE("core") {

TEST_CASE("make_tuple builds components in order") {
    auto t = make_tuple({{"rho=0.2; score = a", "tA"}, {"rho=0.3; score = b", "tB"}}, 2);
    REQUIRE(t.components.size() == 2);
    CHECK(t.components[0].thought == "tA");
    CHECK(t.components[1].thought == "tB");
    CHECK(t.all_valid());
}

TEST_CASE("make_tuple rejects a length mismatch") {
    CHECK_THROWS_AS(make_tuple({{"rho=0.2; score = a", "t"}}, 2), LengthMismatch);
}

TEST_CASE("malformed code flags the component invalid") {
    auto t = make_tuple({{"score = +", "t1"}, {"rho=0.3; score = b", "t2"}}, 2);
    CHECK_FALSE(t.components[0].valid);
    CHECK_FALSE(t.components[0].parse_error.empty());
    CHECK(t.components[1].valid);
    CHECK_FALSE(t.all_valid());
}

TEST_CASE("replace_component is a pure update") {
    auto t = make_tuple({{"rho=0.2; score = a", "A"}, {"rho=0.2; score = b", "B"}}, 2);
    auto c = make_component("rho=0.2; score = c", "C");
    auto t2 = replace_component(t, SubproblemId{2}, c);
    CHECK(t2.components[0].thought == "A");
    CHECK(t2.components[1].thought == "C");
    CHECK(t.components[1].thought == "B");  // input untouched

    auto same = replace_component(t, SubproblemId{1}, t.components[0]);
    CHECK(same == t);

    CHECK_THROWS_AS(replace_component(t, SubproblemId{3}, c), IndexOutOfRange);
    CHECK_THROWS_AS(replace_component(t, SubproblemId{0}, c), IndexOutOfRange);
}

TEST_CASE("tuple document round-trips bit-exactly") {
    auto t = make_tuple({{"rho=0.25; score = (quantity + (2 * holding))", "prefer big drops"},
                         {"rho=0.1; score = detour", "strip long detours"}},
                        2);
    std::vector<std::string> names = {"inventory", "routing"};
    std::string doc = render_tuple(t, names);
    HeuristicTuple back = parse_tuple(doc);
    CHECK(back == t);
    CHECK(render_tuple(back, names) == doc);
}

TEST_CASE("round-trip preserves invalid components verbatim") {
    auto t = make_tuple({{"this is not a program", "broken idea"},
                         {"rho=0.3; score = b", "fine"}},
                        2);
    HeuristicTuple back = parse_tuple(render_tuple(t));
    CHECK(back == t);
    CHECK_FALSE(back.components[0].valid);
}

TEST_CASE("random tuples round-trip") {
    std::vector<std::string> schema = {"x", "y", "z"};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto p1 = dsl::transform(dsl::TransformKind::Generate, {}, seed, schema);
        auto p2 = dsl::transform(dsl::TransformKind::Generate, {}, seed + 1000, schema);
        auto t = make_tuple({{dsl::render(p1), "thought " + std::to_string(seed)},
                             {dsl::render(p2), "idea"}},
                            2);
        CHECK(parse_tuple(render_tuple(t)) == t);
    }
}

TEST_CASE("parse_tuple rejects broken documents") {
    CHECK_THROWS_AS(parse_tuple("no sections here"), FormatError);
    CHECK_THROWS_AS(parse_tuple("thought: t\n```\ncode without close"), FormatError);
}

}  // TEST_SUITE
