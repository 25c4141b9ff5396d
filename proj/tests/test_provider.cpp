#include "doctest.h"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/tuple.hpp"
#include "tuplevo/dsl/parser.hpp"
#include "tuplevo/evo/prompt.hpp"
#include "tuplevo/provider/provider.hpp"

using namespace tuplevo;
using namespace tuplevo::evo;

namespace {

PromptInputs base_inputs(Strategy s, std::vector<std::vector<HeuristicComponent>> parents,
                         std::uint64_t seed) {
    PromptInputs inputs;
    inputs.strategy = s;
    inputs.problem_name = "irp";
    inputs.problem_summary = "Toy problem for provider tests.";
    inputs.active = {1};
    inputs.active_names = {"inventory"};
    inputs.schemas = {{"quantity", "slack"}};
    inputs.parents = std::move(parents);
    inputs.seed = seed;
    return inputs;
}

std::vector<HeuristicComponent> one_component(const std::string& code) {
    return {make_component(code, "a thought")};
}

}  // namespace

TEST_SUITE("provider") {

TEST_CASE("mock M2 changes only numeric literals and rho") {
    auto provider = provider::make_mock_provider();
    auto inputs = base_inputs(Strategy::M2, {one_component("rho=0.2; score = 3*quantity")}, 5);
    std::string raw = provider->generate({build_prompt(inputs), 0.7, 5});
    auto comps = provider::parse_response(raw, 1);
    REQUIRE(comps.size() == 1);
    REQUIRE(comps[0].valid);
    dsl::Program out = dsl::parse(comps[0].code);
    REQUIRE(out.body->kind == dsl::ExprKind::Binary);
    CHECK(out.body->op == dsl::BinaryOp::Mul);
    CHECK(out.body->b->feature == "quantity");
    CHECK(out.body->a->number != doctest::Approx(3.0));
}

TEST_CASE("mock responses are byte-identical for identical requests") {
    auto provider = provider::make_mock_provider();
    for (Strategy s : {Strategy::I1, Strategy::E1, Strategy::E2, Strategy::M1, Strategy::M2}) {
        std::vector<std::vector<HeuristicComponent>> parents;
        int needed = s == Strategy::I1 ? 0 : s == Strategy::M1 || s == Strategy::M2 ? 1 : 3;
        for (int p = 0; p < needed; ++p) {
            parents.push_back(one_component("rho=0.2; score = quantity + " + std::to_string(p)));
        }
        auto inputs = base_inputs(s, parents, 42);
        provider::ProviderRequest request{build_prompt(inputs), 0.7, 42};
        CHECK(provider->generate(request) == provider->generate(request));
    }
}

TEST_CASE("mock output always parses into the expected component count") {
    auto provider = provider::make_mock_provider();
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto inputs = base_inputs(Strategy::I1, {}, seed);
        auto comps = provider::parse_response(
            provider->generate({build_prompt(inputs), 0.7, seed}), 1);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].valid);
    }
    // integrated-style request with two components
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        PromptInputs inputs;
        inputs.strategy = Strategy::I1;
        inputs.problem_name = "irp";
        inputs.problem_summary = "two-component request";
        inputs.active = {1, 2};
        inputs.active_names = {"inventory", "routing"};
        inputs.schemas = {{"quantity"}, {"detour"}};
        inputs.seed = seed;
        auto comps = provider::parse_response(
            provider->generate({build_prompt(inputs), 0.7, seed}), 2);
        REQUIRE(comps.size() == 2);
        CHECK(comps[0].valid);
        CHECK(comps[1].valid);
    }
}

TEST_CASE("parse_response degrades without throwing") {
    auto comps = provider::parse_response("no structure at all", 1);
    CHECK(comps.empty());

    comps = provider::parse_response("thought: nice idea\nbut no code fence", 1);
    CHECK(comps.empty());

    std::string two_sections =
        "thought: first\n```\nrho=0.2; score = quantity\n```\n"
        "thought: second\n```\nthis does not parse\n```\n";
    comps = provider::parse_response(two_sections, 2);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].valid);
    CHECK_FALSE(comps[1].valid);
}

TEST_CASE("well-formed single component document") {
    auto comps = provider::parse_response(
        "preamble\nthought: remove heavy rows\n```\nrho=0.3; score = quantity\n```\n", 1);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].valid);
    CHECK(comps[0].thought == "remove heavy rows");
}

TEST_CASE("unreachable endpoint surfaces HttpError after the retries") {
    ProviderSettings settings;
    settings.type = "http";
    settings.base_url = "http://127.0.0.1:9";  // closed port: connection refused
    settings.model = "test";
    settings.retries = 2;
    settings.timeout_s = 1.0;
    auto provider = provider::make_http_provider(settings);
    CHECK_THROWS_AS(provider->generate({"hello", 0.7, 1}), HttpError);
}

TEST_CASE("prompt structure: I1 has the grammar and no parent blocks") {
    auto inputs = base_inputs(Strategy::I1, {}, 7);
    std::string prompt = build_prompt(inputs);
    CHECK(prompt.find("rho") != std::string::npos);
    CHECK(prompt.find("score") != std::string::npos);
    CHECK(prompt.find("### parent") == std::string::npos);
    CHECK(prompt.find(kMetaBegin) != std::string::npos);
}

TEST_CASE("prompt structure: E1 embeds exactly the given parents") {
    std::vector<std::vector<HeuristicComponent>> parents;
    for (int p = 0; p < 5; ++p) {
        parents.push_back(one_component("rho=0.2; score = quantity * " + std::to_string(p + 1)));
    }
    std::string prompt = build_prompt(base_inputs(Strategy::E1, parents, 7));
    std::size_t count = 0, pos = 0;
    while ((pos = prompt.find("### parent", pos)) != std::string::npos) {
        ++count;
        pos += 10;
    }
    CHECK(count == 5);
}

TEST_CASE("prompt structure: integrated M1 carries one block per subproblem") {
    PromptInputs inputs;
    inputs.strategy = Strategy::M1;
    inputs.problem_name = "irp";
    inputs.problem_summary = "integrated request";
    inputs.active = {1, 2};
    inputs.active_names = {"inventory", "routing"};
    inputs.schemas = {{"quantity"}, {"detour"}};
    inputs.parents = {{make_component("rho=0.2; score = quantity", "t1"),
                       make_component("rho=0.3; score = detour", "t2")}};
    inputs.seed = 3;
    std::string prompt = build_prompt(inputs);
    CHECK(prompt.find("component inventory:") != std::string::npos);
    CHECK(prompt.find("component routing:") != std::string::npos);

    // arity violations are rejected
    inputs.parents.clear();
    CHECK_THROWS_AS(build_prompt(inputs), ArityError);
}

}  // TEST_SUITE
