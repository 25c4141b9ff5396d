#include <algorithm>

#include "nlohmann/json.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/core/rng.hpp"
#include "tuplevo/dsl/parser.hpp"
#include "tuplevo/dsl/transform.hpp"
#include "tuplevo/evo/prompt.hpp"
#include "tuplevo/provider/provider.hpp"

namespace tuplevo::provider {

namespace {

using dsl::Program;
using dsl::TransformKind;

struct Meta {
    std::string strategy;
    std::uint64_t seed = 0;
    std::size_t components = 1;
    std::vector<std::vector<std::string>> schemas;
    std::vector<std::vector<std::string>> parent_codes;  // [parent][component]
    std::vector<std::uint64_t> parent_digests;
};

Meta read_meta(const std::string& prompt) {
    auto begin = prompt.find(evo::kMetaBegin);
    if (begin == std::string::npos) {
        throw FormatError("prompt carries no metadata block");
    }
    begin += std::string(evo::kMetaBegin).size();
    auto end = prompt.find(evo::kMetaEnd, begin);
    if (end == std::string::npos) throw FormatError("unterminated metadata block");
    nlohmann::json doc = nlohmann::json::parse(prompt.substr(begin, end - begin));
    Meta meta;
    meta.strategy = doc.at("strategy").get<std::string>();
    meta.seed = doc.at("seed").get<std::uint64_t>();
    meta.components = doc.at("components").get<std::size_t>();
    for (const auto& schema : doc.at("schemas")) {
        meta.schemas.push_back(schema.get<std::vector<std::string>>());
    }
    for (const auto& parent : doc.at("parents")) {
        meta.parent_codes.push_back(parent.get<std::vector<std::string>>());
    }
    for (const auto& d : doc.at("parent_digests")) {
        meta.parent_digests.push_back(d.get<std::uint64_t>());
    }
    return meta;
}

// Parents that fail to parse fall back to a fresh seeded program so the mock
// can always answer.
Program parent_program(const std::string& code, std::uint64_t seed,
                       const std::vector<std::string>& schema) {
    try {
        return dsl::parse(code);
    } catch (const Error&) {
        return dsl::transform(TransformKind::Generate, {}, mix_seed(seed, 0xfa11), schema);
    }
}

const char* thought_stub(const std::string& strategy) {
    if (strategy == "I1") return "fresh scoring rule over the listed features";
    if (strategy == "E1") return "deliberate departure from the parent designs";
    if (strategy == "E2") return "recombination of the parent scoring ideas";
    if (strategy == "M1") return "structural refinement of the parent rule";
    if (strategy == "M2") return "retuned constants and removal fraction";
    return "scoring rule";
}

class MockProvider final : public Provider {
  public:
    std::string generate(const ProviderRequest& request) override {
        Meta meta = read_meta(request.prompt);
        std::string out;
        for (std::size_t comp = 0; comp < meta.components; ++comp) {
            const auto& schema = comp < meta.schemas.size() ? meta.schemas[comp]
                                                            : std::vector<std::string>{};
            std::uint64_t seed = mix_seed(meta.seed, static_cast<std::uint64_t>(comp));
            Program program = make_program(meta, comp, seed, schema);
            out += "## component " + std::to_string(comp + 1) + "\n";
            out += "thought: ";
            out += thought_stub(meta.strategy);
            out += "\n```\n" + dsl::render(program) + "\n```\n";
        }
        return out;
    }

    std::string name() const override { return "mock"; }

  private:
    static Program make_program(const Meta& meta, std::size_t comp, std::uint64_t seed,
                                const std::vector<std::string>& schema) {
        std::vector<Program> parents;
        for (const auto& codes : meta.parent_codes) {
            if (comp < codes.size()) {
                parents.push_back(parent_program(codes[comp], seed, schema));
            }
        }
        if (meta.strategy == "I1") {
            return dsl::transform(TransformKind::Generate, {}, seed, schema);
        }
        if (meta.strategy == "E1") {
            // biased away from the parents: reject candidates whose digest
            // matches a parent digest
            Program candidate;
            for (int attempt = 0; attempt < 16; ++attempt) {
                candidate = dsl::transform(TransformKind::Generate, {},
                                           mix_seed(seed, static_cast<std::uint64_t>(attempt)),
                                           schema);
                std::uint64_t d = hash_string(dsl::render(candidate) + "\n");
                if (std::find(meta.parent_digests.begin(), meta.parent_digests.end(), d) ==
                    meta.parent_digests.end()) {
                    break;
                }
            }
            return candidate;
        }
        if (meta.strategy == "E2") {
            if (parents.size() < 2) {
                return dsl::transform(TransformKind::Generate, {}, seed, schema);
            }
            return dsl::transform(TransformKind::Crossover, parents, seed, schema);
        }
        if (meta.strategy == "M1") {
            if (parents.empty()) {
                return dsl::transform(TransformKind::Generate, {}, seed, schema);
            }
            return dsl::transform(TransformKind::Mutate, {parents[0]}, seed, schema);
        }
        if (meta.strategy == "M2") {
            if (parents.empty()) {
                return dsl::transform(TransformKind::Generate, {}, seed, schema);
            }
            return dsl::transform(TransformKind::PerturbConstants, {parents[0]}, seed, schema);
        }
        return dsl::transform(TransformKind::Generate, {}, seed, schema);
    }
};

}  // namespace

std::unique_ptr<Provider> make_mock_provider() { return std::make_unique<MockProvider>(); }

std::unique_ptr<Provider> make_provider(const evo::ProviderSettings& settings) {
    if (settings.type == "mock") return make_mock_provider();
    if (settings.type == "http") return make_http_provider(settings);
    throw ConfigError("unknown provider type '" + settings.type + "'");
}

}  // namespace tuplevo::provider
