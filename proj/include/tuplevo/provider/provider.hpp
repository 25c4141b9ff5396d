#ifndef TUPLEVO_PROVIDER_PROVIDER_HPP
#define TUPLEVO_PROVIDER_PROVIDER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tuplevo/evo/config.hpp"

namespace tuplevo::provider {

struct ProviderRequest {
    std::string prompt;
    double temperature = 0.7;
    std::uint64_t seed = 0;
};

// Text-generation boundary. The evolution loop only ever sees the raw
// response text plus parse_response, so anything honoring this contract is a
// drop-in provider.
class Provider {
  public:
    virtual ~Provider() = default;
    virtual std::string generate(const ProviderRequest& request) = 0;
    virtual std::string name() const = 0;
};

struct ResponseComponent {
    std::string thought;
    std::string code;
    bool valid = false;
};

// Extracts up to `expected_components` (thought, code) pairs: for each, the
// first `thought:` line and the first fenced code block after it. Never
// throws on malformed text; missing pieces simply yield fewer components.
std::vector<ResponseComponent> parse_response(const std::string& text,
                                              int expected_components);

// Offline provider: reads the machine-readable metadata block embedded in
// the prompt and applies the matching deterministic program transform.
std::unique_ptr<Provider> make_mock_provider();

// Chat-completions HTTP client; credential read from the configured
// environment variable at request time.
std::unique_ptr<Provider> make_http_provider(const evo::ProviderSettings& settings);

std::unique_ptr<Provider> make_provider(const evo::ProviderSettings& settings);

}  // namespace tuplevo::provider

#endif
