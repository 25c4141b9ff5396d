#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "nlohmann/json.hpp"
#include "tuplevo/core/errors.hpp"
#include "tuplevo/provider/provider.hpp"

namespace tuplevo::provider {

namespace {

class HttpProvider final : public Provider {
  public:
    explicit HttpProvider(evo::ProviderSettings settings) : settings_(std::move(settings)) {
        if (settings_.base_url.empty()) {
            throw ConfigError("http provider needs a base_url");
        }
    }

    std::string generate(const ProviderRequest& request) override {
        nlohmann::json body;
        body["model"] = settings_.model;
        body["temperature"] = request.temperature;
        body["seed"] = request.seed;
        body["messages"] = nlohmann::json::array(
            {nlohmann::json{{"role", "user"}, {"content", request.prompt}}});
        const std::string payload = body.dump();

        std::string last_error = "no attempts made";
        bool rate_limited = false;
        for (int attempt = 0; attempt <= settings_.retries; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
            }
            httplib::Client client(settings_.base_url);
            client.set_connection_timeout(std::chrono::duration<double>(settings_.timeout_s));
            client.set_read_timeout(std::chrono::duration<double>(settings_.timeout_s));
            httplib::Headers headers;
            if (const char* key = std::getenv(settings_.api_key_env.c_str())) {
                headers.emplace("Authorization", std::string("Bearer ") + key);
            }
            auto res = client.Post(settings_.path, headers, payload, "application/json");
            if (!res) {
                last_error = httplib::to_string(res.error());
                rate_limited = false;
                continue;
            }
            if (res->status == 429) {
                last_error = "rate limited";
                rate_limited = true;
                continue;
            }
            if (res->status >= 500) {
                last_error = "server error " + std::to_string(res->status);
                rate_limited = false;
                continue;
            }
            if (res->status != 200) {
                throw HttpError("provider returned status " + std::to_string(res->status) +
                                ": " + res->body.substr(0, 200));
            }
            try {
                nlohmann::json doc = nlohmann::json::parse(res->body);
                return doc.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                throw HttpError(std::string("unexpected response shape: ") + e.what());
            }
        }
        if (rate_limited) throw RateLimited("provider still rate limited: " + last_error);
        if (last_error.find("timeout") != std::string::npos ||
            last_error.find("Timeout") != std::string::npos) {
            throw Timeout("provider timed out: " + last_error);
        }
        throw HttpError("provider unreachable after " + std::to_string(settings_.retries + 1) +
                        " attempts: " + last_error);
    }

    std::string name() const override { return "http:" + settings_.model; }

  private:
    evo::ProviderSettings settings_;
};

}  // namespace

std::unique_ptr<Provider> make_http_provider(const evo::ProviderSettings& settings) {
    return std::make_unique<HttpProvider>(settings);
}

}  // namespace tuplevo::provider
