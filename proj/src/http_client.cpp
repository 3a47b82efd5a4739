#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "ragperturb/http_client.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include "ragperturb/errors.hpp"

namespace rp::net {

ApiTarget resolve_target(const std::string& endpoint_override) {
  ApiTarget t;
  if (!endpoint_override.empty()) {
    t.base_url = endpoint_override;
  } else if (const char* base = std::getenv("RAGPERTURB_API_BASE")) {
    t.base_url = base;
  }
  if (const char* key = std::getenv("RAGPERTURB_API_KEY")) {
    t.api_key = key;
  }
  if (t.base_url.empty()) {
    throw_usage(
        "no API base configured: set RAGPERTURB_API_BASE or pass an endpoint");
  }
  return t;
}

struct JsonHttpClient::Impl {
  ApiTarget target;
  HttpOptions options;
  std::counting_semaphore<> in_flight;
  std::atomic<size_t> retries{0};

  Impl(ApiTarget t, HttpOptions o)
      : target(std::move(t)),
        options(o),
        in_flight(std::max(1, o.in_flight_limit)) {}
};

JsonHttpClient::JsonHttpClient(ApiTarget target, HttpOptions options)
    : impl_(std::make_unique<Impl>(std::move(target), options)) {}

JsonHttpClient::~JsonHttpClient() = default;

size_t JsonHttpClient::retry_events() const { return impl_->retries.load(); }

nlohmann::json JsonHttpClient::post_json(const std::string& path,
                                         const nlohmann::json& body) {
  impl_->in_flight.acquire();
  struct Release {
    std::counting_semaphore<>& sem;
    ~Release() { sem.release(); }
  } release{impl_->in_flight};

  const std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 1; attempt <= impl_->options.max_attempts; ++attempt) {
    if (attempt > 1) {
      ++impl_->retries;
      int delay = impl_->options.backoff_ms << (attempt - 2);
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
    httplib::Client client(impl_->target.base_url);
    client.set_connection_timeout(10);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!impl_->target.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + impl_->target.api_key);
    }
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status) + ": " + res->body;
      continue;
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
      last_error = std::string("malformed JSON response: ") + e.what();
      continue;
    }
  }
  throw_transport("POST " + impl_->target.base_url + path + " failed after " +
                  std::to_string(impl_->options.max_attempts) +
                  " attempts: " + last_error);
}

}  // namespace rp::net
