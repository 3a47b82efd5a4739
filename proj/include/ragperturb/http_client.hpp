#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

namespace rp::net {

struct HttpOptions {
  int max_attempts = 3;
  int backoff_ms = 250;  // doubles per retry
  int in_flight_limit = 4;
};

struct ApiTarget {
  std::string base_url;
  std::string api_key;
};

// Endpoint override wins; otherwise RAGPERTURB_API_BASE/RAGPERTURB_API_KEY.
ApiTarget resolve_target(const std::string& endpoint_override);

// POSTs JSON and retries non-2xx / connection failures with exponential
// backoff. Safe for concurrent calls up to in_flight_limit.
class JsonHttpClient {
 public:
  JsonHttpClient(ApiTarget target, HttpOptions options);
  ~JsonHttpClient();
  JsonHttpClient(const JsonHttpClient&) = delete;
  JsonHttpClient& operator=(const JsonHttpClient&) = delete;

  nlohmann::json post_json(const std::string& path,
                           const nlohmann::json& body);
  size_t retry_events() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rp::net
