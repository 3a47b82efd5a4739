#include "ragperturb/encoder.hpp"
#include "ragperturb/errors.hpp"
#include "ragperturb/http_client.hpp"

namespace rp::enc {

struct RemoteEncoder::Impl {
  EncoderConfig cfg;
  net::JsonHttpClient client;

  Impl(const EncoderConfig& c)
      : cfg(c),
        client(net::resolve_target(c.remote.endpoint),
               net::HttpOptions{c.remote.max_attempts, c.remote.backoff_ms,
                                c.remote.in_flight_limit}) {}
};

RemoteEncoder::RemoteEncoder(const EncoderConfig& cfg) {
  if (cfg.backend != Backend::remote) {
    throw_usage("RemoteEncoder requires backend = remote");
  }
  impl_ = std::make_unique<Impl>(cfg);
}

RemoteEncoder::~RemoteEncoder() = default;

size_t RemoteEncoder::retry_events() const {
  return impl_->client.retry_events();
}

std::vector<EmbeddingVector> RemoteEncoder::encode(
    const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out(texts.size());
  if (texts.empty()) return out;

  const size_t batch_size =
      std::max<size_t>(1, static_cast<size_t>(impl_->cfg.remote.max_batch));
  size_t expected_dim = 0;

  for (size_t start = 0; start < texts.size(); start += batch_size) {
    const size_t end = std::min(texts.size(), start + batch_size);
    nlohmann::json body;
    body["model"] = impl_->cfg.remote.model;
    body["input"] = nlohmann::json::array();
    for (size_t i = start; i < end; ++i) body["input"].push_back(texts[i]);

    nlohmann::json reply = impl_->client.post_json("/v1/embeddings", body);
    if (!reply.contains("data") || !reply["data"].is_array() ||
        reply["data"].size() != end - start) {
      throw_transport("embeddings reply missing data for batch of " +
                      std::to_string(end - start));
    }
    std::vector<bool> seen(end - start, false);
    for (const auto& item : reply["data"]) {
      // The index field is authoritative for ordering.
      size_t idx = item.at("index").get<size_t>();
      if (idx >= end - start || seen[idx]) {
        throw_data("embeddings reply has invalid index " + std::to_string(idx));
      }
      seen[idx] = true;
      std::vector<double> values =
          item.at("embedding").get<std::vector<double>>();
      if (expected_dim == 0) {
        expected_dim = values.size();
        if (expected_dim == 0) throw_data("embeddings reply with empty vector");
      } else if (values.size() != expected_dim) {
        throw_data("embedding dimension mismatch in batch: expected " +
                   std::to_string(expected_dim) + ", got " +
                   std::to_string(values.size()));
      }
      out[start + idx] = EmbeddingVector(std::move(values));
    }
    for (bool s : seen) {
      if (!s) throw_data("embeddings reply left an index unfilled");
    }
  }
  return out;
}

std::vector<EmbeddingVector> encode_remote(const std::vector<std::string>& texts,
                                           const EncoderConfig& cfg) {
  if (texts.empty()) return {};  // no network call for the identity case
  RemoteEncoder encoder(cfg);
  return encoder.encode(texts);
}

}  // namespace rp::enc
