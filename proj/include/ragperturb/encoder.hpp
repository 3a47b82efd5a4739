#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ragperturb/similarity.hpp"
#include "ragperturb/tokenizer.hpp"

namespace rp::enc {

enum class Backend { reference, remote };

struct RemoteConfig {
  std::string endpoint;  // base URL; falls back to RAGPERTURB_API_BASE
  std::string model;
  int max_batch = 64;
  int max_attempts = 3;
  int backoff_ms = 250;      // doubles per retry
  int in_flight_limit = 4;
};

struct EncoderConfig {
  uint32_t dim = 256;
  uint64_t seed = 0;
  double positional_scale = 0.1;  // alpha; 0 disables all positional effects
  bool idf_weighting = true;
  Backend backend = Backend::reference;
  RemoteConfig remote;

  // Canonical serialization of everything that affects reference-encoder
  // output; feeds index fingerprints and run-log digests.
  std::string fingerprint_material() const;
};

class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  uint32_t dim() const { return static_cast<uint32_t>(values_.size()); }
  double norm() const { return norm_; }

 private:
  std::vector<double> values_;
  double norm_ = 0.0;
};

// Unit-norm token direction: FNV-1a(surface) XOR seed, expanded by a
// splitmix-style counter PRNG into Gaussians via Box-Muller, normalized.
std::vector<double> unit_token_vector(std::string_view surface, uint64_t seed,
                                      uint32_t dim);

// 1 + ln((corpus_doc_count+1)/(df+1)) when enabled, else 1.
double idf_weight(uint64_t df, uint64_t corpus_doc_count, bool enabled);

// Standard sinusoidal positional vector, base 10000.
std::vector<double> positional_vector(size_t position, uint32_t dim);

// Position weight used by the pooled mean; 1/(1 + alpha*i). At alpha = 0
// this is uniform, making the pooled embedding a plain arithmetic mean.
double position_weight(size_t position, double alpha);

// Reference encoder. Per token at position i:
//   v_i = idf(w)*U(w) + alpha*P(i)
// pooled as a position-weighted mean with weights 1/(1 + alpha*i).
// Empty token stream yields the zero vector. Output is unnormalized.
EmbeddingVector encode(std::string_view text, const tok::Vocabulary& vocab,
                       const EncoderConfig& cfg);

// 1 - Sim(original, perturbed) under the given metric.
double embedding_offset(const EmbeddingVector& original,
                        const EmbeddingVector& perturbed,
                        index::SimilarityMetric metric);

struct RareTokenReport {
  double delta_hat = 0.0;
  size_t probe_count = 0;
};

// Minimum distance from any probed token embedding (idf-weighted) to the
// centroid of the top-decile-frequency token embeddings.
RareTokenReport rare_token_report(const tok::Vocabulary& vocab,
                                  const EncoderConfig& cfg,
                                  const std::vector<std::string>& probes);

// Remote embeddings client (OpenAI-style wire protocol). Batches <= 64
// texts per call, retries transient failures with exponential backoff.
class RemoteEncoder {
 public:
  explicit RemoteEncoder(const EncoderConfig& cfg);
  ~RemoteEncoder();
  RemoteEncoder(const RemoteEncoder&) = delete;
  RemoteEncoder& operator=(const RemoteEncoder&) = delete;

  std::vector<EmbeddingVector> encode(const std::vector<std::string>& texts);
  size_t retry_events() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<EmbeddingVector> encode_remote(const std::vector<std::string>& texts,
                                           const EncoderConfig& cfg);

}  // namespace rp::enc
