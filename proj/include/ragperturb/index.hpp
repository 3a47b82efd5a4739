#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ragperturb/corpus.hpp"
#include "ragperturb/digest.hpp"
#include "ragperturb/encoder.hpp"
#include "ragperturb/similarity.hpp"

namespace rp::index {

double similarity(const enc::EmbeddingVector& a, const enc::EmbeddingVector& b,
                  SimilarityMetric metric);

struct Hit {
  std::string doc_id;
  double score;
};

struct RetrievalResult {
  std::string query_id;
  std::vector<Hit> hits;  // scores non-increasing, ties by ascending id
  size_t k = 0;
};

struct IndexEntry {
  std::string id;
  enc::EmbeddingVector vec;
};

// Exact-scan vector index; entries sorted by doc id.
class VectorIndex {
 public:
  static VectorIndex build(const corpus::DocumentSet& docs,
                           const tok::Vocabulary& vocab,
                           const enc::EncoderConfig& cfg);

  // Assembles an index from pre-encoded entries (harness caching path);
  // entries are sorted and the fingerprint recomputed from cfg + vocab.
  static VectorIndex from_entries(std::vector<IndexEntry> entries,
                                  const tok::Vocabulary& vocab,
                                  const enc::EncoderConfig& cfg);

  RetrievalResult search(const enc::EmbeddingVector& query, size_t k,
                         SimilarityMetric metric,
                         std::string query_id = {}) const;

  const std::vector<IndexEntry>& entries() const { return entries_; }
  uint32_t dim() const { return dim_; }
  const Sha256& fingerprint() const { return fingerprint_; }

  // Binary layout: "RPIX" magic, version u32, dim u32, count u64,
  // 32-byte fingerprint, then per entry u16 id length + UTF-8 id +
  // dim f32 values. Little-endian throughout.
  void save(const std::filesystem::path& path) const;
  static VectorIndex load(const std::filesystem::path& path);

 private:
  std::vector<IndexEntry> entries_;
  uint32_t dim_ = 0;
  Sha256 fingerprint_{};
};

Sha256 index_fingerprint(const tok::Vocabulary& vocab,
                         const enc::EncoderConfig& cfg);

}  // namespace rp::index
