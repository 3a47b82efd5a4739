#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rp::corpus {

enum class ProvenanceKind { clean, perturbed, baseline };

// Hidden ground-truth label. Only metrics and the mock generator may read
// it; retrieval and prompt assembly never see it.
struct Provenance {
  ProvenanceKind kind = ProvenanceKind::clean;
  std::string detail;  // emoticon surface for perturbed, kind name for baseline

  bool is_clean() const { return kind == ProvenanceKind::clean; }
  bool operator==(const Provenance&) const = default;
};

struct Document {
  std::string id;
  std::string text;  // NFC-normalized, non-empty
  Provenance provenance;
  std::map<std::string, std::string> meta;

  bool operator==(const Document&) const = default;
};

// Immutable, id-ordered document collection.
class DocumentSet {
 public:
  DocumentSet() = default;

  // Sorts by id, validates uniqueness and non-empty NFC text.
  static DocumentSet from_documents(std::vector<Document> docs);

  const std::vector<Document>& docs() const { return docs_; }
  size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const Document* find(std::string_view id) const;

  size_t injected_count() const { return injected_count_; }
  // |non-clean| / |all|, exact as a rational; 0 for an empty set.
  double injection_ratio() const;

 private:
  std::vector<Document> docs_;
  size_t injected_count_ = 0;
};

struct QueryRecord {
  std::string id;
  std::string text;
  bool perturbed = false;
  std::string emoticon;  // set iff perturbed; text contains it verbatim
  std::string ground_truth;
  std::optional<std::string> target_answer;
};

QueryRecord make_clean_query(std::string id, std::string text,
                             std::string ground_truth);
QueryRecord make_perturbed_query(std::string id, std::string text,
                                 std::string emoticon,
                                 std::string ground_truth);

// JSON Lines ingestion: one object per line with `id`, `text`, optional
// `meta`. All entries load as clean; text is NFC-normalized.
DocumentSet load_jsonl(const std::filesystem::path& path);

// Canonical export (sorted ids, NFC text). With audit=true the provenance
// field is included; callers use a separate .audit.jsonl path for that.
void export_jsonl(const DocumentSet& set, const std::filesystem::path& path,
                  bool audit = false);
std::string export_jsonl_string(const DocumentSet& set, bool audit = false);

// Deterministic synthetic corpus with a Zipf token-frequency profile.
DocumentSet synth_corpus(uint64_t seed, size_t size, size_t vocab_size,
                         std::pair<uint32_t, uint32_t> doc_len);

// Surface of the synthetic word at a given Zipf rank (rank 0 = most
// frequent). Exposed so fixtures can build in-vocabulary probes.
std::string synth_word(size_t rank);

// Returns a new set; base unchanged. Injected ids must be disjoint.
DocumentSet inject_documents(const DocumentSet& base,
                             std::vector<Document> injected);

std::vector<QueryRecord> load_queries_jsonl(const std::filesystem::path& path);

// SHA-256 hex of the canonical export; used in run logs.
std::string corpus_digest(const DocumentSet& set);

}  // namespace rp::corpus
