#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ragperturb/corpus.hpp"

namespace rp::tok {

enum class TokenKind { word, symbol_run, char_fallback };

struct Token {
  std::string surface;
  TokenKind kind;

  bool operator==(const Token&) const = default;
};

// Whitespace split, then alphanumeric runs vs symbol runs within each chunk.
// Word tokens are lowercased; symbol runs are preserved byte-exactly.
// Input must be NFC-normalized.
std::vector<Token> tokenize(std::string_view text);

// Joins surfaces with single spaces. tokenize(detokenize(tokenize(t)))
// equals tokenize(t).
std::string detokenize(const std::vector<Token>& tokens);

struct VocabEntry {
  uint32_t id;
  uint64_t df;  // document frequency
};

// Frequency-ranked vocabulary with a char_fallback OOV policy.
class Vocabulary {
 public:
  static Vocabulary build(const corpus::DocumentSet& corpus, size_t max_size);

  std::optional<VocabEntry> lookup(std::string_view surface) const;
  uint64_t df(std::string_view surface) const;  // 0 when absent
  uint64_t corpus_doc_count() const { return corpus_doc_count_; }
  size_t size() const { return entries_.size(); }
  const std::map<std::string, VocabEntry>& entries() const { return entries_; }
  const std::string& segmentation_version() const { return seg_version_; }

  // JSON Lines: header with corpus_doc_count and segmentation version,
  // then one {token, id, df} per line.
  void save_jsonl(const std::filesystem::path& path) const;
  static Vocabulary load_jsonl(const std::filesystem::path& path);

  std::string fingerprint_material() const;

 private:
  std::map<std::string, VocabEntry> entries_;
  uint64_t corpus_doc_count_ = 0;
  std::string seg_version_;
};

// A token as seen by the encoder: in-vocabulary tokens pass through;
// out-of-vocabulary tokens decompose into single-scalar char_fallback
// tokens (df looked up per scalar, usually 0). With vocab == nullptr every
// token decomposes.
struct EncodedToken {
  std::string surface;
  TokenKind kind;
  uint64_t df;
};

std::vector<EncodedToken> encode_tokens(std::string_view text,
                                        const Vocabulary* vocab);

}  // namespace rp::tok
