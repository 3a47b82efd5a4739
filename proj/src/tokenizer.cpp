#include "ragperturb/tokenizer.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ragperturb/errors.hpp"
#include "ragperturb/unicode.hpp"

using json = nlohmann::json;

namespace rp::tok {

namespace {
constexpr const char* kSegVersion = "ws-alnum-v1";
}

std::vector<Token> tokenize(std::string_view text) {
  std::u32string scalars = uni::decode(text);
  std::vector<Token> out;

  size_t i = 0;
  const size_t n = scalars.size();
  while (i < n) {
    if (uni::is_space(scalars[i])) {
      ++i;
      continue;
    }
    const bool alnum = uni::is_alnum(scalars[i]);
    size_t j = i;
    while (j < n && !uni::is_space(scalars[j]) &&
           uni::is_alnum(scalars[j]) == alnum) {
      ++j;
    }
    std::u32string run = scalars.substr(i, j - i);
    if (alnum) {
      for (char32_t& c : run) c = uni::to_lower(c);
      out.push_back({uni::encode(run), TokenKind::word});
    } else {
      out.push_back({uni::encode(run), TokenKind::symbol_run});
    }
    i = j;
  }
  return out;
}

std::string detokenize(const std::vector<Token>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i].surface;
  }
  return out;
}

Vocabulary Vocabulary::build(const corpus::DocumentSet& corpus,
                             size_t max_size) {
  if (corpus.empty()) throw_data("cannot build vocabulary from empty corpus");
  if (max_size == 0) throw_data("vocabulary max_size must be >= 1");

  // Document frequency per surface. std::map keeps iteration and the
  // lexicographic tie-break deterministic and order-independent.
  std::map<std::string, uint64_t> df;
  std::vector<std::string> seen;
  for (const corpus::Document& d : corpus.docs()) {
    seen.clear();
    for (const Token& t : tokenize(d.text)) seen.push_back(t.surface);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (const std::string& s : seen) ++df[s];
  }

  std::vector<std::pair<std::string, uint64_t>> ranked(df.begin(), df.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > max_size) ranked.resize(max_size);

  Vocabulary v;
  v.corpus_doc_count_ = corpus.size();
  v.seg_version_ = kSegVersion;
  uint32_t next_id = 0;
  // Ids assigned in rank order; storage keyed by surface.
  for (const auto& [surface, count] : ranked) {
    v.entries_.emplace(surface, VocabEntry{next_id++, count});
  }
  return v;
}

std::optional<VocabEntry> Vocabulary::lookup(std::string_view surface) const {
  auto it = entries_.find(std::string(surface));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

uint64_t Vocabulary::df(std::string_view surface) const {
  auto e = lookup(surface);
  return e ? e->df : 0;
}

void Vocabulary::save_jsonl(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("cannot write vocabulary file: " + path.string());
  json header;
  header["corpus_doc_count"] = corpus_doc_count_;
  header["segmentation"] = seg_version_;
  out << header.dump() << '\n';

  // Rows ordered by id so save/load round-trips bit-exactly.
  std::vector<std::pair<std::string, VocabEntry>> rows(entries_.begin(),
                                                       entries_.end());
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.second.id < b.second.id; });
  for (const auto& [surface, e] : rows) {
    json row;
    row["token"] = surface;
    row["id"] = e.id;
    row["df"] = e.df;
    out << row.dump() << '\n';
  }
  if (!out) throw_data("write failed: " + path.string());
}

Vocabulary Vocabulary::load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_data("cannot open vocabulary file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw_data("empty vocabulary file");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::parse_error& e) {
    throw_data(std::string("vocabulary header: ") + e.what());
  }

  Vocabulary v;
  v.corpus_doc_count_ = header.at("corpus_doc_count").get<uint64_t>();
  v.seg_version_ = header.at("segmentation").get<std::string>();
  if (v.seg_version_ != kSegVersion) {
    throw_data("vocabulary built with incompatible segmentation rules: " +
               v.seg_version_);
  }
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::parse_error& e) {
      throw_data("vocabulary line " + std::to_string(lineno) + ": " + e.what());
    }
    VocabEntry e{row.at("id").get<uint32_t>(), row.at("df").get<uint64_t>()};
    if (!v.entries_.emplace(row.at("token").get<std::string>(), e).second) {
      throw_data("duplicate vocabulary token at line " + std::to_string(lineno));
    }
  }
  return v;
}

std::string Vocabulary::fingerprint_material() const {
  std::string m = seg_version_;
  m += '|';
  m += std::to_string(corpus_doc_count_);
  for (const auto& [surface, e] : entries_) {
    m += '|';
    m += surface;
    m += ':';
    m += std::to_string(e.df);
  }
  return m;
}

std::vector<EncodedToken> encode_tokens(std::string_view text,
                                        const Vocabulary* vocab) {
  std::vector<EncodedToken> out;
  for (const Token& t : tokenize(text)) {
    if (vocab != nullptr) {
      if (auto e = vocab->lookup(t.surface)) {
        out.push_back({t.surface, t.kind, e->df});
        continue;
      }
    }
    // char_fallback: one token per Unicode scalar.
    for (char32_t c : uni::decode(t.surface)) {
      std::string s;
      uni::append_utf8(s, c);
      uint64_t df = vocab != nullptr ? vocab->df(s) : 0;
      out.push_back({std::move(s), TokenKind::char_fallback, df});
    }
  }
  return out;
}

}  // namespace rp::tok
