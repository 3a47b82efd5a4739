#include "ragperturb/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ragperturb/digest.hpp"
#include "ragperturb/errors.hpp"
#include "ragperturb/rng.hpp"
#include "ragperturb/unicode.hpp"

using json = nlohmann::json;

namespace rp::corpus {

namespace {

const char* provenance_name(ProvenanceKind k) {
  switch (k) {
    case ProvenanceKind::clean: return "clean";
    case ProvenanceKind::perturbed: return "perturbed";
    case ProvenanceKind::baseline: return "baseline";
  }
  return "clean";
}

}  // namespace

DocumentSet DocumentSet::from_documents(std::vector<Document> docs) {
  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (size_t i = 0; i < docs.size(); ++i) {
    if (i > 0 && docs[i].id == docs[i - 1].id) {
      throw_data("duplicate document id \"" + docs[i].id + "\"");
    }
    if (docs[i].id.empty()) throw_data("document with empty id");
    if (uni::nfc(docs[i].text).empty()) {
      throw_data("document \"" + docs[i].id + "\" has empty text");
    }
  }
  DocumentSet set;
  set.docs_ = std::move(docs);
  set.injected_count_ = static_cast<size_t>(
      std::count_if(set.docs_.begin(), set.docs_.end(),
                    [](const Document& d) { return !d.provenance.is_clean(); }));
  return set;
}

const Document* DocumentSet::find(std::string_view id) const {
  auto it = std::lower_bound(
      docs_.begin(), docs_.end(), id,
      [](const Document& d, std::string_view key) { return d.id < key; });
  if (it == docs_.end() || it->id != id) return nullptr;
  return &*it;
}

double DocumentSet::injection_ratio() const {
  if (docs_.empty()) return 0.0;
  return static_cast<double>(injected_count_) /
         static_cast<double>(docs_.size());
}

QueryRecord make_clean_query(std::string id, std::string text,
                             std::string ground_truth) {
  QueryRecord q;
  q.id = std::move(id);
  q.text = std::move(text);
  q.ground_truth = std::move(ground_truth);
  return q;
}

QueryRecord make_perturbed_query(std::string id, std::string text,
                                 std::string emoticon,
                                 std::string ground_truth) {
  if (text.find(emoticon) == std::string::npos) {
    throw_data("perturbed query \"" + id +
               "\" does not contain its emoticon verbatim");
  }
  QueryRecord q;
  q.id = std::move(id);
  q.text = std::move(text);
  q.perturbed = true;
  q.emoticon = std::move(emoticon);
  q.ground_truth = std::move(ground_truth);
  return q;
}

DocumentSet load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_data("cannot open corpus file: " + path.string());

  std::vector<Document> docs;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw_data("parse error at " + path.filename().string() + ":" +
                 std::to_string(lineno) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") ||
        !obj["id"].is_string() || !obj["text"].is_string()) {
      throw_data("line " + std::to_string(lineno) +
                 ": expected object with string `id` and `text`");
    }
    Document d;
    d.id = obj["id"].get<std::string>();
    d.text = uni::nfc(obj["text"].get<std::string>());
    if (obj.contains("meta")) {
      if (!obj["meta"].is_object()) {
        throw_data("line " + std::to_string(lineno) + ": `meta` must be an object");
      }
      for (auto& [k, v] : obj["meta"].items()) {
        if (!v.is_string()) {
          throw_data("line " + std::to_string(lineno) +
                     ": meta values must be strings");
        }
        d.meta[k] = v.get<std::string>();
      }
    }
    docs.push_back(std::move(d));
  }
  return DocumentSet::from_documents(std::move(docs));
}

std::string export_jsonl_string(const DocumentSet& set, bool audit) {
  std::string out;
  for (const Document& d : set.docs()) {
    json obj;
    obj["id"] = d.id;
    obj["text"] = d.text;
    if (!d.meta.empty()) {
      json meta = json::object();
      for (const auto& [k, v] : d.meta) meta[k] = v;
      obj["meta"] = meta;
    }
    if (audit) {
      json prov;
      prov["kind"] = provenance_name(d.provenance.kind);
      if (!d.provenance.detail.empty()) prov["detail"] = d.provenance.detail;
      obj["provenance"] = prov;
    }
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void export_jsonl(const DocumentSet& set, const std::filesystem::path& path,
                  bool audit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("cannot write corpus file: " + path.string());
  out << export_jsonl_string(set, audit);
  if (!out) throw_data("write failed: " + path.string());
}

std::string synth_word(size_t rank) {
  // Injective base-26 surface, padded to at least three letters so no
  // single-scalar word token ever enters a synthetic vocabulary.
  std::string s;
  size_t r = rank;
  do {
    s.push_back(static_cast<char>('a' + r % 26));
    r /= 26;
  } while (r > 0);
  while (s.size() < 3) s.push_back('a');
  std::reverse(s.begin(), s.end());
  return s;
}

DocumentSet synth_corpus(uint64_t seed, size_t size, size_t vocab_size,
                         std::pair<uint32_t, uint32_t> doc_len) {
  if (size == 0) throw_data("synthetic corpus size must be >= 1");
  if (vocab_size < 10) throw_data("synthetic vocab_size must be >= 10");
  if (doc_len.first == 0 || doc_len.second < doc_len.first) {
    throw_data("invalid doc_len range");
  }

  // Zipf CDF with exponent 1.0 over ranks 1..vocab_size.
  std::vector<double> cdf(vocab_size);
  double acc = 0.0;
  for (size_t r = 0; r < vocab_size; ++r) {
    acc += 1.0 / static_cast<double>(r + 1);
    cdf[r] = acc;
  }
  for (double& c : cdf) c /= acc;

  Rng rng(child_seed(seed, "synth-corpus"));
  size_t id_width = std::to_string(size - 1).size();
  if (id_width < 6) id_width = 6;

  std::vector<Document> docs;
  docs.reserve(size);
  for (size_t i = 0; i < size; ++i) {
    uint32_t len = doc_len.first +
                   static_cast<uint32_t>(rng.below(doc_len.second - doc_len.first + 1));
    std::string text;
    for (uint32_t t = 0; t < len; ++t) {
      double u = rng.unit();
      size_t rank = static_cast<size_t>(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      if (rank >= vocab_size) rank = vocab_size - 1;
      if (t > 0) text += ' ';
      text += synth_word(rank);
    }
    Document d;
    std::string num = std::to_string(i);
    d.id = "d" + std::string(id_width - num.size(), '0') + num;
    d.text = std::move(text);
    docs.push_back(std::move(d));
  }
  return DocumentSet::from_documents(std::move(docs));
}

DocumentSet inject_documents(const DocumentSet& base,
                             std::vector<Document> injected) {
  std::vector<Document> all = base.docs();
  for (Document& d : injected) {
    if (base.find(d.id) != nullptr) {
      throw_data("injected id collides with base: \"" + d.id + "\"");
    }
    d.text = uni::nfc(d.text);
    all.push_back(std::move(d));
  }
  return DocumentSet::from_documents(std::move(all));
}

std::vector<QueryRecord> load_queries_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_data("cannot open query file: " + path.string());
  std::vector<QueryRecord> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw_data("parse error at " + path.filename().string() + ":" +
                 std::to_string(lineno) + ": " + e.what());
    }
    QueryRecord q;
    q.id = obj.at("id").get<std::string>();
    q.text = uni::nfc(obj.at("text").get<std::string>());
    q.ground_truth = obj.value("ground_truth", std::string{});
    if (obj.contains("target_answer")) {
      q.target_answer = obj["target_answer"].get<std::string>();
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::string corpus_digest(const DocumentSet& set) {
  return sha256_hex(export_jsonl_string(set, /*audit=*/true));
}

}  // namespace rp::corpus
