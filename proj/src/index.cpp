#include "ragperturb/index.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

#include "ragperturb/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "index persistence assumes a little-endian host");

namespace rp::index {

std::string metric_name(SimilarityMetric m) {
  return m == SimilarityMetric::dot_product ? "dot_product" : "cosine";
}

SimilarityMetric metric_from_name(std::string_view name) {
  if (name == "dot_product" || name == "dot") {
    return SimilarityMetric::dot_product;
  }
  if (name == "cosine") return SimilarityMetric::cosine;
  throw_usage("unknown similarity metric: " + std::string(name));
}

double similarity(const enc::EmbeddingVector& a, const enc::EmbeddingVector& b,
                  SimilarityMetric metric) {
  if (a.dim() != b.dim()) {
    throw_data("similarity dimension mismatch: " + std::to_string(a.dim()) +
               " vs " + std::to_string(b.dim()));
  }
  double dot = 0.0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (size_t i = 0; i < av.size(); ++i) dot += av[i] * bv[i];
  if (metric == SimilarityMetric::dot_product) return dot;
  if (a.norm() == 0.0 || b.norm() == 0.0) {
    throw_data("cosine similarity undefined for zero vector");
  }
  return dot / (a.norm() * b.norm());
}

Sha256 index_fingerprint(const tok::Vocabulary& vocab,
                         const enc::EncoderConfig& cfg) {
  return sha256(cfg.fingerprint_material() + "\n" +
                vocab.fingerprint_material());
}

VectorIndex VectorIndex::build(const corpus::DocumentSet& docs,
                               const tok::Vocabulary& vocab,
                               const enc::EncoderConfig& cfg) {
  if (docs.empty()) throw_data("cannot build index over empty corpus");
  std::vector<IndexEntry> entries;
  entries.reserve(docs.size());
  for (const corpus::Document& d : docs.docs()) {
    entries.push_back({d.id, enc::encode(d.text, vocab, cfg)});
  }
  return from_entries(std::move(entries), vocab, cfg);
}

VectorIndex VectorIndex::from_entries(std::vector<IndexEntry> entries,
                                      const tok::Vocabulary& vocab,
                                      const enc::EncoderConfig& cfg) {
  if (entries.empty()) throw_data("cannot build index from zero entries");
  std::sort(entries.begin(), entries.end(),
            [](const IndexEntry& a, const IndexEntry& b) { return a.id < b.id; });
  VectorIndex idx;
  idx.dim_ = entries.front().vec.dim();
  for (const IndexEntry& e : entries) {
    if (e.vec.dim() != idx.dim_) {
      throw_data("index entry \"" + e.id + "\" has mismatched dimension");
    }
  }
  idx.entries_ = std::move(entries);
  idx.fingerprint_ = index_fingerprint(vocab, cfg);
  return idx;
}

RetrievalResult VectorIndex::search(const enc::EmbeddingVector& query,
                                    size_t k, SimilarityMetric metric,
                                    std::string query_id) const {
  if (query.dim() != dim_) {
    throw_data("query dimension " + std::to_string(query.dim()) +
               " does not match index dimension " + std::to_string(dim_));
  }
  RetrievalResult result;
  result.query_id = std::move(query_id);
  result.k = k;
  if (k == 0) return result;

  // Candidate ordering: score descending, then doc id ascending.
  auto better = [this](size_t a, double sa, size_t b, double sb) {
    if (sa != sb) return sa > sb;
    return entries_[a].id < entries_[b].id;
  };

  std::vector<std::pair<size_t, double>> top;  // min-heap by `better`
  auto heap_cmp = [&](const auto& x, const auto& y) {
    return better(x.first, x.second, y.first, y.second);
  };
  top.reserve(std::min(k, entries_.size()) + 1);

  for (size_t i = 0; i < entries_.size(); ++i) {
    double s = similarity(query, entries_[i].vec, metric);
    if (top.size() < k) {
      top.emplace_back(i, s);
      std::push_heap(top.begin(), top.end(), heap_cmp);
    } else if (better(i, s, top.front().first, top.front().second)) {
      std::pop_heap(top.begin(), top.end(), heap_cmp);
      top.back() = {i, s};
      std::push_heap(top.begin(), top.end(), heap_cmp);
    }
  }
  std::sort(top.begin(), top.end(), [&](const auto& x, const auto& y) {
    return better(x.first, x.second, y.first, y.second);
  });
  result.hits.reserve(top.size());
  for (const auto& [i, s] : top) result.hits.push_back({entries_[i].id, s});
  return result;
}

namespace {

constexpr char kMagic[4] = {'R', 'P', 'I', 'X'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw_data("truncated index file");
}

}  // namespace

void VectorIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("cannot write index file: " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, dim_);
  write_pod(out, static_cast<uint64_t>(entries_.size()));
  out.write(reinterpret_cast<const char*>(fingerprint_.data()),
            static_cast<std::streamsize>(fingerprint_.size()));
  for (const IndexEntry& e : entries_) {
    if (e.id.size() > UINT16_MAX) throw_data("doc id too long for index format");
    write_pod(out, static_cast<uint16_t>(e.id.size()));
    out.write(e.id.data(), static_cast<std::streamsize>(e.id.size()));
    for (double v : e.vec.values()) {
      write_pod(out, static_cast<float>(v));
    }
  }
  if (!out) throw_data("write failed: " + path.string());
}

VectorIndex VectorIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_data("cannot open index file: " + path.string());
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw_data("not an index file: " + path.string());
  }
  uint32_t version = 0;
  read_pod(in, version);
  if (version != kVersion) {
    throw_data("unsupported index version " + std::to_string(version));
  }
  VectorIndex idx;
  uint64_t count = 0;
  read_pod(in, idx.dim_);
  read_pod(in, count);
  in.read(reinterpret_cast<char*>(idx.fingerprint_.data()),
          static_cast<std::streamsize>(idx.fingerprint_.size()));
  if (!in) throw_data("truncated index file");
  idx.entries_.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    uint16_t idlen = 0;
    read_pod(in, idlen);
    std::string id(idlen, '\0');
    in.read(id.data(), idlen);
    if (!in) throw_data("truncated index file");
    std::vector<double> values(idx.dim_);
    for (uint32_t d = 0; d < idx.dim_; ++d) {
      float f = 0;
      read_pod(in, f);
      values[d] = static_cast<double>(f);
    }
    idx.entries_.push_back({std::move(id), enc::EmbeddingVector(std::move(values))});
  }
  return idx;
}

}  // namespace rp::index
