#include "ragperturb/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "ragperturb/errors.hpp"
#include "ragperturb/rng.hpp"

namespace rp::enc {

EmbeddingVector::EmbeddingVector(std::vector<double> values)
    : values_(std::move(values)) {
  double s = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw_data("non-finite embedding component");
    s += v * v;
  }
  norm_ = std::sqrt(s);
}

std::string EncoderConfig::fingerprint_material() const {
  std::string m = "dim=" + std::to_string(dim);
  m += ";seed=" + std::to_string(seed);
  char buf[64];
  std::snprintf(buf, sizeof(buf), ";alpha=%.17g", positional_scale);
  m += buf;
  m += ";idf=";
  m += idf_weighting ? '1' : '0';
  m += ";backend=";
  m += backend == Backend::reference ? "reference"
                                     : ("remote:" + remote.model);
  return m;
}

std::vector<double> unit_token_vector(std::string_view surface, uint64_t seed,
                                      uint32_t dim) {
  if (dim < 2) throw_usage("embedding dim must be >= 2");
  const uint64_t h = fnv1a64(surface) ^ seed;

  std::vector<double> v(dim);
  auto draw = [&](uint64_t counter) {
    // (0, 1]: the +1 keeps log() finite.
    return (static_cast<double>(mix64(h + counter) >> 11) + 1.0) * 0x1.0p-53;
  };
  const double two_pi = 2.0 * std::numbers::pi;
  for (uint32_t p = 0; 2 * p < dim; ++p) {
    double u1 = draw(2 * p);
    double u2 = draw(2 * p + 1);
    double r = std::sqrt(-2.0 * std::log(u1));
    v[2 * p] = r * std::cos(two_pi * u2);
    if (2 * p + 1 < dim) v[2 * p + 1] = r * std::sin(two_pi * u2);
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    v[0] = 1.0;
  } else {
    for (double& x : v) x /= norm;
  }
  return v;
}

double idf_weight(uint64_t df, uint64_t corpus_doc_count, bool enabled) {
  if (!enabled) return 1.0;
  return 1.0 + std::log(static_cast<double>(corpus_doc_count + 1) /
                        static_cast<double>(df + 1));
}

std::vector<double> positional_vector(size_t position, uint32_t dim) {
  std::vector<double> p(dim);
  const double pos = static_cast<double>(position);
  for (uint32_t j = 0; 2 * j < dim; ++j) {
    double freq = std::pow(10000.0, -2.0 * static_cast<double>(j) /
                                        static_cast<double>(dim));
    p[2 * j] = std::sin(pos * freq);
    if (2 * j + 1 < dim) p[2 * j + 1] = std::cos(pos * freq);
  }
  return p;
}

double position_weight(size_t position, double alpha) {
  return 1.0 / (1.0 + alpha * static_cast<double>(position));
}

EmbeddingVector encode(std::string_view text, const tok::Vocabulary& vocab,
                       const EncoderConfig& cfg) {
  if (cfg.backend != Backend::reference) {
    throw_usage("encode() requires the reference backend");
  }
  if (cfg.dim < 2) throw_usage("embedding dim must be >= 2");
  if (cfg.positional_scale < 0.0) throw_usage("positional scale must be >= 0");

  const auto tokens = tok::encode_tokens(text, &vocab);
  std::vector<double> acc(cfg.dim, 0.0);
  if (tokens.empty()) return EmbeddingVector(std::move(acc));

  const double alpha = cfg.positional_scale;
  // Token directions repeat heavily inside one text; memoize per call.
  std::unordered_map<std::string, std::vector<double>> units;
  double weight_sum = 0.0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    auto it = units.find(t.surface);
    if (it == units.end()) {
      it = units.emplace(t.surface,
                         unit_token_vector(t.surface, cfg.seed, cfg.dim))
               .first;
    }
    const double w =
        idf_weight(t.df, vocab.corpus_doc_count(), cfg.idf_weighting);
    const double rho = position_weight(i, alpha);
    weight_sum += rho;
    const std::vector<double>& u = it->second;
    if (alpha > 0.0) {
      const std::vector<double> p = positional_vector(i, cfg.dim);
      for (uint32_t d = 0; d < cfg.dim; ++d) {
        acc[d] += rho * (w * u[d] + alpha * p[d]);
      }
    } else {
      for (uint32_t d = 0; d < cfg.dim; ++d) acc[d] += rho * w * u[d];
    }
  }
  for (double& x : acc) x /= weight_sum;
  return EmbeddingVector(std::move(acc));
}

namespace {

double similarity_raw(const EmbeddingVector& a, const EmbeddingVector& b,
                      index::SimilarityMetric metric) {
  if (a.dim() != b.dim()) {
    throw_data("embedding dimension mismatch: " + std::to_string(a.dim()) +
               " vs " + std::to_string(b.dim()));
  }
  double dot = 0.0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (size_t i = 0; i < av.size(); ++i) dot += av[i] * bv[i];
  if (metric == index::SimilarityMetric::dot_product) return dot;
  if (a.norm() == 0.0 || b.norm() == 0.0) {
    throw_data("cosine similarity undefined for zero vector");
  }
  return dot / (a.norm() * b.norm());
}

}  // namespace

double embedding_offset(const EmbeddingVector& original,
                        const EmbeddingVector& perturbed,
                        index::SimilarityMetric metric) {
  return 1.0 - similarity_raw(original, perturbed, metric);
}

RareTokenReport rare_token_report(const tok::Vocabulary& vocab,
                                  const EncoderConfig& cfg,
                                  const std::vector<std::string>& probes) {
  if (probes.empty()) throw_usage("rare_token_report requires probes");
  if (vocab.size() < 10) {
    throw_data("vocabulary too small for rare-token report (need >= 10 entries)");
  }

  // Top decile by document frequency.
  std::vector<std::pair<std::string, tok::VocabEntry>> ranked(
      vocab.entries().begin(), vocab.entries().end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.df != b.second.df) return a.second.df > b.second.df;
    return a.first < b.first;
  });
  size_t decile = std::max<size_t>(1, ranked.size() / 10);

  std::vector<double> centroid(cfg.dim, 0.0);
  for (size_t i = 0; i < decile; ++i) {
    auto u = unit_token_vector(ranked[i].first, cfg.seed, cfg.dim);
    double w = idf_weight(ranked[i].second.df, vocab.corpus_doc_count(),
                          cfg.idf_weighting);
    for (uint32_t d = 0; d < cfg.dim; ++d) centroid[d] += w * u[d];
  }
  for (double& x : centroid) x /= static_cast<double>(decile);

  double best = std::numeric_limits<double>::infinity();
  size_t probe_tokens = 0;
  for (const std::string& probe : probes) {
    for (const auto& t : tok::encode_tokens(probe, &vocab)) {
      ++probe_tokens;
      auto u = unit_token_vector(t.surface, cfg.seed, cfg.dim);
      double w = idf_weight(t.df, vocab.corpus_doc_count(), cfg.idf_weighting);
      double dist2 = 0.0;
      for (uint32_t d = 0; d < cfg.dim; ++d) {
        double diff = w * u[d] - centroid[d];
        dist2 += diff * diff;
      }
      best = std::min(best, std::sqrt(dist2));
    }
  }
  if (probe_tokens == 0) throw_data("probes produced no tokens");
  return RareTokenReport{best, probe_tokens};
}

}  // namespace rp::enc
