#pragma once

#include <string>
#include <string_view>

namespace rp::index {

enum class SimilarityMetric { dot_product, cosine };

std::string metric_name(SimilarityMetric m);
SimilarityMetric metric_from_name(std::string_view name);

}  // namespace rp::index
