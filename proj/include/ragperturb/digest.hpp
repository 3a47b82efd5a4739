#pragma once

#include <array>
#include <string>
#include <string_view>

namespace rp {

using Sha256 = std::array<uint8_t, 32>;

Sha256 sha256(std::string_view bytes);
std::string sha256_hex(std::string_view bytes);
std::string to_hex(const Sha256& d);

}  // namespace rp
