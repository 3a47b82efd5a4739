#include "ragperturb/digest.hpp"

#include <openssl/evp.h>

#include "ragperturb/errors.hpp"

namespace rp {

Sha256 sha256(std::string_view bytes) {
  Sha256 out{};
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(),
                  nullptr) ||
      len != out.size()) {
    throw_data("sha256 computation failed");
  }
  return out;
}

std::string to_hex(const Sha256& d) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (uint8_t b : d) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

std::string sha256_hex(std::string_view bytes) {
  return to_hex(sha256(bytes));
}

}  // namespace rp
