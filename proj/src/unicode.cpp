#include "ragperturb/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include "ragperturb/errors.hpp"

namespace rp::uni {

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const UNormalizer2* norm = unorm2_getNFCInstance(&status);
  if (U_FAILURE(status)) throw_data("ICU NFC instance unavailable");

  // UTF-8 -> UTF-16
  std::u16string u16(utf8.size() + 1, u'\0');
  int32_t u16len = 0;
  status = U_ZERO_ERROR;
  u_strFromUTF8(u16.data(), static_cast<int32_t>(u16.size()), &u16len,
                utf8.data(), static_cast<int32_t>(utf8.size()), &status);
  if (U_FAILURE(status)) throw_data("invalid UTF-8 input");
  u16.resize(static_cast<size_t>(u16len));

  std::u16string out(u16.size() * 2 + 16, u'\0');
  status = U_ZERO_ERROR;
  int32_t outlen =
      unorm2_normalize(norm, u16.data(), u16len, out.data(),
                       static_cast<int32_t>(out.size()), &status);
  if (status == U_BUFFER_OVERFLOW_ERROR) {
    out.resize(static_cast<size_t>(outlen));
    status = U_ZERO_ERROR;
    outlen = unorm2_normalize(norm, u16.data(), u16len, out.data(),
                              static_cast<int32_t>(out.size()), &status);
  }
  if (U_FAILURE(status)) throw_data("NFC normalization failed");
  out.resize(static_cast<size_t>(outlen));

  std::string result(out.size() * 4 + 1, '\0');
  int32_t reslen = 0;
  status = U_ZERO_ERROR;
  u_strToUTF8(result.data(), static_cast<int32_t>(result.size()), &reslen,
              out.data(), outlen, &status);
  if (U_FAILURE(status)) throw_data("UTF-8 re-encode failed");
  result.resize(static_cast<size_t>(reslen));
  return result;
}

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const uint8_t* s = reinterpret_cast<const uint8_t*>(utf8.data());
  int32_t i = 0;
  const int32_t len = static_cast<int32_t>(utf8.size());
  while (i < len) {
    UChar32 c;
    U8_NEXT(s, i, len, c);
    if (c < 0) throw_data("invalid UTF-8 at byte " + std::to_string(i));
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool err = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), err);
  if (err) throw_data("scalar out of range");
  out.append(reinterpret_cast<char*>(buf), static_cast<size_t>(n));
}

std::string encode(std::u32string_view scalars) {
  std::string out;
  out.reserve(scalars.size());
  for (char32_t c : scalars) append_utf8(out, c);
  return out;
}

bool is_alnum(char32_t c) { return u_isalnum(static_cast<UChar32>(c)); }

bool is_space(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

char32_t to_lower(char32_t c) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

std::string normalize_ws(std::string_view utf8) {
  std::u32string scalars = decode(utf8);
  std::u32string out;
  out.reserve(scalars.size());
  bool pending_space = false;
  for (char32_t c : scalars) {
    if (is_space(c)) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) {
        out.push_back(U' ');
        pending_space = false;
      }
      out.push_back(c);
    }
  }
  return encode(out);
}

}  // namespace rp::uni
