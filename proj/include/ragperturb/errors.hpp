#pragma once

#include <stdexcept>
#include <string>

namespace rp {

// Error categories map 1:1 onto CLI exit codes / C API status codes.
enum class ErrorKind {
  usage,      // bad arguments or configuration
  data,       // malformed input, invariant violation, io failure
  transport,  // network failure after retries
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) {
  throw Error(ErrorKind::usage, msg);
}
[[noreturn]] inline void throw_data(const std::string& msg) {
  throw Error(ErrorKind::data, msg);
}
[[noreturn]] inline void throw_transport(const std::string& msg) {
  throw Error(ErrorKind::transport, msg);
}

}  // namespace rp
