#pragma once

#include <stdexcept>
#include <string>

namespace pskrx {

// Invalid input: out-of-range parameter, malformed list, bad index.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not reach its requested accuracy.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ArgumentError(message);
}

}  // namespace pskrx
