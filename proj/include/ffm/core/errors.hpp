#pragma once

#include <stdexcept>
#include <string>

namespace ffm {

inline constexpr const char* kVersion = "1.0.0";

// Budget or precision limits hit; the caller asked for more than we will do.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that cannot happen with correct inputs did.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ffm
