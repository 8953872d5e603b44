#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inducibility {

/// A computation cap (enumeration size, oracle budget, brute-force size) was
/// exceeded. `cap` names the limit and its current value.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(std::string what_limit, std::size_t requested, std::size_t cap)
      : std::runtime_error(what_limit + " limit exceeded: requested " +
                           std::to_string(requested) + ", cap is " +
                           std::to_string(cap)),
        limit_(std::move(what_limit)),
        requested_(requested),
        cap_(cap) {}

  const std::string& limit() const noexcept { return limit_; }
  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::string limit_;
  std::size_t requested_;
  std::size_t cap_;
};

/// Malformed tree or tanglegram text. `position()` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace inducibility
