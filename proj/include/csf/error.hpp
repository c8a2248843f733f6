#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or type invariant.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A geometric computation hit a configuration it refuses to resolve
/// silently (collocated vertices, tangential contact, shared vertices).
class DegenerateConfiguration : public Error {
 public:
  explicit DegenerateConfiguration(const std::string& what, std::size_t index = npos)
      : Error(what), index_(index) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Offending vertex or edge index, or npos when not applicable.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Time integration failed (embeddedness lost after all retries).
class FlowError : public Error {
 public:
  using Error::Error;
};

}  // namespace csf
