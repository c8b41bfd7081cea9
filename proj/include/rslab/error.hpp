#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rslab {

/// Requested argument lies beyond the coefficient table.
class InsufficientTable : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Exact integer arithmetic exceeded the storage width.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(std::size_t n, const std::string& what)
      : std::overflow_error(what), n_(n) {}
  /// First index whose value did not fit.
  std::size_t index() const noexcept { return n_; }

 private:
  std::size_t n_;
};

class CorruptCache : public std::runtime_error {
 public:
  CorruptCache(std::uint64_t offset, const std::string& what)
      : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DivisionSingularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rslab
