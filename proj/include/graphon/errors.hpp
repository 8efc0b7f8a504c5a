#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

// Invalid values, broken invariants, bad configuration. CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file content (datasets, graphon files, configs). CLI exit code 1.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures: missing files, unwritable destinations. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace graphon
